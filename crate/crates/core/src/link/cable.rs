//! The coloured invariant by cabling, crossing expansion and web reduction.
//!
//! A component coloured `(a, b)` becomes `a + b` parallel strands, the first
//! `a` (counting from the left of the direction of travel) running along the
//! component and the rest against it, with one clasp of that weight on its
//! first arc. Each crossing of two cables becomes a grid of single
//! crossings, and each single crossing expands as
//! `L± = v^{±1} (oriented smoothing) + (I-web)`.
//! The result is the blackboard-framed value.

use std::collections::BTreeMap;

use super::pd::LinkDiagram;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::qpoly::{qint, LaurentPoly, RatFunc};
use crate::rep::Weight;
use crate::sl3::clasp::clasp_with;
use crate::sl3::reduce::with_reducer;
use crate::sl3::Tangle;
use crate::web::{Kind, Port, RatAccumulator, Web, WebBuilder};

// Geometric slots of a single crossing, counterclockwise.
const S: usize = 0;
const E: usize = 1;
const N: usize = 2;
const W: usize = 3;

#[derive(Clone, Copy, Debug)]
struct Single {
    in_u: usize,
    out_u: usize,
    in_o: usize,
    out_o: usize,
    sign: i8,
}

impl Single {
    /// Under-strand vertical, over-strand horizontal.
    fn new(under_up: bool, over_east: bool) -> Single {
        let (in_u, out_u) = if under_up { (S, N) } else { (N, S) };
        let (in_o, out_o) = if over_east { (W, E) } else { (E, W) };
        let sign = if under_up == over_east { 1 } else { -1 };
        Single { in_u, out_u, in_o, out_o, sign }
    }
}

#[derive(Clone, Copy, Debug)]
enum End {
    Slot(usize, usize),
    Wire(usize, usize),
    Clasp(usize, usize),
}

/// Everything about the cabled diagram that does not depend on the state.
struct Plan {
    singles: Vec<Single>,
    wires: usize,
    clasps: Vec<Tangle>,
    links: Vec<(End, End)>,
}

fn colour_of(colours: &[Weight], comp: usize) -> (usize, usize) {
    let w = colours[comp];
    (w.a as usize, w.b as usize)
}

fn plan(d: &LinkDiagram, colours: &[Weight], cfg: &Config) -> Result<Plan> {
    let comp_of = d.arc_component();
    let width = |x: u32| {
        let (a, b) = colour_of(colours, comp_of[&x]);
        (a + b, a)
    };
    let mut singles = Vec::new();
    let mut links = Vec::new();
    let mut wires = 0;
    // Wire ends: 0 faces the arc, 1 faces the inside of the crossing.
    let mut boundary: Vec<[Vec<usize>; 4]> = Vec::new();
    for cr in d.crossings() {
        let (ku, au) = width(cr.in_under());
        let (ko, ao) = width(cr.in_over());
        let positive = cr.sign > 0;
        let mut bw: [Vec<usize>; 4] = Default::default();
        for (s, slot) in bw.iter_mut().enumerate() {
            let k = if s % 2 == 0 { ku } else { ko };
            *slot = (wires..wires + k).collect();
            wires += k;
        }
        let row = |i: usize| if positive { ko - 1 - i } else { i };
        let base = singles.len();
        let cell = |j: usize, r: usize| base + j * ko + r;
        for j in 0..ku {
            for r in 0..ko {
                let i = row(r);
                let over_east = positive == (i < ao);
                singles.push(Single::new(j < au, over_east));
            }
        }
        for j in 0..ku {
            for r in 0..ko {
                if r + 1 < ko {
                    links.push((End::Slot(cell(j, r), N), End::Slot(cell(j, r + 1), S)));
                }
                if j + 1 < ku {
                    links.push((End::Slot(cell(j, r), E), End::Slot(cell(j + 1, r), W)));
                }
            }
        }
        if ko == 0 {
            for j in 0..ku {
                links.push((End::Wire(bw[0][j], 1), End::Wire(bw[2][j], 1)));
            }
        } else {
            for j in 0..ku {
                links.push((End::Wire(bw[0][j], 1), End::Slot(cell(j, 0), S)));
                links.push((End::Wire(bw[2][j], 1), End::Slot(cell(j, ko - 1), N)));
            }
        }
        if ku == 0 {
            for i in 0..ko {
                links.push((End::Wire(bw[3][i], 1), End::Wire(bw[1][i], 1)));
            }
        } else {
            for i in 0..ko {
                links.push((End::Wire(bw[3][i], 1), End::Slot(cell(0, row(i)), W)));
                links.push((End::Wire(bw[1][i], 1), End::Slot(cell(ku - 1, row(i)), E)));
            }
        }
        boundary.push(bw);
    }
    if singles.len() > cfg.max_cabled_crossings {
        return Err(Error::Guardrail(format!(
            "{} crossings after cabling exceeds {}",
            singles.len(),
            cfg.max_cabled_crossings
        )));
    }
    let mut clasp_arc: BTreeMap<u32, usize> = BTreeMap::new();
    let mut clasps = Vec::new();
    for (ci, comp) in d.components().iter().enumerate() {
        let (a, b) = colour_of(colours, ci);
        if comp.arcs.is_empty() || a + b <= 1 {
            continue;
        }
        clasp_arc.insert(comp.arcs[0], clasps.len());
        clasps.push(clasp_with(a, b, cfg)?);
    }
    for x in d.arcs() {
        let ends = d.arc_ends(x);
        let (k, _) = width(x);
        let (tc, ts) = ends.tail;
        let (hc, hs) = ends.head;
        for t in 0..k {
            let from = End::Wire(boundary[tc][ts][t], 0);
            let to = End::Wire(boundary[hc][hs][t], 0);
            match clasp_arc.get(&x) {
                Some(&c) => {
                    links.push((from, End::Clasp(c, k + (k - 1 - t))));
                    links.push((End::Clasp(c, t), to));
                }
                None => links.push((from, to)),
            }
        }
    }
    Ok(Plan {
        singles,
        wires,
        clasps,
        links,
    })
}

impl Plan {
    fn build(&self, smooth: u64, clasp_webs: &[&Web]) -> Web {
        let mut b = WebBuilder::new();
        let wires: Vec<[Port; 2]> = (0..self.wires).map(|_| b.wire()).collect();
        let mut slots: Vec<[Option<Port>; 4]> = Vec::with_capacity(self.singles.len());
        for (e, x) in self.singles.iter().enumerate() {
            let mut p = [None; 4];
            if smooth >> e & 1 == 1 {
                let [u0, u1] = b.wire();
                let [o0, o1] = b.wire();
                p[x.in_u] = Some(u0);
                p[x.out_o] = Some(u1);
                p[x.in_o] = Some(o0);
                p[x.out_u] = Some(o1);
            } else {
                // The incoming pair occupies two consecutive slots k, k+1.
                let k = (0..4)
                    .find(|&k| {
                        let pair = [k, (k + 1) % 4];
                        pair.contains(&x.in_u) && pair.contains(&x.in_o)
                    })
                    .expect("incoming slots of a crossing are adjacent");
                let sink = b.vertex(Kind::Sink);
                let source = b.vertex(Kind::Source);
                p[(k + 1) % 4] = Some(sink[0]);
                p[k] = Some(sink[1]);
                p[(k + 3) % 4] = Some(source[0]);
                p[(k + 2) % 4] = Some(source[1]);
                b.connect(sink[2], source[2]);
            }
            slots.push(p);
        }
        let clasp_ports: Vec<Vec<Port>> = clasp_webs.iter().map(|w| b.embed(w)).collect();
        let port = |e: End| match e {
            End::Slot(i, s) => slots[i][s].unwrap(),
            End::Wire(w, k) => wires[w][k],
            End::Clasp(c, i) => clasp_ports[c][i],
        };
        for &(x, y) in &self.links {
            b.connect(port(x), port(y));
        }
        b.finish().expect("cabled state is a valid closed web")
    }

    /// Sum over all states, grouped by canonical web, then evaluated.
    fn evaluate(&self) -> RatFunc {
        let clasp_terms: Vec<Vec<(&Web, &RatFunc)>> = self.clasps.iter().map(|t| t.sum().iter().collect()).collect();
        let mut grouped: BTreeMap<Web, RatAccumulator> = BTreeMap::new();
        let n = self.singles.len();
        let mut choice = vec![0usize; clasp_terms.len()];
        loop {
            let webs: Vec<&Web> = choice.iter().zip(&clasp_terms).map(|(&i, t)| t[i].0).collect();
            let coeff = choice
                .iter()
                .zip(&clasp_terms)
                .fold(RatFunc::one(), |acc, (&i, t)| &acc * t[i].1);
            for smooth in 0..1u64 << n {
                let exp: i64 = (0..n)
                    .filter(|&e| smooth >> e & 1 == 1)
                    .map(|e| self.singles[e].sign as i64)
                    .sum();
                let w = self.build(smooth, &webs).canonical();
                grouped.entry(w).or_default().add_scaled(&coeff, &LaurentPoly::v_pow(exp));
            }
            // Advance the mixed-radix counter over clasp terms.
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < clasp_terms[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
        let mut total = RatAccumulator::new();
        with_reducer(|r| {
            for (w, acc) in grouped {
                let value = r.evaluate_closed(&w).expect("closed web");
                total.add_scaled(&acc.finish(), &value);
            }
        });
        total.finish()
    }
}

fn check_colours(d: &LinkDiagram, colours: &[Weight], cfg: &Config) -> Result<()> {
    if colours.len() != d.components().len() {
        return Err(Error::Domain(format!(
            "{} colours given for {} components",
            colours.len(),
            d.components().len()
        )));
    }
    let width: u32 = colours.iter().map(|w| w.a + w.b).sum();
    if width as usize > cfg.max_cable_width {
        return Err(Error::Guardrail(format!(
            "cable width {width} exceeds {}",
            cfg.max_cable_width
        )));
    }
    Ok(())
}

/// Framed coloured invariant as a rational function; it is always a
/// Laurent polynomial, which [`g3`] checks.
pub fn g3_rat(d: &LinkDiagram, colours: &[Weight], cfg: &Config) -> Result<RatFunc> {
    check_colours(d, colours, cfg)?;
    let mut value = RatFunc::one();
    for (part, members) in d.split() {
        let cols: Vec<Weight> = members.iter().map(|&i| colours[i]).collect();
        if part.crossings().is_empty() {
            for w in cols {
                value = &value * &loop_value(w, cfg)?;
            }
            continue;
        }
        value = &value * &plan(&part, &cols, cfg)?.evaluate();
    }
    Ok(value)
}

pub fn g3(d: &LinkDiagram, colours: &[Weight], cfg: &Config) -> Result<LaurentPoly> {
    let r = g3_rat(d, colours, cfg)?;
    r.as_poly()
        .ok_or_else(|| Error::Verification(format!("invariant {} is not a Laurent polynomial", r.render(false))))
}

/// Value of a crossingless circle of colour `w`: the closed clasp.
pub fn loop_value(w: Weight, cfg: &Config) -> Result<RatFunc> {
    match (w.a, w.b) {
        (0, 0) => Ok(RatFunc::one()),
        (1, 0) | (0, 1) => Ok(qint(3).into()),
        (a, b) => clasp_with(a as usize, b as usize, cfg)?.trace(),
    }
}

/// Every component coloured by the vector representation.
pub fn vector_colours(d: &LinkDiagram) -> Vec<Weight> {
    vec![Weight::L1; d.components().len()]
}

/// Framed value of the one-crossing positive curl divided by `[3]`.
pub fn kink_factor(cfg: &Config) -> Result<LaurentPoly> {
    let kink = super::braid::braid_closure(2, &[1])?;
    let g = g3_rat(&kink, &vector_colours(&kink), cfg)?;
    let f = &g * &RatFunc::from(qint(3)).inv()?;
    f.as_poly()
        .ok_or_else(|| Error::Verification("kink factor is not a Laurent polynomial".into()))
}

/// Writhe of the diagram after reversing the components coloured `(0,1)`
/// and dropping those coloured `(0,0)`; only defined for colourings by
/// `(1,0)`, `(0,1)` and `(0,0)`.
pub fn effective_writhe(d: &LinkDiagram, colours: &[Weight]) -> Result<i64> {
    let comp_of = d.arc_component();
    let mut w = 0;
    for c in d.crossings() {
        let cu = colours[comp_of[&c.in_under()]];
        let co = colours[comp_of[&c.in_over()]];
        let flip = |x: Weight| -> Result<Option<i64>> {
            match (x.a, x.b) {
                (1, 0) => Ok(Some(1)),
                (0, 1) => Ok(Some(-1)),
                (0, 0) => Ok(None),
                _ => Err(Error::Domain(format!(
                    "writhe normalization needs vector colours, got ({},{})",
                    x.a, x.b
                ))),
            }
        };
        if let (Some(fu), Some(fo)) = (flip(cu)?, flip(co)?) {
            w += c.sign as i64 * fu * fo;
        }
    }
    for x in colours {
        if !matches!((x.a, x.b), (1, 0) | (0, 1) | (0, 0)) {
            return Err(Error::Domain(format!(
                "writhe normalization needs vector colours, got ({},{})",
                x.a, x.b
            )));
        }
    }
    Ok(w)
}

/// `g3` divided by the kink factor to the power of the effective writhe.
pub fn g3_normalized(d: &LinkDiagram, colours: &[Weight], cfg: &Config) -> Result<LaurentPoly> {
    let w = effective_writhe(d, colours)?;
    let k = kink_factor(cfg)?;
    if k.terms().count() != 1 {
        return Err(Error::Verification(format!("kink factor {} is not a monomial", k.render(false))));
    }
    let (e, c) = k.terms().next().map(|(e, c)| (e, c.clone())).unwrap();
    if c != 1.into() {
        return Err(Error::Verification(format!("kink factor {} is not a power of v", k.render(false))));
    }
    Ok(&g3(d, colours, cfg)? * &LaurentPoly::v_pow(-e * w))
}

//! Vector-coloured invariant by skein recursion, independent of webs.
//!
//! The writhe-normalized invariant `P` obeys
//! `v^3 P(L+) - v^-3 P(L-) = (v - v^-1) P(L0)` with `P` of a `k`-component
//! unlink equal to `[3]^k`. Each step switches or smooths the first crossing
//! met from below while walking the components from their base points, so
//! the recursion ends at descending diagrams, which are unlinks.

use std::collections::BTreeMap;

use super::pd::LinkDiagram;
use crate::qpoly::{qint, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Cr {
    in_u: u32,
    out_u: u32,
    in_o: u32,
    out_o: u32,
    sign: i8,
}

#[derive(Clone, Debug)]
struct State {
    cs: Vec<Cr>,
    loops: usize,
}

impl State {
    fn from_diagram(d: &LinkDiagram) -> State {
        State {
            cs: d
                .crossings()
                .iter()
                .map(|c| Cr {
                    in_u: c.in_under(),
                    out_u: c.out_under(),
                    in_o: c.in_over(),
                    out_o: c.out_over(),
                    sign: c.sign,
                })
                .collect(),
            loops: d.free_loops(),
        }
    }

    /// Index of the first crossing reached along its under-strand before
    /// its over-strand, and the number of components.
    fn first_ascending(&self) -> (Option<usize>, usize) {
        // arc -> (crossing, entering as under)
        let mut head: BTreeMap<u32, (usize, bool)> = BTreeMap::new();
        for (i, c) in self.cs.iter().enumerate() {
            head.insert(c.in_u, (i, true));
            head.insert(c.in_o, (i, false));
        }
        let mut visited = vec![false; self.cs.len()];
        let mut seen_arc: BTreeMap<u32, bool> = head.keys().map(|&x| (x, false)).collect();
        let mut comps = self.loops;
        let mut bad = None;
        let arcs: Vec<u32> = head.keys().copied().collect();
        for start in arcs {
            if seen_arc[&start] {
                continue;
            }
            comps += 1;
            let mut x = start;
            loop {
                seen_arc.insert(x, true);
                let (i, under) = head[&x];
                if !visited[i] {
                    visited[i] = true;
                    if under && bad.is_none() {
                        bad = Some(i);
                    }
                }
                let c = &self.cs[i];
                x = if under { c.out_u } else { c.out_o };
                if x == start {
                    break;
                }
            }
        }
        (bad, comps)
    }

    fn switched(&self, i: usize) -> State {
        let mut s = self.clone();
        let c = s.cs[i];
        s.cs[i] = Cr {
            in_u: c.in_o,
            out_u: c.out_o,
            in_o: c.in_u,
            out_o: c.out_u,
            sign: -c.sign,
        };
        s
    }

    fn smoothed(&self, i: usize) -> State {
        let c = self.cs[i];
        let mut rest: Vec<Cr> = self.cs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &c)| c).collect();
        let mut loops = self.loops;
        // Each pair is (arc ending here, arc starting here) to be spliced.
        let mut pairs = [(c.in_u, c.out_o), (c.in_o, c.out_u)];
        for k in 0..2 {
            let (from, to) = pairs[k];
            if from == to {
                loops += 1;
                continue;
            }
            let rename = |x: &mut u32| {
                if *x == to {
                    *x = from;
                }
            };
            for r in rest.iter_mut() {
                for x in [&mut r.in_u, &mut r.out_u, &mut r.in_o, &mut r.out_o] {
                    rename(x);
                }
            }
            for p in pairs[k + 1..].iter_mut() {
                rename(&mut p.0);
                rename(&mut p.1);
            }
        }
        State { cs: rest, loops }
    }
}

fn normalized(s: State) -> LaurentPoly {
    let (bad, comps) = s.first_ascending();
    let Some(i) = bad else {
        return qint(3).pow(comps as u32);
    };
    let v = |k: i64| LaurentPoly::v_pow(k);
    let v_diff = &v(1) - &v(-1);
    let switched = normalized(s.switched(i));
    let smoothed = normalized(s.smoothed(i));
    if s.cs[i].sign > 0 {
        &(&v(-6) * &switched) + &(&(&v(-3) * &v_diff) * &smoothed)
    } else {
        &(&v(6) * &switched) - &(&(&v(3) * &v_diff) * &smoothed)
    }
}

/// Writhe-normalized invariant of a diagram with every component coloured
/// by the vector representation.
pub fn skein_normalized(d: &LinkDiagram) -> LaurentPoly {
    normalized(State::from_diagram(d))
}

/// Blackboard-framed value `v^(3w) P`.
pub fn skein_framed(d: &LinkDiagram) -> LaurentPoly {
    &LaurentPoly::v_pow(3 * d.writhe()) * &skein_normalized(d)
}

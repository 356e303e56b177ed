//! Oriented planar-diagram codes.
//!
//! A crossing `X(a,b,c,d)` lists its four arcs counterclockwise starting
//! from the incoming under-strand, so `c` is the outgoing under-strand. In a
//! positive crossing the over-strand runs from `d` to `b`; in a negative one
//! from `b` to `d`. A line `O` is a crossingless circle component.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [u32; 4],
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Crossing {
    pub fn in_under(&self) -> u32 {
        self.arcs[0]
    }

    pub fn out_under(&self) -> u32 {
        self.arcs[2]
    }

    pub fn in_over(&self) -> u32 {
        if self.sign > 0 {
            self.arcs[3]
        } else {
            self.arcs[1]
        }
    }

    pub fn out_over(&self) -> u32 {
        if self.sign > 0 {
            self.arcs[1]
        } else {
            self.arcs[3]
        }
    }

    /// Slot (0..4) through which arc `x` enters, if it does.
    pub fn in_slot(&self, x: u32) -> Option<usize> {
        if self.arcs[0] == x {
            Some(0)
        } else if self.in_over() == x {
            Some(if self.sign > 0 { 3 } else { 1 })
        } else {
            None
        }
    }

    /// Slot (0..4) through which arc `x` leaves, if it does.
    pub fn out_slot(&self, x: u32) -> Option<usize> {
        if self.arcs[2] == x {
            Some(2)
        } else if self.out_over() == x {
            Some(if self.sign > 0 { 1 } else { 3 })
        } else {
            None
        }
    }
}

/// Where an arc starts and ends: `(crossing, slot)` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcEnds {
    pub tail: (usize, usize),
    pub head: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Arcs in travel order starting from the smallest id; empty for a
    /// crossingless circle.
    pub arcs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    ends: BTreeMap<u32, ArcEnds>,
    components: Vec<Component>,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<LinkDiagram> {
        let mut tails: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        let mut heads: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (i, c) in crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Parse(format!("crossing {i} has sign {}", c.sign)));
            }
            for s in 0..4 {
                let x = c.arcs[s];
                let is_in = s == 0 || (s == 3 && c.sign > 0) || (s == 1 && c.sign < 0);
                let map = if is_in { &mut heads } else { &mut tails };
                if map.insert(x, (i, s)).is_some() {
                    return Err(Error::Parse(format!(
                        "inconsistent orientation: arc {x} {} twice",
                        if is_in { "enters a crossing" } else { "leaves a crossing" }
                    )));
                }
            }
        }
        let mut ends = BTreeMap::new();
        for (&x, &tail) in &tails {
            let head = *heads
                .get(&x)
                .ok_or_else(|| Error::Parse(format!("inconsistent orientation: arc {x} never enters a crossing")))?;
            ends.insert(x, ArcEnds { tail, head });
        }
        if let Some(x) = heads.keys().find(|x| !tails.contains_key(x)) {
            return Err(Error::Parse(format!("inconsistent orientation: arc {x} never leaves a crossing")));
        }
        let mut d = LinkDiagram {
            crossings,
            free_loops,
            ends,
            components: Vec::new(),
        };
        d.components = d.trace_components();
        Ok(d)
    }

    /// The arc following `x` along its strand.
    pub fn next_arc(&self, x: u32) -> u32 {
        let (c, s) = self.ends[&x].head;
        let cr = &self.crossings[c];
        if s == 0 {
            cr.out_under()
        } else {
            cr.out_over()
        }
    }

    fn trace_components(&self) -> Vec<Component> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.ends.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut arcs = vec![start];
            seen.insert(start);
            let mut x = self.next_arc(start);
            while x != start {
                seen.insert(x);
                arcs.push(x);
                x = self.next_arc(x);
            }
            out.push(Component { arcs });
        }
        out.extend((0..self.free_loops).map(|_| Component { arcs: Vec::new() }));
        out
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn arc_ends(&self, x: u32) -> ArcEnds {
        self.ends[&x]
    }

    pub fn arcs(&self) -> impl Iterator<Item = u32> + '_ {
        self.ends.keys().copied()
    }

    /// Component index of each arc.
    pub fn arc_component(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for &x in &c.arcs {
                m.insert(x, i);
            }
        }
        m
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 0
    }

    /// Distant union, with the arcs of `other` renumbered past ours.
    /// Components of `self` come first.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let shift = self.ends.keys().last().map_or(0, |&m| m);
        let mut cs = self.crossings.clone();
        cs.extend(other.crossings.iter().map(|c| Crossing {
            arcs: c.arcs.map(|x| x + shift),
            sign: c.sign,
        }));
        let mut d = LinkDiagram::new(cs, self.free_loops + other.free_loops).expect("union of valid diagrams");
        // Keep the crossingless circles of each part with their own part.
        let n_self = self.components.len() - self.free_loops;
        let n_other = other.components.len() - other.free_loops;
        let mut comps = d.components[..n_self].to_vec();
        comps.extend((0..self.free_loops).map(|_| Component { arcs: Vec::new() }));
        comps.extend(d.components[n_self..n_self + n_other].iter().cloned());
        comps.extend((0..other.free_loops).map(|_| Component { arcs: Vec::new() }));
        d.components = comps;
        d
    }

    /// Groups of components that share no crossings, as separate diagrams
    /// together with the indices of their components.
    pub fn split(&self) -> Vec<(LinkDiagram, Vec<usize>)> {
        let comp_of = self.arc_component();
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for c in &self.crossings {
            let (x, y) = (find(&mut parent, comp_of[&c.arcs[0]]), find(&mut parent, comp_of[&c.arcs[1]]));
            parent[x] = y;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out = Vec::new();
        for (_, members) in groups {
            let arcs: BTreeSet<u32> = members.iter().flat_map(|&i| self.components[i].arcs.iter().copied()).collect();
            let cs: Vec<Crossing> = self
                .crossings
                .iter()
                .filter(|c| arcs.contains(&c.arcs[0]))
                .copied()
                .collect();
            let loops = members.iter().filter(|&&i| self.components[i].arcs.is_empty()).count();
            let mut d = LinkDiagram::new(cs, loops).expect("sub-diagram of a valid diagram");
            // Preserve the parent's component order within the group.
            d.components = members.iter().map(|&i| self.components[i].clone()).collect();
            out.push((d, members));
        }
        out
    }

    /// The same diagram with every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let cs = self
            .crossings
            .iter()
            .map(|c| {
                // Rotate so the old over-strand's entry becomes slot 0.
                let [a, b, c2, d] = c.arcs;
                let arcs = if c.sign > 0 { [d, a, b, c2] } else { [b, c2, d, a] };
                Crossing { arcs, sign: -c.sign }
            })
            .collect();
        let mut m = LinkDiagram::new(cs, self.free_loops).expect("mirror of a valid diagram");
        m.components = self.components.clone();
        m
    }

    /// Switches crossing `i`, keeping all orientations.
    pub fn switch_crossing(&self, i: usize) -> LinkDiagram {
        let mut cs = self.crossings.clone();
        let [a, b, c, d] = cs[i].arcs;
        cs[i] = if cs[i].sign > 0 {
            Crossing { arcs: [d, a, b, c], sign: -1 }
        } else {
            Crossing { arcs: [b, c, d, a], sign: 1 }
        };
        LinkDiagram::new(cs, self.free_loops).expect("switching keeps a diagram valid")
    }

    /// Replaces crossing `i` by its oriented smoothing.
    pub fn smooth_crossing(&self, i: usize) -> LinkDiagram {
        let c = self.crossings[i];
        let mut cs: Vec<Crossing> = self.crossings.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &c)| c).collect();
        let mut loops = self.free_loops;
        let mut pairs = [(c.in_under(), c.out_over()), (c.in_over(), c.out_under())];
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
            for cr in cs.iter_mut() {
                cr.arcs.iter_mut().for_each(rename);
            }
            for p in pairs[k + 1..].iter_mut() {
                rename(&mut p.0);
                rename(&mut p.1);
            }
        }
        LinkDiagram::new(cs, loops).expect("smoothing keeps a diagram valid")
    }

    /// Reverses the orientation of component `k`.
    pub fn reverse_component(&self, k: usize) -> LinkDiagram {
        let comp_of = self.arc_component();
        let cs = self
            .crossings
            .iter()
            .map(|c| {
                let under = comp_of[&c.arcs[0]] == k;
                let over = comp_of[&c.arcs[1]] == k;
                let [a, b, x, d] = c.arcs;
                let arcs = if under { [x, d, a, b] } else { c.arcs };
                let sign = if under != over { -c.sign } else { c.sign };
                Crossing { arcs, sign }
            })
            .collect();
        let mut r = LinkDiagram::new(cs, self.free_loops).expect("reversal keeps a diagram valid");
        r.components = self
            .components
            .iter()
            .map(|old| match old.arcs.first() {
                Some(x) => r.components.iter().find(|c| c.arcs.contains(x)).unwrap().clone(),
                None => old.clone(),
            })
            .collect();
        r
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.crossings {
            let [a, b, x, d] = c.arcs;
            s.push_str(&format!("X({a},{b},{x},{d}){}\n", if c.sign > 0 { '+' } else { '-' }));
        }
        for _ in 0..self.free_loops {
            s.push_str("O\n");
        }
        s
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses `X(a,b,c,d)+`, `X(a,b,c,d)-` and `O` entries separated by
/// whitespace, commas or newlines; `#` starts a comment. Square brackets
/// are accepted in place of parentheses. A crossing without a sign gets
/// the one forced by the orientations of its neighbours.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut raw: Vec<([u32; 4], Option<i8>)> = Vec::new();
    let mut loops = 0;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut rest = line.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';');
            if rest.is_empty() {
                break;
            }
            if let Some(r) = rest.strip_prefix('O') {
                loops += 1;
                rest = r;
                continue;
            }
            let r = rest
                .strip_prefix('X')
                .ok_or_else(|| Error::Parse(format!("malformed PD entry near {rest:?}")))?;
            let (open, close) = match r.chars().next() {
                Some('(') => ('(', ')'),
                Some('[') => ('[', ']'),
                _ => return Err(Error::Parse(format!("malformed PD entry near {rest:?}"))),
            };
            let end = r
                .find(close)
                .ok_or_else(|| Error::Parse(format!("unclosed {open} in {rest:?}")))?;
            let nums: Vec<u32> = r[1..end]
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad arc label in {:?}", &r[..=end])))?;
            let arcs: [u32; 4] = nums
                .try_into()
                .map_err(|_| Error::Parse(format!("crossing {:?} needs four arcs", &r[..=end])))?;
            let mut tail = &r[end + 1..];
            let sign = match tail.chars().next() {
                Some('+') => {
                    tail = &tail[1..];
                    Some(1)
                }
                Some('-') => {
                    tail = &tail[1..];
                    Some(-1)
                }
                _ => None,
            };
            raw.push((arcs, sign));
            rest = tail;
        }
    }
    let signs = infer_signs(&raw)?;
    let crossings = raw
        .iter()
        .zip(signs)
        .map(|(&(arcs, _), sign)| Crossing { arcs, sign })
        .collect();
    LinkDiagram::new(crossings, loops)
}

/// Fills in missing signs by propagating arc orientations: every arc must
/// enter exactly one crossing and leave exactly one. Over-strands of
/// components that are never under anything get the positive choice.
fn infer_signs(raw: &[([u32; 4], Option<i8>)]) -> Result<Vec<i8>> {
    let mut sign: Vec<Option<i8>> = raw.iter().map(|r| r.1).collect();
    loop {
        let mut ins: BTreeMap<u32, usize> = BTreeMap::new();
        let mut outs: BTreeMap<u32, usize> = BTreeMap::new();
        for (i, (arcs, _)) in raw.iter().enumerate() {
            *ins.entry(arcs[0]).or_default() += 1;
            *outs.entry(arcs[2]).or_default() += 1;
            if let Some(s) = sign[i] {
                let (pi, po) = if s > 0 { (3, 1) } else { (1, 3) };
                *ins.entry(arcs[pi]).or_default() += 1;
                *outs.entry(arcs[po]).or_default() += 1;
            }
        }
        let mut progress = false;
        let mut pending = None;
        for (i, (arcs, _)) in raw.iter().enumerate() {
            if sign[i].is_some() {
                continue;
            }
            let (b, d) = (arcs[1], arcs[3]);
            let forced = if ins.contains_key(&d) || outs.contains_key(&b) {
                Some(-1)
            } else if outs.contains_key(&d) || ins.contains_key(&b) {
                Some(1)
            } else {
                None
            };
            if forced.is_some() {
                sign[i] = forced;
                progress = true;
                break;
            }
            pending.get_or_insert(i);
        }
        if !progress {
            match pending {
                Some(i) => sign[i] = Some(1),
                None => break,
            }
        }
    }
    Ok(sign.into_iter().map(|s| s.unwrap()).collect())
}

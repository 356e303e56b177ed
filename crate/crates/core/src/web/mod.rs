//! Boundary-anchored planar webs for the sl(3) calculus.
//!
//! A web lives in a disk with boundary points listed clockwise from a
//! distinguished first point. Darts `0..nb` sit at the boundary points; the
//! trivalent vertex `v` owns darts `nb + 3v .. nb + 3v + 3`, listed clockwise.
//! `twin` pairs the two ends of every edge. A boundary sign `Plus` means the
//! edge at that point is directed into the disk.

mod builder;
mod canon;
mod faces;
mod json;
mod random;
mod sum;

pub use builder::{Port, WebBuilder};
pub use faces::Face;
pub use json::{BoundaryJson, VertexJson, WebJson};
pub use random::random_closed_web;
pub use sum::{RatAccumulator, WebSum};

use std::fmt;

use crate::error::{Error, Result};

/// Boundary label: disk orientation for webs, strand type for tangles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Parses a string of `+`/`-` symbols.
pub fn parse_signs(s: &str) -> Result<Vec<Sign>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| Sign::from_symbol(c).ok_or_else(|| Error::Parse(format!("bad sign {c:?} in {s:?}"))))
        .collect()
}

pub fn render_signs(s: &[Sign]) -> String {
    s.iter().map(|x| x.symbol()).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Kind {
    /// All three edges point away from the vertex.
    Source,
    /// All three edges point into the vertex.
    Sink,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Source => Kind::Sink,
            Kind::Sink => Kind::Source,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Web {
    pub(crate) signs: Vec<Sign>,
    pub(crate) kinds: Vec<Kind>,
    pub(crate) twin: Vec<u32>,
    pub(crate) loops: u32,
}

impl Web {
    /// The empty closed web.
    pub fn empty() -> Web {
        Web {
            signs: Vec::new(),
            kinds: Vec::new(),
            twin: Vec::new(),
            loops: 0,
        }
    }

    /// Validates raw parts: involution, orientation and planarity.
    pub fn from_parts(signs: Vec<Sign>, kinds: Vec<Kind>, twin: Vec<u32>, loops: u32) -> Result<Web> {
        let w = Web {
            signs,
            kinds,
            twin,
            loops,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn nb(&self) -> usize {
        self.signs.len()
    }

    pub fn nv(&self) -> usize {
        self.kinds.len()
    }

    pub fn ndarts(&self) -> usize {
        self.twin.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn kinds(&self) -> &[Kind] {
        &self.kinds
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d] as usize
    }

    /// The vertex owning dart `d`, or `None` for a boundary dart.
    pub fn vertex_of(&self, d: usize) -> Option<usize> {
        d.checked_sub(self.nb()).map(|x| x / 3)
    }

    pub fn vertex_dart(&self, v: usize, slot: usize) -> usize {
        self.nb() + 3 * v + slot
    }

    /// Next dart clockwise around the same vertex.
    pub fn rot(&self, d: usize) -> usize {
        let nb = self.nb();
        debug_assert!(d >= nb);
        nb + (d - nb) / 3 * 3 + (d - nb + 1) % 3
    }

    /// True iff the edge at dart `d` points away from `d`'s endpoint.
    pub fn dart_out(&self, d: usize) -> bool {
        match self.vertex_of(d) {
            None => self.signs[d] == Sign::Plus,
            Some(v) => self.kinds[v] == Kind::Source,
        }
    }

    pub fn with_loops(mut self, loops: u32) -> Web {
        self.loops = loops;
        self
    }

    pub fn without_loops(&self) -> Web {
        let mut w = self.clone();
        w.loops = 0;
        w
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ndarts();
        if n != self.nb() + 3 * self.nv() {
            return Err(Error::Web(format!(
                "dart count {n} does not match {} boundary points and {} vertices",
                self.nb(),
                self.nv()
            )));
        }
        for d in 0..n {
            let t = self.twin[d] as usize;
            if t >= n || t == d || self.twin[t] as usize != d {
                return Err(Error::Web(format!("twin is not a fixed-point-free involution at dart {d}")));
            }
            if self.dart_out(d) == self.dart_out(t) {
                let at = match self.vertex_of(d) {
                    Some(v) => format!("vertex {v}"),
                    None => format!("boundary point {d}"),
                };
                return Err(Error::Web(format!("orientation mismatch on the edge at {at}")));
            }
        }
        let chi = self.euler_characteristic();
        let expected = 2 * self.components() as i64;
        if chi != expected {
            return Err(Error::Web(format!(
                "not planar: V - E + F = {chi}, expected {expected}"
            )));
        }
        Ok(())
    }

    /// `V - E + F` of the map closed up by the boundary circle.
    pub fn euler_characteristic(&self) -> i64 {
        let nb = self.nb() as i64;
        let v = nb + self.nv() as i64;
        let e = self.ndarts() as i64 / 2 + if nb > 0 { nb } else { 0 };
        let f = self.face_orbits().len() as i64;
        v - e + f
    }

    /// Connected components of the map closed up by the boundary circle.
    pub fn components(&self) -> usize {
        let (_, closed) = self.component_labels();
        closed + usize::from(self.nb() > 0)
    }

    /// Per-vertex component label: `None` when connected to the boundary,
    /// otherwise `Some(k)` for the `k`-th closed component. Returns the labels
    /// and the number of closed components.
    pub(crate) fn component_labels(&self) -> (Vec<Option<usize>>, usize) {
        let nb = self.nb();
        let nv = self.nv();
        let mut label: Vec<Option<Option<usize>>> = vec![None; nv];
        let mut stack = Vec::new();
        for b in 0..nb {
            if let Some(v) = self.vertex_of(self.twin(b)) {
                if label[v].is_none() {
                    label[v] = Some(None);
                    stack.push(v);
                }
            }
        }
        let spread = |stack: &mut Vec<usize>, label: &mut Vec<Option<Option<usize>>>, tag: Option<usize>| {
            while let Some(v) = stack.pop() {
                for s in 0..3 {
                    if let Some(w) = self.vertex_of(self.twin(nb + 3 * v + s)) {
                        if label[w].is_none() {
                            label[w] = Some(tag);
                            stack.push(w);
                        }
                    }
                }
            }
        };
        spread(&mut stack, &mut label, None);
        let mut closed = 0;
        for v in 0..nv {
            if label[v].is_none() {
                label[v] = Some(Some(closed));
                stack.push(v);
                spread(&mut stack, &mut label, Some(closed));
                closed += 1;
            }
        }
        (label.into_iter().map(|l| l.unwrap()).collect(), closed)
    }

    /// Reverses every arrow: boundary signs and vertex kinds flip.
    pub fn reversed(&self) -> Web {
        Web {
            signs: self.signs.iter().map(|s| s.flip()).collect(),
            kinds: self.kinds.iter().map(|k| k.flip()).collect(),
            twin: self.twin.clone(),
            loops: self.loops,
        }
    }

    /// Mirror image: boundary order and every rotation reversed.
    pub fn reflected(&self) -> Web {
        let nb = self.nb();
        let map = |d: usize| -> usize {
            if d < nb {
                nb - 1 - d
            } else {
                let v = (d - nb) / 3;
                let s = (d - nb) % 3;
                nb + 3 * v + (3 - s) % 3
            }
        };
        let mut twin = vec![0u32; self.ndarts()];
        for d in 0..self.ndarts() {
            twin[map(d)] = map(self.twin(d)) as u32;
        }
        Web {
            signs: self.signs.iter().rev().copied().collect(),
            kinds: self.kinds.clone(),
            twin,
            loops: self.loops,
        }
    }

    /// Cyclically relabels the boundary so that old point `k` becomes point 0.
    pub fn rotated(&self, k: usize) -> Web {
        let nb = self.nb();
        if nb == 0 {
            return self.clone();
        }
        let k = k % nb;
        let map = |d: usize| if d < nb { (d + nb - k) % nb } else { d };
        let mut twin = vec![0u32; self.ndarts()];
        let mut signs = vec![Sign::Plus; nb];
        for d in 0..self.ndarts() {
            twin[map(d)] = map(self.twin(d)) as u32;
        }
        for b in 0..nb {
            signs[map(b)] = self.signs[b];
        }
        Web {
            signs,
            kinds: self.kinds.clone(),
            twin,
            loops: self.loops,
        }
    }

    /// Replaces the vertices in `removed` by rewiring: each pair `(x, y)` of
    /// darts on removed vertices states that the strand leaving the removed
    /// region through `x` continues through `y`. Unpaired darts of removed
    /// vertices are discarded. Closed cycles become free loops.
    pub(crate) fn splice(&self, removed: &[usize], pairs: &[(usize, usize)]) -> Web {
        let nb = self.nb();
        let nv = self.nv();
        let mut gone = vec![false; nv];
        for &v in removed {
            gone[v] = true;
        }
        let is_gone = |d: usize| self.vertex_of(d).is_some_and(|v| gone[v]);
        let mut partner = vec![usize::MAX; self.ndarts()];
        for &(x, y) in pairs {
            partner[x] = y;
            partner[y] = x;
        }
        let mut new_id = vec![usize::MAX; nv];
        let mut kinds = Vec::with_capacity(nv - removed.len());
        for v in 0..nv {
            if !gone[v] {
                new_id[v] = kinds.len();
                kinds.push(self.kinds[v]);
            }
        }
        let map = |d: usize| -> usize {
            if d < nb {
                d
            } else {
                let v = (d - nb) / 3;
                nb + 3 * new_id[v] + (d - nb) % 3
            }
        };
        let mut twin = vec![u32::MAX; nb + 3 * kinds.len()];
        let mut seen = vec![false; self.ndarts()];
        for d in 0..self.ndarts() {
            if is_gone(d) {
                continue;
            }
            let t = self.twin(d);
            if !is_gone(t) {
                twin[map(d)] = map(t) as u32;
                continue;
            }
            if seen[t] {
                continue;
            }
            let mut cur = t;
            loop {
                seen[cur] = true;
                let nxt = partner[cur];
                debug_assert!(nxt != usize::MAX, "unpaired external dart {cur}");
                seen[nxt] = true;
                let y = self.twin(nxt);
                if is_gone(y) {
                    cur = y;
                } else {
                    twin[map(d)] = map(y) as u32;
                    twin[map(y)] = map(d) as u32;
                    break;
                }
            }
        }
        let mut loops = self.loops;
        for &(x, _) in pairs {
            if seen[x] {
                continue;
            }
            let mut cur = x;
            loop {
                seen[cur] = true;
                let nxt = partner[cur];
                seen[nxt] = true;
                cur = self.twin(nxt);
                if seen[cur] {
                    break;
                }
            }
            loops += 1;
        }
        let w = Web {
            signs: self.signs.clone(),
            kinds,
            twin,
            loops,
        };
        debug_assert!(w.validate().is_ok(), "splice produced an invalid web: {:?}", w.validate());
        w
    }
}

impl fmt::Debug for Web {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Web({})", self.key_string())
    }
}

#[cfg(test)]
mod tests;

/// Glues the last `k` boundary points of `a` to the first `k` of `b`, in
/// reverse order: `a[M-k+t]` meets `b[k-1-t]`. The result's boundary is the
/// rest of `a` followed by the rest of `b`.
pub fn glue(a: &Web, b: &Web, k: usize) -> Result<Web> {
    let (ma, mb) = (a.nb(), b.nb());
    if k > ma || k > mb {
        return Err(Error::Web(format!("cannot glue {k} points onto webs with {ma} and {mb}")));
    }
    for t in 0..k {
        if a.signs[ma - k + t] == b.signs[k - 1 - t] {
            return Err(Error::Web(format!("interface orientation mismatch at glued point {t}")));
        }
    }
    let mut bld = WebBuilder::new();
    let outer: Vec<Port> = a.signs[..ma - k]
        .iter()
        .chain(&b.signs[k..])
        .map(|&s| bld.boundary(s))
        .collect();
    let pa = bld.embed(a);
    let pb = bld.embed(b);
    for t in 0..k {
        bld.connect(pa[ma - k + t], pb[k - 1 - t]);
    }
    for (i, &p) in pa[..ma - k].iter().enumerate() {
        bld.connect(outer[i], p);
    }
    for (i, &p) in pb[k..].iter().enumerate() {
        bld.connect(outer[ma - k + i], p);
    }
    bld.finish()
}

/// Disjoint union placed side by side: boundary of `a` then boundary of `b`.
pub fn juxtapose(a: &Web, b: &Web) -> Web {
    let mut bld = WebBuilder::new();
    let outer: Vec<Port> = a.signs.iter().chain(&b.signs).map(|&s| bld.boundary(s)).collect();
    let mut ports = bld.embed(a);
    ports.extend(bld.embed(b));
    for (o, p) in outer.into_iter().zip(ports) {
        bld.connect(o, p);
    }
    bld.finish().expect("juxtaposition of valid webs is valid")
}

impl Web {
    /// Sub-web on the given vertices, keeping the boundary iff `with_boundary`.
    /// The vertex set must be closed under adjacency (together with the
    /// boundary when kept).
    fn extract(&self, with_boundary: bool, verts: &[usize]) -> Web {
        let nb = self.nb();
        let nnb = if with_boundary { nb } else { 0 };
        let mut new_id = vec![usize::MAX; self.nv()];
        for (i, &v) in verts.iter().enumerate() {
            new_id[v] = i;
        }
        let map = |d: usize| -> usize {
            if d < nb {
                d
            } else {
                nnb + 3 * new_id[(d - nb) / 3] + (d - nb) % 3
            }
        };
        let mut twin = vec![0u32; nnb + 3 * verts.len()];
        if with_boundary {
            for b in 0..nb {
                twin[b] = map(self.twin(b)) as u32;
            }
        }
        for &v in verts {
            for s in 0..3 {
                let d = nb + 3 * v + s;
                twin[map(d)] = map(self.twin(d)) as u32;
            }
        }
        Web {
            signs: if with_boundary { self.signs.clone() } else { Vec::new() },
            kinds: verts.iter().map(|&v| self.kinds[v]).collect(),
            twin,
            loops: 0,
        }
    }

    /// Splits into the boundary-connected part (keeping the loop count) and
    /// the closed connected components.
    pub fn split_components(&self) -> (Web, Vec<Web>) {
        let (labels, nclosed) = self.component_labels();
        if nclosed == 0 {
            return (self.clone(), Vec::new());
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); nclosed];
        let mut main = Vec::new();
        for (v, l) in labels.iter().enumerate() {
            match l {
                None => main.push(v),
                Some(k) => groups[*k].push(v),
            }
        }
        let mut m = self.extract(true, &main);
        m.loops = self.loops;
        (m, groups.iter().map(|g| self.extract(false, g)).collect())
    }
}

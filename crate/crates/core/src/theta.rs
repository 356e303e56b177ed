//! sl(3) trihedron coefficients: a clasped theta web whose three edges carry
//! irreducible representations.
//!
//! A basis of `Inv(V_1 ⊗ V_2 ⊗ V_3)` is given by webs in the upper half
//! plane ending on three clasped groups `G1, G2, G3` (left to right). Each
//! pair of groups is joined by nested arcs, the left-to-right ones outside,
//! and a hexagonal triangle of side `m` sits in the middle. With `u_ij` the
//! number of arcs from `G_i` to `G_j`, a triple is admissible when
//! `a_i = sum_j u_ij + m_sink` and `b_i = sum_j u_ji + m_source` have a
//! nonnegative solution. The solutions form a segment parametrized by
//! `t = u_13`; entry `(i, j)` of the trihedron matrix pairs the `i`-th and
//! `j`-th webs of that segment through the clasps.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::qpoly::RatFunc;
use crate::rep::Weight;
use crate::sl3::clasp::{clasp_with, nonsegregate};
use crate::sl3::tangle::Frame;
use crate::sl3::Tangle;
use crate::web::{Kind, Port, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arcs {
    pub u12: u32,
    pub u21: u32,
    pub u13: u32,
    pub u31: u32,
    pub u23: u32,
    pub u32: u32,
    /// Side of the central triangle and whether its vertices on the
    /// boundary are sources.
    pub m: u32,
    pub source: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissible {
    pub weights: [Weight; 3],
    /// `min{a_i, b_i}`.
    pub min_label: u32,
    /// Matrix size minus one.
    pub d: u32,
    pub t_min: u32,
}

impl Admissible {
    pub fn size(&self) -> usize {
        self.d as usize + 1
    }

    /// Arc counts of the `i`-th basis web.
    pub fn arcs(&self, i: u32) -> Arcs {
        arcs_at(&self.weights, self.t_min + i).expect("index within the admissible segment")
    }
}

fn triangle(w: &[Weight; 3]) -> Option<(u32, bool)> {
    let sa: i64 = w.iter().map(|x| x.a as i64).sum();
    let sb: i64 = w.iter().map(|x| x.b as i64).sum();
    let diff = sa - sb;
    if diff % 3 != 0 {
        return None;
    }
    // A sink triangle adds to every a_i, a source triangle to every b_i.
    Some(((diff / 3).unsigned_abs() as u32, diff < 0))
}

fn arcs_at(w: &[Weight; 3], t: u32) -> Option<Arcs> {
    let (m, source) = triangle(w)?;
    let (ms, mk) = if source { (m as i64, 0) } else { (0, m as i64) };
    let [(a1, b1), (a2, b2), (a3, b3)] = w.map(|x| (x.a as i64, x.b as i64));
    let t = t as i64;
    let u13 = t;
    let u23 = b3 - ms - t;
    let u12 = a1 - mk - t;
    let u32 = b2 - ms - u12;
    let u21 = a2 - mk - u23;
    let u31 = a3 - mk - u32;
    let all = [u12, u21, u13, u31, u23, u32];
    if all.iter().any(|&x| x < 0) || u21 + u31 + ms != b1 {
        return None;
    }
    let c = |x: i64| x as u32;
    Some(Arcs {
        u12: c(u12),
        u21: c(u21),
        u13: c(u13),
        u31: c(u31),
        u23: c(u23),
        u32: c(u32),
        m,
        source,
    })
}

/// The segment of basis webs, or `None` when the invariant space is zero.
pub fn admissible(w: [Weight; 3]) -> Option<Admissible> {
    let upper = w[0].a.min(w[2].b);
    let ts: Vec<u32> = (0..=upper).filter(|&t| arcs_at(&w, t).is_some()).collect();
    let (&lo, &hi) = (ts.first()?, ts.last()?);
    debug_assert_eq!(ts.len() as u32, hi - lo + 1);
    let min_label = w.iter().flat_map(|x| [x.a, x.b]).min().unwrap();
    Some(Admissible {
        weights: w,
        min_label,
        d: hi - lo,
        t_min: lo,
    })
}

/// Nonnegative integers `k, l, m, n, o, p, q` with `d = min{a_i, b_i}`,
/// `a2 = d+l+p`, `a3 = d+n+q`, `b1 = d+k+p`, `b2 = d+m+q`, `b3 = d+o` and
/// `k-n = o-l = m`. This labelling of the trihedron figure places no
/// condition on `a1` and does not match [`admissible`]: it rejects the
/// all-vector triple and accepts `((1,0),(0,0),(0,0))`.
pub fn figure_labels(w: [Weight; 3]) -> Option<[u32; 7]> {
    let d = w.iter().flat_map(|x| [x.a, x.b]).min().unwrap() as i64;
    let [(_, b1), (a2, b2), (a3, b3)] = w.map(|x| (x.a as i64, x.b as i64));
    let o = b3 - d;
    let top = [a2, a3, b1, b2, b3].into_iter().max().unwrap();
    for m in 0..=top {
        let l = o - m;
        let p = a2 - d - l;
        let k = b1 - d - p;
        let n = k - m;
        let q = a3 - d - n;
        let all = [k, l, m, n, o, p, q];
        if all.iter().all(|&x| x >= 0) && b2 == d + m + q {
            return Some(all.map(|x| x as u32));
        }
    }
    None
}

/// Strand types of each group, left to right.
pub fn group_types(x: &Arcs) -> [Vec<Sign>; 3] {
    use Sign::{Minus, Plus};
    let rep = |s: Sign, n: u32| vec![s; n as usize];
    let tri = if x.source { Minus } else { Plus };
    let cat = |parts: Vec<Vec<Sign>>| parts.concat();
    [
        cat(vec![rep(Plus, x.u13), rep(Minus, x.u31), rep(tri, x.m), rep(Plus, x.u12), rep(Minus, x.u21)]),
        cat(vec![rep(Plus, x.u21), rep(Minus, x.u12), rep(tri, x.m), rep(Plus, x.u23), rep(Minus, x.u32)]),
        cat(vec![rep(Plus, x.u32), rep(Minus, x.u23), rep(tri, x.m), rep(Plus, x.u31), rep(Minus, x.u13)]),
    ]
}

/// The basis web as a tangle with empty top.
pub fn basis_web(x: &Arcs) -> Tangle {
    let groups = group_types(x);
    let bottom: Vec<Sign> = groups.concat();
    let mut f = Frame::new(&[], &bottom);
    let (n1, n2) = (groups[0].len(), groups[1].len());
    let pos = |g: usize, k: usize| [0, n1, n1 + n2][g] + k;
    let ports = f.bottom.clone();
    let m = x.m as usize;
    let (u12, u21, u13, u31, u23, u32) = (
        x.u12 as usize,
        x.u21 as usize,
        x.u13 as usize,
        x.u31 as usize,
        x.u23 as usize,
        x.u32 as usize,
    );
    let mut nest = |a: usize, b: usize, len: usize| {
        for k in 0..len {
            f.b.connect(ports[a + k], ports[b + len - 1 - k]);
        }
    };
    nest(pos(0, 0), pos(2, u32 + u23 + m), u13 + u31);
    nest(pos(0, u13 + u31 + m), pos(1, 0), u12 + u21);
    nest(pos(1, u21 + u12 + m), pos(2, 0), u23 + u32);
    if m > 0 {
        // Triangle positions in clockwise order: G3, G2, G1, each right to left.
        let mut cw: Vec<Port> = Vec::new();
        for (g, start) in [(2, u32 + u23), (1, u21 + u12), (0, u13 + u31)] {
            cw.extend((0..m).rev().map(|k| ports[pos(g, start + k)]));
        }
        let stubs = hex_triangle(&mut f, m, x.source);
        for (s, p) in stubs.into_iter().zip(cw) {
            f.b.connect(s, p);
        }
    }
    Tangle::from_web(Vec::new(), bottom, &f.finish())
}

/// Adds the side-`m` triangular cut-out of the hexagonal tiling and returns
/// its free ports clockwise, starting at the top of the right side.
fn hex_triangle(f: &mut Frame, m: usize, source: bool) -> Vec<Port> {
    let (outer, inner) = if source { (Kind::Source, Kind::Sink) } else { (Kind::Sink, Kind::Source) };
    // Lattice vertex (r, c), 0 <= c <= r < m: ports [up-left, up-right, down].
    let lattice: Vec<Vec<[Port; 3]>> = (0..m).map(|r| (0..=r).map(|_| f.b.vertex(outer)).collect()).collect();
    // Centre of the upward triangle (r,c), (r+1,c), (r+1,c+1): ports
    // [top, lower-right, lower-left].
    for r in 0..m.saturating_sub(1) {
        for c in 0..=r {
            let v = f.b.vertex(inner);
            f.b.connect(v[0], lattice[r][c][2]);
            f.b.connect(v[1], lattice[r + 1][c + 1][0]);
            f.b.connect(v[2], lattice[r + 1][c][1]);
        }
    }
    let mut out = Vec::with_capacity(3 * m);
    out.extend((0..m).map(|r| lattice[r][r][1]));
    out.extend((0..m).rev().map(|c| lattice[m - 1][c][2]));
    out.extend((0..m).rev().map(|r| lattice[r][0][0]));
    out
}

/// The three clasps, each expanded from pattern `top` to pattern `bottom`.
fn clasps(adm: &Admissible, top: &Arcs, bottom: &Arcs, cfg: &Config) -> Result<Tangle> {
    let (gt, gb) = (group_types(top), group_types(bottom));
    let mut total = Tangle::identity(&[]);
    for ((w, tt), tb) in adm.weights.iter().zip(&gt).zip(&gb) {
        let c = clasp_with(w.a as usize, w.b as usize, cfg)?;
        total = total.tensor(&nonsegregate(&c, tt, tb)?);
    }
    Ok(total)
}

/// Entry `(i, j)` of the trihedron matrix, `0 <= i, j <= d`.
pub fn theta_entry(w: [Weight; 3], i: u32, j: u32, cfg: &Config) -> Result<RatFunc> {
    let adm = admissible(w).ok_or_else(|| Error::Domain(format!("triple {w:?} is not admissible")))?;
    if i > adm.d || j > adm.d {
        return Err(Error::Domain(format!("entry ({i},{j}) outside 0..={}", adm.d)));
    }
    let (xi, xj) = (adm.arcs(i), adm.arcs(j));
    let closed = basis_web(&xi)
        .compose(&clasps(&adm, &xi, &xj, cfg)?)?
        .compose(&basis_web(&xj).dagger())?;
    Ok(closed.as_scalar().expect("closed trihedron web is a scalar"))
}

pub fn theta_matrix(w: [Weight; 3], cfg: &Config) -> Result<Vec<Vec<RatFunc>>> {
    let adm = admissible(w).ok_or_else(|| Error::Domain(format!("triple {w:?} is not admissible")))?;
    (0..=adm.d)
        .map(|i| (0..=adm.d).map(|j| theta_entry(w, i, j, cfg)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::qint;
    use crate::rep::{inv_dim, quantum_dim_sl3, Algebra};

    fn w(a: u32, b: u32) -> Weight {
        Weight::new(a, b)
    }

    fn small_weights(max: u32) -> Vec<Weight> {
        (0..=max).flat_map(|a| (0..=max - a).map(move |b| w(a, b))).collect()
    }

    #[test]
    fn segment_length_matches_invariant_dimension() {
        let ws = small_weights(3);
        for &x in &ws {
            for &y in &ws {
                for &z in &ws {
                    let dim = inv_dim(Algebra::Sl3, &[x, y, z]).unwrap();
                    let got = admissible([x, y, z]).map_or(0, |a| a.size() as u64);
                    assert_eq!(got, dim, "{x:?} {y:?} {z:?}");
                }
            }
        }
    }

    #[test]
    fn vector_triple_is_the_theta_graph() {
        let v = theta_entry([w(1, 0); 3], 0, 0, &Config::default()).unwrap();
        let expected = -(qint(2) * qint(3));
        assert_eq!(v, RatFunc::from(expected));
        assert!(admissible([w(1, 0), w(0, 0), w(0, 0)]).is_none());
    }

    #[test]
    fn trivial_leg_gives_quantum_dimension() {
        let cfg = Config::default();
        for x in small_weights(2) {
            let dual = w(x.b, x.a);
            for t in [[x, dual, w(0, 0)], [w(0, 0), x, dual], [x, w(0, 0), dual]] {
                assert_eq!(theta_entry(t, 0, 0, &cfg).unwrap(), quantum_dim_sl3(x), "{t:?}");
            }
        }
    }

    #[test]
    fn matrices_are_symmetric_bar_invariant_and_invertible() {
        let cfg = Config::default();
        let triples = [
            [w(1, 1), w(1, 1), w(1, 1)],
            [w(1, 1), w(1, 1), w(0, 3)],
            [w(2, 0), w(1, 1), w(1, 0)],
            [w(1, 0), w(1, 0), w(1, 0)],
            [w(2, 1), w(1, 1), w(0, 1)],
        ];
        for t in triples {
            let m = theta_matrix(t, &cfg).unwrap();
            let n = m.len();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(m[i][j], m[j][i], "{t:?} ({i},{j})");
                    assert_eq!(m[i][j], m[i][j].bar(), "{t:?} ({i},{j})");
                }
            }
            assert!(!det(&m).is_zero(), "{t:?} singular");
        }
    }

    #[test]
    fn rotation_preserves_one_by_one_entries() {
        let cfg = Config::default();
        let t = [w(2, 0), w(1, 1), w(1, 0)];
        assert_eq!(admissible(t).unwrap().d, 0);
        let base = theta_entry(t, 0, 0, &cfg).unwrap();
        assert_eq!(theta_entry([t[1], t[2], t[0]], 0, 0, &cfg).unwrap(), base);
        assert_eq!(theta_entry([t[2], t[0], t[1]], 0, 0, &cfg).unwrap(), base);
    }

    #[test]
    fn min_label_counts_the_basis_on_small_weights() {
        let ws = small_weights(3);
        for &x in &ws {
            for &y in &ws {
                for &z in &ws {
                    if let Some(a) = admissible([x, y, z]) {
                        assert_eq!(a.size() as u32, a.min_label + 1, "{x:?} {y:?} {z:?}");
                    }
                }
            }
        }
        // The count drops below min + 1 once a weight reaches 4.
        let t = [w(1, 1), w(1, 1), w(2, 2)];
        assert_eq!(inv_dim(Algebra::Sl3, &t).unwrap(), 1);
        assert_eq!(admissible(t).unwrap().min_label, 1);
        assert_eq!(admissible(t).unwrap().size(), 1);
    }

    #[test]
    fn figure_labelling_disagrees_with_invariant_dimension() {
        let vec3 = [w(1, 0); 3];
        assert_eq!(inv_dim(Algebra::Sl3, &vec3).unwrap(), 1);
        assert!(figure_labels(vec3).is_none());
        let lone = [w(1, 0), w(0, 0), w(0, 0)];
        assert_eq!(inv_dim(Algebra::Sl3, &lone).unwrap(), 0);
        assert!(figure_labels(lone).is_some());
    }

    fn det(m: &[Vec<RatFunc>]) -> RatFunc {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut total = RatFunc::zero();
        for c in 0..m.len() {
            let minor: Vec<Vec<RatFunc>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * &det(&minor);
            total = if c % 2 == 0 { &total + &term } else { &total - &term };
        }
        total
    }
}

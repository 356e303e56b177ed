//! Closed braids as PD diagrams, and random Reidemeister-move pairs.

use rand::Rng;

use super::pd::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

/// Closure of a braid on `n` upward strands. Letter `i > 0` is the positive
/// generator crossing positions `i` and `i + 1` (1-based); `-i` its inverse.
pub fn braid_closure(n: usize, word: &[i32]) -> Result<LinkDiagram> {
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let start: Vec<u32> = (0..n).map(|_| fresh()).collect();
    let mut cur = start.clone();
    let mut raw = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= n {
            return Err(Error::Domain(format!("generator {g} out of range for {n} strands")));
        }
        let (x, y) = (cur[i - 1], cur[i]);
        let (l, r) = (fresh(), fresh());
        let c = if g > 0 {
            Crossing { arcs: [y, r, l, x], sign: 1 }
        } else {
            Crossing { arcs: [x, y, r, l], sign: -1 }
        };
        raw.push(c);
        cur[i - 1] = l;
        cur[i] = r;
    }
    // Identify the top of each position with its bottom.
    let mut alias: Vec<u32> = (0..=next).collect();
    for (t, s) in cur.iter().zip(&start) {
        if t != s {
            alias[*t as usize] = *s;
        }
    }
    let used: std::collections::BTreeSet<u32> =
        raw.iter().flat_map(|c| c.arcs.map(|x| alias[x as usize])).collect();
    let renum: std::collections::BTreeMap<u32, u32> =
        used.iter().enumerate().map(|(k, &x)| (x, k as u32 + 1)).collect();
    let crossings = raw
        .iter()
        .map(|c| Crossing {
            arcs: c.arcs.map(|x| renum[&alias[x as usize]]),
            sign: c.sign,
        })
        .collect();
    let free = (0..n).filter(|&p| cur[p] == start[p]).count();
    LinkDiagram::new(crossings, free)
}

/// A random braid word on `n` strands.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

/// Inserts a cancelling pair `s s^-1` at a random place.
pub fn reidemeister2<R: Rng>(rng: &mut R, n: usize, word: &[i32]) -> Vec<i32> {
    let g = rng.gen_range(1..n as i32) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let at = rng.gen_range(0..=word.len());
    let mut w = word[..at].to_vec();
    w.extend([g, -g]);
    w.extend_from_slice(&word[at..]);
    w
}

/// Inserts a random braid-relation pair: returns words containing
/// `s_i s_j s_i` and `s_j s_i s_j` (with `|i - j| = 1`) or the mixed form
/// `s_i s_j s_i^-1` and `s_j^-1 s_i s_j`, at the same place.
pub fn reidemeister3<R: Rng>(rng: &mut R, n: usize, word: &[i32]) -> (Vec<i32>, Vec<i32>) {
    assert!(n >= 3, "a third-move pair needs three strands");
    let i = rng.gen_range(1..n as i32 - 1);
    let (a, b) = if rng.gen_bool(0.5) { (i, i + 1) } else { (i + 1, i) };
    let e = if rng.gen_bool(0.5) { 1 } else { -1 };
    let (lhs, rhs) = if rng.gen_bool(0.5) {
        ([e * a, e * b, e * a], [e * b, e * a, e * b])
    } else {
        ([a, b, -a], [-b, a, b])
    };
    let at = rng.gen_range(0..=word.len());
    let build = |mid: &[i32]| {
        let mut w = word[..at].to_vec();
        w.extend_from_slice(mid);
        w.extend_from_slice(&word[at..]);
        w
    };
    (build(&lhs), build(&rhs))
}

/// Closures of two-strand tangles with at most `max` crossings: braid
/// closures of every word in the generator and its inverse, plus, for
/// two-component results, the same link with one component reversed.
pub fn two_strand_closures(max: usize) -> Vec<LinkDiagram> {
    let mut out = Vec::new();
    for len in 1..=max {
        for bits in 0..1u32 << len {
            let word: Vec<i32> = (0..len).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
            let d = braid_closure(2, &word).expect("two-strand word");
            if d.components().len() == 2 {
                out.push(d.reverse_component(1));
            }
            out.push(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.crossings().len(), 3);
        assert_eq!(t.components().len(), 1);
        assert_eq!(t.writhe(), 3);
        let h = braid_closure(2, &[-1, -1]).unwrap();
        assert_eq!(h.components().len(), 2);
        assert_eq!(h.writhe(), -2);
    }

    #[test]
    fn identity_braid_is_unlink() {
        let u = braid_closure(3, &[]).unwrap();
        assert_eq!(u.components().len(), 3);
        assert_eq!(u.free_loops(), 3);
        let k = braid_closure(3, &[1]).unwrap();
        assert_eq!(k.components().len(), 2);
        assert_eq!(k.free_loops(), 1);
    }

    #[test]
    fn relation_pairs_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let w = random_word(&mut rng, 3, 3);
            let (l, r) = reidemeister3(&mut rng, 3, &w);
            let (dl, dr) = (braid_closure(3, &l).unwrap(), braid_closure(3, &r).unwrap());
            assert_eq!(dl.components().len(), dr.components().len());
            assert_eq!(dl.writhe(), dr.writhe());
            let w2 = reidemeister2(&mut rng, 3, &w);
            assert_eq!(braid_closure(3, &w2).unwrap().writhe(), braid_closure(3, &w).unwrap().writhe());
        }
    }
}

use super::*;
use proptest::prelude::*;

fn strand() -> Web {
    let mut b = WebBuilder::new();
    let x = b.boundary(Sign::Plus);
    let y = b.boundary(Sign::Minus);
    b.connect(x, y);
    b.finish().unwrap()
}

pub(crate) fn y_sink() -> Web {
    let mut b = WebBuilder::new();
    let ps: Vec<Port> = (0..3).map(|_| b.boundary(Sign::Plus)).collect();
    let v = b.vertex(Kind::Sink);
    for i in 0..3 {
        b.connect(ps[i], v[i]);
    }
    b.finish().unwrap()
}

pub(crate) fn theta() -> Web {
    let mut b = WebBuilder::new();
    let s = b.vertex(Kind::Source);
    let t = b.vertex(Kind::Sink);
    for i in 0..3 {
        b.connect(s[i], t[2 - i]);
    }
    b.finish().unwrap()
}

/// Closed square: four vertices around a square with the outer edges paired.
fn closed_square() -> Web {
    let mut b = WebBuilder::new();
    let vs: Vec<[Port; 3]> = (0..4)
        .map(|i| b.vertex(if i % 2 == 0 { Kind::Source } else { Kind::Sink }))
        .collect();
    for i in 0..4 {
        b.connect(vs[i][0], vs[(i + 1) % 4][1]);
    }
    b.connect(vs[0][2], vs[1][2]);
    b.connect(vs[2][2], vs[3][2]);
    b.finish_validated().unwrap()
}

#[test]
fn identity_strand() {
    let w = strand();
    assert_eq!(w.nb(), 2);
    assert!(w.validate().is_ok());
    assert!(w.interior_faces().is_empty());
}

#[test]
fn y_generator_is_valid() {
    let y = y_sink();
    assert_eq!(y.nv(), 1);
    assert_eq!(y.faces().len(), 3);
    assert!(y.faces().iter().all(|f| f.boundary));
}

#[test]
fn bad_orientation_rejected() {
    let mut b = WebBuilder::new();
    let p = b.boundary(Sign::Plus);
    let q = b.boundary(Sign::Plus);
    let r = b.boundary(Sign::Minus);
    let v = b.vertex(Kind::Sink);
    b.connect(p, v[0]);
    b.connect(q, v[1]);
    b.connect(r, v[2]);
    assert!(b.finish().is_err());
}

#[test]
fn nonplanar_rejected() {
    // K_{3,3} with rotations from an arbitrary labelling is not planar.
    let mut twin = vec![0u32; 18];
    for i in 0..3 {
        for j in 0..3 {
            let a = 3 * i + j;
            let b = 9 + 3 * j + i;
            twin[a] = b as u32;
            twin[b] = a as u32;
        }
    }
    let kinds = vec![Kind::Source, Kind::Source, Kind::Source, Kind::Sink, Kind::Sink, Kind::Sink];
    assert!(Web::from_parts(vec![], kinds, twin, 0).is_err());
}

#[test]
fn circle_has_no_faces() {
    let w = Web::empty().with_loops(1);
    assert!(w.interior_faces().is_empty());
    assert!(w.canonical_key().is_err());
}

#[test]
fn theta_faces_are_bigons() {
    let f = theta().faces();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x.size() == 2 && !x.boundary));
}

#[test]
fn square_face() {
    let w = closed_square();
    let sizes: Vec<usize> = w.faces().iter().map(|f| f.size()).collect();
    assert!(sizes.contains(&4));
}

#[test]
fn mirror_y_distinct() {
    let y = y_sink();
    let m = y.reflected();
    assert_eq!(y.signs(), m.signs());
    // Mirroring a single vertex with symmetric boundary is a rotation, but the
    // H web's mirror is not: compare with a chiral boundary instead.
    assert_eq!(y.canonical_key().unwrap(), m.canonical_key().unwrap());
    let h = h_web();
    assert_ne!(h.canonical_key().unwrap(), h.reflected().canonical_key().unwrap());
}

fn h_web() -> Web {
    // Boundary (+,+,-,-): a sink takes the two incoming strands, a source
    // emits the two outgoing ones.
    let mut b = WebBuilder::new();
    let p: Vec<Port> = [Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus]
        .iter()
        .map(|&s| b.boundary(s))
        .collect();
    let t = b.vertex(Kind::Sink);
    let s = b.vertex(Kind::Source);
    b.connect(p[0], t[0]);
    b.connect(p[1], t[1]);
    b.connect(t[2], s[2]);
    b.connect(p[2], s[0]);
    b.connect(p[3], s[1]);
    b.finish_validated().unwrap()
}

#[test]
fn key_round_trip() {
    for w in [strand(), y_sink(), theta(), closed_square(), h_web()] {
        let k = w.canonical_key().unwrap();
        let back = Web::from_key_string(&k).unwrap();
        assert_eq!(back.canonical_key().unwrap(), k);
        let j = WebJson::from_web(&w);
        let w2 = j.to_web().unwrap();
        assert_eq!(w2.canonical_key().unwrap(), k);
    }
}

#[test]
fn glue_y_sink_with_source_gives_theta() {
    let y = y_sink();
    let src = y.reversed().reflected();
    let t = glue(&y, &src, 3).unwrap();
    assert_eq!(t.nb(), 0);
    assert_eq!(t.canonical(), theta().canonical());
}

#[test]
fn glue_identity() {
    let h = h_web();
    let mut b = WebBuilder::new();
    let p: Vec<Port> = [Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus]
        .iter()
        .map(|&s| b.boundary(s))
        .collect();
    b.connect(p[0], p[3]);
    b.connect(p[1], p[2]);
    let id = b.finish().unwrap();
    let g = glue(&h, &id, 2).unwrap();
    assert_eq!(g.canonical(), h.canonical());
}

/// Relabels vertices and cyclically shifts rotations without changing the web.
fn relabel(w: &Web, perm: &[usize], shifts: &[usize]) -> Web {
    let nb = w.nb();
    let map = |d: usize| -> usize {
        if d < nb {
            d
        } else {
            let v = (d - nb) / 3;
            let s = (d - nb) % 3;
            nb + 3 * perm[v] + (s + shifts[v]) % 3
        }
    };
    let mut twin = vec![0u32; w.ndarts()];
    let mut kinds = vec![Kind::Source; w.nv()];
    for d in 0..w.ndarts() {
        twin[map(d)] = map(w.twin(d)) as u32;
    }
    for v in 0..w.nv() {
        kinds[perm[v]] = w.kinds[v];
    }
    Web::from_parts(w.signs.clone(), kinds, twin, w.loops).unwrap()
}

proptest! {
    #[test]
    fn key_invariant_under_relabel(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        for w in [closed_square(), h_web(), theta(), juxtapose(&h_web(), &theta())] {
            let mut perm: Vec<usize> = (0..w.nv()).collect();
            perm.shuffle(&mut rng);
            let shifts: Vec<usize> = (0..w.nv()).map(|_| rng.gen_range(0..3)).collect();
            let r = relabel(&w, &perm, &shifts);
            prop_assert_eq!(r.canonical_key().unwrap(), w.canonical_key().unwrap());
        }
    }
}

//! Reduction of sl(3) webs by the circle, bigon and square relations.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qpoly::{qint, LaurentPoly};
use crate::web::{Face, RatAccumulator, Web, WebJson, WebSum};

/// Reduced form of a single web: canonical non-elliptic webs with coefficients.
pub type Reduced = Rc<Vec<(Web, LaurentPoly)>>;

fn third_dart(w: &Web, v: usize, a: usize, b: usize) -> usize {
    (0..3)
        .map(|s| w.vertex_dart(v, s))
        .find(|&d| d != a && d != b)
        .expect("trivalent vertex")
}

/// Applies the relation for an interior face of size 2 or 4.
pub fn apply_face(w: &Web, face: &Face) -> Vec<(Web, LaurentPoly)> {
    let f = &face.darts;
    let k = f.len();
    let verts: Vec<usize> = f.iter().map(|&d| w.vertex_of(d).unwrap()).collect();
    let ext: Vec<usize> = (0..k)
        .map(|i| third_dart(w, verts[i], f[i], w.twin(f[(i + k - 1) % k])))
        .collect();
    match k {
        2 => vec![(w.splice(&verts, &[(ext[0], ext[1])]), -qint(2))],
        4 => vec![
            (w.splice(&verts, &[(ext[0], ext[1]), (ext[2], ext[3])]), LaurentPoly::one()),
            (w.splice(&verts, &[(ext[1], ext[2]), (ext[3], ext[0])]), LaurentPoly::one()),
        ],
        _ => panic!("no relation for a face of size {k}"),
    }
}

/// The face the deterministic strategy reduces next: the first bigon, else
/// the first square, in order of smallest dart.
pub fn pick_face(w: &Web) -> Option<Face> {
    let faces = w.interior_faces();
    let mut best: Option<Face> = None;
    for f in faces {
        if f.size() == 2 {
            return Some(f);
        }
        if f.size() == 4 && best.is_none() {
            best = Some(f);
        }
    }
    best
}

fn loop_factor(n: u32) -> LaurentPoly {
    qint(3).pow(n)
}

#[derive(Default)]
pub struct Reducer {
    open: HashMap<Web, Reduced>,
    closed: HashMap<Web, LaurentPoly>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear(&mut self) {
        self.open.clear();
        self.closed.clear();
    }

    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.open.len(), self.closed.len())
    }

    /// Reduces one web to a combination of non-elliptic webs.
    pub fn reduce_web(&mut self, w: &Web) -> Reduced {
        let (main, closed) = w.split_components();
        let mut factor = loop_factor(main.loops);
        for c in &closed {
            factor = &factor * &self.eval_connected(c);
            if factor.is_zero() {
                return Rc::new(Vec::new());
            }
        }
        let key = main.without_loops().canonical();
        let base = match self.open.get(&key) {
            Some(r) => r.clone(),
            None => {
                let r = self.reduce_canonical(&key);
                self.open.insert(key, r.clone());
                r
            }
        };
        if factor.is_one() {
            return base;
        }
        Rc::new(base.iter().map(|(w, c)| (w.clone(), c * &factor)).collect())
    }

    fn reduce_canonical(&mut self, w: &Web) -> Reduced {
        let Some(face) = pick_face(w) else {
            return Rc::new(vec![(w.clone(), LaurentPoly::one())]);
        };
        let mut acc: BTreeMap<Web, LaurentPoly> = BTreeMap::new();
        for (w2, c) in apply_face(w, &face) {
            for (w3, c3) in self.reduce_web(&w2).iter() {
                *acc.entry(w3.clone()).or_default() += &(&c * c3);
            }
        }
        Rc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Scalar value of a closed web.
    pub fn evaluate_closed(&mut self, w: &Web) -> Result<LaurentPoly> {
        if w.nb() != 0 {
            return Err(Error::Web("closed evaluation needs an empty boundary".into()));
        }
        let (main, comps) = w.split_components();
        let mut v = loop_factor(main.loops);
        for c in &comps {
            v = &v * &self.eval_connected(c);
        }
        Ok(v)
    }

    fn eval_connected(&mut self, w: &Web) -> LaurentPoly {
        let key = w.canonical();
        if let Some(v) = self.closed.get(&key) {
            return v.clone();
        }
        let face = pick_face(&key).expect("closed cubic planar web has a face of size at most 4");
        let mut total = LaurentPoly::zero();
        for (w2, c) in apply_face(&key, &face) {
            let v2 = self.evaluate_closed(&w2).expect("closed");
            total += &(&c * &v2);
        }
        self.closed.insert(key, total.clone());
        total
    }

    pub fn reduce(&mut self, s: &WebSum) -> WebSum {
        let mut acc: BTreeMap<Web, RatAccumulator> = BTreeMap::new();
        for (w, c) in s.iter() {
            for (w2, f) in self.reduce_web(w).iter() {
                acc.entry(w2.clone()).or_default().add_scaled(c, f);
            }
        }
        let mut out = WebSum::new();
        for (w, a) in acc {
            out.add_canonical(w, a.finish());
        }
        out
    }
}

thread_local! {
    static REDUCER: RefCell<Reducer> = RefCell::new(Reducer::new());
}

/// Runs `f` with this thread's shared memoizing reducer.
pub fn with_reducer<T>(f: impl FnOnce(&mut Reducer) -> T) -> T {
    REDUCER.with(|r| f(&mut r.borrow_mut()))
}

pub fn reduce(s: &WebSum) -> WebSum {
    with_reducer(|r| r.reduce(s))
}

pub fn reduce_web(w: &Web) -> WebSum {
    with_reducer(|r| {
        r.reduce_web(w)
            .iter()
            .map(|(w, c)| (w.clone(), c.clone().into()))
            .collect()
    })
}

pub fn evaluate_closed(w: &Web) -> Result<LaurentPoly> {
    with_reducer(|r| r.evaluate_closed(w))
}

/// Evaluates without memoization, reducing a uniformly random elliptic face
/// (of any size) at every step.
pub fn evaluate_closed_randomized<R: Rng>(w: &Web, rng: &mut R) -> LaurentPoly {
    let (main, comps) = w.split_components();
    let mut v = loop_factor(main.loops);
    for c in comps {
        let faces: Vec<Face> = c.faces().into_iter().filter(|f| f.size() <= 4).collect();
        let face = &faces[rng.gen_range(0..faces.len())];
        let mut total = LaurentPoly::zero();
        for (w2, coef) in apply_face(&c, face) {
            total += &(&coef * &evaluate_closed_randomized(&w2, rng));
        }
        v = &v * &total;
    }
    v
}

/// Value of a cubic bipartite planar graph, oriented by its two-colouring.
pub fn graph_invariant(g: &WebJson) -> Result<LaurentPoly> {
    let w = g.to_bipartite_web(false)?;
    evaluate_closed(&w)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    pub relation: &'static str,
    /// Vertices of the reduced face, in the numbering of the web at that step.
    pub face: Vec<usize>,
    /// `(faces, elliptic faces)` before the step; free loops count as faces.
    pub before: (usize, usize),
    /// The same measure for each web produced by the step.
    pub after: Vec<(usize, usize)>,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub value: String,
}

/// `(face count, elliptic face count)`, counting each free loop as a face.
pub fn face_measure(w: &Web) -> (usize, usize) {
    let faces = w.faces();
    let ell = faces.iter().filter(|f| f.is_elliptic()).count() + w.loops() as usize;
    (faces.len() + w.loops() as usize, ell)
}

/// Deterministic closed evaluation recording every relation applied.
pub fn evaluate_closed_traced(w: &Web) -> Result<ReductionTrace> {
    if w.nb() != 0 {
        return Err(Error::Web("closed evaluation needs an empty boundary".into()));
    }
    let mut steps = Vec::new();
    let v = traced(w, 0, &mut steps);
    Ok(ReductionTrace {
        steps,
        value: v.to_string(),
    })
}

fn traced(w: &Web, depth: usize, steps: &mut Vec<TraceStep>) -> LaurentPoly {
    if w.loops() > 0 {
        let w2 = w.without_loops();
        steps.push(TraceStep {
            depth,
            relation: "circle",
            face: Vec::new(),
            before: face_measure(w),
            after: vec![face_measure(&w2)],
            coefficient: loop_factor(w.loops()).to_string(),
        });
        return &loop_factor(w.loops()) * &traced(&w2, depth + 1, steps);
    }
    let Some(face) = pick_face(w) else {
        debug_assert_eq!(w.nv(), 0);
        return LaurentPoly::one();
    };
    let results = apply_face(w, &face);
    steps.push(TraceStep {
        depth,
        relation: if face.size() == 2 { "bigon" } else { "square" },
        face: face.darts.iter().map(|&d| w.vertex_of(d).unwrap()).collect(),
        before: face_measure(w),
        after: results.iter().map(|(x, _)| face_measure(x)).collect(),
        coefficient: results[0].1.to_string(),
    });
    let mut total = LaurentPoly::zero();
    for (w2, c) in results {
        total += &(&c * &traced(&w2, depth + 1, steps));
    }
    total
}

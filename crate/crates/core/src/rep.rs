//! Representation-theoretic oracle for sl(3) and sp(4): tensor products with
//! fundamentals, invariant dimensions and the dominance order.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{qint, LaurentPoly, RatFunc};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Sl3,
    Sp4,
}

impl Algebra {
    /// Simple roots in the basis of fundamental weights (rows of the Cartan
    /// matrix).
    fn simple_roots(self) -> [[i64; 2]; 2] {
        match self {
            Algebra::Sl3 => [[2, -1], [-1, 2]],
            Algebra::Sp4 => [[2, -1], [-2, 2]],
        }
    }

    /// Weights of the fundamental representation `V(lambda_i)`, `i` in {1, 2}.
    fn fundamental_weights(self, i: usize) -> &'static [[i64; 2]] {
        match (self, i) {
            (Algebra::Sl3, 1) => &[[1, 0], [-1, 1], [0, -1]],
            (Algebra::Sl3, _) => &[[0, 1], [1, -1], [-1, 0]],
            (Algebra::Sp4, 1) => &[[1, 0], [-1, 1], [1, -1], [-1, 0]],
            (Algebra::Sp4, _) => &[[0, 1], [0, -1], [2, -1], [-2, 1], [0, 0]],
        }
    }

    pub fn dual(self, w: Weight) -> Weight {
        match self {
            Algebra::Sl3 => Weight::new(w.b, w.a),
            Algebra::Sp4 => w,
        }
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl3" => Ok(Algebra::Sl3),
            "sp4" => Ok(Algebra::Sp4),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}, expected sl3 or sp4"))),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Sl3 => "sl3",
            Algebra::Sp4 => "sp4",
        })
    }
}

/// The dominant weight `a lambda_1 + b lambda_2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Weight {
    pub a: u32,
    pub b: u32,
}

impl Weight {
    pub const ZERO: Weight = Weight { a: 0, b: 0 };
    pub const L1: Weight = Weight { a: 1, b: 0 };
    pub const L2: Weight = Weight { a: 0, b: 1 };

    pub fn new(a: u32, b: u32) -> Weight {
        Weight { a, b }
    }

    fn coords(self) -> [i64; 2] {
        [self.a as i64, self.b as i64]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("weight {s:?} is not of the form a,b")))?;
        let p = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("weight {s:?} needs nonnegative integers")))
        };
        Ok(Weight::new(p(a)?, p(b)?))
    }
}

/// Parses `"a,b;c,d;..."`.
pub fn parse_weights(s: &str) -> Result<Vec<Weight>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// A virtual representation: signed multiplicities of irreducibles.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct WeightMultiset {
    mult: BTreeMap<Weight, i64>,
}

impl WeightMultiset {
    pub fn single(w: Weight) -> Self {
        let mut m = Self::default();
        m.add(w, 1);
        m
    }

    pub fn add(&mut self, w: Weight, k: i64) {
        let e = self.mult.entry(w).or_insert(0);
        *e += k;
        if *e == 0 {
            self.mult.remove(&w);
        }
    }

    pub fn add_all(&mut self, o: &WeightMultiset, k: i64) {
        for (&w, &m) in &o.mult {
            self.add(w, k * m);
        }
    }

    pub fn get(&self, w: Weight) -> i64 {
        self.mult.get(&w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Weight, i64)> + '_ {
        self.mult.iter().map(|(&w, &m)| (w, m))
    }

    pub fn is_genuine(&self) -> bool {
        self.mult.values().all(|&m| m > 0)
    }

    pub fn total_dim(&self, alg: Algebra) -> i64 {
        self.iter().map(|(w, m)| m * dim(alg, w) as i64).sum()
    }
}

/// Moves `x` into the dominant chamber by the dot action of the Weyl
/// group. Returns `None` if `x + rho` lies on a wall.
fn dot_dominant(alg: Algebra, mut x: [i64; 2]) -> Option<([i64; 2], i64)> {
    let roots = alg.simple_roots();
    let mut sign = 1;
    loop {
        match (0..2).find(|&i| x[i] < 0) {
            None => return Some((x, sign)),
            Some(i) if x[i] == -1 => return None,
            Some(i) => {
                // s_i . x = x - (x_i + 1) alpha_i
                let c = x[i] + 1;
                x = [x[0] - c * roots[i][0], x[1] - c * roots[i][1]];
                sign = -sign;
            }
        }
    }
}

/// `V(w) (x) V(lambda_i)` by the displayed summands and the reflection rule.
pub fn tensor_fundamental(alg: Algebra, w: Weight, i: usize) -> Result<WeightMultiset> {
    if i != 1 && i != 2 {
        return Err(Error::Domain(format!("fundamental index {i} is not 1 or 2")));
    }
    let c = w.coords();
    let mut out = WeightMultiset::default();
    for nu in alg.fundamental_weights(i) {
        if let Some((x, s)) = dot_dominant(alg, [c[0] + nu[0], c[1] + nu[1]]) {
            out.add(Weight::new(x[0] as u32, x[1] as u32), s);
        }
    }
    Ok(out)
}

fn tensor_fundamental_multi(alg: Algebra, x: &WeightMultiset, i: usize) -> WeightMultiset {
    let mut out = WeightMultiset::default();
    for (w, m) in x.iter() {
        out.add_all(&tensor_fundamental(alg, w, i).expect("valid index"), m);
    }
    out
}

fn fundamental_index(w: Weight) -> Option<usize> {
    match (w.a, w.b) {
        (1, 0) => Some(1),
        (0, 1) => Some(2),
        _ => None,
    }
}

/// `X (x) V(mu)`, writing `V(mu)` as `V(mu - lambda_i) (x) V(lambda_i)` minus
/// the lower summands of that product.
pub fn tensor_irrep(alg: Algebra, x: &WeightMultiset, mu: Weight) -> WeightMultiset {
    if mu == Weight::ZERO {
        return x.clone();
    }
    if let Some(i) = fundamental_index(mu) {
        return tensor_fundamental_multi(alg, x, i);
    }
    let (i, prev) = if mu.a > 0 {
        (1, Weight::new(mu.a - 1, mu.b))
    } else {
        (2, Weight::new(mu.a, mu.b - 1))
    };
    let mut out = tensor_fundamental_multi(alg, &tensor_irrep(alg, x, prev), i);
    let split = tensor_fundamental(alg, prev, i).expect("valid index");
    for (nu, m) in split.iter() {
        if nu != mu {
            out.add_all(&tensor_irrep(alg, x, nu), -m);
        }
    }
    out
}

thread_local! {
    static DIMS: RefCell<HashMap<(Algebra, Weight), u64>> = RefCell::new(HashMap::new());
}

/// Dimension of `V(w)`, computed by iterated tensoring from `V(0,0)`.
pub fn dim(alg: Algebra, w: Weight) -> u64 {
    if w == Weight::ZERO {
        return 1;
    }
    if let Some(d) = DIMS.with(|m| m.borrow().get(&(alg, w)).copied()) {
        return d;
    }
    let (i, prev) = if w.a > 0 {
        (1, Weight::new(w.a - 1, w.b))
    } else {
        (2, Weight::new(w.a, w.b - 1))
    };
    let fd = match (alg, i) {
        (Algebra::Sl3, _) => 3,
        (Algebra::Sp4, 1) => 4,
        (Algebra::Sp4, _) => 5,
    };
    let split = tensor_fundamental(alg, prev, i).expect("valid index");
    let rest: i64 = split
        .iter()
        .filter(|&(nu, _)| nu != w)
        .map(|(nu, m)| m * dim(alg, nu) as i64)
        .sum();
    let d = (dim(alg, prev) as i64 * fd - rest) as u64;
    DIMS.with(|m| m.borrow_mut().insert((alg, w), d));
    d
}

/// Quantum dimension of `V(w)` for sl(3): `[a+1][b+1][a+b+2]/[2]`.
pub fn quantum_dim_sl3(w: Weight) -> RatFunc {
    let (a, b) = (w.a as i64, w.b as i64);
    let num: LaurentPoly = &(&qint(a + 1) * &qint(b + 1)) * &qint(a + b + 2);
    RatFunc::new(num, qint(2)).expect("nonzero")
}

/// Quantum dimension of `V(w)` for sp(4) in the normalization where the
/// single loop is `-[6][2]/[3]`:
/// `(-1)^a [a+1][2b+2][a+2b+3][2a+2b+4] / ([2][3][4])`.
pub fn quantum_dim_sp4(w: Weight) -> RatFunc {
    let (a, b) = (w.a as i64, w.b as i64);
    let num: LaurentPoly =
        &(&(&qint(a + 1) * &qint(2 * b + 2)) * &qint(a + 2 * b + 3)) * &qint(2 * a + 2 * b + 4);
    let den: LaurentPoly = &(&qint(2) * &qint(3)) * &qint(4);
    let d = RatFunc::new(num, den).expect("nonzero");
    if a % 2 == 0 {
        d
    } else {
        -&d
    }
}

/// Decomposition of `V(w_1) (x) ... (x) V(w_k)`.
pub fn decompose(alg: Algebra, weights: &[Weight]) -> WeightMultiset {
    let mut x = WeightMultiset::single(Weight::ZERO);
    for &w in weights {
        x = tensor_irrep(alg, &x, w);
    }
    x
}

/// Dimension of the invariant space of the tensor product.
pub fn inv_dim(alg: Algebra, weights: &[Weight]) -> Result<u64> {
    let (last, init) = weights
        .split_last()
        .ok_or_else(|| Error::Domain("inv_dim needs at least one weight".into()))?;
    // Inv(X (x) V) has dimension equal to the multiplicity of V* in X.
    let m = decompose(alg, init).get(alg.dual(*last));
    Ok(m.max(0) as u64)
}

/// `u <= w` in the closure of the generating relations, which lower a
/// weight by a simple root.
pub fn weight_preceq(alg: Algebra, u: Weight, w: Weight) -> bool {
    let r = alg.simple_roots();
    let d = [w.a as i64 - u.a as i64, w.b as i64 - u.b as i64];
    // Solve d = m r0 + n r1.
    let det = r[0][0] * r[1][1] - r[1][0] * r[0][1];
    let m = d[0] * r[1][1] - d[1] * r[1][0];
    let n = r[0][0] * d[1] - r[0][1] * d[0];
    m % det == 0 && n % det == 0 && m / det >= 0 && n / det >= 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::qr;

    fn weyl_dim(alg: Algebra, w: Weight) -> u64 {
        let (a, b) = (w.a as u64, w.b as u64);
        match alg {
            Algebra::Sl3 => (a + 1) * (b + 1) * (a + b + 2) / 2,
            Algebra::Sp4 => (a + 1) * (b + 1) * (a + 2 * b + 3) * (a + b + 2) / 6,
        }
    }

    #[test]
    fn examples() {
        let s = |w| WeightMultiset::single(w);
        assert_eq!(tensor_fundamental(Algebra::Sl3, Weight::ZERO, 1).unwrap(), s(Weight::L1));
        let mut e = s(Weight::new(2, 0));
        e.add(Weight::new(0, 1), 1);
        assert_eq!(tensor_fundamental(Algebra::Sl3, Weight::L1, 1).unwrap(), e);
        assert_eq!(tensor_fundamental(Algebra::Sp4, Weight::ZERO, 2).unwrap(), s(Weight::L2));
    }

    #[test]
    fn dims_match_weyl_formula() {
        for alg in [Algebra::Sl3, Algebra::Sp4] {
            for a in 0..7 {
                for b in 0..7 {
                    let w = Weight::new(a, b);
                    assert_eq!(dim(alg, w), weyl_dim(alg, w), "{alg} {w}");
                }
            }
        }
    }

    #[test]
    fn tensor_is_genuine_and_conserves_dimension() {
        for alg in [Algebra::Sl3, Algebra::Sp4] {
            for a in 0..6 {
                for b in 0..6 {
                    let w = Weight::new(a, b);
                    for (i, fd) in [(1, Weight::L1), (2, Weight::L2)] {
                        let t = tensor_fundamental(alg, w, i).unwrap();
                        assert!(t.is_genuine(), "{alg} {w} x {i}");
                        assert_eq!(t.total_dim(alg), (dim(alg, w) * dim(alg, fd)) as i64);
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_irrep_is_commutative() {
        for alg in [Algebra::Sl3, Algebra::Sp4] {
            let ws = [Weight::new(2, 1), Weight::new(1, 2), Weight::new(0, 3)];
            for &u in &ws {
                for &v in &ws {
                    assert_eq!(decompose(alg, &[u, v]), decompose(alg, &[v, u]));
                    assert!(decompose(alg, &[u, v]).is_genuine());
                }
            }
        }
    }

    #[test]
    fn inv_dim_examples() {
        let l1 = Weight::L1;
        let l2 = Weight::L2;
        assert_eq!(inv_dim(Algebra::Sl3, &[l1, l1, l2, Weight::new(0, 1)]).unwrap(), 2);
        assert_eq!(inv_dim(Algebra::Sl3, &[l1, l2]).unwrap(), 1);
        let mut ws = vec![l1; 4];
        ws.push(Weight::new(2, 0));
        assert_eq!(inv_dim(Algebra::Sp4, &ws).unwrap(), 6);
    }

    #[test]
    fn lemma_dimensions() {
        for a in 1..=5u32 {
            for b in 1..=5u32 {
                let mut ws = vec![Weight::L1; a as usize];
                ws.extend(vec![Weight::L2; b as usize]);
                ws.push(Weight::new(b - 1, a - 1));
                assert_eq!(inv_dim(Algebra::Sl3, &ws).unwrap(), (a * b) as u64, "a={a} b={b}");
            }
        }
        for n in 1..=6u32 {
            for (f, last) in [(Weight::L1, Weight::new(n - 1, 0)), (Weight::L2, Weight::new(0, n - 1))] {
                let mut ws = vec![f; n as usize + 1];
                ws.push(last);
                assert_eq!(inv_dim(Algebra::Sp4, &ws).unwrap(), (n * (n + 1) / 2) as u64);
            }
        }
    }

    fn preceq_bfs(alg: Algebra, u: Weight, w: Weight) -> bool {
        let r = alg.simple_roots();
        let target = u.coords();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![w.coords()];
        let bound = 4 * (w.a + w.b + u.a + u.b) as i64 + 8;
        while let Some(x) = stack.pop() {
            if x == target {
                return true;
            }
            if x[0].abs() > bound || x[1].abs() > bound || !seen.insert(x) {
                continue;
            }
            for root in r {
                stack.push([x[0] - root[0], x[1] - root[1]]);
            }
        }
        false
    }

    #[test]
    fn preceq_matches_closure() {
        for alg in [Algebra::Sl3, Algebra::Sp4] {
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let (u, w) = (Weight::new(a, b), Weight::new(c, d));
                            assert_eq!(weight_preceq(alg, u, w), preceq_bfs(alg, u, w), "{alg} {u} {w}");
                        }
                    }
                }
            }
        }
        assert!(weight_preceq(Algebra::Sl3, Weight::new(1, 2), Weight::new(0, 4)));
        assert!(weight_preceq(Algebra::Sl3, Weight::new(2, 0), Weight::new(1, 2)));
        assert!(weight_preceq(Algebra::Sl3, Weight::new(1, 0), Weight::new(0, 2)));
        assert!(!weight_preceq(Algebra::Sl3, Weight::new(0, 2), Weight::new(1, 0)));
    }

    #[test]
    fn sp4_quantum_dims() {
        let loop1 = -&(&(&qr(6) * &qr(2)) / &qr(3));
        let loop2 = &(&qr(6) * &qr(5)) / &(&qr(3) * &qr(2));
        assert_eq!(quantum_dim_sp4(Weight::L1), loop1);
        assert_eq!(quantum_dim_sp4(Weight::L2), loop2);
        for a in 0..5 {
            for b in 0..5 {
                let w = Weight::new(a, b);
                let (n, m) = quantum_dim_sp4(w).eval_one().unwrap();
                let sign = if a % 2 == 0 { 1 } else { -1 };
                assert_eq!(n, &m * (sign * dim(Algebra::Sp4, w) as i64));
            }
        }
    }

    #[test]
    fn quantum_dim_at_one() {
        let d = quantum_dim_sl3(Weight::new(1, 1));
        let (n, m) = d.eval_one().unwrap();
        assert_eq!(n, (8 * &m));
    }
}

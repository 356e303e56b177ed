//! sp(4) clasps of weight `(n,0)` and `(0,n)` at the coefficient level:
//! single expansion tables, the linear equations that determine them, and
//! double expansion coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qpoly::{qr, RatFunc};
use crate::rep::{quantum_dim_sp4, Weight};
use crate::report::Report;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Sp4Weight {
    /// `(n, 0)`: single strands.
    N0,
    /// `(0, n)`: double strands.
    ZeroN,
}

impl FromStr for Sp4Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n0" => Ok(Sp4Weight::N0),
            "0n" => Ok(Sp4Weight::ZeroN),
            _ => Err(Error::Parse(format!("unknown sp4 weight {s:?}, expected n0 or 0n"))),
        }
    }
}

impl fmt::Display for Sp4Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sp4Weight::N0 => "n0",
            Sp4Weight::ZeroN => "0n",
        })
    }
}

/// Value of a closed single strand.
pub fn single_loop() -> RatFunc {
    -&(&(&qr(6) * &qr(2)) / &qr(3))
}

/// Value of a closed double strand.
pub fn double_loop() -> RatFunc {
    &(&qr(6) * &qr(5)) / &(&qr(3) * &qr(2))
}

/// Closing one single leg of the tetravalent vertex, equal to `-single_loop()`.
fn tetravalent_closure() -> RatFunc {
    -&single_loop()
}

/// A single strand with a bigon of one single and one double edge.
pub fn mixed_bigon() -> RatFunc {
    qr(5)
}

/// A double strand with a bigon of two single edges.
pub fn single_bigon() -> RatFunc {
    -&(&qr(2) * &qr(2))
}

/// Closing one double leg of the square with four double legs.
fn square_closure() -> RatFunc {
    &mixed_bigon() * &single_bigon()
}

/// Coefficients `a_{i,j}`, `0 <= i < j <= n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sp4CoeffTable {
    pub weight: Sp4Weight,
    pub n: usize,
    entries: BTreeMap<(usize, usize), RatFunc>,
}

impl Sp4CoeffTable {
    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        self.entries
            .get(&(i, j))
            .unwrap_or_else(|| panic!("a_({i},{j}) outside 0 <= i < j <= {}", self.n))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &RatFunc)> {
        self.entries.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn two_pow(e: i64) -> RatFunc {
    let t = qr(2);
    if e >= 0 {
        t.pow(e as u32)
    } else {
        t.pow((-e) as u32).inv().expect("[2] is nonzero")
    }
}

fn table(weight: Sp4Weight, n: usize, f: impl Fn(i64, i64) -> RatFunc) -> Result<Sp4CoeffTable> {
    if n < 1 {
        return Err(Error::Domain("sp4 single expansion needs n >= 1".into()));
    }
    let mut entries = BTreeMap::new();
    for j in 1..=n {
        for i in 0..j {
            entries.insert((i, j), f(i as i64, j as i64));
        }
    }
    Ok(Sp4CoeffTable { weight, n, entries })
}

/// `a_{i,j} = [2]^(i-j+1) [n+1][n-j+1][2n-2i+2] / ([n][2n+2][n-i+1])`.
pub fn b2_coeffs_n0(n: usize) -> Result<Sp4CoeffTable> {
    let m = n as i64;
    table(Sp4Weight::N0, n, |i, j| {
        let num = &(&qr(m + 1) * &qr(m - j + 1)) * &qr(2 * m - 2 * i + 2);
        let den = &(&qr(m) * &qr(2 * m + 2)) * &qr(m - i + 1);
        &two_pow(i - j + 1) * &(&num / &den)
    })
}

/// `a_{i,j} = [2]^(2(1+i-j)) [2n+1-2i][2n-2j+2] / ([2n][2n+1])`.
pub fn b2_coeffs_0n(n: usize) -> Result<Sp4CoeffTable> {
    let m = n as i64;
    table(Sp4Weight::ZeroN, n, |i, j| {
        let num = &qr(2 * m + 1 - 2 * i) * &qr(2 * m - 2 * j + 2);
        let den = &qr(2 * m) * &qr(2 * m + 1);
        &two_pow(2 * (1 + i - j)) * &(&num / &den)
    })
}

pub fn b2_coeffs(weight: Sp4Weight, n: usize) -> Result<Sp4CoeffTable> {
    match weight {
        Sp4Weight::N0 => b2_coeffs_n0(n),
        Sp4Weight::ZeroN => b2_coeffs_0n(n),
    }
}

/// Checks `sum c_k a_{i_k, j_k} = 0`.
fn equation(r: &mut Report, t: &Sp4CoeffTable, label: String, terms: &[(RatFunc, usize, usize)]) {
    let mut total = RatFunc::zero();
    for (c, i, j) in terms {
        total = &total + &(c * t.get(*i, *j));
    }
    r.check(total.is_zero(), || format!("{label}: residual {total}"));
}

fn neg(x: &RatFunc) -> RatFunc {
    -x
}

/// The two special equations and Types I-IV for weight `(n, 0)`, together
/// with the normalization `a_{0,1} = 1`.
pub fn verify_b2_recurrences_n0(n: usize) -> Result<Report> {
    if n < 2 {
        return Err(Error::Domain("sp4 recurrences need n >= 2".into()));
    }
    let t = b2_coeffs_n0(n)?;
    let mut r = Report::new(format!("sp4 ({n},0)"));
    let one = RatFunc::one();
    let l = -&single_loop();
    let t4 = &qr(2) * &qr(4);
    let s = &qr(2) * &qr(2);
    r.check(t.get(0, 1).is_one(), || format!("a_01 = {}", t.get(0, 1)));
    equation(
        &mut r,
        &t,
        "special".into(),
        &[(one.clone(), n - 2, n - 1), (l.clone(), n - 2, n), (neg(&l), n - 1, n)],
    );
    // Type I starts at i = 0 once a_{0,1} = 1 is substituted; i = 0 is the
    // second special equation.
    for i in 0..n.saturating_sub(2) {
        equation(
            &mut r,
            &t,
            format!("type I at i={i}"),
            &[
                (one.clone(), i, i + 1),
                (l.clone(), i, i + 2),
                (neg(&t4), i, i + 3),
                (neg(&l), i + 1, i + 2),
                (l.clone(), i + 1, i + 3),
                (one.clone(), i + 2, i + 3),
            ],
        );
    }
    for i in 0..=n - 2 {
        equation(
            &mut r,
            &t,
            format!("type II at i={i}"),
            &[(one.clone(), i, n - 1), (neg(&s), i, n)],
        );
    }
    for i in 0..n.saturating_sub(2) {
        for k in 2..n - i {
            equation(
                &mut r,
                &t,
                format!("type III at i={i}, k={k}"),
                &[(one.clone(), i, n - k), (neg(&s), i, n - k + 1), (s.clone(), i, n - k + 2)],
            );
        }
    }
    for i in 3..=n {
        for k in n - i + 3..=n {
            equation(
                &mut r,
                &t,
                format!("type IV at i={i}, k={k}"),
                &[(s.clone(), n - k, i), (neg(&s), n - k + 1, i), (one.clone(), n - k + 2, i)],
            );
        }
    }
    Ok(r)
}

/// The two special equations and Types I-V for weight `(0, n)`, together
/// with the normalization `a_{0,1} = 1`.
pub fn verify_b2_recurrences_0n(n: usize) -> Result<Report> {
    if n < 2 {
        return Err(Error::Domain("sp4 recurrences need n >= 2".into()));
    }
    let t = b2_coeffs_0n(n)?;
    let mut r = Report::new(format!("sp4 (0,{n})"));
    let one = RatFunc::one();
    let two = qr(2);
    let s = &two * &two;
    let s4 = &s * &s;
    let five_s = &qr(5) * &s;
    let three_s = &qr(3) * &s;
    let three_s4 = &qr(3) * &s4;
    let d = double_loop();
    let t42 = &qr(4) * &two;
    r.check(t.get(0, 1).is_one(), || format!("a_01 = {}", t.get(0, 1)));
    equation(
        &mut r,
        &t,
        "first special".into(),
        &[(one.clone(), n - 2, n - 1), (neg(&five_s), n - 2, n), (d.clone(), n - 1, n)],
    );
    equation(
        &mut r,
        &t,
        "second special".into(),
        &[(neg(&three_s), n - 2, n), (qr(5), n - 1, n)],
    );
    for i in 0..n.saturating_sub(2) {
        equation(
            &mut r,
            &t,
            format!("type I at i={i}"),
            &[
                (one.clone(), i, i + 1),
                (neg(&five_s), i, i + 2),
                (three_s4.clone(), i, i + 3),
                (d.clone(), i + 1, i + 2),
                (neg(&five_s), i + 1, i + 3),
                (one.clone(), i + 2, i + 3),
            ],
        );
    }
    for i in 0..=n - 2 {
        equation(
            &mut r,
            &t,
            format!("type II at i={i}"),
            &[(one.clone(), i, n - 1), (neg(&t42), i, n)],
        );
    }
    for i in 0..n.saturating_sub(2) {
        for j in i + 1..=n - 2 {
            equation(
                &mut r,
                &t,
                format!("type III at ({i},{j})"),
                &[(one.clone(), i, j), (neg(&t42), i, j + 1), (s4.clone(), i, j + 2)],
            );
        }
        for j in i + 3..=n {
            equation(
                &mut r,
                &t,
                format!("type IV at ({i},{j})"),
                &[(s4.clone(), i, j), (neg(&t42), i + 1, j), (one.clone(), i + 2, j)],
            );
        }
    }
    for i in 1..=n - 2 {
        equation(
            &mut r,
            &t,
            format!("type V at i={i}"),
            &[
                (neg(&three_s), i - 1, i + 1),
                (s4.clone(), i - 1, i + 2),
                (qr(5), i, i + 1),
                (neg(&three_s), i, i + 2),
            ],
        );
    }
    Ok(r)
}

pub fn verify_b2_recurrences(weight: Sp4Weight, n: usize) -> Result<Report> {
    match weight {
        Sp4Weight::N0 => verify_b2_recurrences_n0(n),
        Sp4Weight::ZeroN => verify_b2_recurrences_0n(n),
    }
}

/// Coefficients `(1, c_2, c_3)` of the double expansion: the clasp of weight
/// `n-1` next to one strand, then `c_2` times the cap-cup and `c_3` times the
/// tetravalent vertex (weight `(n,0)`) or the square with four double legs
/// (weight `(0,n)`), each between two copies of that clasp.
///
/// For `(0,n)`, `c_2 = [2n-1][2n-2]/([2n+1][2n])`: this is the value forced
/// by the partial trace identity and agrees with `a_{1,2}` at `n = 2`.
pub fn b2_double_coeffs(weight: Sp4Weight, n: usize) -> Result<[RatFunc; 3]> {
    if n < 1 {
        return Err(Error::Domain("sp4 double expansion needs n >= 1".into()));
    }
    let m = n as i64;
    Ok(match weight {
        Sp4Weight::N0 => [
            RatFunc::one(),
            &(&(&qr(2 * m) * &qr(m + 1)) * &qr(m - 1)) / &(&(&qr(2 * m + 2) * &qr(m)) * &qr(m)),
            &qr(m - 1) / &(&qr(m) * &qr(2)),
        ],
        Sp4Weight::ZeroN => [
            RatFunc::one(),
            &(&qr(2 * m - 1) * &qr(2 * m - 2)) / &(&qr(2 * m + 1) * &qr(2 * m)),
            &qr(2 * m - 2) / &(&(&qr(2 * m) * &qr(2)) * &qr(2)),
        ],
    })
}

/// Closing the last strand of the double expansion: `qdim(n)/qdim(n-1)` must
/// equal `loop + c_2 + c_3 t` with `t` the closure of the third web.
pub fn verify_double_trace(weight: Sp4Weight, n: usize) -> Result<Report> {
    if n < 2 {
        return Err(Error::Domain("partial trace check needs n >= 2".into()));
    }
    let c = b2_double_coeffs(weight, n)?;
    let (w, prev, lp, t) = match weight {
        Sp4Weight::N0 => (
            Weight::new(n as u32, 0),
            Weight::new(n as u32 - 1, 0),
            single_loop(),
            tetravalent_closure(),
        ),
        Sp4Weight::ZeroN => (
            Weight::new(0, n as u32),
            Weight::new(0, n as u32 - 1),
            double_loop(),
            square_closure(),
        ),
    };
    let lhs = &quantum_dim_sp4(w) / &quantum_dim_sp4(prev);
    let rhs = &(&(&c[0] * &lp) + &c[1]) + &(&c[2] * &t);
    let mut r = Report::new(format!("sp4 double {weight} n={n}"));
    r.check(lhs == rhs, || format!("partial trace: {lhs} vs {rhs}"));
    Ok(r)
}

/// Closing the single expansion at `n = 2`, where the lower clasp is the
/// identity and the expansion is the double expansion itself.
pub fn verify_base_agreement(weight: Sp4Weight) -> Result<Report> {
    let t = b2_coeffs(weight, 2)?;
    let c = b2_double_coeffs(weight, 2)?;
    let mut r = Report::new(format!("sp4 base {weight}"));
    r.check(t.get(0, 1) == &c[0], || "identity term".into());
    r.check(t.get(1, 2) == &c[1], || format!("a_12 = {} vs c_2 = {}", t.get(1, 2), c[1]));
    r.check(t.get(0, 2) == &c[2], || format!("a_02 = {} vs c_3 = {}", t.get(0, 2), c[2]));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_values_n0() {
        let t = b2_coeffs_n0(2).unwrap();
        assert!(t.get(0, 1).is_one());
        assert_eq!(t.get(0, 2), &(&RatFunc::one() / &(&qr(2) * &qr(2))));
        let a12 = &(&qr(4) * &qr(3)) / &(&(&qr(2) * &qr(2)) * &qr(6));
        assert_eq!(t.get(1, 2), &a12);
        // a_12 = [3]/([6][2]) a_01 + a_02
        let alt = &(&qr(3) / &(&qr(6) * &qr(2))) + t.get(0, 2);
        assert_eq!(alt, a12);
    }

    #[test]
    fn worked_equations_n3() {
        let t = b2_coeffs_n0(3).unwrap();
        let a = |i, j| t.get(i, j).clone();
        let l = -&single_loop();
        let s = &qr(2) * &qr(2);
        let e1 = &(&(&(&(&a(0, 1) + &(&l * &a(0, 2))) - &(&(&qr(2) * &qr(4)) * &a(0, 3)))
            - &(&l * &a(1, 2)))
            + &(&l * &a(1, 3)))
            + &a(2, 3);
        assert!(e1.is_zero());
        assert!((&a(0, 2) - &(&s * &a(0, 3))).is_zero());
        assert!((&a(1, 2) - &(&s * &a(1, 3))).is_zero());
        assert!((&(&a(0, 1) - &(&s * &a(0, 2))) + &(&s * &a(0, 3))).is_zero());
        assert!((&(&(&s * &a(0, 3)) - &(&s * &a(1, 3))) + &a(2, 3)).is_zero());
    }

    #[test]
    fn zero_n_examples() {
        let t = b2_coeffs_0n(2).unwrap();
        assert!(t.get(0, 1).is_one());
        let e = &(&qr(5) * &qr(2)) / &(&(&(&qr(2) * &qr(2)) * &qr(4)) * &qr(5));
        assert_eq!(t.get(0, 2), &e);
        assert_eq!(t.get(1, 2), &(&(&qr(3) * &qr(2)) / &(&qr(4) * &qr(5))));
        for n in 1..6 {
            assert!(b2_coeffs_0n(n).unwrap().get(0, 1).is_one());
        }
    }

    #[test]
    fn recurrences_hold() {
        for n in 2..=8 {
            let r = verify_b2_recurrences_n0(n).unwrap();
            assert!(r.passed(), "{}", r.summary());
            let r = verify_b2_recurrences_0n(n).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn recurrences_detect_perturbation() {
        let mut t = b2_coeffs_n0(4).unwrap();
        let x = t.get(1, 3) + &RatFunc::one();
        t.entries.insert((1, 3), x);
        let mut r = Report::new("perturbed");
        let s = &qr(2) * &qr(2);
        equation(&mut r, &t, "type II".into(), &[(RatFunc::one(), 1, 3), (-&s, 1, 4)]);
        assert!(!r.passed());
    }

    #[test]
    fn double_expansion() {
        let c = b2_double_coeffs(Sp4Weight::N0, 2).unwrap();
        assert_eq!(c[1], &(&qr(4) * &qr(3)) / &(&(&qr(6) * &qr(2)) * &qr(2)));
        assert_eq!(c[2], &RatFunc::one() / &(&qr(2) * &qr(2)));
        assert!(b2_double_coeffs(Sp4Weight::ZeroN, 1).unwrap()[2].is_zero());
        for w in [Sp4Weight::N0, Sp4Weight::ZeroN] {
            for n in 2..=8 {
                let r = verify_double_trace(w, n).unwrap();
                assert!(r.passed(), "{}", r.summary());
            }
            assert!(verify_base_agreement(w).unwrap().passed());
        }
    }

    #[test]
    fn closure_scalars() {
        // A theta with edges single, single, double evaluates both ways.
        let via_single = &mixed_bigon() * &single_loop();
        let via_double = &single_bigon() * &double_loop();
        assert_eq!(via_single, via_double);
        assert_eq!(tetravalent_closure(), &mixed_bigon() - &RatFunc::one());
    }
}

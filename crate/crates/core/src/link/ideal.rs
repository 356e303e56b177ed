//! Periodicity congruences: membership in the ideals generated by a prime
//! `p` and loop-value relations, and power-residue tests modulo such ideals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::modp::{is_prime, require_prime, FpPoly};
use crate::qpoly::{qint, LaurentPoly, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdealKind {
    Sl3,
    Sp4,
}

impl std::str::FromStr for IdealKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl3" => Ok(IdealKind::Sl3),
            "sp4" => Ok(IdealKind::Sp4),
            _ => Err(Error::Parse(format!("unknown ideal {s:?}; expected sl3 or sp4"))),
        }
    }
}

/// The ideal of `Z[v^{±1}]` generated by `p` and `gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub p: u64,
    pub gens: Vec<LaurentPoly>,
}

fn ratio_poly(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly {
    RatFunc::new(num, den)
        .expect("nonzero denominator")
        .as_poly()
        .expect("loop value is a Laurent polynomial")
}

/// `x^p - x` for the loop value `x`, and for sp(4) also the signed variant
/// for the single-strand loop.
pub fn loop_relations(kind: IdealKind, p: u32) -> Vec<LaurentPoly> {
    match kind {
        IdealKind::Sl3 => {
            let three = qint(3);
            vec![&three.pow(p) - &three]
        }
        IdealKind::Sp4 => {
            let s = ratio_poly(&qint(6) * &qint(2), qint(3));
            let d = ratio_poly(&qint(6) * &qint(5), &qint(3) * &qint(2));
            vec![&(-&s).pow(p) + &s, &d.pow(p) - &d]
        }
    }
}

impl IdealSpec {
    pub fn new(kind: IdealKind, p: u64) -> Result<IdealSpec> {
        require_prime(p)?;
        Ok(IdealSpec {
            p,
            gens: loop_relations(kind, p as u32),
        })
    }

    /// Single generator of the image in `(Z/p)[v]` (up to units).
    pub fn reduced_generator(&self) -> FpPoly {
        self.gens
            .iter()
            .fold(FpPoly::zero(self.p), |g, f| g.gcd(&FpPoly::from_laurent(f, self.p)))
    }

    pub fn contains(&self, f: &LaurentPoly) -> bool {
        let g = self.reduced_generator();
        let fp = FpPoly::from_laurent(f, self.p);
        if g.is_zero() {
            return fp.is_zero();
        }
        fp.rem(&g).is_zero()
    }
}

pub fn ideal_member(f: &LaurentPoly, kind: IdealKind, p: u64) -> Result<bool> {
    Ok(IdealSpec::new(kind, p)?.contains(f))
}

/// `G(L) ≡ G(L̄)^p` modulo the ideal.
pub fn period_check(gl: &LaurentPoly, gbar: &LaurentPoly, p: u64, kind: IdealKind) -> Result<bool> {
    let spec = IdealSpec::new(kind, p)?;
    Ok(spec.contains(&(gl - &gbar.pow(p as u32))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Residue {
    Exists,
    /// `c` is not an `e`-th power modulo this irreducible factor, so it is
    /// not one modulo anything the factor divides.
    NotExists { p: u64, factor: Vec<u64> },
    Undecided { reason: String },
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::Exists => write!(f, "exists"),
            Residue::NotExists { p, factor } => {
                write!(f, "does not exist (obstructed mod {p} by factor with coefficients {factor:?})")
            }
            Residue::Undecided { reason } => write!(f, "undecided ({reason})"),
        }
    }
}

/// Whether `c` is an `e`-th power in the field `F_p[v]/(f)`, `f` irreducible.
fn is_power_in_field(c: &FpPoly, f: &FpPoly, e: u64) -> bool {
    let cr = c.rem(f);
    if cr.is_zero() {
        return true;
    }
    let order = BigInt::from(f.modulus()).pow(f.degree() as u32) - 1u32;
    let k = order.gcd(&BigInt::from(e));
    cr.powmod(&(&order / &k), f).is_one()
}

fn factor_obstruction(c: &FpPoly, g: &FpPoly, e: u64) -> Option<FpPoly> {
    g.factor()
        .into_iter()
        .map(|(f, _)| f)
        .find(|f| !is_power_in_field(c, f, e))
}

/// Decides whether some `α` has `α^e ≡ c` in `(Z/p)[v^{±1}]/(g)`, by the
/// Chinese remainder theorem over the irreducible factors of `g`. Refuses
/// when `g` has a repeated factor mod `p`.
pub fn power_residue_check(c: &LaurentPoly, g: &LaurentPoly, p: u64, e: u64) -> Result<Residue> {
    require_prime(p)?;
    let gp = FpPoly::from_laurent(g, p);
    if gp.is_zero() {
        return Ok(Residue::Undecided {
            reason: format!("modulus vanishes mod {p}"),
        });
    }
    if !gp.is_square_free() {
        return Ok(Residue::Undecided {
            reason: "repeated factor".into(),
        });
    }
    let cp = FpPoly::from_laurent(c, p);
    Ok(match factor_obstruction(&cp, &gp, e) {
        Some(f) => Residue::NotExists {
            p,
            factor: f.coeffs().to_vec(),
        },
        None => Residue::Exists,
    })
}

/// Sound half of [`power_residue_check`] without the square-free
/// requirement: a factor of `g` mod `p` modulo which `c` is no `e`-th power
/// rules out a solution.
pub fn power_residue_obstruction(c: &LaurentPoly, g: &LaurentPoly, p: u64, e: u64) -> Result<Residue> {
    require_prime(p)?;
    let gp = FpPoly::from_laurent(g, p);
    let cp = FpPoly::from_laurent(c, p);
    Ok(match factor_obstruction(&cp, &gp, e) {
        Some(f) => Residue::NotExists {
            p,
            factor: f.coeffs().to_vec(),
        },
        None => Residue::Undecided {
            reason: format!("no factor of the modulus mod {p} obstructs"),
        },
    })
}

/// Distinct prime factors of a square-free `n`.
fn squarefree_primes(n: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m.is_multiple_of(q) {
            m /= q;
            if m.is_multiple_of(q) {
                return Err(Error::Domain(format!("modulus {n} is not square-free")));
            }
            out.push(q);
        }
        q += 1;
    }
    debug_assert!(out.iter().all(|&p| is_prime(p)));
    Ok(out)
}

/// Per-prime verdicts for `α^e ≡ c` modulo `(n, [3]^e - [3])`, split by the
/// Chinese remainder theorem. `strict` uses [`power_residue_check`],
/// otherwise [`power_residue_obstruction`].
pub fn sl3_power_residue(c: &LaurentPoly, n: u64, e: u32, strict: bool) -> Result<Vec<(u64, Residue)>> {
    let three = qint(3);
    let g = &three.pow(e) - &three;
    squarefree_primes(n)?
        .into_iter()
        .map(|p| {
            let r = if strict {
                power_residue_check(c, &g, p, e as u64)?
            } else {
                power_residue_obstruction(c, &g, p, e as u64)?
            };
            Ok((p, r))
        })
        .collect()
}

/// Combines CRT components: a solution exists iff one exists for every
/// prime.
pub fn combine(parts: &[(u64, Residue)]) -> Residue {
    if let Some((_, r)) = parts.iter().find(|(_, r)| matches!(r, Residue::NotExists { .. })) {
        return r.clone();
    }
    if let Some((_, r)) = parts.iter().find(|(_, r)| matches!(r, Residue::Undecided { .. })) {
        return r.clone();
    }
    Residue::Exists
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl3::graphs::prime_web_6_1_expected;

    #[test]
    fn generators_are_members() {
        for p in [2u64, 3, 5] {
            let three = qint(3);
            assert!(ideal_member(&(&three.pow(p as u32) - &three), IdealKind::Sl3, p).unwrap());
            assert!(!ideal_member(&LaurentPoly::one(), IdealKind::Sl3, p).unwrap());
            let x = &qint(4) * &LaurentPoly::constant(p as i64);
            assert!(ideal_member(&x, IdealKind::Sl3, p).unwrap());
            for g in loop_relations(IdealKind::Sp4, p as u32) {
                assert!(ideal_member(&g, IdealKind::Sp4, p).unwrap());
            }
        }
        assert!(ideal_member(&LaurentPoly::one(), IdealKind::Sl3, 4).is_err());
    }

    #[test]
    fn sp4_loop_values_are_polynomials() {
        let gens = loop_relations(IdealKind::Sp4, 1);
        assert!(gens.iter().all(|g| g.is_zero()));
        let s = ratio_poly(&qint(6) * &qint(2), qint(3));
        assert_eq!(s.eval_one(), 4.into());
    }

    #[test]
    fn period_check_examples() {
        let gbar = &qint(3) * &qint(2);
        let three = qint(3);
        for p in [2u64, 3, 5] {
            let exact = gbar.pow(p as u32);
            assert!(period_check(&exact, &gbar, p, IdealKind::Sl3).unwrap());
            let shifted = &(&exact + &three.pow(p as u32)) - &three;
            assert!(period_check(&shifted, &gbar, p, IdealKind::Sl3).unwrap());
        }
        let off = &gbar.pow(3) + &LaurentPoly::one();
        assert!(!period_check(&off, &gbar, 3, IdealKind::Sl3).unwrap());
        assert!(period_check(&off, &gbar, 6, IdealKind::Sl3).is_err());
    }

    #[test]
    fn trivial_residues() {
        let three = qint(3);
        let g = &three.pow(5) - &three;
        for c in [LaurentPoly::zero(), LaurentPoly::one()] {
            let r = power_residue_check(&c, &g, 5, 6).unwrap();
            assert!(matches!(r, Residue::Exists | Residue::Undecided { .. }), "{r}");
            let o = power_residue_obstruction(&c, &g, 5, 6).unwrap();
            assert!(!matches!(o, Residue::NotExists { .. }), "{o}");
        }
    }

    #[test]
    fn residue_check_matches_brute_force() {
        // In F_7[v]/(v^2 + 1) (a field of 49 elements), count 6th powers.
        let p = 7;
        let g = LaurentPoly::from_terms([(0, 1), (2, 1)]);
        let mut powers = std::collections::BTreeSet::new();
        let f = FpPoly::from_laurent(&g, p);
        for a in 0..p {
            for b in 0..p {
                let x = FpPoly::new(p, vec![a, b]);
                let mut y = FpPoly::one(p);
                for _ in 0..6 {
                    y = y.mulmod(&x, &f);
                }
                powers.insert(y.coeffs().to_vec());
            }
        }
        for a in 0..p {
            for b in 0..p {
                let c = LaurentPoly::from_terms([(0, a as i64), (1, b as i64)]);
                let r = power_residue_check(&c, &g, p, 6).unwrap();
                let want = powers.contains(&FpPoly::new(p, vec![a, b]).coeffs().to_vec());
                assert_eq!(r == Residue::Exists, want, "{a} + {b} v");
            }
        }
    }

    #[test]
    fn prime_web_sixth_root() {
        let c = prime_web_6_1_expected();
        let strict = sl3_power_residue(&c, 6, 6, true).unwrap();
        assert_eq!(strict.len(), 2);
        assert!(strict.iter().all(|(_, r)| matches!(r, Residue::Undecided { .. })));
        let sound = combine(&sl3_power_residue(&c, 6, 6, false).unwrap());
        let Residue::NotExists { p, factor } = sound else {
            panic!("expected an obstruction, got {sound}");
        };
        // Brute force over the residue field F_p[v]/(factor).
        let f = FpPoly::new(p, factor);
        let n = f.degree();
        let target = FpPoly::from_laurent(&c, p).rem(&f);
        for idx in 0..p.pow(n as u32) {
            let digits: Vec<u64> = (0..n).map(|k| idx / p.pow(k as u32) % p).collect();
            let x = FpPoly::new(p, digits);
            let mut y = FpPoly::one(p);
            for _ in 0..6 {
                y = y.mulmod(&x, &f);
            }
            assert_ne!(y, target);
        }
    }
}

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Quotient `num / den` of Laurent polynomials in canonical form.
///
/// Canonical form: the fraction is reduced by the polynomial gcd, common
/// integer content is removed, `den` has lowest exponent 0 and a positive
/// leading coefficient. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// Embeds a Laurent polynomial; only the monomial part of the denominator moves.
    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.dense().len() == 1 {
            (num, den)
        } else {
            let g = poly_gcd(num.dense(), den.dense());
            if g.len() > 1 {
                (
                    LaurentPoly::from_dense(num.low_exp(), poly_div_exact(num.dense(), &g)),
                    LaurentPoly::from_dense(den.low_exp(), poly_div_exact(den.dense(), &g)),
                )
            } else {
                (num, den)
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_exact_int(&c);
            den = den.div_exact_int(&c);
        }
        let k = den.low_exp();
        if k != 0 {
            num = num.shift(-k);
            den = den.shift(-k);
        }
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this equals, if the denominator is a unit.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        let d = self.den.dense();
        if d.len() == 1 && d[0].is_one() {
            Some(self.num.clone())
        } else if d.len() == 1 && (&self.num.content() % &d[0]).is_zero() {
            Some(self.num.div_exact_int(&d[0]))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .renormalize_sign()
    }

    fn renormalize_sign(self) -> Self {
        Self::normalized(self.num, self.den)
    }

    pub fn bar(&self) -> Self {
        Self::normalized(self.num.bar(), self.den.bar())
    }

    /// Field equality by cross-multiplication.
    pub fn field_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Value at `v = 1` as a reduced fraction, or `None` if the denominator vanishes there.
    pub fn eval_one(&self) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval_one();
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }

    pub fn render(&self, q_units: bool) -> String {
        if self.den.is_one() {
            self.num.render(q_units)
        } else {
            format!("({})/({})", self.num.render(q_units), self.den.render(q_units))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::inv`] for a fallible inverse.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero RatFunc");
        RatFunc::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    /// Accepts `P` or `(P)/(Q)` with `P`, `Q` in the Laurent grammar.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            if let Some(idx) = rest.find(")/(") {
                let num: LaurentPoly = rest[..idx].parse()?;
                let den_part = &rest[idx + 3..];
                let den_str = den_part
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced fraction {s:?}")))?;
                let den: LaurentPoly = den_str.parse()?;
                return RatFunc::new(num, den);
            }
        }
        Ok(RatFunc::from_poly(s.parse()?))
    }
}

/// Gcd of integer content and primitive part, for dense polynomials.
fn int_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let c = int_content(&p);
    if c.is_one() || c.is_zero() {
        p
    } else {
        p.into_iter().map(|x| x / &c).collect()
    }
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Pseudo-remainder of `a` by `b` (dense, increasing degree).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &lr * bc;
        }
        r = trim(r);
        if !r.is_empty() {
            r = primitive(r);
        }
    }
    r
}

/// Primitive gcd (up to sign) of two nonzero dense polynomials with the
/// trailing power of `v` already factored out by the Laurent representation.
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = r;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

/// Exact division of `a` by `b` over Z (`b` primitive and dividing `a` over Q).
pub(crate) fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / lb;
        debug_assert!((&r[k + db] % lb).is_zero());
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

#[cfg(test)]
mod tests {
    use super::super::{qint, qfact};
    use super::*;

    fn q(n: i64) -> RatFunc {
        RatFunc::from_poly(qint(n))
    }

    #[test]
    fn half_plus_half() {
        let h = RatFunc::one() / q(2);
        let s = &h + &h;
        assert_eq!(s, RatFunc::from_int(2) / q(2));
        let alt = &q(2) * &(RatFunc::one() / (&q(2) * &q(2)));
        assert_eq!(s, &alt + &alt);
    }

    #[test]
    fn inverse_pair() {
        let x = &(q(3) / q(2)) * &(q(2) / q(3));
        assert!(x.is_one());
        assert!(RatFunc::zero().inv().is_err());
    }

    #[test]
    fn canonical_form() {
        let x = RatFunc::one() / (&q(2) * &q(2));
        assert_eq!(x.den().low_exp(), 0);
        assert!(x.den().leading_coeff().is_positive());
        let y = RatFunc::new(qint(4), qint(2)).unwrap();
        assert_eq!(y.den().dense().len(), 1, "gcd reduced: {y}");
        assert_eq!(y.as_poly().unwrap(), "v^2 + v^-2".parse().unwrap());
        let neg = RatFunc::new(LaurentPoly::one(), -qint(3)).unwrap();
        assert!(neg.den().leading_coeff().is_positive());
        assert_eq!(neg, -(RatFunc::one() / q(3)));
    }

    #[test]
    fn factorial_ratio() {
        let r = RatFunc::new(qfact(6).unwrap(), qfact(4).unwrap()).unwrap();
        assert_eq!(r.as_poly().unwrap(), &qint(6) * &qint(5));
    }

    #[test]
    fn parse_round_trip() {
        let x = (q(2) + q(5)) / (&q(3) * &q(4));
        let s = x.to_string();
        let y: RatFunc = s.parse().unwrap();
        assert_eq!(x, y);
        assert_eq!(y.to_string(), s);
    }
}

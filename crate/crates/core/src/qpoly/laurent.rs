use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in `v = q^(1/2)` with big-integer coefficients.
///
/// Stored densely: `coeffs[k]` is the coefficient of `v^(low + k)`. The first
/// and last stored coefficients are nonzero; the zero polynomial has no
/// coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_dense(exp, vec![c.into()])
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds from dense coefficients starting at `v^low`, trimming zeros.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (`low - 1` for zero).
    pub fn high_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, increasing exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; `c` must divide each exactly.
    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The substitution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            low: -self.high_exp(),
            coeffs,
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reduces coefficients into `0..p`, dropping zeros.
    pub fn coeffs_mod(&self, p: &BigInt) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|c| c.mod_floor(p)).collect())
    }

    /// Renders with `v` exponents, or `q^(k/2)` when `q_units` is set.
    pub fn render(&self, q_units: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = if q_units { q_var(e) } else { v_var(e) };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&var);
            }
        }
        out
    }
}

fn v_var(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "v".to_string(),
        _ => format!("v^{e}"),
    }
}

fn q_var(e: i64) -> String {
    match e {
        0 => String::new(),
        2 => "q".to_string(),
        _ if e % 2 == 0 => format!("q^{}", e / 2),
        _ => format!("q^({e}/2)"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, &self.coeffs).cmp(&(other.low, &other.coeffs))
    }
}

fn add_into(acc: &mut LaurentPoly, rhs: &LaurentPoly, sign: bool) {
    if rhs.is_zero() {
        return;
    }
    if acc.is_zero() {
        *acc = if sign { rhs.clone() } else { -rhs };
        return;
    }
    let lo = acc.low.min(rhs.low);
    let hi = acc.high_exp().max(rhs.high_exp());
    if lo < acc.low {
        let pad = (acc.low - lo) as usize;
        acc.coeffs.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
        acc.low = lo;
    }
    acc.coeffs.resize((hi - lo + 1) as usize, BigInt::zero());
    let off = (rhs.low - lo) as usize;
    for (k, c) in rhs.coeffs.iter().enumerate() {
        if sign {
            acc.coeffs[off + k] += c;
        } else {
            acc.coeffs[off + k] -= c;
        }
    }
    acc.trim();
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        add_into(self, rhs, true);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        add_into(self, rhs, false);
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

/// The quantum integer `[n] = v^(n-1) + v^(n-3) + ... + v^(1-n)`; `[0] = 0`.
///
/// Negative `n` is accepted and gives `[-n] = -[n]`; use [`qint_checked`] for
/// the strict domain.
pub fn qint(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    if n < 0 {
        return -qint(-n);
    }
    let len = (2 * n - 1) as usize;
    let coeffs = (0..len)
        .map(|k| if k % 2 == 0 { BigInt::one() } else { BigInt::zero() })
        .collect();
    LaurentPoly::from_dense(1 - n, coeffs)
}

pub fn qint_checked(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::Domain(format!("quantum integer of negative argument {n}")));
    }
    Ok(qint(n))
}

/// `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn qfact(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::Domain(format!("quantum factorial of negative argument {n}")));
    }
    Ok((1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k)))
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses sums of terms `c`, `c v^k`, `c*q^k`, `q^(k/2)`; `q^k` means `v^(2k)`.
    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let d = self.digits().ok_or_else(|| self.err("expected integer"))?;
        let n: i64 = d.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    /// Exponent after `^`, in units of the variable: returns a rational k/den.
    fn exponent(&mut self) -> Result<(i64, i64)> {
        if self.eat('(') {
            let num = self.signed_int()?;
            let den = if self.eat('/') { self.signed_int()? } else { 1 };
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            if den != 1 && den != 2 {
                return Err(self.err("only half-integer exponents are allowed"));
            }
            Ok((num, den))
        } else {
            Ok((self.signed_int()?, 1))
        }
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        let mut first = true;
        loop {
            let Some(c) = self.peek() else {
                if first {
                    return Err(self.err("empty polynomial"));
                }
                break;
            };
            let mut neg = false;
            if c == '+' || c == '-' {
                neg = c == '-';
                self.pos += 1;
            } else if !first {
                return Err(self.err("expected '+' or '-'"));
            }
            first = false;
            let coeff = match self.digits() {
                Some(d) => {
                    self.eat('*');
                    Some(d.parse::<BigInt>().map_err(|_| self.err("bad coefficient"))?)
                }
                None => None,
            };
            let exp = match self.peek() {
                Some(var @ ('v' | 'q')) => {
                    self.pos += 1;
                    let (num, den) = if self.eat('^') { self.exponent()? } else { (1, 1) };
                    match (var, den) {
                        ('v', 1) => num,
                        ('q', 1) => 2 * num,
                        ('q', 2) => num,
                        _ => return Err(self.err("fractional power of v")),
                    }
                }
                _ => {
                    if coeff.is_none() {
                        return Err(self.err("expected a term"));
                    }
                    0
                }
            };
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if neg {
                c = -c;
            }
            terms.push((exp, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn qint_small_values() {
        assert!(qint(1).is_one());
        assert_eq!(qint(2), p("v + v^-1"));
        assert!(qint(0).is_zero());
        assert!(qint_checked(-1).is_err());
    }

    #[test]
    fn qint_two_squared() {
        assert_eq!(&qint(2) * &qint(2), &qint(3) + &qint(1));
    }

    #[test]
    fn qfact_values() {
        assert!(qfact(0).unwrap().is_one());
        assert_eq!(qfact(2).unwrap(), qint(2));
        assert_eq!(qfact(3).unwrap(), &qint(3) * &qint(2));
        assert!(qfact(-2).is_err());
    }

    #[test]
    fn rendering_matches_grammar() {
        let x = p("v^3 - v + 2 - v^-1");
        assert_eq!(x.to_string(), "v^3 - v + 2 - v^-1");
        let t = -(&qint(2) * &qint(3));
        assert_eq!(t.to_string(), "-v^3 - 2v - 2v^-1 - v^-3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("q^2 - 3q^-1"), p("v^4 - 3v^-2"));
        assert_eq!(p("q^(3/2) + 2*q"), p("v^3 + 2v^2"));
        assert_eq!(p("v^3 + v").render(true), "q^(3/2) + q^(1/2)");
        assert_eq!(p("q^2 + 1").render(true), "q^2 + 1");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "v^", "3 3", "x", "v^(1/3)", "q^(1/2"] {
            assert!(bad.parse::<LaurentPoly>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn mod_p_reduction() {
        let three = BigInt::from(3);
        assert_eq!(qint(3).coeffs_mod(&three), p("v^2 + 1 + v^-2"));
        assert!(qint(2).scale(&three).coeffs_mod(&three).is_zero());
        let sq = qint(3).pow(2);
        assert_eq!(sq.coeffs_mod(&BigInt::from(2)), p("v^4 + 1 + v^-4"));
        assert_eq!(p("-v").coeffs_mod(&three), p("2v"));
    }

    #[test]
    fn bar_and_shift() {
        let x = p("3v^2 - v^-5");
        assert_eq!(x.bar(), p("3v^-2 - v^5"));
        assert_eq!(x.shift(2), p("3v^4 - v^-3"));
        assert!(qint(7).is_bar_invariant());
        assert_eq!(x.eval_one(), BigInt::from(2));
    }
}

//! Dense univariate polynomials over a prime field `Z/p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial over `Z/p`; `c[k]` is the coefficient of `x^k`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut f = FpPoly { p, c };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    /// Image of a Laurent polynomial in `(Z/p)[v^{±1}]`, normalized to a
    /// polynomial not divisible by `v` (monomials are units).
    pub fn from_laurent(f: &LaurentPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .dense()
            .iter()
            .map(|x| x.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let mut g = FpPoly::new(p, c);
        let lead = g.c.iter().take_while(|&&x| x == 0).count();
        g.c.drain(..lead);
        g
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| (self.c.get(k).unwrap_or(&0) + o.c.get(k).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| (self.c.get(k).unwrap_or(&0) + self.p - o.c.get(k).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn scale(&self, a: u64) -> Self {
        FpPoly::new(self.p, self.c.iter().map(|x| x * a % self.p).collect())
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => self.scale(self.inv(l)),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let li = self.inv(d.c[dd]);
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd] * li % p;
            q[k] = coef;
            if coef != 0 {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - coef * b % p) % p;
                }
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| (k as u64 % self.p) * a % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// `self^e mod m` for a big exponent.
    pub fn powmod(&self, e: &BigInt, m: &Self) -> Self {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        let bits = e.to_str_radix(2);
        for bit in bits.chars() {
            acc = acc.mulmod(&acc, m);
            if bit == '1' {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    /// True iff the polynomial has no repeated irreducible factor.
    pub fn is_square_free(&self) -> bool {
        if self.degree() == 0 {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).degree() == 0
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs `(d, F_d)` where `F_d` is the product of its degree-`d` factors.
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut d = 0;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.powmod(&BigInt::from(p), &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                f = f.divrem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.degree() > 0 {
            out.push((f.degree(), f));
        }
        out
    }

    /// Distinct irreducible factors with multiplicities, via square-free
    /// decomposition, distinct-degree and Cantor-Zassenhaus splitting.
    pub fn factor(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        for (part, mult) in self.square_free_decomposition() {
            for (deg, prod) in part.distinct_degree() {
                for f in prod.equal_degree(deg) {
                    out.push((f, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.c.len().cmp(&b.0.c.len()).then(a.0.c.cmp(&b.0.c)));
        out
    }

    /// Square-free decomposition `f = prod g_i^i` (monic, nonconstant factors).
    pub fn square_free_decomposition(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p as usize;
        let mut out = Vec::new();
        let f = self.monic();
        if f.degree() == 0 {
            return out;
        }
        let d = f.derivative();
        if d.is_zero() {
            for (g, m) in f.pth_root().square_free_decomposition() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = f.gcd(&d);
        let mut w = f.divrem(&c).0;
        let mut i = 1;
        while w.degree() > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.degree() > 0 {
            for (g, m) in c.pth_root().square_free_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// For `f(x) = g(x^p)` returns `g` (Frobenius is the identity on `Z/p`).
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        FpPoly::new(self.p, c)
    }

    /// Splits a monic square-free product of degree-`d` irreducibles.
    fn equal_degree(&self, d: usize) -> Vec<FpPoly> {
        if self.degree() == d {
            return vec![self.monic()];
        }
        let p = self.p;
        let qd = BigInt::from(p).pow(d as u32);
        let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
        loop {
            let n = self.degree();
            let mut r = Vec::with_capacity(n);
            for _ in 0..n {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                r.push(seed % p);
            }
            let a = FpPoly::new(p, r);
            if a.degree() == 0 {
                continue;
            }
            let g = if p == 2 {
                // Trace map a + a^2 + ... + a^(2^(d-1)) replaces the power split.
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mulmod(&t, self);
                    acc = acc.add(&t);
                }
                self.gcd(&acc)
            } else {
                let e = (&qd - 1u32) / 2u32;
                self.gcd(&a.powmod(&e, self).sub(&FpPoly::one(p)))
            };
            if g.degree() > 0 && g.degree() < self.degree() {
                let h = self.divrem(&g).0;
                let mut out = g.equal_degree(d);
                out.extend(h.equal_degree(d));
                return out;
            }
        }
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("modulus {p} is not prime")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn gcd_and_division() {
        let a = f(7, &[1, 0, 1]).mul(&f(7, &[2, 1]));
        let b = f(7, &[2, 1]).mul(&f(7, &[3, 1]));
        assert_eq!(a.gcd(&b), f(7, &[2, 1]));
        let (q, r) = a.divrem(&f(7, &[2, 1]));
        assert!(r.is_zero());
        assert_eq!(q, f(7, &[1, 0, 1]));
    }

    #[test]
    fn factor_recovers_product() {
        for p in [2u64, 3, 5, 7] {
            let a = f(p, &[1, 1, 1]);
            let b = f(p, &[1, 0, 0, 1, 1]);
            let c = f(p, &[p - 1, 1]);
            let prod = a.mul(&b).mul(&c).mul(&c);
            let fac = prod.factor();
            let mut back = FpPoly::one(p);
            for (g, m) in &fac {
                for _ in 0..*m {
                    back = back.mul(g);
                }
            }
            assert_eq!(back, prod.monic(), "p={p}");
            for (g, _) in &fac {
                assert!(g.is_square_free());
                assert_eq!(g.distinct_degree().len(), 1);
                assert_eq!(g.distinct_degree()[0].0, g.degree());
            }
            assert!(!prod.is_square_free());
        }
    }

    #[test]
    fn x_pow_p_minus_x_splits() {
        let p = 7;
        let mut c = vec![0u64; 8];
        c[7] = 1;
        c[1] = p - 1;
        let fac = f(p, &c).factor();
        assert_eq!(fac.len(), 7);
        assert!(fac.iter().all(|(g, m)| g.degree() == 1 && *m == 1));
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(6) && !is_prime(91));
    }
}

use std::collections::BTreeMap;

use super::Web;
use crate::qpoly::{LaurentPoly, RatFunc};

/// Sums rational functions lazily, grouping numerators by denominator so
/// that gcd normalization happens once per distinct denominator.
#[derive(Clone, Default, Debug)]
pub struct RatAccumulator {
    parts: BTreeMap<LaurentPoly, LaurentPoly>,
}

impl RatAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: &RatFunc) {
        if x.is_zero() {
            return;
        }
        *self.parts.entry(x.den().clone()).or_default() += x.num();
    }

    /// Adds `x * f`.
    pub fn add_scaled(&mut self, x: &RatFunc, f: &LaurentPoly) {
        if x.is_zero() || f.is_zero() {
            return;
        }
        *self.parts.entry(x.den().clone()).or_default() += &(x.num() * f);
    }

    /// Adds `x * y * f` without reducing the product first.
    pub fn add_product(&mut self, x: &RatFunc, y: &RatFunc, f: &LaurentPoly) {
        if x.is_zero() || y.is_zero() || f.is_zero() {
            return;
        }
        let den = if y.den().is_one() {
            x.den().clone()
        } else if x.den().is_one() {
            y.den().clone()
        } else {
            x.den() * y.den()
        };
        *self.parts.entry(den).or_default() += &(&(x.num() * y.num()) * f);
    }

    pub fn finish(self) -> RatFunc {
        let mut total = RatFunc::zero();
        for (den, num) in self.parts {
            if !num.is_zero() {
                total = &total + &RatFunc::new(num, den).expect("nonzero denominator");
            }
        }
        total
    }
}

/// Formal linear combination of canonical webs with rational coefficients.
#[derive(Clone, Default)]
pub struct WebSum {
    terms: BTreeMap<Web, RatFunc>,
}

impl WebSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: &Web) -> Self {
        let mut s = WebSum::new();
        s.add_term(w, RatFunc::one());
        s
    }

    /// Adds `c * w`; `w` is canonicalized.
    pub fn add_term(&mut self, w: &Web, c: RatFunc) {
        self.add_canonical(w.canonical(), c);
    }

    /// Adds a term whose web is already canonical.
    pub fn add_canonical(&mut self, w: Web, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Web, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Web) -> RatFunc {
        self.terms.get(&w.canonical()).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn coefficients(&self) -> Vec<RatFunc> {
        self.terms.values().cloned().collect()
    }

    pub fn scale(&self, c: &RatFunc) -> WebSum {
        if c.is_zero() {
            return WebSum::new();
        }
        WebSum {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, o: &WebSum) -> WebSum {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_canonical(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &WebSum) -> WebSum {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    /// Applies a web transformation termwise, re-canonicalizing.
    pub fn map_webs(&self, f: impl Fn(&Web) -> Web) -> WebSum {
        let mut r = WebSum::new();
        for (w, c) in &self.terms {
            r.add_term(&f(w), c.clone());
        }
        r
    }

    /// The scalar if every term is the empty web, else `None`.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                (w.nb() == 0 && w.nv() == 0 && w.loops == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `(canonical key, coefficient)` pairs in key order.
    pub fn keyed(&self) -> Vec<(String, RatFunc)> {
        self.terms.iter().map(|(w, c)| (w.key_string(), c.clone())).collect()
    }
}

impl PartialEq for WebSum {
    fn eq(&self, o: &WebSum) -> bool {
        self.terms.len() == o.terms.len()
            && self
                .terms
                .iter()
                .zip(o.terms.iter())
                .all(|((w1, c1), (w2, c2))| w1 == w2 && c1 == c2)
    }
}

impl std::fmt::Debug for WebSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w.key_string(), c.to_string())))
            .finish()
    }
}

impl FromIterator<(Web, RatFunc)> for WebSum {
    fn from_iter<I: IntoIterator<Item = (Web, RatFunc)>>(it: I) -> Self {
        let mut acc: BTreeMap<Web, RatAccumulator> = BTreeMap::new();
        for (w, c) in it {
            acc.entry(w.canonical()).or_default().add(&c);
        }
        let mut s = WebSum::new();
        for (w, a) in acc {
            s.add_canonical(w, a.finish());
        }
        s
    }
}

//! Temperley-Lieb algebra with loop value `-[2]`: Jones-Wenzl projectors,
//! their single expansion, and the sl(2) trihedron coefficient.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::qpoly::{qfr, qint, qr, LaurentPoly, RatFunc};
use crate::web::RatAccumulator;

/// A planar matching of `n` top points (`0..n`, left to right) and `n`
/// bottom points (`n..2n`, left to right).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chord {
    n: usize,
    m: Vec<u16>,
}

impl Chord {
    pub fn identity(n: usize) -> Chord {
        let m = (0..2 * n).map(|p| ((p + n) % (2 * n)) as u16).collect();
        Chord { n, m }
    }

    /// The generator `e_i` (1-based) joining strands `i` and `i+1`.
    pub fn e(n: usize, i: usize) -> Chord {
        assert!(i >= 1 && i < n);
        let mut c = Chord::identity(n);
        let (a, b) = (i - 1, i);
        c.m[a] = b as u16;
        c.m[b] = a as u16;
        c.m[n + a] = (n + b) as u16;
        c.m[n + b] = (n + a) as u16;
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, p: usize) -> usize {
        self.m[p] as usize
    }

    /// Stacks `self` on top of `lower`; returns the result and the number of
    /// closed loops formed in the middle.
    pub fn compose(&self, lower: &Chord) -> (Chord, u32) {
        let n = self.n;
        assert_eq!(n, lower.n);
        let mut m = vec![u16::MAX; 2 * n];
        let mut seen_mid = vec![false; n];
        // Result points: 0..n are self's top, n..2n are lower's bottom.
        for start in 0..2 * n {
            if m[start] != u16::MAX {
                continue;
            }
            let (mut in_upper, mut p) = if start < n { (true, start) } else { (false, start) };
            let end = loop {
                let q = if in_upper { self.partner(p) } else { lower.partner(p) };
                if in_upper && q < n {
                    break q;
                }
                if !in_upper && q >= n {
                    break q;
                }
                let mid = if in_upper { q - n } else { q };
                seen_mid[mid] = true;
                in_upper = !in_upper;
                p = if in_upper { n + mid } else { mid };
            };
            m[start] = end as u16;
            m[end] = start as u16;
        }
        let mut loops = 0;
        for s in 0..n {
            if seen_mid[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            loop {
                seen_mid[p] = true;
                let q = lower.partner(p);
                debug_assert!(q < n);
                seen_mid[q] = true;
                let r = self.partner(n + q) - n;
                if r == s {
                    break;
                }
                p = r;
            }
        }
        (Chord { n, m }, loops)
    }

    pub fn tensor(&self, right: &Chord) -> Chord {
        let (a, b) = (self.n, right.n);
        let n = a + b;
        let map_l = |p: usize| if p < a { p } else { n + (p - a) };
        let map_r = |p: usize| if p < b { a + p } else { n + a + (p - b) };
        let mut m = vec![0u16; 2 * n];
        for p in 0..2 * a {
            m[map_l(p)] = map_l(self.partner(p)) as u16;
        }
        for p in 0..2 * b {
            m[map_r(p)] = map_r(right.partner(p)) as u16;
        }
        Chord { n, m }
    }

    /// Checks that the matching is a non-crossing perfect matching.
    pub fn is_planar(&self) -> bool {
        let n = self.n;
        // Boundary order around the rectangle: top left to right, bottom
        // right to left.
        let pos = |p: usize| if p < n { p } else { 3 * n - 1 - p };
        let mut stack = Vec::new();
        let mut order: Vec<usize> = vec![0; 2 * n];
        for p in 0..2 * n {
            order[pos(p)] = p;
        }
        for &p in &order {
            let q = self.partner(p);
            if self.partner(q) != p || p == q {
                return false;
            }
            if pos(q) > pos(p) {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }
}

/// A linear combination of chord diagrams on a fixed number of strands.
#[derive(Clone, PartialEq, Debug)]
pub struct TlElement {
    n: usize,
    terms: BTreeMap<Chord, RatFunc>,
}

fn loop_value() -> LaurentPoly {
    -qint(2)
}

impl TlElement {
    pub fn zero(n: usize) -> TlElement {
        TlElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_chord(c: Chord) -> TlElement {
        let n = c.n;
        let mut terms = BTreeMap::new();
        terms.insert(c, RatFunc::one());
        TlElement { n, terms }
    }

    pub fn identity(n: usize) -> TlElement {
        TlElement::from_chord(Chord::identity(n))
    }

    pub fn e(n: usize, i: usize) -> TlElement {
        TlElement::from_chord(Chord::e(n, i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Chord, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, c: &Chord) -> RatFunc {
        self.terms.get(c).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn from_acc(n: usize, acc: BTreeMap<Chord, RatAccumulator>) -> TlElement {
        let terms = acc
            .into_iter()
            .map(|(c, a)| (c, a.finish()))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        TlElement { n, terms }
    }

    pub fn add(&self, o: &TlElement) -> Result<TlElement> {
        if self.n != o.n {
            return Err(Error::Domain(format!("strand mismatch: {} vs {}", self.n, o.n)));
        }
        let mut acc: BTreeMap<Chord, RatAccumulator> = BTreeMap::new();
        for (c, x) in self.terms.iter().chain(o.terms.iter()) {
            acc.entry(c.clone()).or_default().add(x);
        }
        Ok(TlElement::from_acc(self.n, acc))
    }

    pub fn scale(&self, s: &RatFunc) -> TlElement {
        let terms = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(c, x)| (c.clone(), x * s)).collect()
        };
        TlElement { n: self.n, terms }
    }

    pub fn tensor(&self, o: &TlElement) -> TlElement {
        let mut terms = BTreeMap::new();
        for (c1, x1) in &self.terms {
            for (c2, x2) in &o.terms {
                terms.insert(c1.tensor(c2), x1 * x2);
            }
        }
        TlElement {
            n: self.n + o.n,
            terms,
        }
    }
}

/// Product `x * y`, drawn with `x` stacked on top of `y`.
pub fn tl_mult(x: &TlElement, y: &TlElement) -> Result<TlElement> {
    if x.n != y.n {
        return Err(Error::Domain(format!("strand mismatch: {} vs {}", x.n, y.n)));
    }
    let lv = loop_value();
    let mut powers = vec![LaurentPoly::one()];
    let mut acc: BTreeMap<Chord, RatAccumulator> = BTreeMap::new();
    for (c1, a1) in &x.terms {
        for (c2, a2) in &y.terms {
            let (c, loops) = c1.compose(c2);
            while powers.len() <= loops as usize {
                let next = powers.last().unwrap() * &lv;
                powers.push(next);
            }
            acc.entry(c).or_default().add_product(a1, a2, &powers[loops as usize]);
        }
    }
    Ok(TlElement::from_acc(x.n, acc))
}

thread_local! {
    static JW_MEMO: RefCell<HashMap<usize, TlElement>> = RefCell::new(HashMap::new());
}

/// The Jones-Wenzl projector `f_n` with the default guardrail.
pub fn jw(n: usize) -> Result<TlElement> {
    jw_with(n, &Config::default())
}

/// `f_n = (f_{n-1} x 1) + [n-1]/[n] (f_{n-1} x 1) e_{n-1} (f_{n-1} x 1)`.
pub fn jw_with(n: usize, cfg: &Config) -> Result<TlElement> {
    if n < 1 {
        return Err(Error::Domain("Jones-Wenzl projector needs n >= 1".into()));
    }
    if n > cfg.max_jw {
        return Err(Error::Guardrail(format!("jw({n}) exceeds n <= {}", cfg.max_jw)));
    }
    if let Some(f) = JW_MEMO.with(|m| m.borrow().get(&n).cloned()) {
        return Ok(f);
    }
    let mut f = TlElement::identity(1);
    for k in 2..=n {
        let g = f.tensor(&TlElement::identity(1));
        let c = &qr(k as i64 - 1) / &qr(k as i64);
        let mid = tl_mult(&g, &tl_mult(&TlElement::e(k, k - 1), &g)?)?;
        f = g.add(&mid.scale(&c))?;
    }
    JW_MEMO.with(|m| m.borrow_mut().insert(n, f.clone()));
    Ok(f)
}

/// Coefficients `[n+1-i]/[n]`, `i = 1..=n`, of the single expansion of `f_n`.
pub fn jw_single_coeffs(n: usize) -> Result<Vec<RatFunc>> {
    if n < 1 {
        return Err(Error::Domain("single expansion needs n >= 1".into()));
    }
    let n = n as i64;
    Ok((1..=n).map(|i| &qr(n + 1 - i) / &qr(n)).collect())
}

/// Assembles `sum_i a_i W_i (f_{n-1} x 1)` with `W_1 = 1` and
/// `W_i = e_{n-i+1} ... e_{n-1}`.
pub fn jw_from_single_expansion(n: usize) -> Result<TlElement> {
    let a = jw_single_coeffs(n)?;
    if n == 1 {
        return Ok(TlElement::identity(1));
    }
    let lower = jw(n - 1)?.tensor(&TlElement::identity(1));
    let mut x = lower.clone();
    let mut total = lower.scale(&a[0]);
    for (i, c) in a.iter().enumerate().skip(1) {
        x = tl_mult(&TlElement::e(n, n - i), &x)?;
        total = total.add(&x.scale(c))?;
    }
    Ok(total)
}

/// `(-1)^(i+j+k) [i+j+k+1]! [i]! [j]! [k]! / ([i+j]! [j+k]! [i+k]!)`.
pub fn theta_sl2(i: usize, j: usize, k: usize) -> RatFunc {
    let (i, j, k) = (i as i64, j as i64, k as i64);
    let num = &(&(&qfr(i + j + k + 1) * &qfr(i)) * &qfr(j)) * &qfr(k);
    let den = &(&qfr(i + j) * &qfr(j + k)) * &qfr(i + k);
    let v = &num / &den;
    if (i + j + k) % 2 == 0 {
        v
    } else {
        -&v
    }
}

/// A planar matching of `N` points on a line, for cup states.
type CupState = Vec<u16>;

/// `f_n` scaled to integral form: `(d, terms)` with `f_n = terms / d`.
fn jw_integral(n: usize) -> Result<(LaurentPoly, Vec<(Chord, LaurentPoly)>)> {
    let f = jw(n)?;
    let mut d = LaurentPoly::one();
    for (_, x) in f.iter() {
        let extra = RatFunc::new(x.den().clone(), d.clone())?;
        d = &d * extra.num();
    }
    let dr = RatFunc::from_poly(d.clone());
    let terms = f
        .iter()
        .map(|(c, x)| {
            let p = (x * &dr).as_poly().expect("common denominator");
            (c.clone(), p)
        })
        .collect();
    Ok((d, terms))
}

/// Applies a projector in integral form (on strands `w..w+n`) above each cup
/// state: its bottom points attach to the state's points `w..w+n`, and its
/// top points take their place.
fn apply_to_state(
    n: usize,
    f: &[(Chord, LaurentPoly)],
    w: usize,
    states: &BTreeMap<CupState, LaurentPoly>,
) -> BTreeMap<CupState, LaurentPoly> {
    let lv = loop_value();
    let powers: Vec<LaurentPoly> = (0..=n as u32).map(|k| lv.pow(k)).collect();
    let inside = |q: usize| q >= w && q < w + n;
    let mut acc: BTreeMap<CupState, LaurentPoly> = BTreeMap::new();
    for (s, cs) in states {
        for (c, cf) in f {
            let mut used = vec![false; n];
            // Follows the state edge out of point `q`; returns the final
            // point in the new numbering.
            let walk = |mut q: usize, used: &mut Vec<bool>| -> usize {
                loop {
                    let r = s[q] as usize;
                    if !inside(r) {
                        return r;
                    }
                    used[r - w] = true;
                    let p = c.partner(n + r - w);
                    if p < n {
                        return w + p;
                    }
                    used[p - n] = true;
                    q = w + p - n;
                }
            };
            let mut out = s.clone();
            for t in 0..n {
                let p = c.partner(t);
                out[w + t] = if p < n {
                    (w + p) as u16
                } else {
                    used[p - n] = true;
                    walk(w + p - n, &mut used) as u16
                };
            }
            for q in (0..s.len()).filter(|&q| !inside(q)) {
                if inside(s[q] as usize) {
                    out[q] = walk(q, &mut used) as u16;
                }
            }
            let mut loops = 0usize;
            for b in 0..n {
                if used[b] {
                    continue;
                }
                loops += 1;
                let mut x = b;
                loop {
                    used[x] = true;
                    let y = s[w + x] as usize - w;
                    used[y] = true;
                    x = c.partner(n + y) - n;
                    if x == b {
                        break;
                    }
                }
            }
            *acc.entry(out).or_default() += &(&(cs * cf) * &powers[loops]);
        }
    }
    acc.retain(|_, x| !x.is_zero());
    acc
}

/// Number of loops when two cup states on the same points are paired.
fn pair_loops(a: &CupState, b: &CupState) -> u32 {
    let mut seen = vec![false; a.len()];
    let mut loops = 0;
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut p = s;
        loop {
            seen[p] = true;
            let q = a[p] as usize;
            seen[q] = true;
            p = b[q] as usize;
            if p == s {
                break;
            }
        }
    }
    loops
}

/// Evaluates the theta network whose edges carry `f_{i+j}`, `f_{j+k}` and
/// `f_{i+k}`, with `j` strands between the first two edges, `k` between the
/// last two and `i` around the outside.
pub fn theta_sl2_diagram(i: usize, j: usize, k: usize) -> Result<RatFunc> {
    let (ea, eb, ec) = (i + j, j + k, k + i);
    let total = ea + eb + ec;
    let mut cups: CupState = vec![0; total];
    let mut join = |x: usize, y: usize| {
        cups[x] = y as u16;
        cups[y] = x as u16;
    };
    for t in 0..j {
        join(i + t, ea + j - 1 - t);
    }
    for t in 0..k {
        join(ea + j + t, ea + eb + k - 1 - t);
    }
    for t in 0..i {
        join(i - 1 - t, ea + eb + k + t);
    }
    let mut states = BTreeMap::new();
    states.insert(cups.clone(), LaurentPoly::one());
    let mut den = LaurentPoly::one();
    let windows = [(0, ea), (ea, ea + eb), (ea + eb, total)];
    for (k, &(lo, hi)) in windows.iter().enumerate() {
        if hi > lo {
            let (d, f) = jw_integral(hi - lo)?;
            states = apply_to_state(hi - lo, &f, lo, &states);
            den = &den * &d;
        }
        // A pair inside a window still to be projected is killed by that
        // projector, so such states are dropped early.
        states.retain(|s, _| {
            windows[k + 1..]
                .iter()
                .all(|&(l, h)| (l..h).all(|x| !(l..h).contains(&(s[x] as usize))))
        });
    }
    let lv = loop_value();
    let mut num = LaurentPoly::zero();
    for (s, c) in &states {
        num += &(c * &lv.pow(pair_loops(&cups, s)));
    }
    RatFunc::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let e1 = TlElement::e(3, 1);
        let e2 = TlElement::e(3, 2);
        assert_eq!(tl_mult(&e1, &e1).unwrap(), e1.scale(&RatFunc::from_poly(-qint(2))));
        assert_eq!(tl_mult(&e1, &tl_mult(&e2, &e1).unwrap()).unwrap(), e1);
        let one = TlElement::identity(3);
        assert_eq!(tl_mult(&one, &e2).unwrap(), e2);
    }

    #[test]
    fn f2() {
        let expected = TlElement::identity(2)
            .add(&TlElement::e(2, 1).scale(&(&RatFunc::one() / &qr(2))))
            .unwrap();
        assert_eq!(jw(2).unwrap(), expected);
    }

    #[test]
    fn f3_annihilated() {
        let f3 = jw(3).unwrap();
        assert!(tl_mult(&f3, &TlElement::e(3, 2)).unwrap().is_zero());
        assert_eq!(f3.len(), 5);
    }

    #[test]
    fn chords_are_planar() {
        for n in 1..=5 {
            assert!(jw(n).unwrap().iter().all(|(c, _)| c.is_planar()));
        }
    }

    #[test]
    fn single_expansion_matches() {
        for n in 1..=5 {
            assert_eq!(jw_from_single_expansion(n).unwrap(), jw(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn theta_small() {
        assert!(theta_sl2(0, 0, 0).is_one());
        let expected = -&(&(&qr(4) * &qr(3)) / &(&qr(2) * &qr(2)));
        assert_eq!(theta_sl2(1, 1, 1), expected);
        assert_eq!(theta_sl2_diagram(1, 0, 0).unwrap(), RatFunc::from_poly(-qint(2)));
        assert_eq!(theta_sl2_diagram(1, 1, 1).unwrap(), expected);
    }

    #[test]
    fn guardrail() {
        let cfg = Config {
            max_jw: 3,
            ..Config::default()
        };
        assert!(matches!(jw_with(4, &cfg), Err(Error::Guardrail(_))));
    }
}

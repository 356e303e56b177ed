//! sl(3) clasps: expansion coefficients, constructions and axiom checks.
//!
//! A clasp of weight `(a, b)` acts on `a` strands of type `+` followed by
//! `b` strands of type `-`.

use std::cell::RefCell;
use std::collections::HashMap;

use super::cache;
use super::tangle::gen::{self, at, at_top, h, id, iweb, y_merge};
use super::tangle::{Frame, Tangle};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::qpoly::{qfr, qr, RatFunc};
use crate::report::Report;
use crate::web::{render_signs, Kind, Sign, Web};
use Sign::{Minus, Plus};

/// Boundary types of the segregated clasp of weight `(a, b)`.
pub fn segregated(a: usize, b: usize) -> Vec<Sign> {
    let mut v = vec![Plus; a];
    v.extend(vec![Minus; b]);
    v
}

/// `a_i` for `i = 1..=n` in the single expansion of the clasp of weight `(n, 0)`.
pub fn single_coeffs_n0(n: usize) -> Result<Vec<RatFunc>> {
    if n < 1 {
        return Err(Error::Domain("single expansion needs n >= 1".into()));
    }
    let n = n as i64;
    Ok((1..=n).map(|i| &qr(n + 1 - i) / &qr(n)).collect())
}

/// The `n - 1` linear equations satisfied by the single expansion coefficients.
pub fn verify_single_recurrences(n: usize) -> Result<Report> {
    let a = single_coeffs_n0(n)?;
    let mut r = Report::new(format!("single ({n},0)"));
    let two = qr(2);
    let at = |i: usize| &a[i - 1];
    if n >= 2 {
        let e = at(n - 1) - &(&two * at(n));
        r.check(e.is_zero(), || format!("a_{} - [2]a_{} = {e}", n - 1, n));
    }
    for i in 1..n.saturating_sub(1) {
        let e = &(at(i) - &(&two * at(i + 1))) + at(i + 2);
        r.check(e.is_zero(), || format!("a_{i} - [2]a_{} + a_{} = {e}", i + 1, i + 2));
    }
    Ok(r)
}

/// `a_k` for `k = 0..=min(a, b)` in the quadruple expansion.
pub fn quad_coeffs(a: usize, b: usize) -> Vec<RatFunc> {
    let (ai, bi) = (a as i64, b as i64);
    (0..=a.min(b) as i64)
        .map(|k| {
            let num = &(&qfr(ai) * &qfr(bi)) * &qfr(ai + bi - k + 1);
            let den = &(&(&qfr(ai - k) * &qfr(bi - k)) * &qfr(k)) * &qfr(ai + bi + 1);
            let c = &num / &den;
            if k % 2 == 0 {
                c
            } else {
                -&c
            }
        })
        .collect()
}

/// Coefficients `a_{i,j}` (`1 <= i <= b`, `0 <= j <= a`) of the single
/// expansion of a non-segregated clasp of weight `(a, b)`.
#[derive(Clone, Debug)]
pub struct NonsegTable {
    pub a: usize,
    pub b: usize,
    entries: Vec<Vec<RatFunc>>,
}

impl NonsegTable {
    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i - 1][j]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &RatFunc)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i + 1, j, c)))
    }
}

pub fn nonseg_coeffs(a: usize, b: usize) -> Result<NonsegTable> {
    if a < 1 || b < 1 {
        return Err(Error::Domain("non-segregated expansion needs a, b >= 1".into()));
    }
    let (ai, bi) = (a as i64, b as i64);
    let den = &qr(bi) * &qr(ai + bi + 1);
    let entries = (1..=bi)
        .map(|i| {
            (0..=ai)
                .map(|j| &(&qr(bi - i + 1) * &qr(bi + j + 1)) / &den)
                .collect()
        })
        .collect();
    Ok(NonsegTable { a, b, entries })
}

/// The exceptional equation and the three families of linear equations
/// obtained by attaching a Y or a U-turn to the non-segregated expansion.
pub fn verify_nonseg_recurrences(a: usize, b: usize) -> Result<Report> {
    let t = nonseg_coeffs(a, b)?;
    let mut r = Report::new(format!("non-segregated ({a},{b})"));
    let two = qr(2);
    let x = |i: usize, j: usize| t.get(i, j).clone();
    if b >= 2 {
        let e = &(&(&(&qr(3) * &x(1, 0)) - &(&two * &x(1, 1))) - &(&two * &x(2, 0))) + &x(2, 1);
        r.check(e.is_zero(), || format!("exceptional equation = {e}"));
        for j in 0..=a {
            let e = &x(b - 1, j) - &(&two * &x(b, j));
            r.check(e.is_zero(), || format!("type I at j={j}: {e}"));
        }
    }
    for i in 1..b.saturating_sub(1) {
        for j in 0..=a {
            let e = &(&x(i, j) - &(&two * &x(i + 1, j))) + &x(i + 2, j);
            r.check(e.is_zero(), || format!("type II at ({i},{j}): {e}"));
        }
    }
    for i in 1..=b {
        for j in 0..a.saturating_sub(1) {
            let e = &(&x(i, j) - &(&two * &x(i, j + 1))) + &x(i, j + 2);
            r.check(e.is_zero(), || format!("type III at ({i},{j}): {e}"));
        }
    }
    let one = t.get(1, a);
    r.check(one.is_one(), || format!("a_(1,{a}) = {one}"));
    let xval = &qr(b as i64 + 1) / &qr((a + b + 1) as i64);
    for (i, j, c) in t.iter() {
        let lemma = &(&(&qr((b - i + 1) as i64) * &qr((b + j + 1) as i64))
            / &(&qr(b as i64) * &qr(b as i64 + 1)))
            * &xval;
        r.check(&lemma == c, || format!("lemma form differs at ({i},{j})"));
    }
    Ok(r)
}

/// Coefficients `(1, [b-1]/[b], -[a]/([b][a+b+1]))` of the double expansion.
pub fn double_coeffs(a: usize, b: usize) -> [RatFunc; 3] {
    let (ai, bi) = (a as i64, b as i64);
    [
        RatFunc::one(),
        &qr(bi - 1) / &qr(bi),
        -&(&qr(ai) / &(&qr(bi) * &qr(ai + bi + 1))),
    ]
}

/// The I-web on strands `k, k+1` (zero-based) of `n` strands of type `t`.
fn e_at(t: Sign, n: usize, k: usize) -> Tangle {
    at(&vec![t; n], k, &iweb(t)).expect("I-web fits")
}

fn check_guardrail(a: usize, b: usize, cfg: &Config) -> Result<()> {
    if a + b > cfg.max_clasp_weight {
        return Err(Error::Guardrail(format!(
            "clasp weight ({a},{b}) exceeds a+b <= {}",
            cfg.max_clasp_weight
        )));
    }
    Ok(())
}

thread_local! {
    static MEMO: RefCell<HashMap<(usize, usize), Tangle>> = RefCell::new(HashMap::new());
}

/// The clasp of weight `(a, b)` with the default configuration.
pub fn clasp(a: usize, b: usize) -> Result<Tangle> {
    clasp_with(a, b, &Config::default())
}

/// Builds (or loads) the clasp of weight `(a, b)`: `(n, 0)` by the single
/// expansion, `(0, n)` by arrow reversal, mixed weights by the quadruple
/// expansion.
pub fn clasp_with(a: usize, b: usize, cfg: &Config) -> Result<Tangle> {
    check_guardrail(a, b, cfg)?;
    if let Some(t) = MEMO.with(|m| m.borrow().get(&(a, b)).cloned()) {
        return Ok(t);
    }
    let dir = cfg.cache_dir.as_deref();
    let t = match dir.and_then(|d| cache::load(d, a, b).transpose()) {
        Some(t) => t?,
        None => {
            let t = if b == 0 {
                single_clasp(a, cfg)?
            } else if a == 0 {
                clasp_with(b, 0, cfg)?.reversed()
            } else {
                quadruple_clasp(a, b, cfg)?
            };
            if let Some(d) = dir {
                cache::store(d, a, b, &t)?;
            }
            t
        }
    };
    MEMO.with(|m| m.borrow_mut().insert((a, b), t.clone()));
    Ok(t)
}

/// `P_n = sum_i a_i W_i (P_{n-1} x 1)` with `W_1 = 1` and
/// `W_i = E_{n-i+1} ... E_{n-1}`.
fn single_clasp(n: usize, cfg: &Config) -> Result<Tangle> {
    if n == 0 {
        return Ok(Tangle::identity(&[]));
    }
    if n == 1 {
        return Ok(Tangle::identity(&[Plus]));
    }
    let lower = clasp_with(n - 1, 0, cfg)?.tensor(&id(&[Plus]));
    let coeffs = single_coeffs_n0(n)?;
    let mut x = lower;
    let mut total = x.clone();
    for (i, c) in coeffs.iter().enumerate().skip(1) {
        // W_{i+1} = E_{n-i} W_i; zero-based strand index n - i - 1.
        x = e_at(Plus, n, n - i - 1).compose(&x)?;
        total = total.add(&x.scale(c))?;
    }
    Ok(total)
}

/// `D(k)`: the last `k` `+` strands cap off against the first `k` `-`
/// strands below, and reopen above.
pub fn d_web(a: usize, b: usize, k: usize) -> Result<Tangle> {
    let types = segregated(a, b);
    let mid = segregated(a - k, b - k);
    let idl = id(&vec![Plus; a - k]);
    let idr = id(&vec![Minus; b - k]);
    let caps = idl.tensor(&gen::nested_cap(Plus, k)).tensor(&idr);
    let cups = idl.tensor(&gen::nested_cup(Plus, k)).tensor(&idr);
    debug_assert_eq!(caps.top(), &mid[..]);
    debug_assert_eq!(caps.bottom(), &types[..]);
    cups.compose(&caps)
}

fn quadruple_clasp(a: usize, b: usize, cfg: &Config) -> Result<Tangle> {
    let q = clasp_with(a, 0, cfg)?.tensor(&clasp_with(0, b, cfg)?);
    let types = segregated(a, b);
    let mut s = Tangle::zero(types.clone(), types);
    for (k, c) in quad_coeffs(a, b).iter().enumerate() {
        s = s.add(&d_web(a, b, k)?.scale(c))?;
    }
    q.compose(&s.compose(&q)?)
}

/// The filling on `+ -^b` used by the third term of the double expansion:
/// a U-turn entering at the top right and leaving at the top left, and one
/// entering at the bottom left and leaving at the bottom right, each crossing
/// the `b - 1` middle strands through H-shaped resolutions.
pub fn double_filling(b: usize) -> Tangle {
    assert!(b >= 1);
    let mut types = vec![Plus];
    types.extend(vec![Minus; b]);
    let mut f = Frame::new(&types, &types);
    let mut top_prev = f.top[b];
    let mut downs = vec![None; b];
    for j in (1..b).rev() {
        let s = f.b.vertex(Kind::Sink);
        let o = f.b.vertex(Kind::Source);
        f.b.connect(s[0], f.top[j]);
        f.b.connect(s[1], top_prev);
        f.b.connect(s[2], o[0]);
        downs[j] = Some(o[1]);
        top_prev = o[2];
    }
    f.b.connect(top_prev, f.top[0]);
    let mut bottom_prev = f.bottom[0];
    for (j, down) in downs.iter().enumerate().skip(1) {
        let u = f.b.vertex(Kind::Sink);
        let w = f.b.vertex(Kind::Source);
        f.b.connect(u[0], down.unwrap());
        f.b.connect(u[1], w[2]);
        f.b.connect(u[2], bottom_prev);
        f.b.connect(w[1], f.bottom[j]);
        bottom_prev = w[0];
    }
    f.b.connect(bottom_prev, f.bottom[b]);
    Tangle::from_web(types.clone(), types, &f.finish())
}

/// The clasp of weight `(a, b)` built by iterating the double expansion
/// in `b`, starting from the clasp of weight `(a, 0)`.
pub fn double_clasp(a: usize, b: usize, cfg: &Config) -> Result<Tangle> {
    check_guardrail(a, b, cfg)?;
    let mut p = clasp_with(a, 0, cfg)?;
    for bb in 1..=b {
        let lower = p.tensor(&id(&[Minus]));
        let types = segregated(a, bb);
        let [c1, c2, c3] = double_coeffs(a, bb);
        let mut s = lower.scale(&c1);
        if bb >= 2 {
            let e = at(&types, a + bb - 2, &iweb(Minus))?;
            s = s.add(&lower.compose(&e.compose(&lower)?)?.scale(&c2))?;
        }
        if a >= 1 {
            let fill = at(&types, a - 1, &double_filling(bb))?;
            s = s.add(&lower.compose(&fill.compose(&lower)?)?.scale(&c3))?;
        }
        p = s;
    }
    Ok(p)
}

/// Positions of the H webs, bottom to top, that carry `+^a -^b` to `target`
/// by moving the leftmost remaining `-` strand left.
pub fn h_sequence(a: usize, b: usize, target: &[Sign]) -> Result<Vec<usize>> {
    let mut cur = segregated(a, b);
    let mut sorted = target.to_vec();
    sorted.sort();
    if sorted != cur {
        return Err(Error::Web(format!(
            "{} is not a rearrangement of {}",
            render_signs(target),
            render_signs(&cur)
        )));
    }
    let mut seq = Vec::new();
    for i in 0..cur.len() {
        if target[i] == Minus && cur[i] == Plus {
            let j = (i..cur.len()).find(|&j| cur[j] == Minus).unwrap();
            for p in (i..j).rev() {
                seq.push(p);
                cur.swap(p, p + 1);
            }
        }
    }
    debug_assert_eq!(cur, target);
    Ok(seq)
}

/// The stack of H webs taking `+^a -^b` (bottom) to `target` (top).
pub fn h_stack(a: usize, b: usize, target: &[Sign]) -> Result<Tangle> {
    let mut cur = segregated(a, b);
    let mut t = id(&cur);
    for p in h_sequence(a, b, target)? {
        t = at(&cur, p, &h(Plus))?.compose(&t)?;
        cur.swap(p, p + 1);
    }
    Ok(t)
}

/// Conjugates a segregated clasp of weight `(a, b)` by H webs so that its
/// top reads `top` and its bottom reads `bottom`.
pub fn nonsegregate(c: &Tangle, top: &[Sign], bottom: &[Sign]) -> Result<Tangle> {
    let a = c.top().iter().filter(|&&s| s == Plus).count();
    let b = c.top().len() - a;
    if c.top() != segregated(a, b) || c.bottom() != c.top() {
        return Err(Error::Web("nonsegregate expects a segregated clasp".into()));
    }
    let upper = h_stack(a, b, top)?;
    let lower = h_stack(a, b, bottom)?.dagger();
    upper.compose(&c.compose(&lower)?)
}

/// Every attachment of a Y or a U-turn to two adjacent strands, on `side`
/// (`true` for the top) of a row of the given types.
fn attachments(types: &[Sign], top_side: bool) -> Vec<(usize, Tangle)> {
    let mut out = Vec::new();
    for p in 0..types.len().saturating_sub(1) {
        let (l, r) = (types[p], types[p + 1]);
        let g = if l == r {
            if top_side {
                y_merge(l)
            } else {
                y_merge(l).dagger()
            }
        } else if top_side {
            gen::cap(l)
        } else {
            gen::cup(l)
        };
        let placed = if top_side { at(types, p, &g) } else { at_top(types, p, &g) };
        out.push((p, placed.expect("generator fits")));
    }
    out
}

/// Idempotency and annihilation by every adjacent Y or U-turn, on both sides.
pub fn verify_clasp_axioms(c: &Tangle, label: &str) -> Result<Report> {
    let mut r = Report::new(format!("clasp axioms {label}"));
    let sq = c.compose(c)?;
    r.check(sq == *c, || "not idempotent".into());
    for (p, g) in attachments(c.top(), true) {
        let z = g.compose(c)?;
        r.check(z.is_zero(), || format!("top attachment at {p} leaves {} terms", z.len()));
    }
    for (p, g) in attachments(c.bottom(), false) {
        let z = c.compose(&g)?;
        r.check(z.is_zero(), || format!("bottom attachment at {p} leaves {} terms", z.len()));
    }
    Ok(r)
}

/// The basis web `D_{i,j}` of the single expansion of a non-segregated clasp
/// of weight `(a, b)`. Its top reads `-^b +^(a+1)` and its bottom
/// `-^(b-1) +^a`. A strand enters at top position `b - i`, crosses the next
/// `i - 1` strands of type `-` and then `j` strands of type `+` through
/// zigzag fillings, and leaves at top position `b + j`.
pub fn nonseg_basis_web(a: usize, b: usize, i: usize, j: usize) -> Tangle {
    assert!((1..=b).contains(&i) && j <= a);
    let mut top = vec![Minus; b];
    top.extend(vec![Plus; a + 1]);
    let mut bottom = vec![Minus; b - 1];
    bottom.extend(vec![Plus; a]);
    let mut f = Frame::new(&top, &bottom);
    let left = b - i;
    for k in 0..left {
        f.b.connect(f.top[k], f.bottom[k]);
    }
    let mut prev = f.top[left];
    for m in 0..i - 1 {
        let s = f.b.vertex(Kind::Sink);
        let o = f.b.vertex(Kind::Source);
        f.b.connect(s[0], f.top[left + 1 + m]);
        f.b.connect(s[1], o[2]);
        f.b.connect(s[2], prev);
        f.b.connect(o[1], f.bottom[left + m]);
        prev = o[0];
    }
    for m in 0..j {
        let s = f.b.vertex(Kind::Sink);
        let o = f.b.vertex(Kind::Source);
        f.b.connect(s[0], o[2]);
        f.b.connect(s[1], f.bottom[b - 1 + m]);
        f.b.connect(s[2], prev);
        f.b.connect(o[0], f.top[b + m]);
        prev = o[1];
    }
    f.b.connect(prev, f.top[b + j]);
    for k in 0..a - j {
        f.b.connect(f.top[b + j + 1 + k], f.bottom[b - 1 + j + k]);
    }
    Tangle::from_web(top, bottom, &f.finish())
}

/// Both sides of the single expansion of the non-segregated clasp of weight
/// `(a, b)`. The left side is the clasp with top `-^b +^a` and bottom
/// `-^(b-1) +^a -`, whose last bottom strand turns up on the right; the right
/// side is `sum a_{i,j} D_{i,j}` over the non-segregated clasp of weight
/// `(a, b-1)`.
pub fn nonseg_single_expansion(a: usize, b: usize, cfg: &Config) -> Result<(Tangle, Tangle)> {
    check_guardrail(a, b, cfg)?;
    let mut top = vec![Minus; b];
    top.extend(vec![Plus; a]);
    let mut bottom = vec![Minus; b - 1];
    bottom.extend(vec![Plus; a]);
    let mut bent = bottom.clone();
    bent.push(Minus);
    let n = nonsegregate(&clasp_with(a, b, cfg)?, &top, &bent)?;
    let lhs = n
        .tensor(&id(&[Plus]))
        .compose(&id(&bottom).tensor(&gen::cup(Minus)))?;
    let lower = nonsegregate(&clasp_with(a, b - 1, cfg)?, &bottom, &bottom)?;
    let table = nonseg_coeffs(a, b)?;
    let mut rhs = Tangle::zero(lhs.top().to_vec(), lhs.bottom().to_vec());
    for (i, j, c) in table.iter() {
        rhs = rhs.add(&nonseg_basis_web(a, b, i, j).compose(&lower)?.scale(c))?;
    }
    Ok((lhs, rhs))
}

/// Distinct basis webs of the single expansion of weight `(a, b)`: the
/// `D_{i,j}` for `a, b >= 1`, and the webs `W_i` for weight `(n, 0)`.
pub fn single_expansion_webs(a: usize, b: usize) -> Result<Vec<Web>> {
    let mut webs: Vec<Web> = Vec::new();
    if b == 0 {
        let n = a;
        let mut x = id(&vec![Plus; n]);
        webs.extend(x.sum().iter().map(|(w, _)| w.clone()));
        for i in 1..n {
            x = e_at(Plus, n, n - i - 1).compose(&x)?;
            webs.extend(x.sum().iter().map(|(w, _)| w.clone()));
        }
    } else {
        if a < 1 {
            return Err(Error::Domain("single expansion needs a >= 1 when b >= 1".into()));
        }
        for i in 1..=b {
            for j in 0..=a {
                webs.extend(nonseg_basis_web(a, b, i, j).sum().iter().map(|(w, _)| w.clone()));
            }
        }
    }
    webs.sort();
    webs.dedup();
    Ok(webs)
}

//! Tangles: webs in a rectangle with typed strands on the top and bottom.
//!
//! The disk boundary of a tangle lists the top points left to right, then
//! the bottom points right to left. A strand of type `Plus` is a λ1 strand
//! pointing up, so a top point of type `t` has disk sign `t.flip()` and a
//! bottom point of type `t` has disk sign `t`. Composition `a.compose(b)`
//! stacks `a` on top of `b`.

use std::collections::BTreeMap;

use super::reduce::with_reducer;
use crate::error::{Error, Result};
use crate::qpoly::RatFunc;
use crate::web::{glue, Kind, Port, RatAccumulator, Sign, Web, WebBuilder, WebSum};

#[derive(Clone, Debug, PartialEq)]
pub struct Tangle {
    top: Vec<Sign>,
    bottom: Vec<Sign>,
    sum: WebSum,
}

/// A builder with the rectangle's boundary in place. `top` and `bottom`
/// hold the boundary ports left to right.
pub struct Frame {
    pub b: WebBuilder,
    pub top: Vec<Port>,
    pub bottom: Vec<Port>,
}

impl Frame {
    pub fn new(top: &[Sign], bottom: &[Sign]) -> Frame {
        let mut b = WebBuilder::new();
        let top_ports = top.iter().map(|t| b.boundary(t.flip())).collect();
        let mut bottom_ports: Vec<Port> = bottom.iter().rev().map(|&t| b.boundary(t)).collect();
        bottom_ports.reverse();
        Frame {
            b,
            top: top_ports,
            bottom: bottom_ports,
        }
    }

    /// Embeds a tangle web; returns its (top, bottom) ports left to right.
    pub fn embed(&mut self, w: &Web, ntop: usize) -> (Vec<Port>, Vec<Port>) {
        let ports = self.b.embed(w);
        let top = ports[..ntop].to_vec();
        let mut bottom = ports[ntop..].to_vec();
        bottom.reverse();
        (top, bottom)
    }

    pub fn finish(self) -> Web {
        self.b.finish().expect("tangle frame produced an invalid web")
    }
}

fn check_types(upper: &[Sign], lower: &[Sign]) -> Result<()> {
    if upper != lower {
        return Err(Error::Web(format!(
            "strand types do not match: {} over {}",
            crate::web::render_signs(upper),
            crate::web::render_signs(lower)
        )));
    }
    Ok(())
}

impl Tangle {
    /// Wraps a combination of webs whose boundary follows the tangle layout.
    pub fn from_sum(top: Vec<Sign>, bottom: Vec<Sign>, sum: WebSum) -> Tangle {
        debug_assert!(sum.iter().all(|(w, _)| w.nb() == top.len() + bottom.len()));
        Tangle { top, bottom, sum }
    }

    pub fn from_web(top: Vec<Sign>, bottom: Vec<Sign>, w: &Web) -> Tangle {
        Tangle::from_sum(top, bottom, WebSum::single(w))
    }

    pub fn zero(top: Vec<Sign>, bottom: Vec<Sign>) -> Tangle {
        Tangle::from_sum(top, bottom, WebSum::new())
    }

    pub fn identity(types: &[Sign]) -> Tangle {
        let mut f = Frame::new(types, types);
        for i in 0..types.len() {
            f.b.connect(f.top[i], f.bottom[i]);
        }
        Tangle::from_web(types.to_vec(), types.to_vec(), &f.finish())
    }

    pub fn top(&self) -> &[Sign] {
        &self.top
    }

    pub fn bottom(&self) -> &[Sign] {
        &self.bottom
    }

    pub fn sum(&self) -> &WebSum {
        &self.sum
    }

    pub fn len(&self) -> usize {
        self.sum.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sum.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.sum.is_empty()
    }

    pub fn scale(&self, c: &RatFunc) -> Tangle {
        Tangle::from_sum(self.top.clone(), self.bottom.clone(), self.sum.scale(c))
    }

    pub fn add(&self, o: &Tangle) -> Result<Tangle> {
        check_types(&self.top, &o.top)?;
        check_types(&self.bottom, &o.bottom)?;
        Ok(Tangle::from_sum(self.top.clone(), self.bottom.clone(), self.sum.add(&o.sum)))
    }

    pub fn sub(&self, o: &Tangle) -> Result<Tangle> {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    /// Stacks `self` on top of `lower` and reduces.
    pub fn compose(&self, lower: &Tangle) -> Result<Tangle> {
        check_types(&self.bottom, &lower.top)?;
        let m = self.bottom.len();
        let mut acc: BTreeMap<Web, RatAccumulator> = BTreeMap::new();
        with_reducer(|r| -> Result<()> {
            for (wa, ca) in self.sum.iter() {
                for (wb, cb) in lower.sum.iter() {
                    let c = ca * cb;
                    let g = glue(wa, wb, m)?;
                    for (w, f) in r.reduce_web(&g).iter() {
                        acc.entry(w.clone()).or_default().add_scaled(&c, f);
                    }
                }
            }
            Ok(())
        })?;
        let mut sum = WebSum::new();
        for (w, a) in acc {
            sum.add_canonical(w, a.finish());
        }
        Ok(Tangle::from_sum(self.top.clone(), lower.bottom.clone(), sum))
    }

    /// Places `self` to the left of `right`.
    pub fn tensor(&self, right: &Tangle) -> Tangle {
        let top: Vec<Sign> = self.top.iter().chain(&right.top).copied().collect();
        let bottom: Vec<Sign> = self.bottom.iter().chain(&right.bottom).copied().collect();
        let (lt, lb) = (self.top.len(), self.bottom.len());
        let mut sum = WebSum::new();
        for (wa, ca) in self.sum.iter() {
            for (wb, cb) in right.sum.iter() {
                let mut f = Frame::new(&top, &bottom);
                let (at, ab) = f.embed(wa, lt);
                let (bt, bb) = f.embed(wb, right.top.len());
                for (i, p) in at.into_iter().chain(bt).enumerate() {
                    f.b.connect(f.top[i], p);
                }
                for (i, p) in ab.into_iter().chain(bb).enumerate() {
                    f.b.connect(f.bottom[i], p);
                }
                debug_assert_eq!(f.top.len(), lt + right.top.len());
                debug_assert_eq!(f.bottom.len(), lb + right.bottom.len());
                sum.add_term(&f.finish(), ca * cb);
            }
        }
        Tangle::from_sum(top, bottom, sum)
    }

    /// Reverses every arrow; strand types flip.
    pub fn reversed(&self) -> Tangle {
        Tangle::from_sum(
            self.top.iter().map(|s| s.flip()).collect(),
            self.bottom.iter().map(|s| s.flip()).collect(),
            self.sum.map_webs(Web::reversed),
        )
    }

    /// Reflection in a horizontal line followed by arrow reversal: top and
    /// bottom swap while strand types are kept.
    pub fn dagger(&self) -> Tangle {
        Tangle::from_sum(
            self.bottom.clone(),
            self.top.clone(),
            self.sum.map_webs(|w| w.reflected().reversed()),
        )
    }

    /// Connects the last `k` top points to the last `k` bottom points by
    /// nested arcs on the right.
    pub fn close_right(&self, k: usize) -> Result<Tangle> {
        let (nt, nb) = (self.top.len(), self.bottom.len());
        if k > nt || k > nb {
            return Err(Error::Web(format!("cannot close {k} strands")));
        }
        check_types(&self.top[nt - k..], &self.bottom[nb - k..])?;
        let top = self.top[..nt - k].to_vec();
        let bottom = self.bottom[..nb - k].to_vec();
        let mut sum = WebSum::new();
        with_reducer(|r| {
            for (w, c) in self.sum.iter() {
                let mut f = Frame::new(&top, &bottom);
                let (wt, wb) = f.embed(w, nt);
                for i in 0..nt - k {
                    f.b.connect(f.top[i], wt[i]);
                }
                for i in 0..nb - k {
                    f.b.connect(f.bottom[i], wb[i]);
                }
                for t in 0..k {
                    f.b.connect(wt[nt - k + t], wb[nb - k + t]);
                }
                for (w2, c2) in r.reduce_web(&f.finish()).iter() {
                    sum.add_canonical(w2.clone(), c * &RatFunc::from(c2.clone()));
                }
            }
        });
        Ok(Tangle::from_sum(top, bottom, sum))
    }

    /// Full closure to a scalar.
    pub fn trace(&self) -> Result<RatFunc> {
        let c = self.close_right(self.top.len())?;
        Ok(c.sum.as_scalar().expect("closed webs reduce to scalars"))
    }

    /// The value if this is a scalar multiple of the empty tangle.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        if self.top.is_empty() && self.bottom.is_empty() {
            self.sum.as_scalar()
        } else {
            None
        }
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.compose(self)? == *self)
    }
}

/// Elementary tangles.
pub mod gen {
    use super::*;
    use Sign::{Minus, Plus};

    pub fn id(types: &[Sign]) -> Tangle {
        Tangle::identity(types)
    }

    pub fn ids(t: Sign, n: usize) -> Vec<Sign> {
        vec![t; n]
    }

    /// Two strands of type `t` merge into one of type `t.flip()`.
    pub fn y_merge(t: Sign) -> Tangle {
        let mut f = Frame::new(&[t.flip()], &[t, t]);
        let kind = if t == Plus { Kind::Sink } else { Kind::Source };
        let v = f.b.vertex(kind);
        f.b.connect(v[0], f.top[0]);
        f.b.connect(v[1], f.bottom[1]);
        f.b.connect(v[2], f.bottom[0]);
        Tangle::from_web(vec![t.flip()], vec![t, t], &f.finish())
    }

    /// One strand of type `t.flip()` splits into two of type `t`.
    pub fn y_split(t: Sign) -> Tangle {
        y_merge(t).dagger()
    }

    /// The I-web on two strands of type `t`.
    pub fn iweb(t: Sign) -> Tangle {
        y_split(t).compose(&y_merge(t)).expect("types match")
    }

    /// A U-turn closing two bottom strands of opposite types.
    pub fn cap(left: Sign) -> Tangle {
        let mut f = Frame::new(&[], &[left, left.flip()]);
        f.b.connect(f.bottom[0], f.bottom[1]);
        Tangle::from_web(vec![], vec![left, left.flip()], &f.finish())
    }

    /// A U-turn opening two top strands of opposite types.
    pub fn cup(left: Sign) -> Tangle {
        let mut f = Frame::new(&[left, left.flip()], &[]);
        f.b.connect(f.top[0], f.top[1]);
        Tangle::from_web(vec![left, left.flip()], vec![], &f.finish())
    }

    /// `k` nested caps joining `t^k` on the left with `t.flip()^k` on the right.
    pub fn nested_cap(t: Sign, k: usize) -> Tangle {
        let bottom: Vec<Sign> = ids(t, k).into_iter().chain(ids(t.flip(), k)).collect();
        let mut f = Frame::new(&[], &bottom);
        for i in 0..k {
            f.b.connect(f.bottom[k - 1 - i], f.bottom[k + i]);
        }
        Tangle::from_web(vec![], bottom, &f.finish())
    }

    pub fn nested_cup(t: Sign, k: usize) -> Tangle {
        nested_cap(t, k).dagger()
    }

    /// The H web taking bottom `(t, t.flip())` to top `(t.flip(), t)`.
    pub fn h(t: Sign) -> Tangle {
        let top = vec![Minus, Plus];
        let bottom = vec![Plus, Minus];
        let mut f = Frame::new(&top, &bottom);
        let l = f.b.vertex(Kind::Sink);
        let r = f.b.vertex(Kind::Source);
        f.b.connect(l[0], f.top[0]);
        f.b.connect(l[1], r[2]);
        f.b.connect(l[2], f.bottom[0]);
        f.b.connect(r[0], f.top[1]);
        f.b.connect(r[1], f.bottom[1]);
        let plus = Tangle::from_web(top, bottom, &f.finish());
        if t == Plus {
            plus
        } else {
            plus.reversed()
        }
    }

    /// `g` acting on strands `pos..` of a row of strands of the given types.
    pub fn at(types: &[Sign], pos: usize, g: &Tangle) -> Result<Tangle> {
        let n = g.bottom().len();
        if pos + n > types.len() || types[pos..pos + n] != *g.bottom() {
            return Err(Error::Web(format!("cannot place generator at position {pos}")));
        }
        Ok(id(&types[..pos]).tensor(g).tensor(&id(&types[pos + n..])))
    }

    /// Same as [`at`] but matching `g`'s top against the row (for caps and
    /// generators placed below a tangle).
    pub fn at_top(types: &[Sign], pos: usize, g: &Tangle) -> Result<Tangle> {
        let n = g.top().len();
        if pos + n > types.len() || types[pos..pos + n] != *g.top() {
            return Err(Error::Web(format!("cannot place generator at position {pos}")));
        }
        Ok(id(&types[..pos]).tensor(g).tensor(&id(&types[pos + n..])))
    }
}

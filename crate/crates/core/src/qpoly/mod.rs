//! Exact arithmetic in `v = q^(1/2)`: Laurent polynomials, quantum integers,
//! rational functions and polynomials over prime fields.

mod laurent;
pub mod modp;
mod ratfunc;

pub use laurent::{qfact, qint, qint_checked, LaurentPoly};
pub use ratfunc::RatFunc;

/// `[n]` as a rational function.
pub fn qr(n: i64) -> RatFunc {
    RatFunc::from_poly(qint(n))
}

/// `[n]!` as a rational function; `n < 0` panics.
pub fn qfr(n: i64) -> RatFunc {
    RatFunc::from_poly(qfact(n).expect("nonnegative factorial argument"))
}

/// `v^k` as a rational function.
pub fn vr(k: i64) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::v_pow(k))
}

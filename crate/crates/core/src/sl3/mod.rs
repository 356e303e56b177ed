//! The sl(3) web calculus: reduction, tangles and clasps.

pub mod cache;
pub mod clasp;
pub mod graphs;
pub mod reduce;
pub mod tangle;

pub use clasp::{clasp, clasp_with};
pub use reduce::{evaluate_closed, reduce, reduce_web, with_reducer, Reducer};
pub use tangle::Tangle;

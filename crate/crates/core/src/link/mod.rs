//! Coloured sl(3) link invariants and periodicity congruences.

pub mod braid;
pub mod cable;
pub mod ideal;
pub mod pd;
pub mod skein;

pub use pd::{parse_pd, Crossing, LinkDiagram};

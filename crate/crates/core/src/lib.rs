//! Exact symbolic engine for the quantum sl(3) and sp(4) web calculi.

pub mod cli;
pub mod config;
pub mod error;
pub mod link;
pub mod qpoly;
pub mod rep;
pub mod report;
pub mod sl3;
pub mod sp4;
pub mod theta;
pub mod tl2;
pub mod verify;
pub mod web;

pub use error::{Error, Result};

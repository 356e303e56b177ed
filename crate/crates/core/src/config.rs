//! Guardrails and cache location shared by the engine and the CLI.

use std::path::PathBuf;

/// Engine version embedded in on-disk cache keys.
pub const ENGINE_VERSION: &str = concat!("spider-", env!("CARGO_PKG_VERSION"), "-r1");

#[derive(Clone, Debug)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    /// Largest `a + b` for which a clasp is built.
    pub max_clasp_weight: usize,
    /// Largest strand count for Jones-Wenzl projectors.
    pub max_jw: usize,
    /// Largest total number of parallel strands after cabling a link.
    pub max_cable_width: usize,
    /// Largest number of single crossings after cabling; the state sum
    /// has two terms per crossing.
    pub max_cabled_crossings: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_dir: std::env::var_os("SPIDER_CACHE").map(PathBuf::from),
            max_clasp_weight: 8,
            max_jw: 8,
            max_cable_width: 12,
            max_cabled_crossings: 20,
        }
    }
}

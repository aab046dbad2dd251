use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Tunables shared by the pipeline, the CLI and the Python bindings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub discriminant_budget: u64,
    /// Largest `p` for which orders are computed by direct counting.
    pub naive_count_bound: u64,
    /// Largest `p` for which baby-step giant-step counting is attempted.
    pub bsgs_bound: u64,
    pub prng_seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub parallelism: usize,
    pub slow_suite: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            discriminant_budget: 100_000,
            naive_count_bound: 1 << 20,
            bsgs_bound: 1 << 50,
            prng_seed: 1,
            cache_dir: Some(PathBuf::from("./cache")),
            parallelism: 0,
            slow_suite: false,
        }
    }
}

impl Config {
    /// Defaults overridden by `G2_CACHE_DIR` and `G2_SEED`.
    pub fn from_env() -> Self {
        let mut c = Config::default();
        if let Ok(dir) = std::env::var("G2_CACHE_DIR") {
            c.cache_dir = Some(PathBuf::from(dir));
        }
        if let Some(seed) = std::env::var("G2_SEED").ok().and_then(|s| s.parse().ok()) {
            c.prng_seed = seed;
        }
        c
    }

    /// Same configuration without an on-disk cache.
    pub fn without_cache(mut self) -> Self {
        self.cache_dir = None;
        self
    }
}

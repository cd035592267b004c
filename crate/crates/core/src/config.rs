//! Numeric configuration shared by every computation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rigor::primes::PrimalityConfig;

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_DIGIT_CAP: u64 = 2000;
pub const DEFAULT_MR_ROUNDS: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Working precision in bits.
    pub precision: u32,
    /// Windows whose start has more decimal digits than this are kept symbolic.
    pub digit_cap: u64,
    /// Extra random-base Miller-Rabin rounds above 2^64.
    pub mr_rounds: u32,
    /// Seed for the probabilistic primality witnesses.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: DEFAULT_PRECISION,
            digit_cap: DEFAULT_DIGIT_CAP,
            mr_rounds: DEFAULT_MR_ROUNDS,
            seed: 0,
        }
    }
}

fn env_num<T: std::str::FromStr>(key: &str) -> Result<Option<T>> {
    match std::env::var(key) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("{key}={v} is not a valid number"))),
        Err(_) => Ok(None),
    }
}

impl Config {
    /// Defaults overridden by `NORTHCOTT_*` environment variables.
    pub fn from_env() -> Result<Self> {
        let mut c = Config::default();
        if let Some(v) = env_num("NORTHCOTT_PRECISION_BITS")? {
            c.precision = v;
        }
        if let Some(v) = env_num("NORTHCOTT_DIGIT_CAP")? {
            c.digit_cap = v;
        }
        if let Some(v) = env_num("NORTHCOTT_MR_ROUNDS")? {
            c.mr_rounds = v;
        }
        if let Some(v) = env_num("NORTHCOTT_SEED")? {
            c.seed = v;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 16 {
            return Err(Error::Domain("precision must be at least 16 bits".into()));
        }
        if self.digit_cap == 0 {
            return Err(Error::Domain("digit cap must be positive".into()));
        }
        Ok(())
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision = bits;
        self
    }

    pub fn with_digit_cap(mut self, cap: u64) -> Self {
        self.digit_cap = cap;
        self
    }

    pub fn primality(&self) -> PrimalityConfig {
        PrimalityConfig {
            extra_rounds: self.mr_rounds,
            seed: self.seed,
        }
    }
}

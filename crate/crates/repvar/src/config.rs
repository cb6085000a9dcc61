//! Shared knobs for the randomized parts of the pipeline.

use crate::error::Result;
use crate::field::Prime;

/// Configuration for generic-module sampling and the classifier.
///
/// `retries` controls how many independently seeded generic modules are
/// consulted per closure-membership decision.  A single generic module
/// over a finite field can fail a test that holds generically over the
/// algebraic closure, or pass one that fails generically through a
/// coefficient coincidence, so the test is repeated and a containment is
/// affirmed only when [`Config::witness_threshold`] of the samples carry
/// a witness.
#[derive(Debug, Clone)]
pub struct Config {
    pub prime: Prime,
    pub seed: u64,
    pub retries: u32,
    /// Cap on the number of subspaces any single filtration-search layer may
    /// enumerate; beyond it the search reports "undecided" instead of
    /// running forever.
    pub budget: u64,
    /// Use all skeleta of the generic module (majority vote) instead of the
    /// first one when classifying.  Slower; mostly a cross-check.
    pub vote_all_skeleta: bool,
    /// Run candidate strata in parallel when the `parallel` feature is
    /// compiled in.
    pub parallel: bool,
}

impl Config {
    pub fn new(prime: u64) -> Result<Config> {
        Ok(Config {
            prime: Prime::new(prime)?,
            seed: 0,
            retries: 4,
            budget: 1_000_000,
            vote_all_skeleta: false,
            parallel: true,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Config {
        self.seed = seed;
        self
    }

    pub fn with_retries(mut self, retries: u32) -> Config {
        self.retries = retries.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Config {
        self.budget = budget;
        self
    }

    /// How many of the `retries` generic modules must carry a witnessing
    /// filtration before a containment is affirmed.  A single witness can
    /// be a coincidence of the sampled coefficients (probability on the
    /// order of 1/p), while a genuine containment produces witnesses at a
    /// rate bounded away from zero (1 in the typical case; about 1/2 when
    /// the construction needs an eigenvalue to exist in the prime field).
    /// Scaling the threshold with the retry count separates the two
    /// regimes; small retry counts fall back to "any witness".
    pub fn witness_threshold(&self) -> u32 {
        self.retries.div_ceil(6).max(1)
    }
}

impl Default for Config {
    fn default() -> Config {
        Config::new(101).expect("101 is prime")
    }
}

/// Stable 64-bit FNV-1a hash, used to derive independent sub-seeds from a
/// base seed and a context string.  (The std hasher is not guaranteed
/// stable across releases, and seeds must reproduce.)
pub fn derive_seed(base: u64, context: &str, attempt: u32) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    };
    eat(&base.to_le_bytes());
    eat(context.as_bytes());
    eat(&attempt.to_le_bytes());
    h
}

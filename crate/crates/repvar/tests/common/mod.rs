//! Shared fixtures for the integration suites.
#![allow(dead_code)]

pub mod oracle;
pub mod props;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repvar::field::Prime;
use repvar::quiver::{Algebra, DimVector, SemisimpleSequence};
use repvar::rep::{sample_triangular, RepPoint};
use std::sync::Arc;

/// Two vertices with `r` arrows `1 -> 2` and `s` arrows `2 -> 1`.
pub fn cycle(r: usize, s: usize, loewy: usize) -> Arc<Algebra> {
    let named: Vec<(String, usize, usize)> = (0..r)
        .map(|i| (format!("a{}", i + 1), 1, 2))
        .chain((0..s).map(|j| (format!("b{}", j + 1), 2, 1)))
        .collect();
    let spec: Vec<(&str, usize, usize)> =
        named.iter().map(|(n, s, d)| (n.as_str(), *s, *d)).collect();
    Arc::new(Algebra::from_spec(2, &spec, loewy).unwrap())
}

/// Five vertices: a commuting triangle `1 -> 2 -> 3`, `1 -> 3`, plus the
/// tail `5 -> 4 -> 2`.
pub fn five_vertex() -> Arc<Algebra> {
    let spec = [
        ("a12", 1, 2),
        ("a13", 1, 3),
        ("a23", 2, 3),
        ("a42", 4, 2),
        ("a54", 5, 4),
    ];
    Arc::new(Algebra::from_spec(5, &spec, 3).unwrap())
}

/// Four vertices: the line `1 -> 2 -> 3` with an extra branch `1 -> 4`.
pub fn branching_line(loewy: usize) -> Arc<Algebra> {
    let spec = [("u", 1, 4), ("v", 1, 2), ("w", 2, 3)];
    Arc::new(Algebra::from_spec(4, &spec, loewy).unwrap())
}

pub fn dim(text: &str) -> DimVector {
    DimVector::parse(text).unwrap()
}

pub fn seq(alg: &Algebra, text: &str) -> SemisimpleSequence {
    SemisimpleSequence::parse(alg, text).unwrap()
}

pub fn p(value: u64) -> Prime {
    Prime::new(value).unwrap()
}

/// A seeded random module that admits a filtration governed by `s`.
pub fn sample_module(alg: &Arc<Algebra>, prime: Prime, s: &SemisimpleSequence, seed: u64) -> RepPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_triangular(alg, prime, s, &mut rng)
}

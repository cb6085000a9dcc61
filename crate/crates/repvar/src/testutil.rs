//! Shared fixtures for the crate's unit tests.

use crate::quiver::{Algebra, SemisimpleSequence};

/// Two-vertex cycle family: `r` parallel arrows 1 -> 2 named `a1..ar` and
/// `s` parallel arrows 2 -> 1 named `b1..bs`.
pub fn cycle_algebra(r: usize, s: usize, loewy: usize) -> Algebra {
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    for i in 1..=r {
        arrows.push((format!("a{i}"), 1, 2));
    }
    for j in 1..=s {
        arrows.push((format!("b{j}"), 2, 1));
    }
    let refs: Vec<(&str, usize, usize)> = arrows
        .iter()
        .map(|(n, s, d)| (n.as_str(), *s, *d))
        .collect();
    Algebra::from_spec(2, &refs, loewy).unwrap()
}

pub fn seq(alg: &Algebra, text: &str) -> SemisimpleSequence {
    SemisimpleSequence::parse(alg, text).unwrap()
}

//! Property suites shared between the standalone `properties` target and
//! the acceptance run.  Each function executes one suite with the given
//! number of random cases and panics on the first violation.

use super::*;
use proptest::prelude::*;
use repvar::field::{Matrix, Subspace};
use repvar::filt::{governing_sequences, has_filtration};
use repvar::quiver::{
    dominance_leq, enumerate_sequences, is_realizable, Algebra, DimVector, SemisimpleSequence,
};
use repvar::rep::{direct_sum, dualize, radical_layering, socle_layering, RepPoint};
use repvar::skeleta::{enumerate_skeleta, skeleta_of};
use std::sync::Arc;

const BUDGET: u64 = 1_000_000;

/// Runner settings for a suite: the requested case count, no failure
/// persistence (these run from integration-test targets, which have no
/// source root for proptest to drop regression files next to).
fn runner(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn small_algebra() -> BoxedStrategy<Arc<Algebra>> {
    prop_oneof![
        (1..=3usize, 0..=2usize, 1..=4usize)
            .prop_map(|(r, s, l)| cycle(r, s, l))
            .boxed(),
        (1..=3usize).prop_map(branching_line).boxed(),
    ]
    .boxed()
}

/// An algebra together with a dimension vector of total at most 4.
fn alg_and_dim() -> impl Strategy<Value = (Arc<Algebra>, DimVector)> {
    small_algebra()
        .prop_flat_map(|alg| {
            let n = alg.vertex_count();
            (Just(alg), prop::collection::vec(0..=2usize, n))
        })
        .prop_map(|(alg, mut v)| {
            while v.iter().sum::<usize>() > 4 {
                let i = v.iter().position(|&x| x > 0).unwrap();
                v[i] -= 1;
            }
            (alg, DimVector(v))
        })
}

fn pick(seqs: &[SemisimpleSequence], index: u64) -> &SemisimpleSequence {
    &seqs[(index % seqs.len() as u64) as usize]
}

pub fn dominance_is_a_partial_order(cases: u32) {
    proptest!(runner(cases), |((alg, d) in alg_and_dim(), i in any::<u64>(), j in any::<u64>(), k in any::<u64>())| {
        let seqs = enumerate_sequences(&alg, &d, false);
        let (a, b, c) = (pick(&seqs, i), pick(&seqs, j), pick(&seqs, k));
        prop_assert!(dominance_leq(a, a).unwrap());
        if dominance_leq(a, b).unwrap() && dominance_leq(b, a).unwrap() {
            prop_assert_eq!(a, b);
        }
        if dominance_leq(a, b).unwrap() && dominance_leq(b, c).unwrap() {
            prop_assert!(dominance_leq(a, c).unwrap());
        }
    });
}

pub fn layerings_are_dual_and_total(cases: u32) {
    proptest!(runner(cases), |((alg, d) in alg_and_dim(), i in any::<u64>(), seed in any::<u64>())| {
        let seqs = enumerate_sequences(&alg, &d, false);
        let m = sample_module(&alg, p(101), pick(&seqs, i), seed);
        let radical = radical_layering(&m);
        prop_assert_eq!(&radical.total(), &d);
        prop_assert_eq!(&socle_layering(&m).total(), &d);
        prop_assert_eq!(socle_layering(&m), radical_layering(&dualize(&m)));
        prop_assert_eq!(radical_layering(&dualize(&dualize(&m))), radical);
    });
}

pub fn governing_implies_dominance(cases: u32) {
    proptest!(runner(cases), |((alg, d) in alg_and_dim(), i in any::<u64>(), seed in any::<u64>())| {
        let seqs = enumerate_sequences(&alg, &d, false);
        let m = sample_module(&alg, p(101), pick(&seqs, i), seed);
        let radical = radical_layering(&m);
        let report = governing_sequences(&m, false, BUDGET, false).unwrap();
        prop_assert!(report.undecided.is_empty());
        for s in &report.governed {
            prop_assert!(dominance_leq(s, &radical).unwrap());
        }
        // The radical layering always governs, and so does the reversed
        // socle layering (the socle chain read top-down).
        prop_assert!(report.governed.contains(&radical));
        prop_assert!(report.governed.contains(&socle_layering(&m).reverse_nonzero()));
    });
}

pub fn every_sequence_governs_the_semisimple_module(cases: u32) {
    proptest!(runner(cases), |((alg, d) in alg_and_dim())| {
        let m = RepPoint::semisimple(alg.clone(), p(101), d.clone());
        for s in enumerate_sequences(&alg, &d, false) {
            prop_assert!(has_filtration(&m, &s, BUDGET).unwrap().is_witness());
        }
    });
}

pub fn direct_sums_add_layerings_and_filtrations(cases: u32) {
    proptest!(runner(cases), |(
        (alg, d1) in alg_and_dim(),
        extra in prop::collection::vec(0..=2usize, 5),
        i in any::<u64>(), j in any::<u64>(),
        s1 in any::<u64>(), s2 in any::<u64>(),
    )| {
        let d2 = DimVector(extra[..alg.vertex_count()].to_vec());
        let m = sample_module(&alg, p(101), pick(&enumerate_sequences(&alg, &d1, false), i), s1);
        let n = sample_module(&alg, p(101), pick(&enumerate_sequences(&alg, &d2, false), j), s2);
        let sum = direct_sum(&m, &n).unwrap();
        let added = SemisimpleSequence::new(
            radical_layering(&m)
                .layers()
                .iter()
                .zip(radical_layering(&n).layers())
                .map(|(a, b)| a.add(b))
                .collect(),
        );
        prop_assert_eq!(radical_layering(&sum), added.clone());
        // Governing filtrations of the summands assemble to one of the sum.
        prop_assert!(has_filtration(&sum, &added, BUDGET).unwrap().is_witness());
    });
}

pub fn every_module_carries_a_skeleton(cases: u32) {
    proptest!(runner(cases), |((alg, d) in alg_and_dim(), i in any::<u64>(), seed in any::<u64>())| {
        let seqs = enumerate_sequences(&alg, &d, false);
        let m = sample_module(&alg, p(101), pick(&seqs, i), seed);
        let found = skeleta_of(&m, seed).len();
        prop_assert!(found >= 1);
    });
}

pub fn rank_nullity_and_modular_lattice(cases: u32) {
    proptest!(runner(cases), |(
        rows in 1..=4usize, cols in 1..=4usize,
        entries in prop::collection::vec(0i64..101, 16),
        spans in prop::collection::vec(prop::collection::vec(0i64..101, 5), 12),
        modulus in prop_oneof![Just(2u64), Just(101u64)],
    )| {
        let prime = p(modulus);
        let rows_data: Vec<Vec<i64>> = (0..rows)
            .map(|r| entries[r * cols..(r + 1) * cols].to_vec())
            .collect();
        let m = Matrix::from_rows(prime, &rows_data).unwrap();
        prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        prop_assert_eq!(m.image().dim(), m.rank());

        let space = |rows: &[Vec<i64>]| {
            let mat = Matrix::from_rows(prime, rows).unwrap();
            Subspace::from_spanning(prime, 5, &mat)
        };
        let u = space(&spans[0..4]);
        let v = space(&spans[4..8]);
        let w = space(&spans[8..12]);
        let dim_sum = u.sum(&v).unwrap().dim() + u.intersect(&v).unwrap().dim();
        prop_assert_eq!(dim_sum, u.dim() + v.dim());
        // Modular law for a sub inside w.
        let inside = u.intersect(&w).unwrap();
        let left = inside.sum(&v).unwrap().intersect(&w).unwrap();
        let right = inside.sum(&v.intersect(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    });
}

/// Skeleton enumeration is nonempty exactly for realizable sequences,
/// across every small algebra, dimension vector, and sequence.  Returns
/// the number of grid cases checked.
pub fn skeleton_enumeration_matches_realizability() -> usize {
    let mut algebras: Vec<Arc<Algebra>> = Vec::new();
    for r in 1..=3 {
        for s in 0..=2 {
            for loewy in 1..=4 {
                algebras.push(cycle(r, s, loewy));
            }
        }
    }
    for loewy in 1..=3 {
        algebras.push(branching_line(loewy));
    }
    let mut cases = 0usize;
    for alg in &algebras {
        let n = alg.vertex_count();
        for total in 0..=3usize {
            for d in all_dims(n, total) {
                for s in enumerate_sequences(alg, &d, false) {
                    cases += 1;
                    let skeleta = enumerate_skeleta(alg, &s);
                    assert_eq!(
                        !skeleta.is_empty(),
                        is_realizable(alg, &s),
                        "algebra {alg}, sequence {s}"
                    );
                    for sk in &skeleta {
                        assert_eq!(sk.layering(alg), s);
                    }
                }
            }
        }
    }
    assert!(cases >= 200, "only {cases} grid cases");
    cases
}

/// All dimension vectors of length `n` with the exact total.
fn all_dims(n: usize, total: usize) -> Vec<DimVector> {
    if n == 1 {
        return vec![DimVector(vec![total])];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in all_dims(n - 1, total - first) {
            let mut v = vec![first];
            v.extend(rest.0);
            out.push(DimVector(v));
        }
    }
    out
}

//! The component classifier.
//!
//! The module variety of a fixed dimension vector is the union, over
//! realizable semisimple sequences, of the closures of their strata.  A
//! stratum closure is an irreducible component exactly when it is not
//! swallowed by the closure of another stratum, and that containment is
//! detected on a generic module `G` of the stratum: the closure of `S'`
//! contains the stratum of `S` iff `G` carries a filtration governed by
//! `S'`.  So a stratum is accepted iff its generic module is governed by
//! no realizable sequence other than its own layering.
//!
//! Generic modules here live over a finite prime field, which cuts both
//! ways.  A filtration that exists over the algebraic closure can be
//! invisible on one sample (its construction may need an eigenvalue the
//! prime field lacks), and conversely one sample can carry a filtration
//! the honestly generic module does not (a coefficient coincidence, of
//! probability on the order of 1/p).  Containments are therefore decided
//! on `retries` independently seeded generic modules and affirmed only
//! when at least [`Config::witness_threshold`] of them carry a governing
//! filtration: genuine containments produce witnesses at a rate bounded
//! below (all samples in the typical case, about half in the eigenvalue
//! case), while coincidences essentially never reach the threshold.
//! Every affirmative answer is backed by an explicit witness on a
//! reproducible seed.

use crate::config::{derive_seed, Config};
use crate::error::{Error, Result};
use crate::filt::{gamma, has_filtration, FiltOutcome, GammaReport};
use crate::par::map_items;
use crate::quiver::{
    dominance_leq, enumerate_sequences, is_realizable, Algebra, DimVector, SemisimpleSequence,
};
use crate::rep::{theta_plus, RepPoint, ThetaPlus};
use crate::skeleta::{enumerate_skeleta, generic_module, to_dot, GenericModule};
use serde_json::{json, Value};
use std::sync::Arc;

/// An accepted stratum: its closure is an irreducible component.
#[derive(Debug, Clone)]
pub struct Component {
    pub layering: SemisimpleSequence,
    /// Degeneration invariants of the generic module used for acceptance.
    pub theta_plus: ThetaPlus,
    /// Seed that reproduces that generic module.
    pub generic_seed: u64,
    pub generic: GenericModule,
}

/// A rejected stratum, with the certificate: the sequence whose closure
/// swallows it and the seed of the generic module carrying the witnessing
/// filtration.
#[derive(Debug, Clone)]
pub struct Rejection {
    pub layering: SemisimpleSequence,
    pub governed_by: SemisimpleSequence,
    pub witness_seed: u64,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub dims: DimVector,
    pub components: Vec<Component>,
    pub rejected: Vec<Rejection>,
    /// Strata whose verdict exceeded the search budget.
    pub undetermined: Vec<SemisimpleSequence>,
}

enum Decision {
    Accepted,
    Rejected {
        governed_by: SemisimpleSequence,
        witness_seed: u64,
    },
    Undetermined,
}

/// Classify the irreducible components of the module variety for `d`.
pub fn classify(alg: &Arc<Algebra>, d: &DimVector, config: &Config) -> Result<Classification> {
    if d.len() != alg.vertex_count() {
        return Err(Error::dim("dimension vector length != vertex count"));
    }
    let realizable = enumerate_sequences(alg, d, true);
    let outcomes = map_items(realizable.clone(), config.parallel, |s| {
        let verdict = decide_stratum(alg, &s, &realizable, config);
        (s, verdict)
    });
    let mut components = Vec::new();
    let mut rejected = Vec::new();
    let mut undetermined = Vec::new();
    for (s, verdict) in outcomes {
        let (decision, generics) = verdict?;
        match decision {
            Decision::Accepted => {
                let g = generics.into_iter().next().expect("at least one generic");
                components.push(Component {
                    layering: s,
                    theta_plus: theta_plus(&g.point),
                    generic_seed: g.seed,
                    generic: g,
                });
            }
            Decision::Rejected {
                governed_by,
                witness_seed,
            } => rejected.push(Rejection {
                layering: s,
                governed_by,
                witness_seed,
            }),
            Decision::Undetermined => undetermined.push(s),
        }
    }
    Ok(Classification {
        dims: d.clone(),
        components,
        rejected,
        undetermined,
    })
}

/// Decide one stratum.  Returns the decision and the generic modules of
/// the first skeleton (index 0 is the reporting module).
fn decide_stratum(
    alg: &Arc<Algebra>,
    s: &SemisimpleSequence,
    realizable: &[SemisimpleSequence],
    config: &Config,
) -> Result<(Decision, Vec<GenericModule>)> {
    let candidates: Vec<&SemisimpleSequence> = realizable
        .iter()
        .filter(|c| *c != s && dominance_leq(c, s).unwrap_or(false))
        .collect();
    let skeleta = enumerate_skeleta(alg, s);
    assert!(!skeleta.is_empty(), "realizable strata have skeleta");
    let used = if config.vote_all_skeleta {
        skeleta.len()
    } else {
        1
    };
    let mut decisions = Vec::with_capacity(used);
    let mut first_generics = None;
    for skel in &skeleta[..used] {
        let generics: Vec<GenericModule> = (0..config.retries)
            .map(|t| {
                let seed = derive_seed(config.seed, &s.to_string(), t);
                generic_module(alg, config.prime, skel, seed)
            })
            .collect::<Result<_>>()?;
        decisions.push(decide_with_generics(&generics, &candidates, config)?);
        if first_generics.is_none() {
            first_generics = Some(generics);
        }
    }
    let generics = first_generics.expect("at least one skeleton was used");
    if decisions.len() == 1 {
        return Ok((decisions.pop().expect("one decision"), generics));
    }
    // Majority vote across skeleta; a tie stays undetermined.
    let accepts = decisions
        .iter()
        .filter(|d| matches!(d, Decision::Accepted))
        .count();
    let rejects = decisions
        .iter()
        .filter(|d| matches!(d, Decision::Rejected { .. }))
        .count();
    let verdict = if accepts > rejects && accepts * 2 > decisions.len() {
        Decision::Accepted
    } else if rejects > accepts && rejects * 2 > decisions.len() {
        decisions
            .into_iter()
            .find(|d| matches!(d, Decision::Rejected { .. }))
            .expect("a rejecting skeleton exists")
    } else {
        Decision::Undetermined
    };
    Ok((verdict, generics))
}

fn decide_with_generics(
    generics: &[GenericModule],
    candidates: &[&SemisimpleSequence],
    config: &Config,
) -> Result<Decision> {
    let threshold = config.witness_threshold() as usize;
    let mut any_near_miss = false;
    for cand in candidates {
        let mut witnesses = 0usize;
        let mut undecided = 0usize;
        let mut first_seed = None;
        for g in generics {
            match has_filtration(&g.point, cand, config.budget)? {
                FiltOutcome::Witness(_) => {
                    witnesses += 1;
                    first_seed.get_or_insert(g.seed);
                    if witnesses >= threshold {
                        break;
                    }
                }
                FiltOutcome::Undecided => undecided += 1,
                FiltOutcome::No => {}
            }
        }
        if witnesses >= threshold {
            return Ok(Decision::Rejected {
                governed_by: (*cand).clone(),
                witness_seed: first_seed.expect("a witness was counted"),
            });
        }
        if witnesses + undecided >= threshold {
            // Budget cuts hid enough searches to change the verdict.
            any_near_miss = true;
        }
    }
    Ok(if any_near_miss {
        Decision::Undetermined
    } else {
        Decision::Accepted
    })
}

/// Three-valued answer for randomized closure tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Undecided,
}

/// Is the stratum of `sub` inside the closure of the stratum of `over`?
/// Both sequences must be realizable.  The test runs on `retries`
/// independently seeded generic modules of `sub` and answers yes when at
/// least [`Config::witness_threshold`] of them carry a filtration
/// governed by `over`.
pub fn closure_contains(
    alg: &Arc<Algebra>,
    sub: &SemisimpleSequence,
    over: &SemisimpleSequence,
    config: &Config,
) -> Result<Tri> {
    if sub.total() != over.total() {
        return Err(Error::TotalMismatch {
            left: sub.total().to_string(),
            right: over.total().to_string(),
        });
    }
    for s in [sub, over] {
        if !is_realizable(alg, s) {
            return Err(Error::Usage(format!("{s} is not realizable")));
        }
    }
    if !dominance_leq(over, sub)? {
        return Ok(Tri::No); // a governing sequence is always dominated
    }
    let skeleta = enumerate_skeleta(alg, sub);
    let skel = skeleta.first().expect("realizable strata have skeleta");
    let threshold = config.witness_threshold();
    let mut witnesses = 0;
    let mut undecided = 0;
    for t in 0..config.retries {
        let seed = derive_seed(config.seed, &sub.to_string(), t);
        let g = generic_module(alg, config.prime, skel, seed)?;
        match has_filtration(&g.point, over, config.budget)? {
            FiltOutcome::Witness(_) => {
                witnesses += 1;
                if witnesses >= threshold {
                    return Ok(Tri::Yes);
                }
            }
            FiltOutcome::Undecided => undecided += 1,
            FiltOutcome::No => {}
        }
    }
    Ok(if witnesses + undecided >= threshold {
        Tri::Undecided
    } else {
        Tri::No
    })
}

/// Where a concrete module lives: the accepted components whose closures
/// contain it.  Membership in a stratum closure is equivalent to carrying
/// a governing filtration, so this is exact up to the search budget.
#[derive(Debug, Clone)]
pub struct Allocation {
    pub contained: Vec<usize>,
    pub undecided: Vec<usize>,
}

pub fn allocate(
    m: &RepPoint,
    components: &[SemisimpleSequence],
    budget: u64,
) -> Result<Allocation> {
    let mut contained = Vec::new();
    let mut undecided = Vec::new();
    for (i, s) in components.iter().enumerate() {
        match has_filtration(m, s, budget)? {
            FiltOutcome::Witness(_) => contained.push(i),
            FiltOutcome::Undecided => undecided.push(i),
            FiltOutcome::No => {}
        }
    }
    Ok(Allocation {
        contained,
        undecided,
    })
}

/// `Γ` of the generic module of a stratum, over the first skeleton.
pub fn generic_gamma(
    alg: &Arc<Algebra>,
    s: &SemisimpleSequence,
    config: &Config,
) -> Result<GammaReport> {
    let skeleta = enumerate_skeleta(alg, s);
    let Some(skel) = skeleta.first() else {
        return Err(Error::Usage("the stratum is empty".into()));
    };
    let seed = derive_seed(config.seed, &s.to_string(), 0);
    let g = generic_module(alg, config.prime, skel, seed)?;
    gamma(&g.point, config.budget, config.parallel)
}

impl Classification {
    pub fn component_layerings(&self) -> Vec<SemisimpleSequence> {
        self.components.iter().map(|c| c.layering.clone()).collect()
    }

    pub fn to_json(&self, alg: &Algebra, config: &Config) -> Value {
        json!({
            "algebra": alg.to_string(),
            "dims": self.dims.to_string(),
            "prime": config.prime.value(),
            "seed": config.seed,
            "retries": config.retries,
            "budget": config.budget,
            "components": self.components.iter().map(|c| json!({
                "layering": c.layering.to_string(),
                "theta_plus": {
                    "radical": c.theta_plus.radical.to_string(),
                    "socle": c.theta_plus.socle.to_string(),
                    "neg_path_ranks": c.theta_plus.neg_path_ranks,
                    "neg_dual_path_ranks": c.theta_plus.neg_dual_path_ranks,
                },
                "generic_seed": c.generic_seed,
                "generic_module": c.generic.point.to_text(),
                "hypergraph": c.generic.hypergraph.format(alg),
                "dot": to_dot(&c.generic.hypergraph, alg),
            })).collect::<Vec<_>>(),
            "rejected": self.rejected.iter().map(|r| json!({
                "layering": r.layering.to_string(),
                "governed_by": r.governed_by.to_string(),
                "witness_seed": r.witness_seed,
            })).collect::<Vec<_>>(),
            "undetermined": self.undetermined.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Matrix, Prime};
    use crate::testutil::{cycle_algebra, seq};

    fn cfg() -> Config {
        Config::default().with_seed(7)
    }

    /// The smallest two-vertex cycle: matrices (a, b) with ab = ba = 0.
    /// The variety is the union of the two coordinate lines — exactly the
    /// closures of the two uniserial strata, with the semisimple stratum
    /// (the origin) swallowed by both.
    #[test]
    fn two_coordinate_lines() {
        let alg = Arc::new(cycle_algebra(1, 1, 2));
        let d = DimVector(vec![1, 1]);
        let c = classify(&alg, &d, &cfg()).unwrap();
        assert!(c.undetermined.is_empty());
        let comps: Vec<String> = c
            .components
            .iter()
            .map(|x| x.layering.to_string())
            .collect();
        assert_eq!(comps, vec!["1,0;0,1", "0,1;1,0"]);
        assert_eq!(c.rejected.len(), 1);
        assert_eq!(c.rejected[0].layering.to_string(), "1,1;0,0");
    }

    #[test]
    fn rejection_certificates_replay() {
        let alg = Arc::new(cycle_algebra(1, 1, 4));
        let d = DimVector(vec![2, 2]);
        let config = cfg();
        let c = classify(&alg, &d, &config).unwrap();
        assert!(c.undetermined.is_empty());
        for r in &c.rejected {
            assert_ne!(r.layering, r.governed_by);
            assert!(dominance_leq(&r.governed_by, &r.layering).unwrap());
            // Replay: the recorded seed rebuilds a generic module that
            // carries the claimed filtration.
            let skel = enumerate_skeleta(&alg, &r.layering)
                .into_iter()
                .next()
                .unwrap();
            let g = generic_module(&alg, config.prime, &skel, r.witness_seed).unwrap();
            let out = has_filtration(&g.point, &r.governed_by, config.budget).unwrap();
            assert!(out.is_witness());
        }
    }

    #[test]
    fn uniserial_strata_are_always_components() {
        let alg = Arc::new(cycle_algebra(1, 1, 4));
        let d = DimVector(vec![2, 2]);
        let c = classify(&alg, &d, &cfg()).unwrap();
        let comps: Vec<String> = c
            .components
            .iter()
            .map(|x| x.layering.to_string())
            .collect();
        // The two uniserial layerings are dominance-minimal, hence kept.
        assert!(comps.contains(&"1,0;0,1;1,0;0,1".to_string()));
        assert!(comps.contains(&"0,1;1,0;0,1;1,0".to_string()));
        // The semisimple stratum is governed by everything, hence dropped.
        let rej: Vec<String> = c.rejected.iter().map(|r| r.layering.to_string()).collect();
        assert!(rej.contains(&"2,2;0,0;0,0;0,0".to_string()));
        // Everything is accounted for.
        let total = c.components.len() + c.rejected.len() + c.undetermined.len();
        assert_eq!(total, enumerate_sequences(&alg, &d, true).len());
    }

    #[test]
    fn closure_contains_matches_the_line_picture() {
        let alg = Arc::new(cycle_algebra(1, 1, 2));
        let semi = seq(&alg, "1,1;0,0");
        let uni = seq(&alg, "1,0;0,1");
        let config = cfg();
        // The origin sits inside the line...
        assert_eq!(
            closure_contains(&alg, &semi, &uni, &config).unwrap(),
            Tri::Yes
        );
        // ...but the line does not fit inside the origin.
        assert_eq!(
            closure_contains(&alg, &uni, &semi, &config).unwrap(),
            Tri::No
        );
        // Every stratum lies in its own closure.
        assert_eq!(
            closure_contains(&alg, &uni, &uni, &config).unwrap(),
            Tri::Yes
        );
    }

    #[test]
    fn allocation_places_points_on_their_lines() {
        let alg = Arc::new(cycle_algebra(1, 1, 2));
        let d = DimVector(vec![1, 1]);
        let config = cfg();
        let c = classify(&alg, &d, &config).unwrap();
        let comps = c.component_layerings();
        let p = config.prime;
        let point = |a: i64, b: i64| {
            RepPoint::new(
                alg.clone(),
                p,
                d.clone(),
                vec![
                    Matrix::from_rows(p, &[vec![a]]).unwrap(),
                    Matrix::from_rows(p, &[vec![b]]).unwrap(),
                ],
            )
            .unwrap()
        };
        let on_a = allocate(&point(1, 0), &comps, config.budget).unwrap();
        assert_eq!(on_a.contained, vec![0]);
        let on_b = allocate(&point(0, 1), &comps, config.budget).unwrap();
        assert_eq!(on_b.contained, vec![1]);
        let origin = allocate(&point(0, 0), &comps, config.budget).unwrap();
        assert_eq!(origin.contained, vec![0, 1]);
    }

    #[test]
    fn classification_is_deterministic() {
        let alg = Arc::new(cycle_algebra(2, 1, 3));
        let d = DimVector(vec![1, 2]);
        let config = cfg();
        let a = classify(&alg, &d, &config).unwrap();
        let b = classify(&alg, &d, &config).unwrap();
        assert_eq!(
            a.to_json(&alg, &config).to_string(),
            b.to_json(&alg, &config).to_string()
        );
    }

    #[test]
    fn skeleton_vote_agrees_on_the_cycle() {
        let alg = Arc::new(cycle_algebra(1, 1, 4));
        let d = DimVector(vec![2, 2]);
        let plain = classify(&alg, &d, &cfg()).unwrap();
        let mut voting = cfg();
        voting.vote_all_skeleta = true;
        let voted = classify(&alg, &d, &voting).unwrap();
        assert_eq!(
            plain.component_layerings(),
            voted.component_layerings()
        );
    }

    #[test]
    fn generic_gamma_counts_the_swallowing_strata() {
        let alg = Arc::new(cycle_algebra(1, 1, 2));
        let config = cfg();
        // The semisimple stratum's generic module is governed by all three
        // realizable sequences.
        let semi = seq(&alg, "1,1;0,0");
        let g = generic_gamma(&alg, &semi, &config).unwrap();
        assert!(g.is_exact());
        assert_eq!(g.min(), 3);
        // A uniserial stratum's generic module only by its own layering.
        let uni = seq(&alg, "1,0;0,1");
        let g = generic_gamma(&alg, &uni, &config).unwrap();
        assert_eq!((g.min(), g.max()), (1, 1));
    }

    /// Measures per-sample witness rates for the containment tests that
    /// drive the retry/threshold calibration.  Run manually:
    /// `cargo test -p repvar --release -- --ignored measure_witness_rates --nocapture`
    #[test]
    #[ignore]
    fn measure_witness_rates() {
        let trials = 400u64;
        let cases: Vec<(&str, usize, usize, &str, &str)> = vec![
            // (label, r, s, stratum, candidate)
            ("true/eigenvalue", 2, 1, "2,0;0,2;0,0;0,0", "1,0;0,1;1,0;0,1"),
            ("true/eigenvalue", 3, 2, "0,2;2,0;0,0;0,0", "0,1;1,0;0,1;1,0"),
            ("false/collinear", 3, 1, "2,0;0,2;0,0;0,0", "1,0;0,1;1,0;0,1"),
            ("false/kernel", 3, 1, "2,0;0,2;0,0;0,0", "1,0;0,2;1,0;0,0"),
            ("false/socle", 3, 2, "1,0;0,2;1,0;0,0", "1,0;0,1;1,0;0,1"),
        ];
        for p in [101u64, 499] {
            let prime = Prime::new(p).unwrap();
            for (label, r, s, stratum, cand) in &cases {
                let alg = Arc::new(cycle_algebra(*r, *s, 4));
                let sub = seq(&alg, stratum);
                let over = seq(&alg, cand);
                let skel = enumerate_skeleta(&alg, &sub).into_iter().next().unwrap();
                let mut yes = 0u64;
                for t in 0..trials {
                    let g =
                        generic_module(&alg, prime, &skel, derive_seed(t, stratum, 0)).unwrap();
                    if has_filtration(&g.point, &over, 1_000_000)
                        .unwrap()
                        .is_witness()
                    {
                        yes += 1;
                    }
                }
                println!(
                    "p={p:4} r={r} s={s} {label:16} {stratum} <= {cand}: {yes}/{trials}"
                );
            }
        }
    }

    #[test]
    fn json_report_carries_the_certificates() {
        let alg = Arc::new(cycle_algebra(1, 1, 2));
        let d = DimVector(vec![1, 1]);
        let config = cfg();
        let c = classify(&alg, &d, &config).unwrap();
        let v = c.to_json(&alg, &config);
        assert_eq!(v["components"].as_array().unwrap().len(), 2);
        assert_eq!(v["rejected"][0]["layering"], "1,1;0,0");
        assert_eq!(v["prime"], 101);
        assert!(v["components"][0]["dot"]
            .as_str()
            .unwrap()
            .starts_with("digraph"));
    }
}

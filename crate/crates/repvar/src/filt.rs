//! Search for filtrations governed by a semisimple sequence.
//!
//! A module `M` is governed by a sequence `S'` when it carries a chain
//! `M = M_0 ⊇ M_1 ⊇ … ⊇ M_{L+1} = 0` whose consecutive quotients are
//! semisimple with dimension vectors `S'_l`.  Because each quotient must be
//! killed by the radical, every admissible `M_{l+1}` is squeezed between
//! `J·M_l` and `M_l` — and conversely, any graded subspace in that range is
//! automatically arrow-invariant, so the search factors into independent
//! per-vertex choices of a quotient subspace at each layer.  This keeps the
//! search exact; the only approximation is a hard budget on how many
//! subspaces a single layer may enumerate, which turns the answer into
//! "undecided" rather than an unbounded scan.

use crate::error::{Error, Result};
use crate::field::{enumerate_subspaces, subspace_count, Subspace};
use crate::par::map_items;
use crate::quiver::{dominance_leq, enumerate_sequences, SemisimpleSequence};
use crate::rep::{arrow_image, dualize, radical_layering, GradedSubspace, RepPoint};

/// A witnessing chain `M_0 ⊇ … ⊇ M_{L+1}` with semisimple quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    spaces: Vec<GradedSubspace>,
}

impl Filtration {
    pub fn spaces(&self) -> &[GradedSubspace] {
        &self.spaces
    }

    /// Layer dimension vectors of the chain.
    pub fn layer_dims(&self) -> SemisimpleSequence {
        let layers = self
            .spaces
            .windows(2)
            .map(|w| {
                crate::quiver::DimVector(
                    w[0].dims()
                        .0
                        .iter()
                        .zip(&w[1].dims().0)
                        .map(|(a, b)| a - b)
                        .collect(),
                )
            })
            .collect();
        SemisimpleSequence::new(layers)
    }

    /// Check the witness against a module and a sequence: the chain starts
    /// at `M`, ends at zero, each step contains the radical image of the
    /// previous space, and the quotient dimensions match `s`.
    pub fn validate(&self, m: &RepPoint, s: &SemisimpleSequence) -> Result<()> {
        if self.spaces.len() != m.alg().loewy() + 1 {
            return Err(Error::Usage("filtration has the wrong length".into()));
        }
        if self.spaces[0] != GradedSubspace::full(m.prime(), m.dims()) {
            return Err(Error::Usage("filtration must start at the module".into()));
        }
        if !self.spaces.last().expect("nonempty").is_zero() {
            return Err(Error::Usage("filtration must end at zero".into()));
        }
        for l in 0..self.spaces.len() - 1 {
            if !self.spaces[l].contains(&self.spaces[l + 1])? {
                return Err(Error::Usage(format!("chain fails to descend at step {l}")));
            }
            let jm = arrow_image(m, &self.spaces[l]);
            if !self.spaces[l + 1].contains(&jm)? {
                return Err(Error::Usage(format!(
                    "quotient at step {l} is not semisimple"
                )));
            }
            let quotient = crate::quiver::DimVector(
                self.spaces[l]
                    .dims()
                    .0
                    .iter()
                    .zip(&self.spaces[l + 1].dims().0)
                    .map(|(a, b)| a - b)
                    .collect(),
            );
            if &quotient != s.layer(l) {
                return Err(Error::Usage(format!(
                    "quotient dimensions at step {l} disagree with the sequence"
                )));
            }
        }
        Ok(())
    }
}

/// Result of the filtration search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltOutcome {
    /// A governing chain was found.
    Witness(Filtration),
    /// Exhaustive search found none.
    No,
    /// The enumeration budget was exceeded before the search completed; no
    /// witness was found in the part that was explored.
    Undecided,
}

impl FiltOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, FiltOutcome::Witness(_))
    }
}

/// Decide whether `m` admits a filtration governed by `s`.  Deterministic:
/// the witness returned is the first one in the canonical search order.
pub fn has_filtration(m: &RepPoint, s: &SemisimpleSequence, budget: u64) -> Result<FiltOutcome> {
    if s.layers().len() != m.alg().loewy() {
        return Err(Error::Usage(
            "sequence depth disagrees with the algebra".into(),
        ));
    }
    if s.total() != *m.dims() {
        return Err(Error::TotalMismatch {
            left: s.total().to_string(),
            right: m.dims().to_string(),
        });
    }
    // A governing chain satisfies M_l ⊇ J^l M, which forces the prefix
    // sums of `s` below those of the radical layering.
    if !dominance_leq(s, &radical_layering(m))? {
        return Ok(FiltOutcome::No);
    }
    let mut undecided = false;
    let full = GradedSubspace::full(m.prime(), m.dims());
    let witness = search_layer(m, s, 0, full, Vec::new(), budget, &mut undecided);
    Ok(match witness {
        Some(spaces) => FiltOutcome::Witness(Filtration { spaces }),
        None if undecided => FiltOutcome::Undecided,
        None => FiltOutcome::No,
    })
}

fn search_layer(
    m: &RepPoint,
    s: &SemisimpleSequence,
    layer: usize,
    current: GradedSubspace,
    mut chain: Vec<GradedSubspace>,
    budget: u64,
    undecided: &mut bool,
) -> Option<Vec<GradedSubspace>> {
    let n = m.alg().vertex_count();
    let p = m.prime();
    chain.push(current.clone());
    if layer == m.alg().loewy() {
        return if current.is_zero() { Some(chain) } else { None };
    }
    let jm = arrow_image(m, &current);
    // Codimension of J·M_l inside the required next space, per vertex.
    let mut codims = Vec::with_capacity(n);
    for i in 0..n {
        let have = current.part(i).dim();
        let drop = s.layer(layer).0[i];
        let j = jm.part(i).dim();
        if have < drop + j {
            return None; // the quotient cannot absorb this many simples
        }
        codims.push(have - drop - j);
    }
    // Quotient dimensions and the total number of choices at this layer.
    let mut total_choices: u128 = 1;
    for i in 0..n {
        let q = current.part(i).dim() - jm.part(i).dim();
        total_choices = total_choices.saturating_mul(subspace_count(q, codims[i], p));
    }
    if total_choices > budget as u128 {
        *undecided = true;
        return None;
    }
    // Materialize the per-vertex options: every subspace between J·M_l and
    // M_l of the required dimension, via coordinates on a complement.
    let mut options: Vec<Vec<Subspace>> = Vec::with_capacity(n);
    for i in 0..n {
        let u = jm.part(i);
        let v = current.part(i);
        let q = v.dim() - u.dim();
        let comp = complement_rows(u, v);
        debug_assert_eq!(comp.len(), q);
        let mut opts = Vec::new();
        let iter = match enumerate_subspaces(&Subspace::full(p, q), codims[i], budget) {
            Ok(it) => it,
            Err(Error::BudgetExceeded { .. }) => {
                *undecided = true;
                return None;
            }
            Err(_) => unreachable!("enumeration only fails on budget"),
        };
        for quot in iter {
            let mut rows: Vec<Vec<u64>> = u.basis_vectors().map(|r| r.to_vec()).collect();
            for a_row in quot.basis_vectors() {
                let mut lifted = vec![0u64; m.dims().0[i]];
                for (j, &coeff) in a_row.iter().enumerate() {
                    for (k, &x) in comp[j].iter().enumerate() {
                        lifted[k] = p.add(lifted[k], p.mul(coeff, x));
                    }
                }
                rows.push(lifted);
            }
            opts.push(Subspace::from_vectors(p, m.dims().0[i], &rows));
        }
        options.push(opts);
    }
    // Walk the product of per-vertex options in lexicographic order.
    let mut idx = vec![0usize; n];
    loop {
        let parts: Vec<Subspace> = (0..n).map(|i| options[i][idx[i]].clone()).collect();
        let next = GradedSubspace::new(parts);
        if let Some(done) = search_layer(m, s, layer + 1, next, chain.clone(), budget, undecided)
        {
            return Some(done);
        }
        let mut carry = true;
        for i in (0..n).rev() {
            if !carry {
                break;
            }
            idx[i] += 1;
            if idx[i] < options[i].len() {
                carry = false;
            } else {
                idx[i] = 0;
            }
        }
        if carry {
            return None;
        }
    }
}

/// Rows of `sup`'s basis extending `sub` to all of `sup`.
fn complement_rows(sub: &Subspace, sup: &Subspace) -> Vec<Vec<u64>> {
    let p = sub.prime();
    let ambient = sub.ambient();
    let mut rows: Vec<Vec<u64>> = sub.basis_vectors().map(|r| r.to_vec()).collect();
    let mut picked = Vec::new();
    let mut dim = sub.dim();
    for cand in sup.basis_vectors() {
        let mut trial = rows.clone();
        trial.push(cand.to_vec());
        let trial_dim = Subspace::from_vectors(p, ambient, &trial).dim();
        if trial_dim > dim {
            dim = trial_dim;
            rows = trial;
            picked.push(cand.to_vec());
        }
    }
    debug_assert_eq!(dim, sup.dim());
    picked
}

/// A cofiltration of `m` governed by `s` (quotient chain with semisimple
/// kernels) is a filtration of the dual module by the same sequence.
pub fn has_cofiltration(m: &RepPoint, s: &SemisimpleSequence, budget: u64) -> Result<FiltOutcome> {
    has_filtration(&dualize(m), s, budget)
}

/// Sequences governing `m`, split by decidability.
#[derive(Debug, Clone)]
pub struct GoverningReport {
    pub governed: Vec<SemisimpleSequence>,
    pub undecided: Vec<SemisimpleSequence>,
}

/// Every sequence of the module's dimension vector that governs it,
/// optionally restricted to realizable sequences.
pub fn governing_sequences(
    m: &RepPoint,
    realizable_only: bool,
    budget: u64,
    parallel: bool,
) -> Result<GoverningReport> {
    let candidates = enumerate_sequences(m.alg(), m.dims(), realizable_only);
    let outcomes = map_items(candidates, parallel, |s| {
        let out = has_filtration(m, &s, budget);
        (s, out)
    });
    let mut governed = Vec::new();
    let mut undecided = Vec::new();
    for (s, out) in outcomes {
        match out? {
            FiltOutcome::Witness(_) => governed.push(s),
            FiltOutcome::Undecided => undecided.push(s),
            FiltOutcome::No => {}
        }
    }
    Ok(GoverningReport {
        governed,
        undecided,
    })
}

/// The value `Γ(M)` with its decidability interval: the number of
/// realizable sequences, dominated by the radical layering, that govern
/// `M`.  `min == max` unless some candidate exhausted the budget.
#[derive(Debug, Clone)]
pub struct GammaReport {
    pub governed: Vec<SemisimpleSequence>,
    pub undecided: Vec<SemisimpleSequence>,
}

impl GammaReport {
    pub fn min(&self) -> usize {
        self.governed.len()
    }

    pub fn max(&self) -> usize {
        self.governed.len() + self.undecided.len()
    }

    pub fn is_exact(&self) -> bool {
        self.undecided.is_empty()
    }
}

pub fn gamma(m: &RepPoint, budget: u64, parallel: bool) -> Result<GammaReport> {
    let s_m = radical_layering(m);
    let candidates: Vec<SemisimpleSequence> =
        enumerate_sequences(m.alg(), m.dims(), true)
            .into_iter()
            .filter(|c| dominance_leq(c, &s_m).unwrap_or(false))
            .collect();
    let outcomes = map_items(candidates, parallel, |s| {
        let out = has_filtration(m, &s, budget);
        (s, out)
    });
    let mut governed = Vec::new();
    let mut undecided = Vec::new();
    for (s, out) in outcomes {
        match out? {
            FiltOutcome::Witness(_) => governed.push(s),
            FiltOutcome::Undecided => undecided.push(s),
            FiltOutcome::No => {}
        }
    }
    Ok(GammaReport {
        governed,
        undecided,
    })
}

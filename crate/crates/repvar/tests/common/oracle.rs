//! An independent brute-force filtration decider over F_2.
//!
//! Subspaces of F_2^n (n ≤ 4) are represented extensionally as `u16`
//! membership masks: bit `v` is set exactly when the vector with
//! coordinate mask `v` belongs to the subspace.  Everything — span
//! closure, arrow action, containment — is plain bit arithmetic with no
//! code shared with the library's linear algebra, so agreement between
//! the two is meaningful evidence.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repvar::config::derive_seed;
use repvar::field::Prime;
use repvar::quiver::{enumerate_sequences, Algebra, DimVector, SemisimpleSequence};
use repvar::rep::{sample_triangular, RepPoint};
use std::collections::HashSet;
use std::sync::Arc;
use std::sync::OnceLock;

/// All subspaces of F_2^n as membership masks, n ≤ 4.
fn subspaces(n: usize) -> &'static [u16] {
    static CACHE: OnceLock<Vec<Vec<u16>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=4).map(enumerate_subspaces).collect())[n]
}

fn enumerate_subspaces(n: usize) -> Vec<u16> {
    let vectors = 1u32 << n; // coordinate masks 0 .. 2^n
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // Every subspace is the span of some subset of the nonzero vectors.
    for subset in 0u32..(1 << (vectors - 1)) {
        let gens: Vec<u16> = (0..vectors - 1)
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| (i + 1) as u16)
            .collect();
        let mask = span_mask(&gens);
        if seen.insert(mask) {
            out.push(mask);
        }
    }
    out.sort_unstable();
    out
}

/// Membership mask of the span of the given coordinate-mask vectors.
fn span_mask(gens: &[u16]) -> u16 {
    let mut members: Vec<u16> = vec![0];
    for &g in gens {
        if !members.contains(&g) {
            let shifted: Vec<u16> = members.iter().map(|m| m ^ g).collect();
            members.extend(shifted);
        }
    }
    let mut mask = 0u16;
    for m in members {
        mask |= 1 << m;
    }
    mask
}

fn dim_of(mask: u16) -> usize {
    (mask.count_ones() as usize).trailing_zeros() as usize
}

fn full_mask(n: usize) -> u16 {
    ((1u32 << (1 << n)) - 1) as u16
}

const ZERO: u16 = 1; // only the zero vector

/// An arrow as column masks: `cols[j]` is the image of the j-th basis
/// vector of the source vertex, as a coordinate mask at the target.
struct BitArrow {
    src: usize,
    dst: usize,
    cols: Vec<u16>,
}

impl BitArrow {
    fn apply(&self, v: u16) -> u16 {
        let mut out = 0u16;
        for (j, col) in self.cols.iter().enumerate() {
            if v >> j & 1 == 1 {
                out ^= col;
            }
        }
        out
    }
}

pub struct BitModule {
    dims: Vec<usize>,
    arrows: Vec<BitArrow>,
    loewy: usize,
}

impl BitModule {
    /// Convert a representation over F_2 into bit form.  Panics when some
    /// vertex has dimension above 4 or the modulus is not 2.
    pub fn new(m: &RepPoint) -> BitModule {
        assert_eq!(m.prime().value(), 2, "the brute-force oracle works over F_2");
        let dims: Vec<usize> = m.dims().0.clone();
        assert!(dims.iter().all(|&d| d <= 4));
        let arrows = m
            .alg()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mat = m.mat(k);
                let cols = (0..dims[a.src])
                    .map(|j| {
                        let mut col = 0u16;
                        for r in 0..dims[a.dst] {
                            if mat.get(r, j) == 1 {
                                col |= 1 << r;
                            }
                        }
                        col
                    })
                    .collect();
                BitArrow {
                    src: a.src,
                    dst: a.dst,
                    cols,
                }
            })
            .collect();
        BitModule {
            dims,
            arrows,
            loewy: m.alg().loewy(),
        }
    }

    /// Span of the images of all member vectors under all arrows.
    fn radical_of(&self, spaces: &[u16]) -> Vec<u16> {
        let n = self.dims.len();
        let mut gens: Vec<Vec<u16>> = vec![Vec::new(); n];
        for a in &self.arrows {
            let src_dim = self.dims[a.src];
            for v in 0..(1u32 << src_dim) as u16 {
                if spaces[a.src] >> v & 1 == 1 {
                    gens[a.dst].push(a.apply(v));
                }
            }
        }
        gens.iter().map(|g| span_mask(g)).collect()
    }

    fn is_submodule(&self, spaces: &[u16]) -> bool {
        for a in &self.arrows {
            let src_dim = self.dims[a.src];
            for v in 0..(1u32 << src_dim) as u16 {
                if spaces[a.src] >> v & 1 == 1 && spaces[a.dst] >> a.apply(v) & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive search for a chain of submodules with semisimple
    /// quotients of the prescribed layer dimensions.
    pub fn has_filtration(&self, s: &SemisimpleSequence) -> bool {
        let full: Vec<u16> = self.dims.iter().map(|&d| full_mask(d)).collect();
        if s.layers().len() != self.loewy {
            return false;
        }
        let total = s.total();
        if total.0 != self.dims {
            return false;
        }
        self.descend(&full, s, 0)
    }

    fn descend(&self, current: &[u16], s: &SemisimpleSequence, layer: usize) -> bool {
        if layer == self.loewy {
            return current.iter().all(|&m| m == ZERO);
        }
        let jm = self.radical_of(current);
        let want: Vec<usize> = (0..self.dims.len())
            .map(|i| {
                let have = dim_of(current[i]);
                let drop = s.layer(layer).0[i];
                have.wrapping_sub(drop)
            })
            .collect();
        if (0..self.dims.len()).any(|i| want[i] > dim_of(current[i])) {
            return false; // a layer asks for more than is left
        }
        // Candidate next spaces per vertex: right dimension, inside the
        // current space, containing the image of the current space.
        let options: Vec<Vec<u16>> = (0..self.dims.len())
            .map(|i| {
                subspaces(self.dims[i])
                    .iter()
                    .copied()
                    .filter(|&w| {
                        dim_of(w) == want[i]
                            && w & !current[i] == 0
                            && jm[i] & !w == 0
                    })
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; options.len()];
        loop {
            let spaces: Vec<u16> = choice
                .iter()
                .zip(&options)
                .map(|(&c, opts)| *opts.get(c).unwrap_or(&ZERO))
                .collect();
            if options.iter().all(|o| !o.is_empty()) {
                if self.is_submodule(&spaces) && self.descend(&spaces, s, layer + 1) {
                    return true;
                }
            } else {
                return false;
            }
            // Advance the mixed-radix counter.
            let mut i = 0;
            loop {
                if i == options.len() {
                    return false;
                }
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

pub struct GridReport {
    pub algebras: usize,
    pub modules: usize,
    pub comparisons: usize,
    pub mismatches: Vec<String>,
}

const MODULES_PER_CASE: u64 = 50;
const BUDGET: u64 = 1_000_000;

/// Compare the library's filtration search against the brute-force
/// decider on every quiver with the given vertex count and at most two
/// arrows, truncation length up to 3, and every dimension vector of
/// total at most 4.  Every sequence — realizable or not — is tested on
/// 50 seeded random modules per case.
pub fn run_grid(vertices: usize) -> GridReport {
    let arrow_kinds: Vec<(usize, usize)> = match vertices {
        1 => vec![(1, 1)],
        2 => vec![(1, 1), (1, 2), (2, 1), (2, 2)],
        _ => panic!("the oracle grid covers 1 or 2 vertices"),
    };
    let mut arrow_sets: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for (i, &a) in arrow_kinds.iter().enumerate() {
        arrow_sets.push(vec![a]);
        for &b in &arrow_kinds[i..] {
            arrow_sets.push(vec![a, b]);
        }
    }
    let mut report = GridReport {
        algebras: 0,
        modules: 0,
        comparisons: 0,
        mismatches: Vec::new(),
    };
    let two = Prime::new(2).unwrap();
    for arrows in &arrow_sets {
        for loewy in 1..=3usize {
            let named: Vec<(String, usize, usize)> = arrows
                .iter()
                .enumerate()
                .map(|(k, &(s, d))| (format!("a{}", k + 1), s, d))
                .collect();
            let spec: Vec<(&str, usize, usize)> =
                named.iter().map(|(n, s, d)| (n.as_str(), *s, *d)).collect();
            let alg = Arc::new(Algebra::from_spec(vertices, &spec, loewy).unwrap());
            report.algebras += 1;
            for d in dims_up_to(vertices, 4) {
                let seqs = enumerate_sequences(&alg, &d, false);
                let context = format!("{arrows:?} loewy {loewy} d {d}");
                for s in &seqs {
                    // Skeleton enumeration must be nonempty exactly for
                    // realizable sequences, with matching layer counts.
                    report.comparisons += 1;
                    let skeleta = repvar::skeleta::enumerate_skeleta(&alg, s);
                    let realizable = repvar::quiver::is_realizable(&alg, s);
                    if skeleta.is_empty() == realizable {
                        report.mismatches.push(format!(
                            "{context} seq {s}: {} skeleta but realizable = {realizable}",
                            skeleta.len()
                        ));
                    }
                    for sk in &skeleta {
                        if sk.layering(&alg) != *s {
                            report.mismatches.push(format!(
                                "{context} seq {s}: a skeleton lays out as {}",
                                sk.layering(&alg)
                            ));
                        }
                    }
                }
                for module_idx in 0..MODULES_PER_CASE {
                    let seed = derive_seed(module_idx, &context, 0);
                    let shape = &seqs[(seed % seqs.len() as u64) as usize];
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let m = sample_triangular(&alg, two, shape, &mut rng);
                    let bits = BitModule::new(&m);
                    report.modules += 1;
                    for s in &seqs {
                        report.comparisons += 1;
                        let fast = repvar::filt::has_filtration(&m, s, BUDGET).unwrap();
                        assert!(
                            !matches!(fast, repvar::filt::FiltOutcome::Undecided),
                            "budget exhausted on a grid case: {context} seq {s}"
                        );
                        let slow = bits.has_filtration(s);
                        if fast.is_witness() != slow {
                            report.mismatches.push(format!(
                                "{context} seq {s} module seed {seed}: search {} vs brute force {}",
                                fast.is_witness(),
                                slow
                            ));
                        }
                    }
                }
            }
        }
    }
    report
}

/// All dimension vectors of the given length with total at most `cap`.
fn dims_up_to(n: usize, cap: usize) -> Vec<DimVector> {
    let mut out = Vec::new();
    for total in 0..=cap {
        out.extend(dims_exact(n, total));
    }
    out
}

fn dims_exact(n: usize, total: usize) -> Vec<DimVector> {
    if n == 1 {
        return vec![DimVector(vec![total])];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in dims_exact(n - 1, total - first) {
            let mut v = vec![first];
            v.extend(rest.0);
            out.push(DimVector(v));
        }
    }
    out
}

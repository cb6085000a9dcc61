//! Skeleta of modules over a truncated path algebra.
//!
//! A skeleton is a set of paths in a projective cover — one tree of paths
//! per top generator, closed under initial subpaths — whose layer-wise
//! counts match a prescribed semisimple sequence.  A module has a skeleton
//! `σ` when the paths of `σ`, applied to a suitable choice of top
//! elements, yield a basis compatible with the radical filtration.
//!
//! Every stratum with a realizable layering contains a dense orbit of
//! modules built from any one of its skeleta by letting the critical paths
//! (the one-step extensions that fall outside `σ`) act through generic
//! coefficients on the longer skeleton paths with the same endpoint.  The
//! resulting hypergraph — solid skeleton edges plus one hyperedge per
//! critical path — presents the module compactly and renders to DOT.

use crate::config::derive_seed;
use crate::error::{Error, Result};
use crate::field::{Matrix, Prime};
use crate::quiver::{Algebra, DimVector, QPath, SemisimpleSequence};
use crate::rep::{act_path, radical_layer_spaces, radical_layering, RepPoint};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::sync::Arc;

/// A path in a projective cover: a quiver path applied to one of the top
/// generators.  Generators are numbered grouped by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPath {
    pub generator: usize,
    pub path: QPath,
}

impl ProjPath {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn end(&self, alg: &Algebra) -> usize {
        self.path.end(alg)
    }

    pub fn extended(&self, alg: &Algebra, arrow: usize) -> Option<ProjPath> {
        Some(ProjPath {
            generator: self.generator,
            path: self.path.extended(alg, arrow)?,
        })
    }

    /// The path with its last arrow removed.
    pub fn parent(&self) -> ProjPath {
        ProjPath {
            generator: self.generator,
            path: self.path.prefix(self.path.len() - 1),
        }
    }

    /// `z3` for a length-zero path on generator 3, otherwise the arrow word
    /// applied to the generator, e.g. `b1*a1*z0`.
    pub fn format(&self, alg: &Algebra) -> String {
        if self.path.is_empty() {
            format!("z{}", self.generator)
        } else {
            let word: Vec<&str> = self
                .path
                .arrows
                .iter()
                .rev()
                .map(|&a| alg.arrow(a).name.as_str())
                .collect();
            format!("{}*z{}", word.join("*"), self.generator)
        }
    }

    fn sort_key(&self) -> (usize, usize, &[usize]) {
        (self.path.len(), self.generator, &self.path.arrows)
    }
}

impl Ord for ProjPath {
    fn cmp(&self, other: &ProjPath) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for ProjPath {
    fn partial_cmp(&self, other: &ProjPath) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A skeleton: the vertex of each generator plus the sorted, initial-
/// subpath-closed path set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    generators: Vec<usize>,
    paths: Vec<ProjPath>,
}

impl Skeleton {
    fn new(generators: Vec<usize>, mut paths: Vec<ProjPath>) -> Skeleton {
        paths.sort();
        Skeleton { generators, paths }
    }

    /// Vertex of each generator, grouped by vertex in increasing order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// All paths, sorted by (length, generator, arrow word).
    pub fn paths(&self) -> &[ProjPath] {
        &self.paths
    }

    pub fn contains(&self, p: &ProjPath) -> bool {
        self.index_of(p).is_some()
    }

    pub fn index_of(&self, p: &ProjPath) -> Option<usize> {
        self.paths.binary_search(p).ok()
    }

    /// Per-layer, per-vertex path counts.
    pub fn layering(&self, alg: &Algebra) -> SemisimpleSequence {
        let mut layers = vec![DimVector::zero(alg.vertex_count()); alg.loewy()];
        for p in &self.paths {
            layers[p.len()].0[p.end(alg)] += 1;
        }
        SemisimpleSequence::new(layers)
    }

    pub fn format(&self, alg: &Algebra) -> String {
        let inner: Vec<String> = self.paths.iter().map(|p| p.format(alg)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

/// All skeleta with the given layering, in lexicographic order of their
/// sorted path lists.  Empty exactly when the layering is not realizable.
pub fn enumerate_skeleta(alg: &Algebra, s: &SemisimpleSequence) -> Vec<Skeleton> {
    assert_eq!(s.layers().len(), alg.loewy(), "layering has the wrong depth");
    let n = alg.vertex_count();
    // Generators are forced by the top layer, grouped by vertex.
    let mut generators = Vec::new();
    for i in 0..n {
        for _ in 0..s.layer(0).0[i] {
            generators.push(i);
        }
    }
    let layer0: Vec<ProjPath> = generators
        .iter()
        .enumerate()
        .map(|(r, &v)| ProjPath {
            generator: r,
            path: QPath::lazy(v),
        })
        .collect();
    let mut out = Vec::new();
    descend_layers(alg, s, 1, layer0.clone(), layer0, &generators, &mut out);
    out
}

fn descend_layers(
    alg: &Algebra,
    s: &SemisimpleSequence,
    layer: usize,
    previous: Vec<ProjPath>,
    acc: Vec<ProjPath>,
    generators: &[usize],
    out: &mut Vec<Skeleton>,
) {
    if layer >= alg.loewy() {
        out.push(Skeleton::new(generators.to_vec(), acc));
        return;
    }
    let n = alg.vertex_count();
    // One-arrow extensions of the previous layer, bucketed by end vertex
    // and sorted within each bucket.
    let mut buckets: Vec<Vec<ProjPath>> = vec![Vec::new(); n];
    for p in &previous {
        for a in 0..alg.arrows().len() {
            if let Some(q) = p.extended(alg, a) {
                buckets[q.end(alg)].push(q);
            }
        }
    }
    for b in &mut buckets {
        b.sort();
    }
    let need = s.layer(layer);
    for (i, b) in buckets.iter().enumerate() {
        if need.0[i] > b.len() {
            return; // not enough extensions end here
        }
    }
    // Choose `need[i]` extensions per vertex; the combinations are walked
    // in lexicographic order so the overall enumeration is deterministic.
    let per_vertex: Vec<Vec<Vec<ProjPath>>> = (0..n)
        .map(|i| {
            buckets[i]
                .iter()
                .cloned()
                .combinations(need.0[i])
                .collect()
        })
        .collect();
    let mut stack: Vec<usize> = vec![0; n];
    loop {
        let mut chosen: Vec<ProjPath> = Vec::new();
        for i in 0..n {
            chosen.extend(per_vertex[i][stack[i]].iter().cloned());
        }
        let mut acc2 = acc.clone();
        acc2.extend(chosen.iter().cloned());
        descend_layers(alg, s, layer + 1, chosen, acc2, generators, out);
        // Advance the mixed-radix counter over per-vertex combinations.
        let mut carry = true;
        for i in (0..n).rev() {
            if !carry {
                break;
            }
            stack[i] += 1;
            if stack[i] < per_vertex[i].len() {
                carry = false;
            } else {
                stack[i] = 0;
            }
        }
        if carry {
            return;
        }
    }
}

/// The critical paths of a skeleton — one-step extensions of skeleton
/// paths that leave the skeleton but stay inside the algebra — each with
/// the skeleton paths it may act through: those at least as long that end
/// at the same vertex.
pub fn critical_paths(alg: &Algebra, skel: &Skeleton) -> Vec<(ProjPath, Vec<ProjPath>)> {
    let mut out = Vec::new();
    for p in skel.paths() {
        if p.len() >= alg.path_bound() {
            continue; // extensions would leave the algebra
        }
        for a in 0..alg.arrows().len() {
            let Some(q) = p.extended(alg, a) else {
                continue;
            };
            if skel.contains(&q) {
                continue;
            }
            let support: Vec<ProjPath> = skel
                .paths()
                .iter()
                .filter(|r| r.len() >= q.len() && r.end(alg) == q.end(alg))
                .cloned()
                .collect();
            out.push((q, support));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// One hyperedge: how a critical path acts on the skeleton basis.  Terms
/// carry nonzero coefficients only; an empty term list means the critical
/// path acts as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperEdge {
    pub critical: ProjPath,
    pub terms: Vec<(ProjPath, u64)>,
}

/// A skeleton together with the action of all its critical paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub skeleton: Skeleton,
    pub edges: Vec<HyperEdge>,
}

impl Hypergraph {
    pub fn format(&self, alg: &Algebra) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let rhs = if e.terms.is_empty() {
                "0".to_string()
            } else {
                e.terms
                    .iter()
                    .map(|(p, c)| format!("{}*({})", c, p.format(alg)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            out.push_str(&format!("{} = {}\n", e.critical.format(alg), rhs));
        }
        out
    }
}

/// A generic point of the stratum of a skeleton, with the coefficients
/// that were sampled for its critical paths.
#[derive(Debug, Clone)]
pub struct GenericModule {
    pub point: RepPoint,
    pub hypergraph: Hypergraph,
    pub seed: u64,
}

/// Index maps between the sorted skeleton paths and per-vertex coordinates.
struct BasisLayout {
    /// dims[i] = number of skeleton paths ending at vertex i.
    dims: DimVector,
    /// coord[k] = coordinate of path k inside its end vertex's space.
    coord: Vec<usize>,
    /// end[k] = end vertex of path k.
    end: Vec<usize>,
}

fn basis_layout(alg: &Algebra, skel: &Skeleton) -> BasisLayout {
    let n = alg.vertex_count();
    let mut dims = DimVector::zero(n);
    let mut coord = Vec::with_capacity(skel.paths().len());
    let mut end = Vec::with_capacity(skel.paths().len());
    for p in skel.paths() {
        let i = p.end(alg);
        coord.push(dims.0[i]);
        end.push(i);
        dims.0[i] += 1;
    }
    BasisLayout { dims, coord, end }
}

/// Build the generic module of a skeleton: basis vectors are the skeleton
/// paths, arrows move a basis path to its extension when that stays in the
/// skeleton, to zero when it leaves the algebra, and through uniformly
/// sampled nonzero coefficients on its support otherwise.  Reproducible
/// from the seed.
pub fn generic_module(
    alg: &Arc<Algebra>,
    prime: Prime,
    skel: &Skeleton,
    seed: u64,
) -> Result<GenericModule> {
    let layout = basis_layout(alg, skel);
    let criticals = critical_paths(alg, skel);
    let expected = skel.layering(alg);
    const ATTEMPTS: u32 = 8;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "generic-coeffs", attempt));
        let mut edges = Vec::with_capacity(criticals.len());
        for (q, support) in &criticals {
            let terms: Vec<(ProjPath, u64)> = support
                .iter()
                .map(|p| (p.clone(), rng.gen_range(1..prime.value())))
                .collect();
            edges.push(HyperEdge {
                critical: q.clone(),
                terms,
            });
        }
        let point = assemble_point(alg, prime, skel, &layout, &edges)?;
        // The layering of the assembled point matches the skeleton's for
        // every coefficient choice; the check is kept as a canary.
        if radical_layering(&point) == expected {
            return Ok(GenericModule {
                point,
                hypergraph: Hypergraph {
                    skeleton: skel.clone(),
                    edges,
                },
                seed,
            });
        }
    }
    Err(Error::GenericityFailure {
        prime: prime.value(),
        attempts: ATTEMPTS,
    })
}

fn assemble_point(
    alg: &Arc<Algebra>,
    prime: Prime,
    skel: &Skeleton,
    layout: &BasisLayout,
    edges: &[HyperEdge],
) -> Result<RepPoint> {
    let mut mats: Vec<Matrix> = alg
        .arrows()
        .iter()
        .map(|a| Matrix::zero(prime, layout.dims.0[a.dst], layout.dims.0[a.src]))
        .collect();
    for (k, p) in skel.paths().iter().enumerate() {
        for a in 0..alg.arrows().len() {
            let Some(q) = p.extended(alg, a) else {
                continue;
            };
            if q.len() > alg.path_bound() {
                continue; // the product is zero in the algebra
            }
            if let Some(k2) = skel.index_of(&q) {
                mats[a].set(layout.coord[k2], layout.coord[k], 1);
            } else {
                let edge = edges
                    .iter()
                    .find(|e| e.critical == q)
                    .expect("every critical extension has an edge");
                for (r, c) in &edge.terms {
                    let k2 = skel.index_of(r).expect("support paths lie in the skeleton");
                    mats[a].set(layout.coord[k2], layout.coord[k], *c);
                }
            }
        }
    }
    RepPoint::new(alg.clone(), prime, layout.dims.clone(), mats)
}

/// A choice of top elements witnessing that a skeleton fits a module: one
/// vector per generator, whose skeleton-path images form a basis.
struct TopWitness {
    tops: Vec<Vec<u64>>,
    /// Per-vertex basis matrices: column `coord[k]` of block `end[k]` holds
    /// the image of path k.
    blocks: Vec<Matrix>,
}

const WITNESS_TRIES: u32 = 32;

/// Search for top elements realizing the skeleton inside `m`.  Try 0 lifts
/// the standard complement of `JM` (the natural deterministic choice);
/// later tries sample uniformly.  Returns the witness and, on failure, the
/// best total rank achieved.
fn find_top_witness(
    m: &RepPoint,
    skel: &Skeleton,
    layout: &BasisLayout,
    seed: u64,
) -> std::result::Result<TopWitness, usize> {
    let p = m.prime();
    let n = m.alg().vertex_count();
    let total: usize = m.total_dim();
    let mut best = 0usize;
    let radical = &radical_layer_spaces(m)[1];
    for t in 0..WITNESS_TRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "top-witness", t));
        let mut tops: Vec<Vec<u64>> = Vec::with_capacity(skel.generators().len());
        if t == 0 {
            // Standard lifts: the unit vectors at the non-pivot coordinates
            // of each radical component, in order.
            let mut per_vertex: Vec<Vec<Vec<u64>>> = (0..n)
                .map(|i| {
                    let d = m.dims().0[i];
                    let mut pivot = vec![false; d];
                    for row in radical.part(i).basis_vectors() {
                        let pc = row.iter().position(|&x| x != 0).expect("nonzero row");
                        pivot[pc] = true;
                    }
                    (0..d)
                        .filter(|&c| !pivot[c])
                        .map(|c| {
                            let mut e = vec![0u64; d];
                            e[c] = 1;
                            e
                        })
                        .collect()
                })
                .collect();
            let mut used = vec![0usize; n];
            let mut ok = true;
            for &v in skel.generators() {
                if used[v] < per_vertex[v].len() {
                    tops.push(std::mem::take(&mut per_vertex[v][used[v]]));
                    used[v] += 1;
                } else {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
        } else {
            for &v in skel.generators() {
                let d = m.dims().0[v];
                tops.push((0..d).map(|_| rng.gen_range(0..p.value())).collect());
            }
        }
        // Assemble the per-vertex candidate basis blocks.
        let mut blocks: Vec<Matrix> = (0..n)
            .map(|i| Matrix::zero(p, m.dims().0[i], layout.dims.0[i]))
            .collect();
        for (k, path) in skel.paths().iter().enumerate() {
            let img = act_path(m, &path.path)
                .apply(&tops[path.generator])
                .expect("top vector lives at the path's start vertex");
            let i = layout.end[k];
            for (r, &x) in img.iter().enumerate() {
                blocks[i].set(r, layout.coord[k], x);
            }
        }
        let rank: usize = blocks.iter().map(|b| b.rank()).sum();
        best = best.max(rank);
        if rank == total {
            return Ok(TopWitness { tops, blocks });
        }
    }
    Err(best)
}

/// All skeleta of a module: candidates share its radical layering, and
/// each is kept when some choice of top elements realizes it.  The witness
/// search is randomized but seeded; a reported skeleton is always genuine.
pub fn skeleta_of(m: &RepPoint, seed: u64) -> Vec<Skeleton> {
    let s = radical_layering(m);
    enumerate_skeleta(m.alg(), &s)
        .into_iter()
        .filter(|skel| {
            let layout = basis_layout(m.alg(), skel);
            find_top_witness(m, skel, &layout, seed).is_ok()
        })
        .collect()
}

/// Express the critical-path actions of `m` in the basis of a skeleton it
/// admits.  Fails with the best achieved rank when no top choice realizes
/// the skeleton.
pub fn extract_hypergraph(m: &RepPoint, skel: &Skeleton, seed: u64) -> Result<Hypergraph> {
    if skel.layering(m.alg()) != radical_layering(m) {
        return Err(Error::NotASkeleton {
            achieved: 0,
            needed: m.total_dim(),
        });
    }
    let layout = basis_layout(m.alg(), skel);
    let witness = match find_top_witness(m, skel, &layout, seed) {
        Ok(w) => w,
        Err(best) => {
            return Err(Error::NotASkeleton {
                achieved: best,
                needed: m.total_dim(),
            })
        }
    };
    let mut edges = Vec::new();
    for (q, support) in critical_paths(m.alg(), skel) {
        let img = act_path(m, &q.path)
            .apply(&witness.tops[q.generator])
            .expect("top vector lives at the path's start vertex");
        let mut terms: Vec<(ProjPath, u64)> = Vec::new();
        if support.is_empty() {
            debug_assert!(
                img.iter().all(|&x| x == 0),
                "critical path with empty support must act as zero"
            );
        } else {
            let i = q.end(m.alg());
            let coeffs = witness.blocks[i]
                .solve(&img)?
                .expect("image lies in the span of the skeleton basis");
            for (k, path) in skel.paths().iter().enumerate() {
                if layout.end[k] == i && coeffs[layout.coord[k]] != 0 {
                    terms.push((path.clone(), coeffs[layout.coord[k]]));
                }
            }
            debug_assert!(
                terms.iter().all(|(p, _)| support.contains(p)),
                "coefficients land on the support"
            );
        }
        edges.push(HyperEdge { critical: q, terms });
    }
    Ok(Hypergraph {
        skeleton: skel.clone(),
        edges,
    })
}

/// Render a hypergraph to DOT.  Skeleton paths become boxes joined by
/// solid arrows; each critical path with a nonzero action becomes a dashed
/// box fed by a dashed arrow from its parent, with dotted edges (labelled
/// by the coefficient) into the paths it acts through.  Critical paths
/// acting as zero are omitted.
pub fn to_dot(h: &Hypergraph, alg: &Algebra) -> String {
    let mut out = String::from("digraph skeleton {\n  rankdir=TB;\n  node [shape=box];\n");
    for p in h.skeleton.paths() {
        let name = p.format(alg);
        out.push_str(&format!(
            "  \"{}\" [label=\"{} : v{}\"];\n",
            name,
            name,
            p.end(alg) + 1
        ));
    }
    for p in h.skeleton.paths() {
        if p.is_empty() {
            continue;
        }
        let arrow = alg.arrow(*p.path.arrows.last().expect("nonempty")).name.clone();
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            p.parent().format(alg),
            p.format(alg),
            arrow
        ));
    }
    for e in &h.edges {
        if e.terms.is_empty() {
            continue;
        }
        let q = &e.critical;
        let name = q.format(alg);
        let arrow = alg.arrow(*q.path.arrows.last().expect("critical paths are nonempty"))
            .name
            .clone();
        out.push_str(&format!("  \"{name}\" [label=\"{name}\", style=dashed];\n"));
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\", style=dashed];\n",
            q.parent().format(alg),
            name,
            arrow
        ));
        for (p, c) in &e.terms {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\", style=dotted];\n",
                name,
                p.format(alg),
                c
            ));
        }
    }
    out.push_str("}\n");
    out
}

//! Concrete modules as representation points: one matrix per arrow, with
//! path action, radical and socle layerings, duality, direct sums, path
//! ranks, and the layer-stable-embedding predicate.
//!
//! Every submodule of a point is graded by the vertices, so subspaces of a
//! module are stored per vertex ([`GradedSubspace`]); this keeps search
//! spaces small and mirrors how the layers `J^l M` decompose.

use crate::error::{Error, Result};
use crate::field::{Matrix, Prime, Subspace};
use crate::quiver::{enumerate_paths, Algebra, DimVector, QPath, SemisimpleSequence};
use rand::Rng;
use std::sync::Arc;

/// A point of the module variety: a matrix `f_α` per arrow `α: i -> j` of
/// shape `d_j × d_i`, acting on column vectors.  The truncation relations
/// (all length-`L+1` path products vanish) are validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepPoint {
    alg: Arc<Algebra>,
    prime: Prime,
    dims: DimVector,
    mats: Vec<Matrix>,
}

impl RepPoint {
    pub fn new(
        alg: Arc<Algebra>,
        prime: Prime,
        dims: DimVector,
        mats: Vec<Matrix>,
    ) -> Result<RepPoint> {
        if dims.len() != alg.vertex_count() {
            return Err(Error::dim("dimension vector length != vertex count"));
        }
        if mats.len() != alg.arrows().len() {
            return Err(Error::dim("one matrix per arrow required"));
        }
        for (idx, m) in mats.iter().enumerate() {
            let a = alg.arrow(idx);
            if m.rows() != dims.0[a.dst] || m.cols() != dims.0[a.src] {
                return Err(Error::dim(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims.0[a.dst],
                    dims.0[a.src],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.prime() != prime {
                return Err(Error::ModulusMismatch {
                    left: prime.value(),
                    right: m.prime().value(),
                });
            }
        }
        let point = RepPoint {
            alg,
            prime,
            dims,
            mats,
        };
        // J^{L+1} M = 0 is equivalent to all length-(L+1) products vanishing.
        let mut w = GradedSubspace::full(prime, &point.dims);
        for _ in 0..point.alg.loewy() {
            w = arrow_image(&point, &w);
        }
        if !w.is_zero() {
            return Err(Error::Usage(format!(
                "truncation relations fail: some length-{} path acts nonzero",
                point.alg.loewy()
            )));
        }
        Ok(point)
    }

    /// The semisimple point of the given dimension: all matrices zero.
    pub fn semisimple(alg: Arc<Algebra>, prime: Prime, dims: DimVector) -> RepPoint {
        let mats = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zero(prime, dims.0[a.dst], dims.0[a.src]))
            .collect();
        RepPoint::new(alg, prime, dims, mats).expect("zero matrices satisfy every relation")
    }

    pub fn alg(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn mat(&self, arrow_idx: usize) -> &Matrix {
        &self.mats[arrow_idx]
    }

    /// Parse the module text format:
    ///
    /// ```text
    /// dim 2,2
    /// mat a1
    /// 1 0
    /// 0 1
    /// mat b1
    /// 0 0
    /// 1 0
    /// ```
    ///
    /// Arrows may appear in any order; omitted arrows act as zero.  Entries
    /// are integers, reduced mod p.  Rows are omitted entirely for matrices
    /// with a zero dimension on either side.
    pub fn parse(alg: Arc<Algebra>, prime: Prime, text: &str) -> Result<RepPoint> {
        let mut dims: Option<DimVector> = None;
        let mut mats: Vec<Option<Matrix>> = vec![None; alg.arrows().len()];
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        while let Some((line_no, line)) = lines.next() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "dim" => {
                    let [_, v] = tokens[..] else {
                        return Err(Error::parse(line_no, "expected `dim d_1,...,d_n`"));
                    };
                    let d = DimVector::parse(v)?;
                    if d.len() != alg.vertex_count() {
                        return Err(Error::parse(
                            line_no,
                            format!("expected {} dimensions", alg.vertex_count()),
                        ));
                    }
                    dims = Some(d);
                }
                "mat" => {
                    let [_, name] = tokens[..] else {
                        return Err(Error::parse(line_no, "expected `mat <arrow-id>`"));
                    };
                    let Some(idx) = alg.arrow_index(name) else {
                        return Err(Error::parse(line_no, format!("unknown arrow `{name}`")));
                    };
                    if mats[idx].is_some() {
                        return Err(Error::parse(line_no, format!("duplicate `mat {name}`")));
                    }
                    let Some(d) = &dims else {
                        return Err(Error::parse(line_no, "`dim` must come before `mat`"));
                    };
                    let a = alg.arrow(idx);
                    let (rows, cols) = (d.0[a.dst], d.0[a.src]);
                    let mut entries: Vec<Vec<i64>> = Vec::with_capacity(rows);
                    if rows > 0 && cols > 0 {
                        for _ in 0..rows {
                            let Some((row_no, row_line)) = lines.next() else {
                                return Err(Error::parse(
                                    line_no,
                                    format!("matrix for `{name}` needs {rows} rows"),
                                ));
                            };
                            let row = row_line
                                .split_whitespace()
                                .map(|t| t.parse::<i64>())
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .map_err(|_| Error::parse(row_no, "bad matrix entry"))?;
                            if row.len() != cols {
                                return Err(Error::parse(
                                    row_no,
                                    format!("expected {cols} entries in row"),
                                ));
                            }
                            entries.push(row);
                        }
                    }
                    let m = if rows > 0 && cols > 0 {
                        Matrix::from_rows(prime, &entries)?
                    } else {
                        Matrix::zero(prime, rows, cols)
                    };
                    mats[idx] = Some(m);
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown directive `{other}`")));
                }
            }
        }
        let dims = dims.ok_or_else(|| Error::parse(0, "missing `dim` line"))?;
        let mats = mats
            .into_iter()
            .enumerate()
            .map(|(idx, m)| {
                m.unwrap_or_else(|| {
                    let a = alg.arrow(idx);
                    Matrix::zero(prime, dims.0[a.dst], dims.0[a.src])
                })
            })
            .collect();
        RepPoint::new(alg, prime, dims, mats)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dims);
        for (idx, a) in self.alg.arrows().iter().enumerate() {
            out.push_str(&format!("mat {}\n", a.name));
            let m = &self.mats[idx];
            if m.rows() > 0 && m.cols() > 0 {
                for r in 0..m.rows() {
                    let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// A vertex-graded subspace of a representation point: one canonical
/// subspace per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    parts: Vec<Subspace>,
}

impl GradedSubspace {
    pub fn new(parts: Vec<Subspace>) -> GradedSubspace {
        GradedSubspace { parts }
    }

    pub fn zero(p: Prime, dims: &DimVector) -> GradedSubspace {
        GradedSubspace {
            parts: dims.0.iter().map(|&d| Subspace::zero(p, d)).collect(),
        }
    }

    pub fn full(p: Prime, dims: &DimVector) -> GradedSubspace {
        GradedSubspace {
            parts: dims.0.iter().map(|&d| Subspace::full(p, d)).collect(),
        }
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn part(&self, vertex: usize) -> &Subspace {
        &self.parts[vertex]
    }

    pub fn dims(&self) -> DimVector {
        DimVector(self.parts.iter().map(|s| s.dim()).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(|s| s.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|s| s.dim() == 0)
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.sum(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedSubspace { parts })
    }

    pub fn intersect(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.intersect(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedSubspace { parts })
    }

    pub fn contains(&self, other: &GradedSubspace) -> Result<bool> {
        for (a, b) in self.parts.iter().zip(&other.parts) {
            if !a.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The composite matrix of a path: identity on the start vertex for length
/// 0, otherwise the product of the arrow matrices in application order.
/// Paths of length `L + 1` or longer are outside the algebra.
pub fn act_path(m: &RepPoint, p: &QPath) -> Matrix {
    assert!(
        p.len() <= m.alg().path_bound(),
        "path of length {} exceeds the bound L = {}",
        p.len(),
        m.alg().path_bound()
    );
    let mut acc = Matrix::identity(m.prime(), m.dims().0[p.start]);
    for &a in &p.arrows {
        acc = m.mat(a).mul(&acc).expect("composable by construction");
    }
    acc
}

/// `J · W`: the graded subspace spanned by all arrow images of `W`.
pub fn arrow_image(m: &RepPoint, w: &GradedSubspace) -> GradedSubspace {
    let p = m.prime();
    let mut spans: Vec<Vec<Vec<u64>>> = vec![Vec::new(); m.alg().vertex_count()];
    for (idx, a) in m.alg().arrows().iter().enumerate() {
        let f = m.mat(idx);
        for v in w.part(a.src).basis_vectors() {
            spans[a.dst].push(f.apply(v).expect("vector in the domain"));
        }
    }
    let parts = spans
        .into_iter()
        .enumerate()
        .map(|(i, vecs)| Subspace::from_vectors(p, m.dims().0[i], &vecs))
        .collect();
    GradedSubspace::new(parts)
}

/// Check arrow-invariance of a graded subspace; the error names the first
/// violating arrow.
pub fn check_submodule(m: &RepPoint, w: &GradedSubspace) -> Result<()> {
    for (idx, a) in m.alg().arrows().iter().enumerate() {
        let f = m.mat(idx);
        for v in w.part(a.src).basis_vectors() {
            let img = f.apply(v)?;
            if !w.part(a.dst).contains_vector(&img) {
                return Err(Error::NotSubmodule {
                    arrow: a.name.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Smallest submodule containing the given seed vectors (vertex, vector).
pub fn generated_submodule(m: &RepPoint, seeds: &[(usize, Vec<u64>)]) -> GradedSubspace {
    let p = m.prime();
    let mut per_vertex: Vec<Vec<Vec<u64>>> = vec![Vec::new(); m.alg().vertex_count()];
    for (v, vec) in seeds {
        per_vertex[*v].push(vec.clone());
    }
    let mut w = GradedSubspace::new(
        per_vertex
            .into_iter()
            .enumerate()
            .map(|(i, vecs)| Subspace::from_vectors(p, m.dims().0[i], &vecs))
            .collect(),
    );
    loop {
        let next = w.sum(&arrow_image(m, &w)).expect("same shape");
        if next == w {
            return w;
        }
        w = next;
    }
}

/// The chain `J^0 M ⊇ J^1 M ⊇ … ⊇ J^{L+1} M = 0` (`L + 2` entries).
/// Each step is the sum of arrow images of the previous one, which agrees
/// with summing images of all paths of the corresponding lengths.
pub fn radical_layer_spaces(m: &RepPoint) -> Vec<GradedSubspace> {
    let mut out = vec![GradedSubspace::full(m.prime(), m.dims())];
    for _ in 0..m.alg().loewy() {
        let next = arrow_image(m, out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// The radical layering `S(M)`: layer `l` records the per-vertex dimensions
/// of `J^l M / J^{l+1} M`.
pub fn radical_layering(m: &RepPoint) -> SemisimpleSequence {
    let chain = radical_layer_spaces(m);
    let layers = chain
        .windows(2)
        .map(|w| {
            DimVector(
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

/// The socle of the point: per vertex, the intersection of the kernels of
/// all arrows leaving that vertex.
pub fn socle_graded(m: &RepPoint) -> GradedSubspace {
    let p = m.prime();
    let parts = (0..m.alg().vertex_count())
        .map(|i| {
            let mut acc = Subspace::full(p, m.dims().0[i]);
            for (idx, a) in m.alg().arrows().iter().enumerate() {
                if a.src == i {
                    acc = acc
                        .intersect(&m.mat(idx).kernel())
                        .expect("same ambient space");
                }
            }
            acc
        })
        .collect();
    GradedSubspace::new(parts)
}

/// Quotient representation `m / w` for a submodule `w`, together with the
/// per-vertex projection matrices from the old coordinates onto the new.
/// Coordinates on the quotient come from completing `w`'s echelon basis by
/// standard basis vectors at its non-pivot columns.
pub fn quotient_rep(m: &RepPoint, w: &GradedSubspace) -> Result<(RepPoint, Vec<Matrix>)> {
    check_submodule(m, w)?;
    let p = m.prime();
    let n = m.alg().vertex_count();
    let mut projections: Vec<Matrix> = Vec::with_capacity(n);
    let mut inclusions: Vec<Matrix> = Vec::with_capacity(n);
    let mut qdims = Vec::with_capacity(n);
    for i in 0..n {
        let d = m.dims().0[i];
        let sub = w.part(i);
        let k = sub.dim();
        // Columns of t: first the subspace basis, then the standard-vector
        // completion at non-pivot coordinates.
        let mut pivot_flags = vec![false; d];
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(d);
        for v in sub.basis_vectors() {
            let pc = v.iter().position(|&x| x != 0).expect("nonzero basis row");
            pivot_flags[pc] = true;
            cols.push(v.to_vec());
        }
        let mut complement_cols: Vec<Vec<u64>> = Vec::new();
        for c in 0..d {
            if !pivot_flags[c] {
                let mut e = vec![0u64; d];
                e[c] = 1;
                complement_cols.push(e);
            }
        }
        cols.extend(complement_cols.iter().cloned());
        let mut t = Matrix::zero(p, d, d);
        for (j, col) in cols.iter().enumerate() {
            for (i_row, &x) in col.iter().enumerate() {
                t.set(i_row, j, x);
            }
        }
        let t_inv = t.inverse().expect("completion of a basis is invertible");
        // Projection: the last d-k rows of t_inv (coefficients on the
        // complement part); inclusion: the complement columns.
        let c_dim = d - k;
        let mut proj = Matrix::zero(p, c_dim, d);
        for r in 0..c_dim {
            for cidx in 0..d {
                proj.set(r, cidx, t_inv.get(k + r, cidx));
            }
        }
        let mut incl = Matrix::zero(p, d, c_dim);
        for (j, col) in complement_cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                incl.set(r, j, x);
            }
        }
        projections.push(proj);
        inclusions.push(incl);
        qdims.push(c_dim);
    }
    let mats = m
        .alg()
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            projections[a.dst]
                .mul(m.mat(idx))?
                .mul(&inclusions[a.src])
        })
        .collect::<Result<Vec<_>>>()?;
    let q = RepPoint::new(m.alg().clone(), p, DimVector(qdims), mats)?;
    Ok((q, projections))
}

/// The socle layering `S*(M)`: `S*_0 = soc M`, then socles of successive
/// quotients, packed low-index-first and padded with zero layers.
pub fn socle_layering(m: &RepPoint) -> SemisimpleSequence {
    let mut layers: Vec<DimVector> = Vec::new();
    let mut current = m.clone();
    while current.total_dim() > 0 {
        let soc = socle_graded(&current);
        assert!(
            soc.total_dim() > 0,
            "nonzero truncated module has nonzero socle"
        );
        layers.push(soc.dims());
        let (q, _) = quotient_rep(&current, &soc).expect("socle is a submodule");
        current = q;
    }
    assert!(layers.len() <= m.alg().loewy(), "Loewy length exceeds bound");
    while layers.len() < m.alg().loewy() {
        layers.push(DimVector::zero(m.alg().vertex_count()));
    }
    SemisimpleSequence::new(layers)
}

/// The dual module over the opposite algebra: arrows reversed, matrices
/// transposed.  Applying it twice gives back the original matrices.
pub fn dualize(m: &RepPoint) -> RepPoint {
    let op = Arc::new(m.alg().opposite());
    let mats = (0..m.alg().arrows().len())
        .map(|idx| m.mat(idx).transpose())
        .collect();
    RepPoint::new(op, m.prime(), m.dims().clone(), mats)
        .expect("transposed matrices satisfy the reversed relations")
}

/// Block-diagonal direct sum of two points over the same algebra.
pub fn direct_sum(a: &RepPoint, b: &RepPoint) -> Result<RepPoint> {
    if a.alg().as_ref() != b.alg().as_ref() {
        return Err(Error::Usage("direct sum requires the same algebra".into()));
    }
    if a.prime() != b.prime() {
        return Err(Error::ModulusMismatch {
            left: a.prime().value(),
            right: b.prime().value(),
        });
    }
    let p = a.prime();
    let dims = a.dims().add(b.dims());
    let mats = a
        .alg()
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, arr)| {
            let (ma, mb) = (a.mat(idx), b.mat(idx));
            let rows = dims.0[arr.dst];
            let cols = dims.0[arr.src];
            let mut m = Matrix::zero(p, rows, cols);
            for i in 0..ma.rows() {
                for j in 0..ma.cols() {
                    m.set(i, j, ma.get(i, j));
                }
            }
            for i in 0..mb.rows() {
                for j in 0..mb.cols() {
                    m.set(ma.rows() + i, ma.cols() + j, mb.get(i, j));
                }
            }
            m
        })
        .collect();
    RepPoint::new(a.alg().clone(), p, dims, mats)
}

/// Ranks of the path action for every path of length `0..=L`, in the
/// deterministic path enumeration order.
pub fn path_ranks(m: &RepPoint) -> Vec<(QPath, usize)> {
    enumerate_paths(m.alg(), 0, m.alg().path_bound())
        .into_iter()
        .map(|p| {
            let r = act_path(m, &p).rank();
            (p, r)
        })
        .collect()
}

/// The pair `Θ(M) = (S(M), S*(M))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theta {
    pub radical: SemisimpleSequence,
    pub socle: SemisimpleSequence,
}

pub fn theta(m: &RepPoint) -> Theta {
    Theta {
        radical: radical_layering(m),
        socle: socle_layering(m),
    }
}

/// `Θ⁺(M)`: the layerings plus the negated path ranks of the module and of
/// its dual, each in the respective deterministic path order.  Smaller is
/// more degenerate throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPlus {
    pub radical: SemisimpleSequence,
    pub socle: SemisimpleSequence,
    pub neg_path_ranks: Vec<i64>,
    pub neg_dual_path_ranks: Vec<i64>,
}

pub fn theta_plus(m: &RepPoint) -> ThetaPlus {
    let t = theta(m);
    let neg_path_ranks = path_ranks(m)
        .into_iter()
        .map(|(_, r)| -(r as i64))
        .collect();
    let neg_dual_path_ranks = path_ranks(&dualize(m))
        .into_iter()
        .map(|(_, r)| -(r as i64))
        .collect();
    ThetaPlus {
        radical: t.radical,
        socle: t.socle,
        neg_path_ranks,
        neg_dual_path_ranks,
    }
}

impl ThetaPlus {
    /// Componentwise comparison: both layerings in dominance order, both
    /// negated rank tuples pointwise.
    pub fn leq(&self, other: &ThetaPlus) -> Result<bool> {
        if self.neg_path_ranks.len() != other.neg_path_ranks.len()
            || self.neg_dual_path_ranks.len() != other.neg_dual_path_ranks.len()
        {
            return Err(Error::Usage(
                "theta-plus values over different algebras are not comparable".into(),
            ));
        }
        Ok(crate::quiver::dominance_leq(&self.radical, &other.radical)?
            && crate::quiver::dominance_leq(&self.socle, &other.socle)?
            && self
                .neg_path_ranks
                .iter()
                .zip(&other.neg_path_ranks)
                .all(|(a, b)| a <= b)
            && self
                .neg_dual_path_ranks
                .iter()
                .zip(&other.neg_dual_path_ranks)
                .all(|(a, b)| a <= b))
    }

    pub fn lt(&self, other: &ThetaPlus) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }
}

/// Restrict the point to a submodule, in the coordinates of the subspace's
/// echelon bases.
pub fn restrict_to_submodule(m: &RepPoint, w: &GradedSubspace) -> Result<RepPoint> {
    check_submodule(m, w)?;
    let p = m.prime();
    let mats = m
        .alg()
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let incl_dst = w.part(a.dst).inclusion_matrix();
            let sub_dim_src = w.part(a.src).dim();
            let mut out = Matrix::zero(p, w.part(a.dst).dim(), sub_dim_src);
            for (col, v) in w.part(a.src).basis_vectors().enumerate() {
                let img = m.mat(idx).apply(v)?;
                let coords = incl_dst
                    .solve(&img)?
                    .expect("image lies in the target component");
                for (row, &x) in coords.iter().enumerate() {
                    out.set(row, col, x);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    RepPoint::new(m.alg().clone(), p, w.dims(), mats)
}

/// Layer stability of a submodule `w ⊆ m`: true iff the radical layers of
/// the restricted module agree with `w ∩ J^l m` for every `l ≤ L`.
pub fn is_layer_stable(w: &GradedSubspace, m: &RepPoint) -> Result<bool> {
    let sub_rep = restrict_to_submodule(m, w)?;
    let sub_layers = radical_layer_spaces(&sub_rep);
    let amb_layers = radical_layer_spaces(m);
    let p = m.prime();
    for l in 0..=m.alg().path_bound() {
        // Push the restricted layer back into ambient coordinates.
        let parts = (0..m.alg().vertex_count())
            .map(|i| {
                let coords = sub_layers[l].part(i);
                let rows = coords.basis().mul(w.part(i).basis()).expect("shape");
                Subspace::from_spanning(p, m.dims().0[i], &rows)
            })
            .collect();
        let pushed = GradedSubspace::new(parts);
        let expected = w.intersect(&amb_layers[l])?;
        if pushed != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sample a representation point that admits a filtration governed by `s`:
/// basis slots are grouped per vertex by the layers of `s`, and each arrow
/// matrix is random on blocks mapping a layer to a strictly later layer and
/// zero elsewhere.  The truncation relations then hold automatically, and
/// every point arises this way for a suitable `s`.
pub fn sample_triangular(
    alg: &Arc<Algebra>,
    prime: Prime,
    s: &SemisimpleSequence,
    rng: &mut impl Rng,
) -> RepPoint {
    let n = alg.vertex_count();
    let dims = s.total();
    // layer_of[i] lists, slot by slot, the layer of each coordinate of
    // vertex i (layer-0 slots first).
    let layer_of: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut v = Vec::with_capacity(dims.0[i]);
            for (l, layer) in s.layers().iter().enumerate() {
                v.extend(std::iter::repeat_n(l, layer.0[i]));
            }
            v
        })
        .collect();
    let mats = alg
        .arrows()
        .iter()
        .map(|a| {
            let mut m = Matrix::zero(prime, dims.0[a.dst], dims.0[a.src]);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if layer_of[a.dst][r] > layer_of[a.src][c] {
                        m.set(r, c, rng.gen_range(0..prime.value()));
                    }
                }
            }
            m
        })
        .collect();
    RepPoint::new(alg.clone(), prime, dims, mats).expect("layer-triangular points are valid")
}

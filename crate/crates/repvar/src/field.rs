//! Dense linear algebra over a prime field F_p.
//!
//! Conventions used throughout the crate:
//!
//! * A vector of length `n` is a coordinate row; a subspace of `F_p^n` is the
//!   row space of its basis matrix, kept in reduced row echelon form so that
//!   equal subspaces have equal representations.
//! * A linear map `F_p^a -> F_p^b` is a `b x a` matrix acting on column
//!   vectors; its image is the column space, its kernel the null space
//!   (a subspace of `F_p^a`).
//!
//! The modulus is chosen once per session and stamped into every matrix, so
//! mixing artifacts built under different moduli is an error rather than a
//! silent wrap-around.  Entries are always kept reduced into `[0, p)`.

use crate::error::{Error, Result};

/// A validated prime modulus, small enough that products of two reduced
/// entries never overflow `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut q = 2;
        while q * q <= p {
            if p.is_multiple_of(q) {
                return Err(Error::NotPrime(p));
            }
            q += 1;
        }
        Ok(Prime(p))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 - 2)
    }
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> Matrix {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Matrix {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from integer rows, reducing mod p.  All rows must share a length.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dim("ragged rows in matrix literal"));
        }
        let data = rows.iter().flatten().map(|&x| p.reduce(x)).collect();
        Ok(Matrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.p.value());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn check_modulus(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p.value(),
                right: other.p.value(),
            });
        }
        Ok(())
    }

    /// Matrix product `self * other` (composition of column-vector maps:
    /// `self` applied after `other`).
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let mut out = Matrix::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = p.add(out.get(i, j), p.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::dim(format!(
                "applying {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let p = self.p;
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for k in 0..self.cols {
                acc = p.add(acc, p.mul(self.get(i, k), v[k]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_modulus(other)?;
        if self.cols != other.cols {
            return Err(Error::dim("vstack with different column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_modulus(other)?;
        if self.rows != other.rows {
            return Err(Error::dim("hstack with different row counts"));
        }
        let mut out = Matrix::zero(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Inverse of a square matrix, when it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self
            .hstack(&Matrix::identity(self.p, n))
            .expect("square augment");
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = Matrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form together with the pivot columns
    /// (strictly increasing; pivot entries 1; pivot columns cleared).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(row, c), m.get(pr, c));
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = p.inv(m.get(row, col));
            for c in 0..m.cols {
                m.set(row, c, p.mul(inv, m.get(row, c)));
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let f = m.get(r, col);
                    for c in 0..m.cols {
                        let v = p.sub(m.get(r, c), p.mul(f, m.get(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Image (column space) of the map represented by this matrix,
    /// as a subspace of the codomain `F_p^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.p, self.rows, &self.transpose())
    }

    /// Kernel (null space) of the map, as a subspace of the domain `F_p^cols`.
    pub fn kernel(&self) -> Subspace {
        let p = self.p;
        let (r, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis_rows: Vec<Vec<i64>> = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0i64; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -(r.get(i, free) as i64);
            }
            basis_rows.push(v);
        }
        if basis_rows.is_empty() {
            return Subspace::zero(p, self.cols);
        }
        let m = Matrix::from_rows(p, &basis_rows).expect("kernel rows are uniform");
        Subspace::from_spanning(p, self.cols, &m)
    }

    /// Solve `self * x = b` for a column vector `x`; `None` when inconsistent.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::dim("right-hand side length != row count"));
        }
        let p = self.p;
        let mut aug = Matrix::zero(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % p.value());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }
}

/// A subspace of `F_p^n`, stored as the unique reduced-row-echelon basis.
/// Equality of subspaces is therefore plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// The zero subspace of `F_p^n`.
    pub fn zero(p: Prime, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zero(p, 0, ambient),
        }
    }

    /// All of `F_p^n`.
    pub fn full(p: Prime, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(p, ambient),
        }
    }

    /// Row space of an arbitrary spanning matrix.
    pub fn from_spanning(p: Prime, ambient: usize, spanning: &Matrix) -> Subspace {
        debug_assert_eq!(spanning.cols(), ambient);
        debug_assert_eq!(spanning.prime(), p);
        let (r, pivots) = spanning.rref();
        let mut basis = Matrix::zero(p, pivots.len(), ambient);
        for i in 0..pivots.len() {
            for j in 0..ambient {
                basis.set(i, j, r.get(i, j));
            }
        }
        Subspace { basis }
    }

    pub fn from_vectors(p: Prime, ambient: usize, vectors: &[Vec<u64>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(p, ambient);
        }
        let rows: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| x as i64).collect())
            .collect();
        let m = Matrix::from_rows(p, &rows).expect("uniform vector lengths");
        Subspace::from_spanning(p, ambient, &m)
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical echelon basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.dim()).map(|i| self.basis.row(i))
    }

    /// Columns of this matrix are the basis vectors: the inclusion map
    /// `F_p^dim -> F_p^ambient` in coordinates.
    pub fn inclusion_matrix(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace::from_spanning(
            self.prime(),
            self.ambient(),
            &stacked,
        ))
    }

    /// Orthogonal complement under the standard dot product.  The pairing is
    /// nondegenerate, so `perp` is an inclusion-reversing involution; it is
    /// used here purely as a lattice tool.
    pub fn perp(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.ambient());
        let p = self.prime();
        let mut v = v.to_vec();
        for i in 0..self.dim() {
            let pc = (0..self.ambient())
                .find(|&c| self.basis.get(i, c) != 0)
                .expect("nonzero basis row");
            if v[pc] != 0 {
                let f = v[pc];
                for c in 0..self.ambient() {
                    v[c] = p.sub(v[c], p.mul(f, self.basis.get(i, c)));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis_vectors().all(|v| self.contains_vector(v)))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.prime() != other.prime() {
            return Err(Error::ModulusMismatch {
                left: self.prime().value(),
                right: other.prime().value(),
            });
        }
        if self.ambient() != other.ambient() {
            return Err(Error::dim(format!(
                "subspaces of F^{} and F^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }
}

/// Number of `k`-dimensional subspaces of `F_p^n` (Gaussian binomial),
/// saturating at `u128::MAX` on overflow.
pub fn subspace_count(n: usize, k: usize, p: Prime) -> u128 {
    if k > n {
        return 0;
    }
    // Product over i of (p^(n-k+i) - 1)/(p^i - 1) for i = 1..=k, computed as
    // a running exact rational that stays integral at every step.
    let pv = p.value() as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let pow = |e: usize| -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..e {
            acc = acc.checked_mul(pv)?;
        }
        Some(acc)
    };
    for i in 1..=k {
        let Some(a) = pow(n - k + i) else {
            return u128::MAX;
        };
        let Some(b) = pow(i) else {
            return u128::MAX;
        };
        let Some(nn) = num.checked_mul(a - 1) else {
            return u128::MAX;
        };
        num = nn;
        let Some(dd) = den.checked_mul(b - 1) else {
            return u128::MAX;
        };
        den = dd;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Stream over all `dim`-dimensional subspaces of `ambient`, in a canonical
/// deterministic order (pivot-column sets lexicographically, then free
/// entries as base-p counters).  Refuses up front when the count exceeds
/// `budget`.
pub fn enumerate_subspaces(
    ambient: &Subspace,
    dim: usize,
    budget: u64,
) -> Result<SubspaceIter> {
    let count = subspace_count(ambient.dim(), dim, ambient.prime());
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            count,
            budget,
        });
    }
    Ok(SubspaceIter::new(ambient.clone(), dim))
}

#[derive(Debug)]
pub struct SubspaceIter {
    ambient: Subspace,
    dim: usize,
    /// Current pivot-column combination inside the coordinate space
    /// `F_p^{ambient.dim()}`, or None when exhausted.
    pivots: Option<Vec<usize>>,
    /// Base-p counter over the free entries of the current pivot pattern.
    counter: Vec<u64>,
    free_slots: Vec<(usize, usize)>,
    done_with_pattern: bool,
}

impl SubspaceIter {
    fn new(ambient: Subspace, dim: usize) -> SubspaceIter {
        let n = ambient.dim();
        let pivots = if dim <= n {
            Some((0..dim).collect())
        } else {
            None
        };
        let mut it = SubspaceIter {
            ambient,
            dim,
            pivots,
            counter: Vec::new(),
            free_slots: Vec::new(),
            done_with_pattern: false,
        };
        it.reset_pattern();
        it
    }

    fn reset_pattern(&mut self) {
        let Some(pivots) = &self.pivots else {
            return;
        };
        let n = self.ambient.dim();
        let in_pivots = |c: usize| pivots.contains(&c);
        self.free_slots.clear();
        for (i, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !in_pivots(c) {
                    self.free_slots.push((i, c));
                }
            }
        }
        self.counter = vec![0; self.free_slots.len()];
        self.done_with_pattern = false;
    }

    fn advance_pattern(&mut self) {
        // Next combination of pivot columns in lexicographic order.
        let n = self.ambient.dim();
        let k = self.dim;
        let Some(pivots) = &mut self.pivots else {
            return;
        };
        if k == 0 {
            self.pivots = None;
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.pivots = None;
                return;
            }
            i -= 1;
            if pivots[i] < n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        self.reset_pattern();
    }

    fn current(&self) -> Subspace {
        let p = self.ambient.prime();
        let n = self.ambient.dim();
        let pivots = self.pivots.as_ref().expect("live pattern");
        // Echelon matrix in ambient-coordinates...
        let mut m = Matrix::zero(p, self.dim, n);
        for (i, &pc) in pivots.iter().enumerate() {
            m.set(i, pc, 1);
        }
        for (slot, &(i, c)) in self.free_slots.iter().enumerate() {
            m.set(i, c, self.counter[slot]);
        }
        // ...then pushed through the ambient's basis into the true ambient
        // space and re-canonicalized.
        let rows = m.mul(self.ambient.basis()).expect("compatible shapes");
        Subspace::from_spanning(p, self.ambient.ambient(), &rows)
    }

    fn bump_counter(&mut self) -> bool {
        let p = self.ambient.prime().value();
        for slot in (0..self.counter.len()).rev() {
            self.counter[slot] += 1;
            if self.counter[slot] < p {
                return true;
            }
            self.counter[slot] = 0;
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            self.pivots.as_ref()?;
            if self.done_with_pattern {
                self.advance_pattern();
                self.pivots.as_ref()?;
                continue;
            }
            let item = self.current();
            if !self.bump_counter() {
                self.done_with_pattern = true;
            }
            return Some(item);
        }
    }
}

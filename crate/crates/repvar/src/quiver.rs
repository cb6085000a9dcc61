//! Quivers, truncated path algebras, dimension vectors, semisimple
//! sequences, the dominance order, and the realizability criterion.
//!
//! An [`Algebra`] is a quiver together with a Loewy bound: paths of length
//! `L + 1` vanish.  Semisimple modules are identified with their multiplicity
//! vectors, so a "semisimple sequence" is simply `L + 1` dimension vectors.
//!
//! Vertices are 0-based internally and 1-based in all text formats.

use crate::error::{Error, Result};
use std::fmt;

/// One arrow of the quiver.  Loops and parallel arrows are permitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A quiver with a truncation bound: the path algebra modulo all paths of
/// length `loewy = L + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    n: usize,
    arrows: Vec<Arrow>,
    loewy: usize,
}

impl Algebra {
    pub fn new(n: usize, arrows: Vec<Arrow>, loewy: usize) -> Result<Algebra> {
        if loewy == 0 {
            return Err(Error::Usage("loewy length must be at least 1".into()));
        }
        for a in &arrows {
            if a.src >= n || a.dst >= n {
                return Err(Error::Usage(format!(
                    "arrow {} endpoints out of range 1..={}",
                    a.name, n
                )));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Usage(format!("duplicate arrow id {}", a.name)));
            }
        }
        Ok(Algebra { n, arrows, loewy })
    }

    /// Convenience constructor: arrows given as (name, src, dst) with
    /// 1-based vertices, mirroring the text format.
    pub fn from_spec(n: usize, arrows: &[(&str, usize, usize)], loewy: usize) -> Result<Algebra> {
        let arrows = arrows
            .iter()
            .map(|&(name, src, dst)| {
                if src == 0 || dst == 0 {
                    return Err(Error::Usage(format!(
                        "arrow {name} uses 0; vertices are 1-based"
                    )));
                }
                Ok(Arrow {
                    name: name.to_string(),
                    src: src - 1,
                    dst: dst - 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(n, arrows, loewy)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Number of layers `L + 1`; paths of this length vanish.
    pub fn loewy(&self) -> usize {
        self.loewy
    }

    /// Longest surviving path length `L`.
    pub fn path_bound(&self) -> usize {
        self.loewy - 1
    }

    /// Adjacency counts: entry `(i, j)` is the number of arrows `i -> j`.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let mut b = vec![vec![0u64; self.n]; self.n];
        for a in &self.arrows {
            b[a.src][a.dst] += 1;
        }
        b
    }

    /// Row vector times adjacency matrix: `(v B)_j = Σ_i v_i B_ij`.
    pub fn adjacency_image(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for a in &self.arrows {
            out[a.dst] += v[a.src];
        }
        out
    }

    /// The opposite algebra: every arrow reversed, names and order kept.
    pub fn opposite(&self) -> Algebra {
        Algebra {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    src: a.dst,
                    dst: a.src,
                })
                .collect(),
            loewy: self.loewy,
        }
    }

    /// Parse the line-based text format:
    ///
    /// ```text
    /// vertices 2
    /// arrow a1 1 -> 2
    /// arrow b1 2 -> 1
    /// loewy 4
    /// ```
    ///
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Algebra> {
        let mut n: Option<usize> = None;
        let mut loewy: Option<usize> = None;
        let mut arrows: Vec<Arrow> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "vertices" => {
                    let [_, v] = tokens[..] else {
                        return Err(Error::parse(line_no, "expected `vertices N`"));
                    };
                    n = Some(
                        v.parse()
                            .map_err(|_| Error::parse(line_no, "bad vertex count"))?,
                    );
                }
                "arrow" => {
                    let [_, name, src, "->", dst] = tokens[..] else {
                        return Err(Error::parse(line_no, "expected `arrow <id> <src> -> <dst>`"));
                    };
                    let src: usize = src
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad source vertex"))?;
                    let dst: usize = dst
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad target vertex"))?;
                    if src == 0 || dst == 0 {
                        return Err(Error::parse(line_no, "vertices are numbered from 1"));
                    }
                    arrows.push(Arrow {
                        name: name.to_string(),
                        src: src - 1,
                        dst: dst - 1,
                    });
                }
                "loewy" => {
                    let [_, v] = tokens[..] else {
                        return Err(Error::parse(line_no, "expected `loewy <L+1>`"));
                    };
                    loewy = Some(
                        v.parse()
                            .map_err(|_| Error::parse(line_no, "bad loewy length"))?,
                    );
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown directive `{other}`")));
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing `vertices` line"))?;
        let loewy = loewy.ok_or_else(|| Error::parse(0, "missing `loewy` line"))?;
        Algebra::new(n, arrows, loewy).map_err(|e| match e {
            Error::Usage(msg) => Error::parse(0, msg),
            other => other,
        })
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for a in &self.arrows {
            writeln!(f, "arrow {} {} -> {}", a.name, a.src + 1, a.dst + 1)?;
        }
        write!(f, "loewy {}", self.loewy)
    }
}

/// Multiplicities of the vertex simples; one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> DimVector {
        DimVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn leq(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn parse(text: &str) -> Result<DimVector> {
        let entries = text
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(1, format!("bad dimension vector `{text}`")))?;
        Ok(DimVector(entries))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A sequence of `L + 1` semisimple layers, each a [`DimVector`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemisimpleSequence {
    layers: Vec<DimVector>,
}

impl SemisimpleSequence {
    pub fn new(layers: Vec<DimVector>) -> SemisimpleSequence {
        SemisimpleSequence { layers }
    }

    pub fn zero(alg: &Algebra) -> SemisimpleSequence {
        SemisimpleSequence {
            layers: vec![DimVector::zero(alg.vertex_count()); alg.loewy()],
        }
    }

    pub fn layers(&self) -> &[DimVector] {
        &self.layers
    }

    pub fn layer(&self, l: usize) -> &DimVector {
        &self.layers[l]
    }

    pub fn total(&self) -> DimVector {
        let n = self.layers.first().map_or(0, |v| v.len());
        self.layers
            .iter()
            .fold(DimVector::zero(n), |acc, v| acc.add(v))
    }

    /// Index one past the last nonzero layer (0 for the zero sequence).
    pub fn nonzero_len(&self) -> usize {
        self.layers
            .iter()
            .rposition(|v| !v.is_zero())
            .map_or(0, |i| i + 1)
    }

    /// Reverse the nonzero prefix of the layers, keeping trailing zero
    /// layers in place: `(a, b, c, 0) -> (c, b, a, 0)`.
    pub fn reverse_nonzero(&self) -> SemisimpleSequence {
        let m = self.nonzero_len();
        let mut layers = self.layers.clone();
        layers[..m].reverse();
        SemisimpleSequence { layers }
    }

    pub fn prefix_sums(&self) -> Vec<Vec<u64>> {
        let n = self.layers.first().map_or(0, |v| v.len());
        let mut acc = vec![0u64; n];
        let mut out = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            for (a, &x) in acc.iter_mut().zip(&layer.0) {
                *a += x as u64;
            }
            out.push(acc.clone());
        }
        out
    }

    /// Parse `1,0;0,1;1,0;0,1` against an algebra (layer count and vertex
    /// count are validated).
    pub fn parse(alg: &Algebra, text: &str) -> Result<SemisimpleSequence> {
        let layers = text
            .split(';')
            .map(DimVector::parse)
            .collect::<Result<Vec<_>>>()?;
        if layers.len() != alg.loewy() {
            return Err(Error::parse(
                1,
                format!(
                    "sequence has {} layers; algebra needs {}",
                    layers.len(),
                    alg.loewy()
                ),
            ));
        }
        if layers.iter().any(|v| v.len() != alg.vertex_count()) {
            return Err(Error::parse(
                1,
                format!("each layer needs {} entries", alg.vertex_count()),
            ));
        }
        Ok(SemisimpleSequence { layers })
    }
}

impl fmt::Display for SemisimpleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.layers.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// A path in the quiver: a start vertex plus arrow indices in application
/// order (first arrow applied first).  Displayed in composition order,
/// rightmost factor first, e.g. `a2*b1*a1` applies `a1`, then `b1`, then
/// `a2`.  The empty path at vertex `i` displays as `e<i+1>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPath {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl QPath {
    pub fn lazy(start: usize) -> QPath {
        QPath {
            start,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, alg: &Algebra) -> usize {
        self.arrows
            .last()
            .map_or(self.start, |&a| alg.arrow(a).dst)
    }

    /// Append one arrow (applied after everything already in the path).
    pub fn extended(&self, alg: &Algebra, arrow_idx: usize) -> Option<QPath> {
        if alg.arrow(arrow_idx).src != self.end(alg) {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(arrow_idx);
        Some(QPath {
            start: self.start,
            arrows,
        })
    }

    /// Initial subpath of the given length (a prefix in application order).
    pub fn prefix(&self, len: usize) -> QPath {
        QPath {
            start: self.start,
            arrows: self.arrows[..len].to_vec(),
        }
    }

    pub fn format(&self, alg: &Algebra) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start + 1);
        }
        let parts: Vec<&str> = self
            .arrows
            .iter()
            .rev()
            .map(|&i| alg.arrow(i).name.as_str())
            .collect();
        parts.join("*")
    }

    /// Deterministic ordering key: by length, then start vertex, then the
    /// arrow indices in application order.
    pub fn sort_key(&self) -> (usize, usize, Vec<usize>) {
        (self.arrows.len(), self.start, self.arrows.clone())
    }
}

/// All composable paths with length in `[from_len, to_len]`, in a
/// deterministic order: by length, then by start vertex and arrow indices.
///
/// `to_len` must not exceed the algebra's path bound `L`.
pub fn enumerate_paths(alg: &Algebra, from_len: usize, to_len: usize) -> Vec<QPath> {
    assert!(
        to_len <= alg.path_bound(),
        "paths of length > L vanish in the truncation"
    );
    let mut by_len: Vec<Vec<QPath>> = vec![(0..alg.vertex_count()).map(QPath::lazy).collect()];
    for len in 1..=to_len {
        let mut next = Vec::new();
        for path in &by_len[len - 1] {
            for idx in 0..alg.arrows().len() {
                if let Some(ext) = path.extended(alg, idx) {
                    next.push(ext);
                }
            }
        }
        by_len.push(next);
    }
    by_len
        .into_iter()
        .skip(from_len)
        .take(to_len.saturating_sub(from_len) + 1)
        .flatten()
        .collect()
}

/// The dominance order on semisimple sequences with equal totals: `a ≤ b`
/// iff every prefix sum of `a`'s layers is componentwise ≤ `b`'s.
pub fn dominance_leq(a: &SemisimpleSequence, b: &SemisimpleSequence) -> Result<bool> {
    if a.layers().len() != b.layers().len() {
        return Err(Error::Usage(format!(
            "sequences with {} and {} layers are not comparable",
            a.layers().len(),
            b.layers().len()
        )));
    }
    if a.total() != b.total() {
        return Err(Error::TotalMismatch {
            left: a.total().to_string(),
            right: b.total().to_string(),
        });
    }
    let pa = a.prefix_sums();
    let pb = b.prefix_sums();
    Ok(pa
        .iter()
        .zip(&pb)
        .all(|(x, y)| x.iter().zip(y).all(|(u, v)| u <= v)))
}

/// Realizability of a semisimple sequence as the radical layering of some
/// module: each layer must fit under the image of the previous one,
/// `udim S_l ≤ (udim S_{l-1}) · B` for `1 ≤ l ≤ L`.
pub fn is_realizable(alg: &Algebra, s: &SemisimpleSequence) -> bool {
    for l in 1..alg.loewy() {
        let prev: Vec<u64> = s.layer(l - 1).0.iter().map(|&x| x as u64).collect();
        let cap = alg.adjacency_image(&prev);
        let ok = s
            .layer(l)
            .0
            .iter()
            .zip(&cap)
            .all(|(&need, &have)| need as u64 <= have);
        if !ok {
            return false;
        }
    }
    true
}

/// All splittings of `d` into `L + 1` layers (layer 0 nonzero unless
/// `d = 0`), optionally keeping only realizable ones.  The order is
/// deterministic: descending lexicographic on the flattened layer entries,
/// so top-heavy sequences come first.
pub fn enumerate_sequences(
    alg: &Algebra,
    d: &DimVector,
    realizable_only: bool,
) -> Vec<SemisimpleSequence> {
    assert_eq!(d.len(), alg.vertex_count(), "dimension vector length");
    let mut out = Vec::new();
    let mut layers: Vec<DimVector> = Vec::new();
    let mut rem = d.clone();
    descend(alg, d, realizable_only, &mut layers, &mut rem, &mut out);
    out
}

fn descend(
    alg: &Algebra,
    d: &DimVector,
    realizable_only: bool,
    layers: &mut Vec<DimVector>,
    rem: &mut DimVector,
    out: &mut Vec<SemisimpleSequence>,
) {
    let depth = layers.len();
    if depth == alg.loewy() {
        if rem.is_zero() {
            out.push(SemisimpleSequence::new(layers.clone()));
        }
        return;
    }
    // Nothing left to place: fast-forward through all-zero tail layers.
    if rem.is_zero() && depth > 0 {
        let zeros = alg.loewy() - depth;
        layers.extend(std::iter::repeat_n(DimVector::zero(d.len()), zeros));
        out.push(SemisimpleSequence::new(layers.clone()));
        layers.truncate(depth);
        return;
    }
    // The per-vertex cap for this layer: the remaining dimensions, further
    // clipped by the realizability criterion when filtering.
    let cap: Vec<usize> = if depth == 0 {
        rem.0.clone()
    } else if realizable_only {
        let prev: Vec<u64> = layers[depth - 1].0.iter().map(|&x| x as u64).collect();
        let reach = alg.adjacency_image(&prev);
        rem.0
            .iter()
            .zip(&reach)
            .map(|(&r, &c)| r.min(c as usize))
            .collect()
    } else {
        rem.0.clone()
    };
    let mut v = cap.clone();
    loop {
        let layer = DimVector(v.clone());
        let admissible = if depth == 0 {
            !layer.is_zero() || d.is_zero()
        } else {
            true
        };
        if admissible {
            for (r, &x) in rem.0.iter_mut().zip(&layer.0) {
                *r -= x;
            }
            layers.push(layer);
            descend(alg, d, realizable_only, layers, rem, out);
            let popped = layers.pop().expect("pushed above");
            for (r, &x) in rem.0.iter_mut().zip(&popped.0) {
                *r += x;
            }
        }
        // Count v downward through the box [0, cap] in descending
        // lexicographic order.
        let mut i = v.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] > 0 {
                v[i] -= 1;
                for j in i + 1..v.len() {
                    v[j] = cap[j];
                }
                break;
            }
        }
    }
}

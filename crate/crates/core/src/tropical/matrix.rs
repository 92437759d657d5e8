//! Dense square matrices over the max-plus semiring.
//!
//! Storage is row-major and 0-based. The JSON form is
//! `{"dim": n, "entries": [[e, ..], ..]}` where each `e` is an integer or
//! `"-inf"`; row `i` of `entries` holds row `i + 1` in the usual 1-based
//! mathematical indexing.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm::Permutation;
use super::value::TropValue;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    dim: usize,
    entries: Vec<TropValue>,
}

impl TropMatrix {
    pub fn from_rows(rows: Vec<Vec<TropValue>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::RaggedMatrix { row, len: r.len(), dim });
            }
            entries.extend(r);
        }
        Ok(TropMatrix { dim, entries })
    }

    /// Builds a matrix from `i64` rows where `None` stands for `-inf`.
    pub fn from_i64_rows(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|e| e.map_or(TropValue::NEG_INF, TropValue::fin)).collect())
                .collect(),
        )
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> TropValue) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        TropMatrix { dim, entries }
    }

    /// Zero on the diagonal, `-inf` elsewhere.
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { TropValue::ZERO } else { TropValue::NEG_INF })
    }

    pub fn diag(values: &[TropValue]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i].clone() } else { TropValue::NEG_INF })
    }

    pub fn diag_i64(values: &[i64]) -> Self {
        let v: Vec<TropValue> = values.iter().copied().map(TropValue::fin).collect();
        Self::diag(&v)
    }

    /// The matrix with `weights[i]` at `(i, perm(i))` and `-inf` elsewhere.
    pub fn permutation(perm: &Permutation, weights: &[TropValue]) -> Self {
        assert_eq!(perm.len(), weights.len());
        Self::from_fn(perm.len(), |i, j| {
            if perm.apply(i) == j {
                weights[i].clone()
            } else {
                TropValue::NEG_INF
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &TropValue {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TropValue) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[TropValue]> {
        self.entries.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<TropValue>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Max-plus product: `(AB)_ij = max_k A_ik + B_kj`.
    pub fn mul(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut out = vec![TropValue::NEG_INF; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_neg_inf() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_neg_inf() {
                        continue;
                    }
                    let cand = a.otimes(b);
                    let slot = &mut out[i * n + j];
                    if cand > *slot {
                        *slot = cand;
                    }
                }
            }
        }
        Ok(TropMatrix { dim: n, entries: out })
    }

    /// `k`-fold product by repeated squaring. `k = 0` is rejected.
    pub fn pow(&self, k: u64) -> Result<TropMatrix> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut base = self.clone();
        let mut acc: Option<TropMatrix> = None;
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(acc.expect("k >= 1"))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).is_neg_inf()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_neg_inf()))
    }

    /// Diagonal, with all diagonal entries finite and equal.
    pub fn is_scaled_identity(&self) -> bool {
        let d0 = self.get(0, 0);
        self.is_diagonal() && d0.is_finite() && (0..self.dim).all(|i| self.get(i, i) == d0)
    }

    pub fn diagonal(&self) -> Vec<TropValue> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    /// The permutation `s` with `A_ij` finite exactly when `j = s(i)`, if any.
    /// A tropical matrix is invertible iff this exists.
    pub fn underlying_permutation(&self) -> Option<Permutation> {
        let mut images = Vec::with_capacity(self.dim);
        for row in self.rows() {
            let mut finite = row.iter().enumerate().filter(|(_, v)| v.is_finite());
            let (j, _) = finite.next()?;
            if finite.next().is_some() {
                return None;
            }
            images.push(j);
        }
        Permutation::new(images).ok()
    }

    pub fn is_invertible(&self) -> bool {
        self.underlying_permutation().is_some()
    }

    /// Principal submatrix on `nodes` (0-based, strictly increasing).
    pub fn restrict(&self, nodes: &[usize]) -> Result<Restricted> {
        if nodes.is_empty() || nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadIndexSet);
        }
        if let Some(&bad) = nodes.iter().find(|&&i| i >= self.dim) {
            return Err(Error::NodeOutOfRange { node: bad, dim: self.dim });
        }
        let matrix = TropMatrix::from_fn(nodes.len(), |i, j| self.get(nodes[i], nodes[j]).clone());
        Ok(Restricted { matrix, labels: nodes.to_vec() })
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &TropMatrix) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.dim, p % self.dim))
    }
}

/// A principal submatrix together with the original (0-based) indices of
/// its rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restricted {
    pub matrix: TropMatrix,
    pub labels: Vec<usize>,
}

impl Restricted {
    /// Position of an original index inside the restriction.
    pub fn local(&self, original: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == original)
    }
}

impl fmt::Debug for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TropMatrix({})", self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>5}")).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<TropValue>>,
}

impl Serialize for TropMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixJson { dim: self.dim, entries: self.to_rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TropMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.dim {
            return Err(serde::de::Error::custom(format!(
                "dim is {} but {} rows were given",
                raw.dim,
                raw.entries.len()
            )));
        }
        TropMatrix::from_rows(raw.entries).map_err(serde::de::Error::custom)
    }
}

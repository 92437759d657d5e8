//! The compound digraph of a pair of matrices and labelled-path queries.
//!
//! For `A, B` of dimension `n` the digraph has nodes `0..n` and an edge
//! `(i, j)` labelled `A` of weight `A_ij` whenever `A_ij` is finite (likewise
//! for `B`). The `(i, j)` entry of a word evaluated at `(A, B)` is the maximum
//! weight of a path from `i` to `j` labelled by that word.

use serde::{Deserialize, Serialize};

use super::matrix::TropMatrix;
use super::value::TropValue;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Label,
    pub weight: TropValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundDigraph {
    a: TropMatrix,
    b: TropMatrix,
}

/// A concrete labelled path, given by its node sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPath {
    pub weight: TropValue,
    pub nodes: Vec<usize>,
}

impl LabeledPath {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of non-loop edges, with multiplicity.
    pub fn simple_length(&self) -> usize {
        self.nodes.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Sorted, deduplicated set of visited nodes.
    pub fn node_set(&self) -> Vec<usize> {
        let mut s = self.nodes.clone();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl CompoundDigraph {
    pub fn new(a: TropMatrix, b: TropMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
        }
        Ok(CompoundDigraph { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn matrix(&self, label: Label) -> &TropMatrix {
        match label {
            Label::A => &self.a,
            Label::B => &self.b,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.dim();
        [Label::A, Label::B].into_iter().flat_map(move |label| {
            let m = self.matrix(label);
            (0..n).flat_map(move |i| {
                (0..n).filter_map(move |j| {
                    let w = m.get(i, j);
                    w.is_finite().then(|| Edge { source: i, target: j, label, weight: w.clone() })
                })
            })
        })
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.dim() {
            Err(Error::NodeOutOfRange { node, dim: self.dim() })
        } else {
            Ok(())
        }
    }

    /// Maximum weight of a path from `i` to `j` labelled `word`, or `-inf`.
    pub fn max_weight_labeled_path(&self, word: &[Label], i: usize, j: usize) -> Result<TropValue> {
        Ok(self.best_labeled_path(word, i, j)?.map_or(TropValue::NEG_INF, |p| p.weight))
    }

    /// A maximum-weight path from `i` to `j` labelled `word`. Ties are broken
    /// towards the smallest predecessor node, so the result is deterministic.
    pub fn best_labeled_path(&self, word: &[Label], i: usize, j: usize) -> Result<Option<LabeledPath>> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.check_node(i)?;
        self.check_node(j)?;
        let n = self.dim();

        let mut best = vec![TropValue::NEG_INF; n];
        best[i] = TropValue::ZERO;
        // pred[r][v] = predecessor of v at step r+1
        let mut pred: Vec<Vec<usize>> = Vec::with_capacity(word.len());
        for &label in word {
            let m = self.matrix(label);
            let mut next = vec![TropValue::NEG_INF; n];
            let mut back = vec![usize::MAX; n];
            for (u, bu) in best.iter().enumerate() {
                if bu.is_neg_inf() {
                    continue;
                }
                for v in 0..n {
                    let w = m.get(u, v);
                    if w.is_neg_inf() {
                        continue;
                    }
                    let cand = bu.otimes(w);
                    if cand > next[v] {
                        next[v] = cand;
                        back[v] = u;
                    }
                }
            }
            best = next;
            pred.push(back);
        }
        if best[j].is_neg_inf() {
            return Ok(None);
        }
        let mut nodes = vec![j];
        let mut cur = j;
        for back in pred.iter().rev() {
            cur = back[cur];
            nodes.push(cur);
        }
        nodes.reverse();
        Ok(Some(LabeledPath { weight: best[j].clone(), nodes }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::value::{t, NEG_INF};

    fn word(s: &str) -> Vec<Label> {
        s.chars().map(|c| if c == 'A' { Label::A } else { Label::B }).collect()
    }

    #[test]
    fn single_letter_without_loop() {
        let a = TropMatrix::from_i64_rows(&[&[None, Some(1)], &[Some(2), None]]).unwrap();
        let g = CompoundDigraph::new(a.clone(), a).unwrap();
        assert_eq!(g.max_weight_labeled_path(&word("A"), 0, 0).unwrap(), NEG_INF);
        assert_eq!(g.max_weight_labeled_path(&word("B"), 0, 1).unwrap(), t(1));
    }

    #[test]
    fn edges_follow_finite_entries() {
        let a = TropMatrix::from_i64_rows(&[&[Some(0), None], &[None, Some(-1)]]).unwrap();
        let b = TropMatrix::from_i64_rows(&[&[None, Some(5)], &[None, None]]).unwrap();
        let g = CompoundDigraph::new(a, b).unwrap();
        let edges: Vec<Edge> = g.edges().collect();
        assert_eq!(edges.len(), 3);
        assert!(edges.contains(&Edge { source: 0, target: 1, label: Label::B, weight: t(5) }));
    }

    #[test]
    fn path_shape_and_lengths() {
        let a = TropMatrix::from_i64_rows(&[&[Some(0), Some(3)], &[None, Some(1)]]).unwrap();
        let g = CompoundDigraph::new(a.clone(), a).unwrap();
        let p = g.best_labeled_path(&word("AAB"), 0, 1).unwrap().unwrap();
        assert_eq!(p.weight, t(5));
        assert_eq!(p.len(), 3);
        assert_eq!(p.simple_length(), 1);
        assert_eq!(p.node_set(), vec![0, 1]);
        assert!(g.best_labeled_path(&word("A"), 0, 7).is_err());
        assert_eq!(g.best_labeled_path(&[], 0, 0).unwrap_err(), Error::EmptyWord);
    }
}

//! Brute-force recomputations checked against the fast code paths.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{trial_rng, Ratio, SamplerConfig, Shape};
use crate::construct::{factor_witness, FactorWitness};
use crate::error::{Error, Result};
use crate::plactic::{all_plactic_words, format_word, knuth_closure, Tableau};
use crate::tropical::CompoundDigraph;
use crate::word::{all_words, Word, WordExpr};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSizes {
    /// Path oracle: words of length `1..=path_max_len`, dimensions
    /// `1..=path_max_dim`, `path_seeds` random pairs per dimension.
    pub path_max_len: usize,
    pub path_max_dim: usize,
    pub path_seeds: u64,
    /// Knuth oracle: all words over `{1, .., 4}` up to this length.
    pub knuth_max_len: usize,
    /// Diagonal oracle: number of upper triangular pairs.
    pub diagonal_samples: u64,
    /// Factor oracle: witness words up to `factor_max_w`, test words up to
    /// `factor_max_t`.
    pub factor_max_w: usize,
    pub factor_max_t: usize,
    /// Restriction oracle: number of random (pair, word) cases.
    pub restriction_samples: u64,
}

impl Default for OracleSizes {
    fn default() -> Self {
        OracleSizes {
            path_max_len: 6,
            path_max_dim: 5,
            path_seeds: 100,
            knuth_max_len: 6,
            diagonal_samples: 10_000,
            factor_max_w: 4,
            factor_max_t: 8,
            restriction_samples: 2_000,
        }
    }
}

impl OracleSizes {
    /// Small sizes for fast tests.
    pub fn quick() -> Self {
        OracleSizes {
            path_max_len: 4,
            path_max_dim: 3,
            path_seeds: 5,
            knuth_max_len: 4,
            diagonal_samples: 200,
            factor_max_w: 3,
            factor_max_t: 6,
            restriction_samples: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub name: String,
    pub cases: u64,
    pub discrepancies: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seed: u64,
    pub sizes: OracleSizes,
    pub checks: Vec<OracleCheck>,
}

fn failure(oracle: &str, detail: String) -> Error {
    Error::OracleFailure { oracle: oracle.into(), detail }
}

fn words_up_to(max_len: usize) -> Vec<Word> {
    (1..=max_len).flat_map(all_words).collect()
}

/// Every entry of `w(A, B)` equals the best labelled path weight.
pub fn check_paths(seed: u64, max_len: usize, max_dim: usize, seeds: u64) -> Result<OracleCheck> {
    let words = words_up_to(max_len);
    let jobs: Vec<(usize, u64)> = (1..=max_dim).flat_map(|d| (0..seeds).map(move |s| (d, s))).collect();
    let cases = jobs
        .par_iter()
        .map(|&(dim, s)| -> Result<u64> {
            let cfg = SamplerConfig::new(dim, Shape::Full, 1, seed ^ (dim as u64) << 32);
            let (a, b) = cfg.sample_pair(s);
            let g = CompoundDigraph::new(a.clone(), b.clone())?;
            let mut cases = 0;
            for w in &words {
                let m = WordExpr::word(w)?.eval_matrices(&a, &b)?;
                let labels = w.labels();
                for i in 0..dim {
                    for j in 0..dim {
                        let p = g.max_weight_labeled_path(&labels, i, j)?;
                        if &p != m.get(i, j) {
                            return Err(failure(
                                "path",
                                format!("word {w}, dim {dim}, sample {s}, entry ({i},{j}): {p} vs {}", m.get(i, j)),
                            ));
                        }
                        cases += 1;
                    }
                }
            }
            Ok(cases)
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))?;
    Ok(OracleCheck { name: "path DP = matrix product".into(), cases, discrepancies: 0 })
}

/// Knuth classes found by rewriting coincide with the fibres of Schensted
/// insertion, for all words over `{1, .., 4}` up to `max_len`.
pub fn check_knuth(max_len: usize) -> Result<OracleCheck> {
    let mut cases = 0;
    for len in 0..=max_len {
        let mut fibres: HashMap<Tableau, BTreeSet<Vec<u8>>> = HashMap::new();
        for w in all_plactic_words(4, len) {
            fibres.entry(Tableau::from_word(&w, 4)?).or_default().insert(w);
        }
        let fibres: Vec<BTreeSet<Vec<u8>>> = fibres.into_values().collect();
        fibres.par_iter().try_for_each(|fibre| -> Result<()> {
            let first = fibre.iter().next().expect("fibres are nonempty");
            let closure = knuth_closure(first, max_len.max(1))?;
            if &closure != fibre {
                return Err(failure(
                    "knuth",
                    format!("class of {} has {} words, tableau fibre {}", format_word(first), closure.len(), fibre.len()),
                ));
            }
            Ok(())
        })?;
        cases += 4u64.pow(len as u32);
    }
    Ok(OracleCheck { name: "Knuth closure = Schensted fibre".into(), cases, discrepancies: 0 })
}

/// For `w` of length up to `max_w` and every `t` up to `max_t`:
/// `t(AB, BA)` at the corner is at most its value at `w`, with equality
/// exactly when `w` is a factor of `t`.
pub fn check_factor_law(fw: &FactorWitness, max_t: usize) -> Result<u64> {
    let w = Word::parse(&fw.word)?;
    let top = fw.corner(&w)?;
    let mut cases = 0;
    for t in words_up_to(max_t) {
        let v = fw.corner(&t)?;
        let factor = w.is_factor_of(&t);
        if v > top || (v == top) != factor {
            return Err(failure(
                "factor",
                format!("w = {w}, t = {t}: corner {v}, at w {top}, factor {factor}"),
            ));
        }
        cases += 1;
    }
    Ok(cases)
}

fn check_factor(max_w: usize, max_t: usize) -> Result<OracleCheck> {
    let cases = words_up_to(max_w)
        .par_iter()
        .map(|w| check_factor_law(&factor_witness(w)?, max_t))
        .try_reduce(|| 0, |x, y| Ok(x + y))?;
    Ok(OracleCheck { name: "factor witness corner law".into(), cases, discrepancies: 0 })
}

/// `diag(AB) = diag(BA)` for upper triangular `A, B` of dimension 1 to 6.
pub fn check_diagonals(seed: u64, samples: u64) -> Result<OracleCheck> {
    (0..samples).into_par_iter().try_for_each(|s| -> Result<()> {
        let cfg = SamplerConfig::new(1 + (s % 6) as usize, Shape::UpperTriangular, 1, seed);
        let (a, b) = cfg.sample_pair(s);
        if a.mul(&b)?.diagonal() != b.mul(&a)?.diagonal() {
            return Err(failure("diagonal", format!("sample {s}: {a:?} {b:?}")));
        }
        Ok(())
    })?;
    Ok(OracleCheck { name: "diag(AB) = diag(BA) in UT".into(), cases: samples, discrepancies: 0 })
}

/// For upper triangular `A, B`, a word `u` and `i <= j`: restricting to the
/// nodes of a maximal path keeps the entry, and restricting to any node set
/// containing `i, j` never increases it.
pub fn check_restriction(seed: u64, samples: u64) -> Result<OracleCheck> {
    (0..samples).into_par_iter().try_for_each(|s| -> Result<()> {
        let mut rng = trial_rng(seed ^ 0x5eed, s);
        let dim = rand::Rng::gen_range(&mut rng, 2..=6usize);
        let mut cfg = SamplerConfig::new(dim, Shape::UpperTriangular, 1, seed);
        cfg.neginf_prob = Ratio::new(1, 4)?;
        let (a, b) = cfg.sample_pair(s);
        let len = rand::Rng::gen_range(&mut rng, 1..=8usize);
        let w = Word::new((0..len).map(|_| if rand::Rng::gen_bool(&mut rng, 0.5) { crate::word::Letter::A } else { crate::word::Letter::B }).collect());
        let i = rand::Rng::gen_range(&mut rng, 0..dim);
        let j = rand::Rng::gen_range(&mut rng, i..dim);
        let e = WordExpr::word(&w)?;
        let full = e.eval_matrices(&a, &b)?;
        let g = CompoundDigraph::new(a.clone(), b.clone())?;
        if let Some(path) = g.best_labeled_path(&w.labels(), i, j)? {
            let nodes = path.node_set();
            let (ra, rb) = (a.restrict(&nodes)?, b.restrict(&nodes)?);
            let sub = e.eval_matrices(&ra.matrix, &rb.matrix)?;
            let (li, lj) = (ra.local(i).unwrap(), ra.local(j).unwrap());
            if sub.get(li, lj) != full.get(i, j) {
                return Err(failure("restriction", format!("sample {s}: path nodes {nodes:?} lose weight")));
            }
        }
        // any node set containing i and j
        let mask: u32 = rand::Rng::gen_range(&mut rng, 0..1u32 << dim) | 1 << i | 1 << j;
        let nodes: Vec<usize> = (0..dim).filter(|k| mask >> k & 1 == 1).collect();
        let (ra, rb) = (a.restrict(&nodes)?, b.restrict(&nodes)?);
        let sub = e.eval_matrices(&ra.matrix, &rb.matrix)?;
        for (li, &oi) in nodes.iter().enumerate() {
            for (lj, &oj) in nodes.iter().enumerate() {
                if sub.get(li, lj) > full.get(oi, oj) {
                    return Err(failure("restriction", format!("sample {s}: restricted entry exceeds full entry")));
                }
            }
        }
        Ok(())
    })?;
    Ok(OracleCheck { name: "restriction law".into(), cases: samples, discrepancies: 0 })
}

/// Runs every oracle; the first discrepancy aborts with its details.
pub fn oracle_cross_checks(seed: u64, sizes: &OracleSizes) -> Result<OracleReport> {
    let checks = vec![
        check_paths(seed, sizes.path_max_len, sizes.path_max_dim, sizes.path_seeds)?,
        check_knuth(sizes.knuth_max_len)?,
        check_factor(sizes.factor_max_w, sizes.factor_max_t)?,
        check_diagonals(seed, sizes.diagonal_samples)?,
        check_restriction(seed, sizes.restriction_samples)?,
    ];
    Ok(OracleReport { seed, sizes: sizes.clone(), checks })
}

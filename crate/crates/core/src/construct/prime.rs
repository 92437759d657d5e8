//! An identity of `M_{p-1}` falsified in `M_p`, for a prime `p`.
//!
//! For `p > 3` the identity comes from [`induct_identity`] with `n = p - 1`,
//! `t = (p^3 - 1) / 2` at every level and `u_2 = v_2` the `M_2` falsifier
//! pair. The level identities `q_k = r_k` come from the `UT_k` separating
//! identity `q = r` and get `a^j` appended (smallest `j >= 1` with
//! `|q_k|_a ≡ -1 mod p`), which makes `A_{k-1}(X, Y)` a `p`-cycle.
//!
//! Appending further letters to both sides does not help to make the
//! diagonal of `B_{k-1}(X, Y)` distinct: the `2t + 1 = p^3` blocks of
//! `(q_k r_k)^t r_k` start at every residue of the `a`-count equally often,
//! so a common suffix adds the same amount to every diagonal entry. Only the
//! difference between the two sides matters, and that is varied by chaining
//! copies of `q = r` in either orientation with powers of `a` in between
//! (`q a^f r = r a^f q` holds wherever `q = r` does).
//!
//! The witness is the weight-0 permutation matrix `X` of the `p`-cycle and
//! `Y = diag(0, 1, .., p-1)`. The evaluations `A_m(X, Y)`, `B_m(X, Y)` are
//! tracked level by level and reported as diagnostics.

use rayon::prelude::*;
use serde::Serialize;

use super::full::m2_falsifier_pair;
use super::induct::{induct_identity, InductConfig, InductLevel};
use super::utsep::ut_separating_pair;
use super::{lcm_upto, WitnessAssignment};
use crate::error::{Error, Result};
use crate::tropical::{Permutation, TropMatrix, TropValue};
use crate::word::{Identity, Letter, WordExpr};

#[derive(Debug, Clone, Serialize)]
pub struct LevelDiagnostic {
    /// Index `m` of `A_m(X, Y)`, `B_m(X, Y)`.
    pub m: usize,
    pub a_matrix: TropMatrix,
    pub b_matrix: TropMatrix,
    /// Cycle type of the permutation underlying `A_m(X, Y)`, if invertible.
    pub a_cycle_type: Option<Vec<usize>>,
    pub a_is_p_cycle: bool,
    pub b_is_diagonal: bool,
    pub b_diagonal_distinct: bool,
}

impl LevelDiagnostic {
    fn new(m: usize, a: &TropMatrix, b: &TropMatrix) -> Self {
        let perm = a.underlying_permutation();
        LevelDiagnostic {
            m,
            a_matrix: a.clone(),
            b_matrix: b.clone(),
            a_is_p_cycle: perm.as_ref().is_some_and(Permutation::is_full_cycle),
            a_cycle_type: perm.map(|p| p.cycle_type()),
            b_is_diagonal: b.is_diagonal(),
            b_diagonal_distinct: diagonal_distinct(b),
        }
    }

    pub fn ok(&self) -> bool {
        self.a_is_p_cycle && self.b_is_diagonal && self.b_diagonal_distinct
    }
}

/// How the level identity `q_k = r_k` was built from the `UT_k` separating
/// identity `q = r`.
///
/// Copy `i` is `q` on the left and `r` on the right, or the other way round
/// when `swapped[i]` holds; copy `i + 1` is preceded by `a^gaps[i]`. Finally
/// `a^a_appended` goes on the right of both sides.
#[derive(Debug, Clone, Serialize)]
pub struct LevelChoice {
    pub k: usize,
    pub gaps: Vec<u64>,
    pub swapped: Vec<bool>,
    pub a_appended: u64,
    pub a_count_mod_p: u64,
}

/// Largest number of copies tried before giving up on a level.
pub const MAX_COPIES: usize = 4;

/// `(gap before the copy, swapped)` lists in search order: fewer copies
/// first, then gaps lexicographically, then orientations. The first copy is
/// never swapped and has no gap.
fn repair_candidates(p: u64, max_copies: usize) -> Vec<Vec<(u64, bool)>> {
    let mut out = Vec::new();
    for n in 1..=max_copies {
        let gap_count = (p as usize).pow(n as u32 - 1);
        for g in 0..gap_count {
            let gaps: Vec<u64> = (0..n - 1).rev().map(|i| (g / (p as usize).pow(i as u32)) as u64 % p).collect();
            for mask in 0..1usize << (n - 1) {
                let mut c = vec![(0, false)];
                c.extend(gaps.iter().enumerate().map(|(i, &f)| (f, mask >> (n - 2 - i) & 1 == 1)));
                out.push(c);
            }
        }
    }
    out
}

/// Builds `q_k = r_k` from `copies` and fixes the `a`-count to `-1 mod p`
/// with the smallest positive power of `a`.
fn combine(base: &Identity, copies: &[(u64, bool)], p: u64, k: usize) -> Result<(LevelChoice, Identity)> {
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for &(gap, swapped) in copies {
        if gap > 0 {
            lhs.push(WordExpr::a().pow(gap)?);
            rhs.push(WordExpr::a().pow(gap)?);
        }
        let (l, r) = if swapped { (base.rhs(), base.lhs()) } else { (base.lhs(), base.rhs()) };
        lhs.push(l.clone());
        rhs.push(r.clone());
    }
    let combined = Identity::new(WordExpr::concat(lhs)?, WordExpr::concat(rhs)?)?;
    let a_count: u64 = (combined.lhs().letter_count(Letter::A) % p).try_into().expect("below p");
    let a_appended = match (2 * p - 1 - a_count) % p {
        0 => p,
        j => j,
    };
    let level_id = combined.append(&WordExpr::a().pow(a_appended)?)?;
    let choice = LevelChoice {
        k,
        gaps: copies.iter().skip(1).map(|c| c.0).collect(),
        swapped: copies.iter().map(|c| c.1).collect(),
        a_appended,
        a_count_mod_p: (level_id.lhs().letter_count(Letter::A) % p).try_into().expect("below p"),
    };
    Ok((choice, level_id))
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeSeparation {
    pub p: u64,
    /// `(p^3 - 1) / 2`; absent for `p <= 3`.
    pub t: Option<u64>,
    pub identity: Identity,
    pub witness: WitnessAssignment,
    pub choices: Vec<LevelChoice>,
    /// Levels `m = p-1, .., 2`.
    pub diagnostics: Vec<LevelDiagnostic>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn diagonal_distinct(m: &TropMatrix) -> bool {
    let mut d = m.diagonal();
    if d.iter().any(TropValue::is_neg_inf) {
        return false;
    }
    d.sort();
    d.windows(2).all(|w| w[0] != w[1])
}

fn cycle_matrix(p: usize) -> TropMatrix {
    TropMatrix::permutation(&Permutation::cycle(p), &vec![TropValue::ZERO; p])
}

fn staircase(p: usize) -> TropMatrix {
    TropMatrix::diag(&(0..p as i64).map(TropValue::fin).collect::<Vec<_>>())
}

pub fn prime_separation(p: u64) -> Result<PrimeSeparation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match p {
        2 => {
            let pair = ut_separating_pair(1)?;
            Ok(PrimeSeparation {
                p,
                t: None,
                identity: pair.identity,
                witness: pair.witness,
                choices: vec![],
                diagnostics: vec![],
            })
        }
        3 => Ok(PrimeSeparation {
            p,
            t: None,
            identity: m2_falsifier_pair(),
            witness: WitnessAssignment::new(cycle_matrix(3), staircase(3))?,
            choices: vec![],
            diagnostics: vec![],
        }),
        _ => large_prime(p),
    }
}

fn large_prime(p: u64) -> Result<PrimeSeparation> {
    let pu = p as usize;
    let t = (p * p * p - 1) / 2;
    let x = cycle_matrix(pu);
    let y = staircase(pu);

    let mut cur = (x.clone(), y.clone());
    let mut diagnostics = vec![LevelDiagnostic::new(pu - 1, &x, &y)];
    let mut levels = Vec::new();
    let mut choices = Vec::new();

    for k in (3..pu).rev() {
        let base = ut_separating_pair(k)?.identity;
        let kbar = lcm_upto(k as u64);
        let xa = cur.0.pow(kbar)?;
        let xb = cur.1.pow(kbar)?;

        // Candidates are independent, so they are evaluated in parallel and
        // the first success in enumeration order is kept.
        let candidates = repair_candidates(p, MAX_COPIES);
        let attempt = |c: &Vec<(u64, bool)>| -> Result<Option<(LevelChoice, Identity, TropMatrix, TropMatrix)>> {
            let (choice, level_id) = combine(&base, c, p, k)?;
            let (q, r) = (level_id.lhs(), level_id.rhs());
            let qr_t = q.then(r).pow(t)?.eval_matrices(&xa, &xb)?;
            let new_b = qr_t.mul(&r.eval_matrices(&xa, &xb)?)?;
            Ok((new_b.is_diagonal() && diagonal_distinct(&new_b)).then_some((choice, level_id, qr_t, new_b)))
        };
        let (choice, level_id, new_a, new_b) = candidates
            .par_iter()
            .map(attempt)
            .find_first(|r| !matches!(r, Ok(None)))
            .ok_or(Error::RepairCapExceeded { level: k, cap: MAX_COPIES as u64 })??
            .expect("find_first keeps only successes or errors");

        choices.push(choice);
        diagnostics.push(LevelDiagnostic::new(k - 1, &new_a, &new_b));
        levels.push(InductLevel { k, identity: level_id, t });
        cur = (new_a, new_b);
    }

    let cfg = InductConfig { n: pu - 1, levels };
    let m2 = m2_falsifier_pair();
    let identity = induct_identity(&cfg, m2.lhs(), m2.rhs())?;
    Ok(PrimeSeparation {
        p,
        t: Some(t),
        identity,
        witness: WitnessAssignment::new(x, y)?,
        choices,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(!is_prime(1));
        assert!(is_prime(2) && is_prime(5) && is_prime(13));
        assert!(!is_prime(9));
        assert_eq!(prime_separation(4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn small_primes_use_special_cases() {
        let two = prime_separation(2).unwrap();
        assert_eq!(two.identity.lhs().to_string(), "ab");
        assert_eq!(two.witness.dim(), 2);
        let three = prime_separation(3).unwrap();
        assert_eq!(three.witness.dim(), 3);
        assert!(three.witness.a.underlying_permutation().unwrap().is_full_cycle());
        assert!(!three.witness.b.is_scaled_identity());
    }

    #[test]
    fn distinct_diagonals() {
        assert!(diagonal_distinct(&staircase(4)));
        assert!(!diagonal_distinct(&TropMatrix::diag_i64(&[1, 2, 1])));
    }

    #[test]
    fn five() {
        let sep = prime_separation(5).unwrap();
        assert_eq!(sep.t, Some(62));
        assert_eq!(sep.diagnostics.iter().map(|d| d.m).collect::<Vec<_>>(), vec![4, 3, 2]);
        for d in &sep.diagnostics {
            assert!(d.ok(), "level {}: {:?}", d.m, d);
        }
        for c in &sep.choices {
            assert_eq!(c.a_count_mod_p, 4);
        }
        let (x, y) = (&sep.witness.a, &sep.witness.b);
        assert_ne!(sep.identity.lhs().eval_matrices(x, y).unwrap(), sep.identity.rhs().eval_matrices(x, y).unwrap());
    }
}

//! Seeded satisfaction testing, exact falsification and the independent
//! cross-check oracles.
//!
//! Sampling can only ever report that no counterexample was found; exact
//! evaluation at a witness is the only conclusive outcome.

pub mod oracles;
pub mod report;
pub mod sampler;

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

pub use oracles::{check_factor_law, oracle_cross_checks, OracleCheck, OracleReport, OracleSizes};
pub use report::{Assignment, Counterexample, Mismatch, Mode, Outcome, VerificationReport};
pub use sampler::{trial_rng, Ratio, SamplerConfig, Shape};

use crate::construct::WitnessAssignment;
use crate::error::{Error, Result};
use crate::plactic::{eval_rho, eval_tableau, format_word, parse_word, Rho};
use crate::tropical::TropMatrix;
use crate::word::Identity;

/// Rank used for plactic satisfaction checks.
pub const PLACTIC_RANK: u8 = 4;

fn compare(id: &Identity, a: &TropMatrix, b: &TropMatrix) -> Result<Option<Mismatch>> {
    let lhs = id.lhs().eval_matrices(a, b)?;
    let rhs = id.rhs().eval_matrices(a, b)?;
    Ok(lhs.first_difference(&rhs).map(|(i, j)| Mismatch::Entry {
        row: i + 1,
        col: j + 1,
        lhs: lhs.get(i, j).clone(),
        rhs: rhs.get(i, j).clone(),
    }))
}

/// Evaluates both sides at `cfg.trials` sampled pairs and stops at the
/// first trial (in index order) where they differ.
pub fn check_satisfaction(id: &Identity, cfg: &SamplerConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let found = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<Counterexample>> {
            let (a, b) = cfg.sample_pair(trial);
            Ok(compare(id, &a, &b)?.map(|mismatch| Counterexample {
                trial: Some(trial),
                assignment: Assignment::Matrices { a, b },
                mismatch,
            }))
        })
        .find_first(|r| !matches!(r, Ok(None)))
        .transpose()?
        .flatten();
    let trials = found.as_ref().and_then(|c| c.trial).map_or(cfg.trials, |t| t + 1);
    Ok(VerificationReport {
        identity_digest: id.digest(),
        target: cfg.target(),
        mode: Mode::Sampling,
        trials,
        config: Some(cfg.clone()),
        outcome: found.map_or(Outcome::NoCounterexample, Outcome::Counterexample),
        elapsed: start.elapsed(),
    })
}

/// Exact evaluation at `witness`. Fails with [`Error::WitnessFailed`] when
/// the sides agree.
pub fn check_falsification(id: &Identity, witness: &WitnessAssignment) -> Result<VerificationReport> {
    if witness.a.dim() != witness.b.dim() {
        return Err(Error::DimensionMismatch { left: witness.a.dim(), right: witness.b.dim() });
    }
    let start = Instant::now();
    let mismatch = compare(id, &witness.a, &witness.b)?.ok_or(Error::WitnessFailed)?;
    let shape = if witness.is_upper_triangular() { "UT" } else { "M" };
    Ok(VerificationReport {
        identity_digest: id.digest(),
        target: format!("{shape}_{}", witness.dim()),
        mode: Mode::Falsification,
        trials: 1,
        config: None,
        outcome: Outcome::Counterexample(Counterexample {
            trial: None,
            assignment: Assignment::Matrices { a: witness.a.clone(), b: witness.b.clone() },
            mismatch,
        }),
        elapsed: start.elapsed(),
    })
}

fn random_plactic_word(rng: &mut impl Rng, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(1..=PLACTIC_RANK)).collect()
}

/// Evaluates both sides in the plactic monoid of rank 4 at random pairs of
/// nonempty words of length at most `max_word_len`, comparing tableaux.
/// Each trial is also evaluated through `rho`; disagreement between the two
/// comparisons is reported as an oracle failure.
pub fn check_plactic_satisfaction(
    id: &Identity,
    max_word_len: usize,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport> {
    if max_word_len == 0 {
        return Err(Error::Invalid("max_word_len must be positive".into()));
    }
    let start = Instant::now();
    let rho = Rho::new(PLACTIC_RANK)?;
    let found = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<Counterexample>> {
            let mut rng = trial_rng(seed, trial);
            let x = random_plactic_word(&mut rng, max_word_len);
            let y = random_plactic_word(&mut rng, max_word_len);
            let lt = eval_tableau(id.lhs(), &x, &y, PLACTIC_RANK)?;
            let rt = eval_tableau(id.rhs(), &x, &y, PLACTIC_RANK)?;
            let rho_equal = eval_rho(id.lhs(), &x, &y, &rho)? == eval_rho(id.rhs(), &x, &y, &rho)?;
            if rho_equal != (lt == rt) {
                return Err(Error::OracleFailure {
                    oracle: "rho vs tableau".into(),
                    detail: format!("x = {}, y = {}", format_word(&x), format_word(&y)),
                });
            }
            Ok((lt != rt).then(|| Counterexample {
                trial: Some(trial),
                assignment: Assignment::Words { x: format_word(&x), y: format_word(&y), rank: PLACTIC_RANK },
                mismatch: Mismatch::Tableaux { lhs: lt, rhs: rt },
            }))
        })
        .find_first(|r| !matches!(r, Ok(None)))
        .transpose()?
        .flatten();
    let trials_run = found.as_ref().and_then(|c| c.trial).map_or(trials, |t| t + 1);
    Ok(VerificationReport {
        identity_digest: id.digest(),
        target: format!("P_{PLACTIC_RANK}"),
        mode: Mode::PlacticSampling,
        trials: trials_run,
        config: None,
        outcome: found.map_or(Outcome::NoCounterexample, Outcome::Counterexample),
        elapsed: start.elapsed(),
    })
}

/// Re-evaluates a stored counterexample. `Ok(true)` means the sides still
/// differ exactly as recorded; `Ok(false)` means the report does not hold
/// up. Reports without a counterexample replay as `Ok(true)`.
pub fn replay(report: &VerificationReport, id: &Identity) -> Result<bool> {
    if report.identity_digest != id.digest() {
        return Err(Error::Invalid("report belongs to a different identity".into()));
    }
    let Some(c) = report.counterexample() else {
        return Ok(true);
    };
    match (&c.assignment, &c.mismatch) {
        (Assignment::Matrices { a, b }, m @ Mismatch::Entry { .. }) => {
            Ok(compare(id, a, b)?.as_ref() == Some(m))
        }
        (Assignment::Words { x, y, rank }, Mismatch::Tableaux { lhs, rhs }) => {
            let (x, y) = (parse_word(x, *rank)?, parse_word(y, *rank)?);
            let lt = eval_tableau(id.lhs(), &x, &y, *rank)?;
            let rt = eval_tableau(id.rhs(), &x, &y, *rank)?;
            Ok(lt != rt && &lt == lhs && &rt == rhs)
        }
        _ => Err(Error::Invalid("counterexample assignment and mismatch kinds disagree".into())),
    }
}

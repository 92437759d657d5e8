use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::sampler::SamplerConfig;
use crate::plactic::Tableau;
use crate::tropical::{TropMatrix, TropValue};

/// What was substituted for `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Assignment {
    Matrices { a: TropMatrix, b: TropMatrix },
    /// Words over `{1, .., rank}` standing for plactic monoid elements.
    Words { x: String, y: String, rank: u8 },
}

/// How the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mismatch {
    /// First differing entry in row-major order; `row` and `col` are 1-based.
    Entry { row: usize, col: usize, lhs: TropValue, rhs: TropValue },
    Tableaux { lhs: Tableau, rhs: Tableau },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Index of the sampled trial; absent for a fixed witness.
    pub trial: Option<u64>,
    pub assignment: Assignment,
    pub mismatch: Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    /// No counterexample among the trials run. This is evidence only.
    NoCounterexample,
    Counterexample(Counterexample),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Randomised search over matrix pairs.
    Sampling,
    /// Exact evaluation at a fixed witness.
    Falsification,
    /// Randomised search over plactic monoid elements.
    PlacticSampling,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_digest: String,
    pub target: String,
    pub mode: Mode,
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<SamplerConfig>,
    pub outcome: Outcome,
    /// Wall-clock time; not serialized so reports are reproducible byte for
    /// byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.identity_digest == other.identity_digest
            && self.target == other.target
            && self.mode == other.mode
            && self.trials == other.trials
            && self.config == other.config
            && self.outcome == other.outcome
    }
}

impl VerificationReport {
    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.outcome {
            Outcome::Counterexample(c) => Some(c),
            Outcome::NoCounterexample => None,
        }
    }

    pub fn found_counterexample(&self) -> bool {
        self.counterexample().is_some()
    }

    /// One line for humans.
    pub fn summary(&self) -> String {
        let short = &self.identity_digest[..12.min(self.identity_digest.len())];
        match (&self.mode, &self.outcome) {
            (Mode::Falsification, Outcome::Counterexample(c)) => {
                format!("{short}: falsified in {} ({})", self.target, describe(&c.mismatch))
            }
            (_, Outcome::Counterexample(c)) => format!(
                "{short}: counterexample in {} at trial {} ({})",
                self.target,
                c.trial.map_or("-".to_string(), |t| t.to_string()),
                describe(&c.mismatch)
            ),
            (_, Outcome::NoCounterexample) => {
                format!("{short}: no counterexample in {} trials over {} (integer samples)", self.trials, self.target)
            }
        }
    }
}

fn describe(m: &Mismatch) -> String {
    match m {
        Mismatch::Entry { row, col, lhs, rhs } => format!("entry ({row},{col}): {lhs} vs {rhs}"),
        Mismatch::Tableaux { lhs, rhs } => format!("tableaux {lhs} vs {rhs}"),
    }
}

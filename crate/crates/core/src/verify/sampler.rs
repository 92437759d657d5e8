use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::{TropMatrix, TropValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "ut")]
    UpperTriangular,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Shape::Full),
            "ut" | "upper" | "upper-triangular" => Ok(Shape::UpperTriangular),
            other => Err(Error::Invalid(format!("unknown shape {other:?}, expected full or ut"))),
        }
    }
}

/// A probability `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u32,
    pub den: u32,
}

impl Ratio {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Invalid(format!("{num}/{den} is not a probability")));
        }
        Ok(Ratio { num, den })
    }

    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    fn sample(&self, rng: &mut impl Rng) -> bool {
        self.num > 0 && rng.gen_ratio(self.num, self.den)
    }
}

impl std::str::FromStr for Ratio {
    type Err = Error;

    /// Accepts `n/d` or a decimal such as `0.1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot read probability {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            return Ratio::new(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 9 {
            return Err(bad());
        }
        let den = 10u32.pow(frac.len() as u32);
        let int: u32 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u32 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Ratio::new(int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?, den)
    }
}

/// Seeded distribution over pairs of integer matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub dim: usize,
    pub shape: Shape,
    pub entry_min: i64,
    pub entry_max: i64,
    /// Chance of `-inf` for an entry that may be `-inf`.
    pub neginf_prob: Ratio,
    /// Whether diagonal entries of upper triangular samples may be `-inf`.
    pub diagonal_neginf: bool,
    pub trials: u64,
    pub seed: u64,
}

impl SamplerConfig {
    /// Entries uniform in `[-8, 8]`, `-inf` with probability 1/10 (never on
    /// the diagonal of upper triangular samples).
    pub fn new(dim: usize, shape: Shape, trials: u64, seed: u64) -> Self {
        SamplerConfig {
            dim,
            shape,
            entry_min: -8,
            entry_max: 8,
            neginf_prob: Ratio { num: 1, den: 10 },
            diagonal_neginf: false,
            trials,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if self.entry_min > self.entry_max {
            return Err(Error::Invalid(format!("entry range [{}, {}] is empty", self.entry_min, self.entry_max)));
        }
        Ratio::new(self.neginf_prob.num, self.neginf_prob.den)?;
        Ok(())
    }

    /// `M_n` or `UT_n`.
    pub fn target(&self) -> String {
        match self.shape {
            Shape::Full => format!("M_{}", self.dim),
            Shape::UpperTriangular => format!("UT_{}", self.dim),
        }
    }

    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        trial_rng(self.seed, trial)
    }

    pub fn sample_matrix(&self, rng: &mut impl Rng) -> TropMatrix {
        TropMatrix::from_fn(self.dim, |i, j| {
            let may_be_neginf = match self.shape {
                Shape::Full => true,
                Shape::UpperTriangular if i > j => return TropValue::NEG_INF,
                Shape::UpperTriangular => i != j || self.diagonal_neginf,
            };
            if may_be_neginf && self.neginf_prob.sample(rng) {
                TropValue::NEG_INF
            } else {
                TropValue::fin(rng.gen_range(self.entry_min..=self.entry_max))
            }
        })
    }

    /// The pair used in trial `trial`.
    pub fn sample_pair(&self, trial: u64) -> (TropMatrix, TropMatrix) {
        let mut rng = self.rng(trial);
        let a = self.sample_matrix(&mut rng);
        let b = self.sample_matrix(&mut rng);
        (a, b)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// The generator for one trial, a function of `(seed, trial)` only.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(splitmix64(seed) ^ trial))
}

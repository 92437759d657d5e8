//! Identity families and the witnesses that falsify them.
//!
//! * [`factor`]: diagonal/band witnesses detecting a factor of `u` in `u[ab, ba]`.
//! * [`zur`]: identities for `UT_n` from words containing every length-`(n-1)` factor.
//! * [`utsep`]: for each `n`, an identity of `UT_n` falsified in `UT_{n+1}`.
//! * [`full`]: lifting identities to full matrix semigroups, the
//!   `M_3`/`M_4` separation and the `M_2` falsifier pair.
//! * [`induct`] and [`prime`]: the recursive construction separating
//!   `M_{p-1}` from `M_p` for primes `p`.

pub mod factor;
pub mod full;
pub mod induct;
pub mod prime;
pub mod utsep;
pub mod zur;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::TropMatrix;

pub use factor::{factor_witness, FactorWitness};
pub use full::{fulliden_compose_i, fulliden_compose_ii, m2_falsifier_pair, m3_identity, m4_witness};
pub use induct::{induct_identity, InductConfig, InductLevel};
pub use prime::{prime_separation, LevelChoice, LevelDiagnostic, PrimeSeparation, MAX_COPIES};
pub use utsep::{separating_factor, ut_separating_pair, w_bar, w_tilde, SeparatingPair};
pub use zur::zur_identity;

/// Matrices substituted for the letters `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessAssignment {
    pub a: TropMatrix,
    pub b: TropMatrix,
}

impl WitnessAssignment {
    pub fn new(a: TropMatrix, b: TropMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
        }
        Ok(WitnessAssignment { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.a.is_upper_triangular() && self.b.is_upper_triangular()
    }
}

/// `lcm{1, .., n}`.
pub fn lcm_upto(n: u64) -> u64 {
    assert!(n >= 1, "lcm_upto needs n >= 1");
    (1..=n).fold(1u64, num_integer::lcm)
}

/// `(n-1)^2 + 1`, the smallest admissible exponent for dimension `n`.
pub fn exponent_bound(n: u64) -> u64 {
    (n - 1) * (n - 1) + 1
}

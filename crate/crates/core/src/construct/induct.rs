//! Recursive lifting of an `M_2` identity to an `M_n` identity.
//!
//! With `A_n = a`, `B_n = b` and, for `k = n, .., 3`,
//!
//! ```text
//! A_{k-1} = (q_k r_k)^{t_k}     [A_k^k̄, B_k^k̄]
//! B_{k-1} = (q_k r_k)^{t_k} r_k [A_k^k̄, B_k^k̄]
//! ```
//!
//! an identity `u_2 = v_2` of `M_2` yields the `M_n` identity
//! `u_2[A_2, B_2] A_2 A_3 .. A_{n-1} = v_2[A_2, B_2] A_2 A_3 .. A_{n-1}`.

use super::{exponent_bound, lcm_upto};
use crate::error::{Error, Result};
use crate::word::{Identity, WordExpr};

#[derive(Debug, Clone)]
pub struct InductLevel {
    pub k: usize,
    /// An identity `q_k = r_k` of `UT_k`.
    pub identity: Identity,
    pub t: u64,
}

#[derive(Debug, Clone)]
pub struct InductConfig {
    pub n: usize,
    /// One level for each `k` in `3..=n`, in any order.
    pub levels: Vec<InductLevel>,
}

impl InductConfig {
    fn level(&self, k: usize) -> Result<&InductLevel> {
        let mut found = self.levels.iter().filter(|l| l.k == k);
        let level = found
            .next()
            .ok_or_else(|| Error::PreconditionFailed(format!("no identity given for level {k}")))?;
        if found.next().is_some() {
            return Err(Error::PreconditionFailed(format!("level {k} given twice")));
        }
        Ok(level)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::PreconditionFailed(format!("n must be at least 3, got {}", self.n)));
        }
        if let Some(l) = self.levels.iter().find(|l| l.k < 3 || l.k > self.n) {
            return Err(Error::PreconditionFailed(format!("level {} outside 3..={}", l.k, self.n)));
        }
        for k in 3..=self.n {
            let level = self.level(k)?;
            let bound = exponent_bound(k as u64);
            if level.t < bound {
                return Err(Error::ExponentBound { t: level.t, bound });
            }
            if !level.identity.is_balanced() {
                return Err(Error::PreconditionFailed(format!("q_{k} = r_{k} is not balanced")));
            }
        }
        Ok(())
    }

    /// The word pairs `(A_m, B_m)` for `m = n, n-1, .., 2`.
    pub fn words(&self) -> Result<Vec<(usize, WordExpr, WordExpr)>> {
        self.validate()?;
        let mut out = vec![(self.n, WordExpr::a(), WordExpr::b())];
        for k in (3..=self.n).rev() {
            let level = self.level(k)?;
            let (_, ak, bk) = out.last().unwrap().clone();
            let (a, b) = step(&ak, &bk, level.identity.lhs(), level.identity.rhs(), level.t, k)?;
            out.push((k - 1, a, b));
        }
        Ok(out)
    }
}

/// One recursion step: `(A_{k-1}, B_{k-1})` from `(A_k, B_k)`.
pub fn step(
    ak: &WordExpr,
    bk: &WordExpr,
    q: &WordExpr,
    r: &WordExpr,
    t: u64,
    k: usize,
) -> Result<(WordExpr, WordExpr)> {
    let kbar = lcm_upto(k as u64);
    let (xa, xb) = (ak.pow(kbar)?, bk.pow(kbar)?);
    let qr_t = q.then(r).pow(t)?;
    Ok((qr_t.subst(&xa, &xb), qr_t.then(r).subst(&xa, &xb)))
}

pub fn induct_identity(cfg: &InductConfig, u2: &WordExpr, v2: &WordExpr) -> Result<Identity> {
    let words = cfg.words()?;
    // words[i] holds level n - i, so A_2 is last
    let (_, a2, b2) = words.last().unwrap().clone();
    let mut tail: Vec<WordExpr> = words.iter().rev().filter(|(m, ..)| *m < cfg.n).map(|(_, a, _)| a.clone()).collect();
    let mut lhs = vec![u2.subst(&a2, &b2)];
    lhs.append(&mut tail.clone());
    let mut rhs = vec![v2.subst(&a2, &b2)];
    rhs.append(&mut tail);
    Identity::new(WordExpr::concat(lhs)?, WordExpr::concat(rhs)?)
}

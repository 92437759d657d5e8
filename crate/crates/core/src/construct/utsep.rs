//! For every `n >= 1`, an identity satisfied by `UT_n` together with a pair
//! of matrices in `UT_{n+1}` falsifying it.

use serde::Serialize;

use super::factor::factor_witness;
use super::zur::{zur_identity, zur_words};
use super::WitnessAssignment;
use crate::error::{Error, Result};
use crate::tropical::TropMatrix;
use crate::word::{all_words, Identity, Letter, Word, WordExpr};

#[derive(Debug, Clone, Serialize)]
pub struct SeparatingPair {
    pub n: usize,
    pub identity: Identity,
    pub witness: WitnessAssignment,
    /// The word whose factor witness falsifies the identity (`n >= 2`).
    pub factor: Option<String>,
    /// The unsubstituted sides `(u, v)` with `identity = <u, v>[ab, ba]`;
    /// the factor occurs in `u` but not in `v`.
    #[serde(skip)]
    pub inner: Option<(Word, Word)>,
}

/// `b(ab)^((n-2)/2)` for even `n`, `(ba)^((n-1)/2)` for odd `n`.
pub fn w_tilde(n: usize) -> Word {
    if n.is_multiple_of(2) {
        let mut w = Word::letter(Letter::B);
        w.extend(&Word::parse("ab").unwrap().pow((n - 2) / 2));
        w
    } else {
        Word::parse("ba").unwrap().pow((n - 1) / 2)
    }
}

/// The word `a·w̃`, of length `n`, that separates `UT_n` from `UT_{n+1}`.
pub fn separating_factor(n: usize) -> Word {
    let mut w = Word::letter(Letter::A);
    w.extend(&w_tilde(n));
    w
}

/// `w_i` with a leading `bb` removed, then a trailing `aa` (even `n`) or
/// `bb` (odd `n`) removed, each only when present.
fn trimmed(wi: &Word, n: usize) -> Word {
    let bb = Word::parse("bb").unwrap();
    let tail = if n.is_multiple_of(2) { Word::parse("aa").unwrap() } else { bb.clone() };
    let w = wi.strip_prefix(&bb).unwrap_or_else(|| wi.clone());
    w.strip_suffix(&tail).unwrap_or(w)
}

/// The word `w̄` for `n >= 4`: `w̃` followed by one bracketed block per word
/// of length `n - 1` (taken in lexicographic order), so that `w̄` contains
/// every such word as a factor while `w̄aw̄` and `w̄bw̄` avoid runs of length
/// `n`.
///
/// Even `n`: `w̃ ba (bb w'_1 aa) .. (bb w'_m aa) bba`.
/// Odd `n`: `w̃ (bb w'_1 bb) a (bb w'_2 bb) a .. (bb w'_m bb) a`.
pub fn w_bar(n: usize) -> Result<Word> {
    if n < 4 {
        return Err(Error::PreconditionFailed(format!("w_bar needs n >= 4, got {n}")));
    }
    let bb = Word::parse("bb").unwrap();
    let aa = Word::parse("aa").unwrap();
    let a = Word::letter(Letter::A);
    let mut out = w_tilde(n);
    if n.is_multiple_of(2) {
        out.extend(&Word::parse("ba").unwrap());
        for wi in all_words(n - 1) {
            out.extend(&bb);
            out.extend(&trimmed(&wi, n));
            out.extend(&aa);
        }
        out.extend(&bb);
        out.extend(&a);
    } else {
        for wi in all_words(n - 1) {
            out.extend(&bb);
            out.extend(&trimmed(&wi, n));
            out.extend(&bb);
            out.extend(&a);
        }
    }
    Ok(out)
}

pub fn ut_separating_pair(n: usize) -> Result<SeparatingPair> {
    let (ab, ba) = (WordExpr::parse("ab")?, WordExpr::parse("ba")?);
    match n {
        0 => Err(Error::PreconditionFailed("n must be at least 1".into())),
        1 => {
            let identity = Identity::parse("ab", "ba")?;
            let a = TropMatrix::from_i64_rows(&[&[Some(0), Some(0)], &[None, Some(0)]])?;
            let b = TropMatrix::diag_i64(&[0, 1]);
            Ok(SeparatingPair { n, identity, witness: WitnessAssignment::new(a, b)?, factor: None, inner: None })
        }
        2 => {
            let (u, v) = (Word::parse("abaab")?, Word::parse("abbab")?);
            let identity = Identity::from_words(&u, &v)?.subst(&ab, &ba)?;
            let fw = factor_witness(&Word::parse("aa")?)?;
            Ok(SeparatingPair {
                n,
                identity,
                witness: fw.assignment(),
                factor: Some(fw.word),
                inner: Some((u, v)),
            })
        }
        3 => {
            // the side containing bab goes on the left
            let w = Word::parse("ab^2a^2b")?;
            let identity = zur_identity(&w, 3)?.swapped();
            let (waw, wbw) = zur_words(&w);
            let fw = factor_witness(&Word::parse("bab")?)?;
            Ok(SeparatingPair {
                n,
                identity,
                witness: fw.assignment(),
                factor: Some(fw.word),
                inner: Some((wbw, waw)),
            })
        }
        _ => {
            let wb = w_bar(n)?;
            let identity = zur_identity(&wb, n)?;
            let fw = factor_witness(&separating_factor(n))?;
            Ok(SeparatingPair {
                n,
                identity,
                witness: fw.assignment(),
                factor: Some(fw.word),
                inner: Some(zur_words(&wb)),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::t;

    #[test]
    fn small_cases() {
        let p2 = ut_separating_pair(2).unwrap();
        assert_eq!(p2.identity.lhs().expand(100).unwrap(), Word::parse("ab^2a^2bab^2a").unwrap());
        assert_eq!(p2.identity.rhs().expand(100).unwrap(), Word::parse("ab^2aba^2b^2a").unwrap());

        let p1 = ut_separating_pair(1).unwrap();
        let ab = p1.witness.a.mul(&p1.witness.b).unwrap();
        let ba = p1.witness.b.mul(&p1.witness.a).unwrap();
        assert_eq!((ab.get(0, 1), ba.get(0, 1)), (&t(1), &t(0)));

        let p3 = ut_separating_pair(3).unwrap();
        let lhs = p3.identity.lhs().expand(100).unwrap();
        let base = Word::parse("ab^2a^2b").unwrap();
        let inner = base.concat(&Word::parse("b").unwrap()).concat(&base);
        assert_eq!(lhs, inner.substitute(&Word::parse("ab").unwrap(), &Word::parse("ba").unwrap()));
        assert_eq!(lhs.len(), 26);
    }

    #[test]
    fn tilde_words() {
        assert_eq!(w_tilde(4).to_string(), "bab");
        assert_eq!(separating_factor(4).to_string(), "abab");
        assert_eq!(w_tilde(5).to_string(), "baba");
        assert_eq!(w_tilde(6).to_string(), "babab");
    }

    #[test]
    fn trimming() {
        assert_eq!(trimmed(&Word::parse("bbaa").unwrap(), 5).to_string(), "aa");
        assert_eq!(trimmed(&Word::parse("bbbb").unwrap(), 5).to_string(), "");
        assert_eq!(trimmed(&Word::parse("bbaaa").unwrap(), 6).to_string(), "a");
        assert_eq!(trimmed(&Word::parse("aba").unwrap(), 4).to_string(), "aba");
    }

    #[test]
    fn construction_meets_its_requirements() {
        for n in 4..=7 {
            let pair = ut_separating_pair(n).unwrap();
            let wb = w_bar(n).unwrap();
            assert!(wb.all_factors_present(n - 1), "n={n}");
            let (u, v) = pair.inner.clone().unwrap();
            for side in [&u, &v] {
                assert!(!side.has_run(Letter::A, n) && !side.has_run(Letter::B, n), "n={n}");
            }
            let f = separating_factor(n);
            assert!(f.is_factor_of(&u), "n={n}");
            assert!(!f.is_factor_of(&v), "n={n}");
            assert!(pair.identity.is_balanced());
            assert!(pair.witness.is_upper_triangular());
            assert_eq!(pair.witness.dim(), n + 1);
        }
    }
}

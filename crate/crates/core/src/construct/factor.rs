use serde::{Deserialize, Serialize};

use super::WitnessAssignment;
use crate::error::{Error, Result};
use crate::tropical::{TropMatrix, TropValue};
use crate::word::{Letter, Word, WordExpr};

/// Matrices `A, B` in `UT_{l(w)+1}` such that, for words `u, v` with `w` a
/// factor of `u` but not of `v`, `u(AB, BA)` and `v(AB, BA)` differ at the
/// corner entry `(1, l(w)+1)`.
///
/// The parameters start at `c_1 = 0` and step down by one for each `a` and
/// up by one for each `b` in `w`. `A = diag(c)`, and `B` has `-c_1` and
/// `-c_{n+1}` at its two diagonal corners and zeros on the superdiagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    pub word: String,
    pub params: Vec<i64>,
    pub a: TropMatrix,
    pub b: TropMatrix,
}

pub fn factor_witness(w: &Word) -> Result<FactorWitness> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut params = vec![0i64];
    for &l in w.letters() {
        let last = *params.last().unwrap();
        params.push(match l {
            Letter::A => last - 1,
            Letter::B => last + 1,
        });
    }
    let dim = params.len();
    let a = TropMatrix::diag(&params.iter().map(|&c| TropValue::fin(c)).collect::<Vec<_>>());
    let b = TropMatrix::from_fn(dim, |i, j| {
        if i == 0 && j == 0 {
            TropValue::fin(-params[0])
        } else if i == dim - 1 && j == dim - 1 {
            TropValue::fin(-params[dim - 1])
        } else if j == i + 1 {
            TropValue::ZERO
        } else {
            TropValue::NEG_INF
        }
    });
    Ok(FactorWitness { word: w.to_string(), params, a, b })
}

impl FactorWitness {
    pub fn dim(&self) -> usize {
        self.params.len()
    }

    pub fn assignment(&self) -> WitnessAssignment {
        WitnessAssignment { a: self.a.clone(), b: self.b.clone() }
    }

    pub fn ab(&self) -> TropMatrix {
        self.a.mul(&self.b).expect("same dimension")
    }

    pub fn ba(&self) -> TropMatrix {
        self.b.mul(&self.a).expect("same dimension")
    }

    /// `t(AB, BA)` at the corner entry `(1, l(w)+1)`.
    pub fn corner(&self, t: &Word) -> Result<TropValue> {
        let m = WordExpr::word(t)?.eval_matrices(&self.ab(), &self.ba())?;
        Ok(m.get(0, self.dim() - 1).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{t, NEG_INF};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parameter_recursion() {
        assert_eq!(factor_witness(&w("a")).unwrap().params, vec![0, -1]);
        assert_eq!(factor_witness(&w("bab")).unwrap().params, vec![0, 1, 0, 1]);
        assert_eq!(factor_witness(&w("abab")).unwrap().params, vec![0, -1, 0, -1, 0]);
        assert_eq!(factor_witness(&Word::empty()).unwrap_err(), Error::EmptyWord);
    }

    #[test]
    fn products_have_shifted_bands() {
        let fw = factor_witness(&w("abbab")).unwrap();
        let (ab, ba) = (fw.ab(), fw.ba());
        let n = fw.dim() - 1;
        for k in 0..n {
            assert_eq!(*ab.get(k, k + 1), t(fw.params[k]));
            assert_eq!(*ba.get(k, k + 1), t(fw.params[k + 1]));
        }
        for m in [&ab, &ba] {
            assert_eq!(*m.get(0, 0), t(0));
            assert_eq!(*m.get(n, n), t(0));
            assert!(m.is_upper_triangular());
            for k in 1..n {
                assert_eq!(*m.get(k, k), NEG_INF);
            }
        }
    }

    #[test]
    fn separates_aa() {
        let fw = factor_witness(&w("aa")).unwrap();
        assert_eq!(fw.corner(&w("abaab")).unwrap(), t(-1));
        assert_eq!(fw.corner(&w("abbab")).unwrap(), t(-2));
    }
}

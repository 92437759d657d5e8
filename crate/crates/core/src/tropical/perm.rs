use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{0, .., n-1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        Permutation { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`: `i -> other(self(i))`.
    ///
    /// This is the permutation underlying a product `AB` when `self`
    /// underlies `A` and `other` underlies `B`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { left: self.len(), right: other.len() });
        }
        Ok(Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let n = self.len();
        let images = (0..n)
            .map(|start| {
                // walk the cycle containing `start`
                let mut len = 1;
                let mut cur = self.images[start];
                while cur != start {
                    cur = self.images[cur];
                    len += 1;
                }
                let steps = k % len as u64;
                let mut cur = start;
                for _ in 0..steps {
                    cur = self.images[cur];
                }
                cur
            })
            .collect();
        Permutation { images }
    }

    /// Cycle lengths (fixed points included), sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// True iff the permutation is one cycle through all `n` points.
    pub fn is_full_cycle(&self) -> bool {
        self.cycle_type() == vec![self.len()]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based image list, as matrices are usually written by hand
        let shown: Vec<usize> = self.images.iter().map(|i| i + 1).collect();
        write!(f, "Permutation{shown:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_and_powers() {
        let c = Permutation::cycle(5);
        assert!(c.is_full_cycle());
        assert_eq!(c.pow(5), Permutation::identity(5));
        assert!(c.pow(2).is_full_cycle());
        let c6 = Permutation::cycle(6);
        assert_eq!(c6.pow(2).cycle_type(), vec![3, 3]);
        assert_eq!(c6.pow(3).cycle_type(), vec![2, 2, 2]);
    }

    #[test]
    fn composition_is_a_permutation() {
        let a = Permutation::new(vec![1, 2, 0, 3]).unwrap();
        let b = Permutation::new(vec![3, 0, 1, 2]).unwrap();
        let ab = a.then(&b).unwrap();
        assert_eq!(ab.images(), &[0, 1, 3, 2]);
        assert_eq!(a.then(&a.inverse()).unwrap(), Permutation::identity(4));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
    }
}

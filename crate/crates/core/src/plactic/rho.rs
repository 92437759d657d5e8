use serde::Serialize;

use super::tableau::check_letters;
use crate::error::{Error, Result};
use crate::tropical::{TropMatrix, TropValue};

/// A subset of `{1, .., n}` as a bit mask (bit `i - 1` for element `i`).
pub type Subset = u32;

pub fn elements(s: Subset) -> Vec<u8> {
    (0..32u8).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn subset_of(elems: &[u8]) -> Subset {
    elems.iter().fold(0, |acc, &e| acc | 1 << (e - 1))
}

/// `S <= T` iff `|S| >= |T|` and the `i`-th smallest elements satisfy
/// `S^i <= T^i` for every `i <= |T|`.
pub fn subset_leq(s: Subset, t: Subset) -> bool {
    let (se, te) = (elements(s), elements(t));
    se.len() >= te.len() && se.iter().zip(&te).all(|(a, b)| a <= b)
}

/// The subsets of `{1, .., n}` in the order used for matrix indices:
/// larger sets first, equal sizes in lexicographic order of their sorted
/// elements.
#[derive(Debug, Clone)]
pub struct SubsetIndex {
    n: u8,
    order: Vec<Subset>,
    position: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: u8) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::Invalid(format!("rank {n} outside 1..=16")));
        }
        let mut order: Vec<Subset> = (0..1u32 << n).collect();
        order.sort_by(|&a, &b| b.count_ones().cmp(&a.count_ones()).then_with(|| elements(a).cmp(&elements(b))));
        let mut position = vec![0; order.len()];
        for (i, &s) in order.iter().enumerate() {
            position[s as usize] = i;
        }
        Ok(SubsetIndex { n, order, position })
    }

    pub fn rank(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn subset(&self, index: usize) -> Subset {
        self.order[index]
    }

    pub fn index(&self, s: Subset) -> usize {
        self.position[s as usize]
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.order
    }

    /// Sorted elements of each indexed subset, in index order.
    pub fn legend(&self) -> Vec<Vec<u8>> {
        self.order.iter().map(|&s| elements(s)).collect()
    }

    /// `[P, Q] = { S : P <= S <= Q }`, in index order.
    pub fn order_interval(&self, p: Subset, q: Subset) -> Vec<Subset> {
        self.order.iter().copied().filter(|&s| subset_leq(p, s) && subset_leq(s, q)).collect()
    }

    pub fn interval_union(&self, p: Subset, q: Subset) -> Subset {
        self.order_interval(p, q).into_iter().fold(0, |acc, s| acc | s)
    }

    /// Index ranges of the blocks of equal cardinality.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out: Vec<std::ops::Range<usize>> = Vec::new();
        for (i, s) in self.order.iter().enumerate() {
            match out.last_mut() {
                Some(r) if self.order[r.start].count_ones() == s.count_ones() => r.end = i + 1,
                _ => out.push(i..i + 1),
            }
        }
        out
    }
}

pub fn order_interval(p: Subset, q: Subset, n: u8) -> Result<Vec<Subset>> {
    Ok(SubsetIndex::new(n)?.order_interval(p, q))
}

pub fn interval_union(p: Subset, q: Subset, n: u8) -> Result<Subset> {
    Ok(SubsetIndex::new(n)?.interval_union(p, q))
}

/// The image of a generator:
/// `-inf` unless `|P| = |Q|` and `P <= Q`; then `1` if `x` lies in the union
/// of `[P, Q]` and `0` otherwise.
pub fn rho_generator(x: u8, n: u8) -> Result<TropMatrix> {
    check_letters(&[x], n)?;
    let idx = SubsetIndex::new(n)?;
    let bit = 1 << (x - 1);
    Ok(TropMatrix::from_fn(idx.len(), |i, j| {
        let (p, q) = (idx.subset(i), idx.subset(j));
        if p.count_ones() != q.count_ones() || !subset_leq(p, q) {
            TropValue::NEG_INF
        } else if idx.interval_union(p, q) & bit != 0 {
            TropValue::fin(1)
        } else {
            TropValue::ZERO
        }
    }))
}

/// `0` where `|P| = |Q|` and `P <= Q`, `-inf` elsewhere.
pub fn rho_identity_element(n: u8) -> Result<TropMatrix> {
    let idx = SubsetIndex::new(n)?;
    Ok(TropMatrix::from_fn(idx.len(), |i, j| {
        let (p, q) = (idx.subset(i), idx.subset(j));
        if p.count_ones() == q.count_ones() && subset_leq(p, q) {
            TropValue::ZERO
        } else {
            TropValue::NEG_INF
        }
    }))
}

/// Precomputed generator images for repeated evaluation.
#[derive(Debug, Clone)]
pub struct Rho {
    n: u8,
    generators: Vec<TropMatrix>,
    identity: TropMatrix,
}

impl Rho {
    pub fn new(n: u8) -> Result<Self> {
        let generators = (1..=n).map(|x| rho_generator(x, n)).collect::<Result<_>>()?;
        Ok(Rho { n, generators, identity: rho_identity_element(n)? })
    }

    pub fn generator(&self, x: u8) -> Result<&TropMatrix> {
        check_letters(&[x], self.n)?;
        Ok(&self.generators[x as usize - 1])
    }

    /// The product of generator images; the empty word maps to the
    /// identity element.
    pub fn image(&self, w: &[u8]) -> Result<TropMatrix> {
        check_letters(w, self.n)?;
        let mut out = self.identity.clone();
        for &x in w {
            out = out.mul(&self.generators[x as usize - 1])?;
        }
        Ok(out)
    }
}

pub fn rho(w: &[u8], n: u8) -> Result<TropMatrix> {
    Rho::new(n)?.image(w)
}

/// A `rho` image together with the subsets labelling its rows and columns.
#[derive(Debug, Clone, Serialize)]
pub struct RhoImage {
    pub word: String,
    pub legend: Vec<Vec<u8>>,
    pub matrix: TropMatrix,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plactic::tableau::{all_plactic_words, Tableau};
    use crate::tropical::t;
    use std::collections::HashMap;

    fn s(e: &[u8]) -> Subset {
        subset_of(e)
    }

    /// Interval by direct enumeration of all subsets, independent of the
    /// index ordering.
    fn brute_interval(p: Subset, q: Subset, n: u8) -> Vec<Subset> {
        (0..1u32 << n).filter(|&x| subset_leq(p, x) && subset_leq(x, q)).collect()
    }

    #[test]
    fn order_examples() {
        assert!(subset_leq(s(&[1, 2]), s(&[3, 4])));
        assert!(subset_leq(s(&[1, 3]), s(&[2])));
        assert!(!subset_leq(s(&[2]), s(&[1, 3])));
        assert_eq!(interval_union(s(&[1]), s(&[2]), 4).unwrap(), s(&[1, 2]));
        let mut iv = order_interval(s(&[1]), s(&[2]), 4).unwrap();
        iv.sort();
        assert_eq!(iv, brute_interval(s(&[1]), s(&[2]), 4));
        assert_eq!(iv, vec![s(&[1]), s(&[2])]);
    }

    #[test]
    fn generator_entries() {
        let idx = SubsetIndex::new(4).unwrap();
        let r2 = rho_generator(2, 4).unwrap();
        assert_eq!(*r2.get(idx.index(s(&[1])), idx.index(s(&[3]))), t(1));
        let r4 = rho_generator(4, 4).unwrap();
        assert_eq!(*r4.get(idx.index(s(&[1, 2])), idx.index(s(&[1, 3]))), t(0));
        let union: Subset = brute_interval(s(&[1, 2]), s(&[1, 3]), 4).into_iter().fold(0, |a, b| a | b);
        assert_eq!(union, s(&[1, 2, 3]));
        assert!(r4.get(idx.index(s(&[1, 3])), idx.index(s(&[1, 2]))).is_neg_inf());
    }

    #[test]
    fn index_layout() {
        let idx = SubsetIndex::new(4).unwrap();
        assert_eq!(idx.len(), 16);
        assert_eq!(idx.legend()[0], vec![1, 2, 3, 4]);
        assert_eq!(idx.legend()[1], vec![1, 2, 3]);
        assert_eq!(idx.legend()[15], Vec::<u8>::new());
        let sizes: Vec<usize> = idx.blocks().iter().map(|r| r.len()).collect();
        assert_eq!(sizes, vec![1, 4, 6, 4, 1]);
        // equal-size comparability is compatible with the index order
        for &p in idx.subsets() {
            for &q in idx.subsets() {
                if p.count_ones() == q.count_ones() && subset_leq(p, q) {
                    assert!(idx.index(p) <= idx.index(q));
                }
            }
        }
    }

    #[test]
    fn identity_element_is_idempotent() {
        let e = rho_identity_element(4).unwrap();
        assert_eq!(e.mul(&e).unwrap(), e);
        let r = Rho::new(4).unwrap();
        for x in 1..=4 {
            let g = r.generator(x).unwrap();
            assert_eq!(&e.mul(g).unwrap(), g);
            assert_eq!(&g.mul(&e).unwrap(), g);
        }
    }

    #[test]
    fn knuth_relations_under_rho() {
        let r = Rho::new(4).unwrap();
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    if a < b && b <= c {
                        assert_eq!(r.image(&[b, c, a]).unwrap(), r.image(&[b, a, c]).unwrap());
                    }
                    if a <= b && b < c {
                        assert_eq!(r.image(&[c, a, b]).unwrap(), r.image(&[a, c, b]).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn faithful_on_short_words() {
        let r = Rho::new(4).unwrap();
        let mut by_image: HashMap<TropMatrix, Tableau> = HashMap::new();
        for len in 1..=4 {
            for w in all_plactic_words(4, len) {
                let tab = Tableau::from_word(&w, 4).unwrap();
                let img = r.image(&w).unwrap();
                if let Some(prev) = by_image.insert(img, tab.clone()) {
                    assert_eq!(prev, tab, "{w:?}");
                }
            }
        }
    }
}

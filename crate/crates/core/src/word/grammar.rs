//! Indexed access into compressed words and first-difference search.
//!
//! Expressions are compiled into a substitution-free grammar (letters,
//! concatenations and powers over node ids) annotated with lengths. A letter
//! at an arbitrary position is found by descending through the length
//! annotations. To locate the first position where two expressions differ we
//! binary-search on prefix fingerprints (polynomial hashes, which compose
//! homomorphically) and then confirm the candidate position by reading the
//! actual letters, so a reported difference is always exact.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::expr::{Node, WordExpr};
use super::letters::Letter;
use crate::error::{Error, Result};

const MODULUS: u64 = (1 << 61) - 1;
const BASES: [u64; 2] = [1_000_003, 998_244_353_123];

fn mulmod(x: u64, y: u64) -> u64 {
    ((x as u128 * y as u128) % MODULUS as u128) as u64
}

/// Polynomial fingerprint of a word: for each base, `(hash, base^len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Fingerprint([(u64, u64); 2]);

impl Fingerprint {
    const EMPTY: Fingerprint = Fingerprint([(0, 1), (0, 1)]);

    fn letter(l: Letter) -> Fingerprint {
        let code = match l {
            Letter::A => 1,
            Letter::B => 2,
        };
        Fingerprint([(code, BASES[0]), (code, BASES[1])])
    }

    fn then(self, other: Fingerprint) -> Fingerprint {
        let mut out = [(0, 0); 2];
        for k in 0..2 {
            let (h1, p1) = self.0[k];
            let (h2, p2) = other.0[k];
            out[k] = ((mulmod(h1, p2) + h2) % MODULUS, mulmod(p1, p2));
        }
        Fingerprint(out)
    }

    fn pow(self, mut e: u64) -> Fingerprint {
        let mut acc = Fingerprint::EMPTY;
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(base);
            }
            base = base.then(base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone)]
enum GNode {
    Letter(Letter),
    Concat(Vec<usize>),
    Power(usize, u64),
}

/// A substitution-free compiled form of one or more expressions.
#[derive(Debug, Default)]
pub struct Grammar {
    nodes: Vec<GNode>,
    lens: Vec<BigUint>,
    prints: Vec<Fingerprint>,
    memo: HashMap<(usize, usize, usize), usize>,
}

impl Grammar {
    pub fn new() -> Self {
        let mut g = Grammar::default();
        g.push(GNode::Letter(Letter::A));
        g.push(GNode::Letter(Letter::B));
        g
    }

    fn push(&mut self, node: GNode) -> usize {
        let (len, print) = match &node {
            GNode::Letter(l) => (BigUint::one(), Fingerprint::letter(*l)),
            GNode::Concat(items) => items.iter().fold((BigUint::zero(), Fingerprint::EMPTY), |(len, fp), &i| {
                (len + &self.lens[i], fp.then(self.prints[i]))
            }),
            GNode::Power(base, k) => (&self.lens[*base] * BigUint::from(*k), self.prints[*base].pow(*k)),
        };
        self.nodes.push(node);
        self.lens.push(len);
        self.prints.push(print);
        self.nodes.len() - 1
    }

    /// Compiles an expression and returns its root node id.
    pub fn compile(&mut self, e: &WordExpr) -> usize {
        self.compile_in(e, (0, 1))
    }

    fn compile_in(&mut self, e: &WordExpr, env: (usize, usize)) -> usize {
        let key = (e.ptr(), env.0, env.1);
        if let Some(&id) = self.memo.get(&key) {
            return id;
        }
        let id = match e.node() {
            Node::Letter(Letter::A) => return env.0,
            Node::Letter(Letter::B) => return env.1,
            Node::Concat(items) => {
                let ids = items.iter().map(|i| self.compile_in(i, env)).collect();
                self.push(GNode::Concat(ids))
            }
            Node::Power(base, k) => {
                let b = self.compile_in(base, env);
                self.push(GNode::Power(b, *k))
            }
            Node::Subst { target, a, b } => {
                let ia = self.compile_in(a, env);
                let ib = self.compile_in(b, env);
                self.compile_in(target, (ia, ib))
            }
        };
        self.memo.insert(key, id);
        id
    }

    pub fn len(&self, id: usize) -> &BigUint {
        &self.lens[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The letter at 0-based position `pos`, if in range.
    pub fn letter_at(&self, mut id: usize, pos: &BigUint) -> Option<Letter> {
        if pos >= &self.lens[id] {
            return None;
        }
        let mut pos = pos.clone();
        loop {
            match &self.nodes[id] {
                GNode::Letter(l) => return Some(*l),
                GNode::Concat(items) => {
                    for &child in items {
                        if pos < self.lens[child] {
                            id = child;
                            break;
                        }
                        pos -= &self.lens[child];
                    }
                }
                GNode::Power(base, _) => {
                    pos = pos.mod_floor(&self.lens[*base]);
                    id = *base;
                }
            }
        }
    }

    fn prefix_print(&self, id: usize, n: &BigUint) -> Fingerprint {
        if n.is_zero() {
            return Fingerprint::EMPTY;
        }
        if n >= &self.lens[id] {
            return self.prints[id];
        }
        match &self.nodes[id] {
            GNode::Letter(_) => unreachable!("0 < n < 1"),
            GNode::Concat(items) => {
                let mut acc = Fingerprint::EMPTY;
                let mut rest = n.clone();
                for &child in items {
                    if rest < self.lens[child] {
                        return acc.then(self.prefix_print(child, &rest));
                    }
                    acc = acc.then(self.prints[child]);
                    rest -= &self.lens[child];
                    if rest.is_zero() {
                        break;
                    }
                }
                acc
            }
            GNode::Power(base, _) => {
                let (q, r) = n.div_mod_floor(&self.lens[*base]);
                let q = q.to_u64().expect("quotient bounded by a u64 exponent");
                self.prints[*base].pow(q).then(self.prefix_print(*base, &r))
            }
        }
    }

    /// First 0-based position at which the expansions of `x` and `y` differ,
    /// or `None` if they are equal.
    pub fn first_difference(&self, x: usize, y: usize) -> Result<Option<Difference>> {
        let (lx, ly) = (&self.lens[x], &self.lens[y]);
        let min = lx.min(ly).clone();
        let same = |n: &BigUint| self.prefix_print(x, n) == self.prefix_print(y, n);
        let pos = if same(&min) {
            if lx == ly {
                return Ok(None);
            }
            min
        } else {
            // invariant: prefixes of length lo agree, of length hi do not
            let mut lo = BigUint::zero();
            let mut hi = min;
            while &hi - &lo > BigUint::one() {
                let mid: BigUint = (&lo + &hi) >> 1u32;
                if same(&mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        let d = Difference { lhs: self.letter_at(x, &pos), rhs: self.letter_at(y, &pos), position: pos };
        if d.lhs == d.rhs {
            return Err(Error::Invalid(format!("fingerprint collision near position {}", d.position)));
        }
        Ok(Some(d))
    }
}

/// A certified difference: the letters at `position` (`None` past the end).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Difference {
    #[serde(with = "crate::word::biguint_string")]
    pub position: BigUint,
    pub lhs: Option<Letter>,
    pub rhs: Option<Letter>,
}

/// First difference between two expressions; see [`Grammar::first_difference`].
pub fn first_difference(x: &WordExpr, y: &WordExpr) -> Result<Option<Difference>> {
    let mut g = Grammar::new();
    let ix = g.compile(x);
    let iy = g.compile(y);
    g.first_difference(ix, iy)
}

/// The letter at 0-based position `pos` of the expansion of `e`.
pub fn letter_at(e: &WordExpr, pos: &BigUint) -> Option<Letter> {
    let mut g = Grammar::new();
    let id = g.compile(e);
    g.letter_at(id, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::expr::tests::arb_expr;
    use crate::word::Word;
    use proptest::prelude::*;

    fn e(s: &str) -> WordExpr {
        WordExpr::parse(s).unwrap()
    }

    #[test]
    fn indexing_through_substitution() {
        let x = e("abaab").subst(&e("ab"), &e("ba")).pow(3).unwrap();
        let word = x.expand(1000).unwrap();
        for (i, &l) in word.letters().iter().enumerate() {
            assert_eq!(letter_at(&x, &BigUint::from(i)), Some(l));
        }
        assert_eq!(letter_at(&x, &BigUint::from(word.len())), None);
    }

    #[test]
    fn difference_in_huge_words() {
        // (ab)^(10^12) a  vs  (ab)^(10^12) b
        let big = e("ab").pow(1_000_000_000_000).unwrap();
        let x = big.then(&WordExpr::a());
        let y = big.then(&WordExpr::b());
        let d = first_difference(&x, &y).unwrap().unwrap();
        assert_eq!(d.position, BigUint::from(2_000_000_000_000u64));
        assert_eq!((d.lhs, d.rhs), (Some(Letter::A), Some(Letter::B)));
        assert_eq!(first_difference(&big, &e("ab").pow(500_000_000_000).unwrap().pow(2).unwrap()).unwrap(), None);
        let d = first_difference(&big, &x).unwrap().unwrap();
        assert_eq!((d.lhs, d.rhs), (None, Some(Letter::A)));
    }

    fn naive_difference(x: &Word, y: &Word) -> Option<usize> {
        let common = x.letters().iter().zip(y.letters()).position(|(a, b)| a != b);
        match common {
            Some(p) => Some(p),
            None if x.len() != y.len() => Some(x.len().min(y.len())),
            None => None,
        }
    }

    proptest! {
        #[test]
        fn difference_matches_naive_scan(x in arb_expr(), y in arb_expr()) {
            let limit = 20_000u64;
            prop_assume!(x.expanded_length() <= BigUint::from(limit) && y.expanded_length() <= BigUint::from(limit));
            let (wx, wy) = (x.expand(limit).unwrap(), y.expand(limit).unwrap());
            let got = first_difference(&x, &y).unwrap().map(|d| d.position.to_usize().unwrap());
            prop_assert_eq!(got, naive_difference(&wx, &wy));
        }
    }
}

//! Straight-line word expressions.
//!
//! A [`WordExpr`] describes a word over `{a, b}` without materializing it:
//! concatenation, powering and substitution `t[x, y]` nest freely and
//! subexpressions are shared by reference. Length, letter counts and
//! evaluation in any semigroup are computed structurally, so words with
//! billions of letters are handled without expansion.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::letters::{Letter, Word};
use crate::error::{Error, Result};
use crate::tropical::TropMatrix;

#[derive(Debug)]
pub enum Node {
    Letter(Letter),
    Concat(Vec<WordExpr>),
    Power(WordExpr, u64),
    Subst { target: WordExpr, a: WordExpr, b: WordExpr },
}

#[derive(Clone)]
pub struct WordExpr(Arc<Node>);

/// Explicit words at or below this length are materialized when comparing
/// or inspecting expressions.
pub const EXPLICIT_THRESHOLD: u64 = 100_000;

impl WordExpr {
    pub fn letter(l: Letter) -> Self {
        WordExpr(Arc::new(Node::Letter(l)))
    }

    pub fn a() -> Self {
        Self::letter(Letter::A)
    }

    pub fn b() -> Self {
        Self::letter(Letter::B)
    }

    /// An explicit word as an expression. The word must be nonempty.
    pub fn word(w: &Word) -> Result<Self> {
        match w.letters() {
            [] => Err(Error::EmptyWord),
            [l] => Ok(Self::letter(*l)),
            ls => Ok(WordExpr(Arc::new(Node::Concat(ls.iter().map(|&l| Self::letter(l)).collect())))),
        }
    }

    /// Parses an explicit word (see [`Word::parse`]) into an expression.
    pub fn parse(s: &str) -> Result<Self> {
        Self::word(&Word::parse(s)?)
    }

    pub fn concat(items: Vec<WordExpr>) -> Result<Self> {
        match items.len() {
            0 => Err(Error::EmptyWord),
            1 => Ok(items.into_iter().next().unwrap()),
            _ => Ok(WordExpr(Arc::new(Node::Concat(items)))),
        }
    }

    pub fn pow(&self, exp: u64) -> Result<Self> {
        match exp {
            0 => Err(Error::ZeroExponent),
            1 => Ok(self.clone()),
            _ => Ok(WordExpr(Arc::new(Node::Power(self.clone(), exp)))),
        }
    }

    /// `self[a, b]`: replace every `a` by `a_img` and every `b` by `b_img`.
    pub fn subst(&self, a_img: &WordExpr, b_img: &WordExpr) -> Self {
        WordExpr(Arc::new(Node::Subst { target: self.clone(), a: a_img.clone(), b: b_img.clone() }))
    }

    /// `self · other`.
    pub fn then(&self, other: &WordExpr) -> Self {
        WordExpr(Arc::new(Node::Concat(vec![self.clone(), other.clone()])))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn ptr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Homomorphic evaluation in a semigroup given by `mul`, with `a -> a_val`
    /// and `b -> b_val`. Powers use repeated squaring; a substitution
    /// evaluates its images first and then its target under them. Shared
    /// subexpressions are evaluated once per substitution context.
    pub fn evaluate<S, E, F>(&self, a_val: &S, b_val: &S, mul: F) -> std::result::Result<S, E>
    where
        S: Clone,
        E: From<Error>,
        F: Fn(&S, &S) -> std::result::Result<S, E>,
    {
        let mut ev = Evaluator { mul, envs: vec![(a_val.clone(), b_val.clone())], memo: HashMap::new() };
        ev.eval(self, 0)
    }

    /// Evaluation at a pair of tropical matrices.
    pub fn eval_matrices(&self, a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
        self.evaluate(a, b, |x: &TropMatrix, y: &TropMatrix| x.mul(y))
    }

    /// `(|w|_a, |w|_b)` of the expansion, computed without expanding.
    pub fn counts(&self) -> (BigUint, BigUint) {
        let unit_a = (BigUint::one(), BigUint::zero());
        let unit_b = (BigUint::zero(), BigUint::one());
        self.evaluate(&unit_a, &unit_b, |x: &(BigUint, BigUint), y: &(BigUint, BigUint)| {
            Ok::<_, Error>((&x.0 + &y.0, &x.1 + &y.1))
        })
        .expect("counting cannot fail")
    }

    pub fn letter_count(&self, l: Letter) -> BigUint {
        let (a, b) = self.counts();
        match l {
            Letter::A => a,
            Letter::B => b,
        }
    }

    pub fn expanded_length(&self) -> BigUint {
        let (a, b) = self.counts();
        a + b
    }

    /// The explicit word, provided its length is at most `limit`.
    pub fn expand(&self, limit: u64) -> Result<Word> {
        let length = self.expanded_length();
        if length > BigUint::from(limit) {
            return Err(Error::ExpansionTooLarge { length, limit: BigUint::from(limit) });
        }
        self.evaluate(&Word::letter(Letter::A), &Word::letter(Letter::B), |x: &Word, y: &Word| {
            Ok::<_, Error>(x.concat(y))
        })
    }

    /// Explicit form if short enough (see [`EXPLICIT_THRESHOLD`]).
    pub fn try_explicit(&self) -> Option<Word> {
        let len = self.expanded_length().to_u64()?;
        (len <= EXPLICIT_THRESHOLD).then(|| self.expand(EXPLICIT_THRESHOLD).expect("length checked"))
    }

    /// Number of distinct nodes reachable from this expression.
    pub fn node_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.ptr()) {
                continue;
            }
            match e.node() {
                Node::Letter(_) => {}
                Node::Concat(items) => stack.extend(items.iter().cloned()),
                Node::Power(base, _) => stack.push(base.clone()),
                Node::Subst { target, a, b } => stack.extend([target.clone(), a.clone(), b.clone()]),
            }
        }
        seen.len()
    }
}

impl From<Letter> for WordExpr {
    fn from(l: Letter) -> Self {
        WordExpr::letter(l)
    }
}

struct Evaluator<S, F> {
    mul: F,
    envs: Vec<(S, S)>,
    memo: HashMap<(usize, usize), S>,
}

impl<S, E, F> Evaluator<S, F>
where
    S: Clone,
    E: From<Error>,
    F: Fn(&S, &S) -> std::result::Result<S, E>,
{
    fn eval(&mut self, e: &WordExpr, env: usize) -> std::result::Result<S, E> {
        let key = (e.ptr(), env);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = match e.node() {
            Node::Letter(Letter::A) => return Ok(self.envs[env].0.clone()),
            Node::Letter(Letter::B) => return Ok(self.envs[env].1.clone()),
            Node::Concat(items) => {
                let mut iter = items.iter();
                let first = iter.next().ok_or(Error::EmptyWord)?;
                let mut acc = self.eval(first, env)?;
                for item in iter {
                    let v = self.eval(item, env)?;
                    acc = (self.mul)(&acc, &v)?;
                }
                acc
            }
            Node::Power(base, k) => {
                let base = self.eval(base, env)?;
                self.power(base, *k)?
            }
            Node::Subst { target, a, b } => {
                let va = self.eval(a, env)?;
                let vb = self.eval(b, env)?;
                self.envs.push((va, vb));
                let inner = self.envs.len() - 1;
                self.eval(target, inner)?
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    fn power(&self, base: S, k: u64) -> std::result::Result<S, E> {
        if k == 0 {
            return Err(Error::ZeroExponent.into());
        }
        let mut base = base;
        let mut acc: Option<S> = None;
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => (self.mul)(&a, &base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = (self.mul)(&base, &base)?;
        }
        Ok(acc.expect("k >= 1"))
    }
}

impl fmt::Debug for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Compact notation: explicit runs of letters are printed as words,
/// powers as `(..)^k`, substitutions as `(..)[x, y]`.
impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Letter(l) => write!(f, "{}", l.as_char()),
            Node::Concat(items) => {
                for item in items {
                    match item.node() {
                        Node::Letter(_) | Node::Power(..) => write!(f, "{item}")?,
                        _ => write!(f, "({item})")?,
                    }
                }
                Ok(())
            }
            Node::Power(base, k) => match base.node() {
                Node::Letter(_) => write!(f, "{base}^{k}"),
                _ => write!(f, "({base})^{k}"),
            },
            Node::Subst { target, a, b } => write!(f, "({target})[{a}, {b}]"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "t")]
enum ExprJson {
    #[serde(rename = "let")]
    Let { v: Letter },
    #[serde(rename = "cat")]
    Cat { items: Vec<ExprJson> },
    #[serde(rename = "pow")]
    Pow { base: Box<ExprJson>, exp: String },
    #[serde(rename = "sub")]
    Sub { target: Box<ExprJson>, a: Box<ExprJson>, b: Box<ExprJson> },
}

impl ExprJson {
    fn from_expr(e: &WordExpr) -> ExprJson {
        match e.node() {
            Node::Letter(l) => ExprJson::Let { v: *l },
            Node::Concat(items) => ExprJson::Cat { items: items.iter().map(ExprJson::from_expr).collect() },
            Node::Power(base, k) => ExprJson::Pow { base: Box::new(ExprJson::from_expr(base)), exp: k.to_string() },
            Node::Subst { target, a, b } => ExprJson::Sub {
                target: Box::new(ExprJson::from_expr(target)),
                a: Box::new(ExprJson::from_expr(a)),
                b: Box::new(ExprJson::from_expr(b)),
            },
        }
    }

    fn into_expr(self) -> Result<WordExpr> {
        Ok(match self {
            ExprJson::Let { v } => WordExpr::letter(v),
            ExprJson::Cat { items } => {
                let items = items.into_iter().map(ExprJson::into_expr).collect::<Result<Vec<_>>>()?;
                if items.is_empty() {
                    return Err(Error::EmptyWord);
                }
                WordExpr(Arc::new(Node::Concat(items)))
            }
            ExprJson::Pow { base, exp } => {
                let k: u64 = exp.parse().map_err(|_| Error::Invalid(format!("bad exponent {exp:?}")))?;
                if k == 0 {
                    return Err(Error::ZeroExponent);
                }
                WordExpr(Arc::new(Node::Power(base.into_expr()?, k)))
            }
            ExprJson::Sub { target, a, b } => target.into_expr()?.subst(&a.into_expr()?, &b.into_expr()?),
        })
    }
}

impl Serialize for WordExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExprJson::from_expr(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WordExpr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        ExprJson::deserialize(deserializer)?.into_expr().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::tropical::{t, NEG_INF};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn e(s: &str) -> WordExpr {
        WordExpr::parse(s).unwrap()
    }

    #[test]
    fn lengths_and_counts() {
        let p = WordExpr::a().pow(12).unwrap();
        assert_eq!(p.expanded_length(), BigUint::from(12u32));
        let s = e("abaab").subst(&e("ab"), &e("ba"));
        assert_eq!(s.letter_count(Letter::A), BigUint::from(5u32));
        assert_eq!(s.expand(100).unwrap(), w("ab^2a^2bab^2a"));
    }

    #[test]
    fn expansion_limits() {
        let cat = WordExpr::concat(vec![WordExpr::a(), WordExpr::b()]).unwrap();
        assert_eq!(cat.expand(10).unwrap(), w("ab"));
        let big = e("ab").pow(1_000_000).unwrap();
        match big.expand(1000) {
            Err(Error::ExpansionTooLarge { length, .. }) => assert_eq!(length, BigUint::from(2_000_000u32)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(big.try_explicit().is_none());
    }

    #[test]
    fn rejects_degenerate_nodes() {
        assert_eq!(WordExpr::word(&Word::empty()).unwrap_err(), Error::EmptyWord);
        assert_eq!(WordExpr::a().pow(0).unwrap_err(), Error::ZeroExponent);
        assert!(WordExpr::concat(vec![]).is_err());
    }

    #[test]
    fn evaluate_single_letter_and_free_semigroup() {
        let m = TropMatrix::diag_i64(&[1, 2]);
        let id = TropMatrix::identity(2);
        assert_eq!(WordExpr::a().eval_matrices(&m, &id).unwrap(), m);
        let s = e("abb").subst(&e("ba"), &e("a")).pow(3).unwrap();
        let free = s
            .evaluate(&w("a"), &w("b"), |x: &Word, y: &Word| Ok::<_, Error>(x.concat(y)))
            .unwrap();
        assert_eq!(free, s.expand(1000).unwrap());
    }

    #[test]
    fn evaluation_at_factor_witness() {
        // witness for w = aa: diag(0,-1,-2) and the shifted 0-band
        let a = TropMatrix::diag_i64(&[0, -1, -2]);
        let b = TropMatrix::from_i64_rows(&[
            &[Some(0), Some(0), None],
            &[None, None, Some(0)],
            &[None, None, Some(2)],
        ])
        .unwrap();
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        let u = e("abaab").eval_matrices(&ab, &ba).unwrap();
        let v = e("abbab").eval_matrices(&ab, &ba).unwrap();
        assert_eq!(*u.get(0, 2), t(-1));
        assert_eq!(*v.get(0, 2), t(-2));
        assert_eq!(*u.get(2, 0), NEG_INF);
    }

    #[test]
    fn dimension_errors_propagate() {
        let r = e("ab").eval_matrices(&TropMatrix::identity(2), &TropMatrix::identity(3));
        assert_eq!(r.unwrap_err(), Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn json_encoding() {
        let s = e("ab").pow(62).unwrap().subst(&WordExpr::a(), &e("ba"));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"t":"sub","target":{"t":"pow","base":{"t":"cat","items":[{"t":"let","v":"a"},{"t":"let","v":"b"}]},"exp":"62"},"a":{"t":"let","v":"a"},"b":{"t":"cat","items":[{"t":"let","v":"b"},{"t":"let","v":"a"}]}}"#
        );
        let back: WordExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back.expand(1000).unwrap(), s.expand(1000).unwrap());
        assert!(serde_json::from_str::<WordExpr>(r#"{"t":"pow","base":{"t":"let","v":"a"},"exp":"0"}"#).is_err());
        assert!(serde_json::from_str::<WordExpr>(r#"{"t":"cat","items":[]}"#).is_err());
    }

    // random expression trees whose expansion stays small
    pub(crate) fn arb_expr() -> impl Strategy<Value = WordExpr> {
        let leaf = prop_oneof![Just(WordExpr::a()), Just(WordExpr::b())];
        leaf.prop_recursive(4, 24, 4, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 1..4).prop_map(|v| WordExpr::concat(v).unwrap()),
                (inner.clone(), 1u64..4).prop_map(|(b, k)| b.pow(k).unwrap()),
                (inner.clone(), inner.clone(), inner).prop_map(|(t, a, b)| t.subst(&a, &b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn structural_counts_match_expansion(x in arb_expr()) {
            let len = x.expanded_length();
            prop_assume!(len <= BigUint::from(10_000u32));
            let word = x.expand(10_000).unwrap();
            prop_assert_eq!(BigUint::from(word.len()), len);
            prop_assert_eq!(BigUint::from(word.count(Letter::A)), x.letter_count(Letter::A));
        }

        #[test]
        fn subst_counts_compose(t in arb_expr(), x in arb_expr(), y in arb_expr()) {
            let s = t.subst(&x, &y);
            let (ta, tb) = t.counts();
            let (xa, _) = x.counts();
            let (ya, _) = y.counts();
            prop_assert_eq!(s.letter_count(Letter::A), ta * xa + tb * ya);
        }

        #[test]
        fn matrix_evaluation_matches_expansion(x in arb_expr(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            prop_assume!(x.expanded_length() <= BigUint::from(10_000u32));
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut gen = || TropMatrix::from_fn(3, |_, _| {
                if rng.gen_ratio(1, 5) { NEG_INF } else { t(rng.gen_range(-8..=8)) }
            });
            let (a, b) = (gen(), gen());
            let direct = x.eval_matrices(&a, &b).unwrap();
            let expanded = WordExpr::word(&x.expand(10_000).unwrap()).unwrap().eval_matrices(&a, &b).unwrap();
            prop_assert_eq!(direct, expanded);
        }
    }
}

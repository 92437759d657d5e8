use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::expr::WordExpr;
use super::grammar::{first_difference, Difference};
use super::letters::Word;
use crate::error::{Error, Result};

/// A semigroup identity `lhs = rhs`: two distinct nonempty words.
#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    lhs: WordExpr,
    rhs: WordExpr,
}

impl Identity {
    /// Builds an identity, rejecting pairs whose expansions coincide.
    pub fn new(lhs: WordExpr, rhs: WordExpr) -> Result<Self> {
        let id = Identity { lhs, rhs };
        if !id.sides_differ()? {
            return Err(Error::NotAnIdentity(format!("both sides expand to the same word: {}", id.lhs)));
        }
        Ok(id)
    }

    pub fn from_words(lhs: &Word, rhs: &Word) -> Result<Self> {
        Self::new(WordExpr::word(lhs)?, WordExpr::word(rhs)?)
    }

    pub fn parse(lhs: &str, rhs: &str) -> Result<Self> {
        Self::from_words(&Word::parse(lhs)?, &Word::parse(rhs)?)
    }

    pub fn lhs(&self) -> &WordExpr {
        &self.lhs
    }

    pub fn rhs(&self) -> &WordExpr {
        &self.rhs
    }

    fn sides_differ(&self) -> Result<bool> {
        if let (Some(l), Some(r)) = (self.lhs.try_explicit(), self.rhs.try_explicit()) {
            return Ok(l != r);
        }
        Ok(first_difference(&self.lhs, &self.rhs)?.is_some())
    }

    /// The first position where the two sides differ, with the letters found
    /// there.
    pub fn first_difference(&self) -> Result<Difference> {
        first_difference(&self.lhs, &self.rhs)?
            .ok_or_else(|| Error::NotAnIdentity("sides are equal".to_string()))
    }

    /// Letter counts `((|lhs|_a, |lhs|_b), (|rhs|_a, |rhs|_b))`.
    pub fn counts(&self) -> ((BigUint, BigUint), (BigUint, BigUint)) {
        (self.lhs.counts(), self.rhs.counts())
    }

    /// Both sides contain each letter equally often.
    pub fn is_balanced(&self) -> bool {
        let (l, r) = self.counts();
        l == r
    }

    pub fn lengths(&self) -> (BigUint, BigUint) {
        (self.lhs.expanded_length(), self.rhs.expanded_length())
    }

    /// `<lhs, rhs>[x, y]`.
    pub fn subst(&self, x: &WordExpr, y: &WordExpr) -> Result<Identity> {
        Identity::new(self.lhs.subst(x, y), self.rhs.subst(x, y))
    }

    /// Right-multiplies both sides by `suffix`.
    pub fn append(&self, suffix: &WordExpr) -> Result<Identity> {
        Identity::new(self.lhs.then(suffix), self.rhs.then(suffix))
    }

    pub fn swapped(&self) -> Identity {
        Identity { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    /// Stable hex SHA-256 of the JSON encoding.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("identity serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Deserialize)]
struct IdentityJson {
    lhs: WordExpr,
    rhs: WordExpr,
}

impl<'de> Deserialize<'de> for Identity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = IdentityJson::deserialize(deserializer)?;
        Identity::new(raw.lhs, raw.rhs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    #[test]
    fn rejects_equal_sides() {
        assert!(Identity::parse("ab", "ab").is_err());
        let x = WordExpr::parse("ab").unwrap().pow(3).unwrap();
        let y = WordExpr::parse("abab").unwrap().then(&WordExpr::parse("ab").unwrap());
        assert!(matches!(Identity::new(x, y), Err(Error::NotAnIdentity(_))));
    }

    #[test]
    fn adjan_is_balanced_and_distinct() {
        let id = Identity::parse("abaab", "abbab")
            .unwrap()
            .subst(&WordExpr::parse("ab").unwrap(), &WordExpr::parse("ba").unwrap())
            .unwrap();
        assert!(id.is_balanced());
        assert_eq!(id.lengths().0, BigUint::from(10u32));
        let d = id.first_difference().unwrap();
        assert_eq!(d.position, BigUint::from(4u32));
        assert_eq!((d.lhs, d.rhs), (Some(Letter::A), Some(Letter::B)));
    }

    #[test]
    fn json_round_trip_and_digest() {
        let id = Identity::parse("ab", "ba").unwrap();
        let json = serde_json::to_string(&id).unwrap();
        let back: Identity = serde_json::from_str(&json).unwrap();
        assert_eq!(back.digest(), id.digest());
        assert_ne!(id.swapped().digest(), id.digest());
        assert!(serde_json::from_str::<Identity>(r#"{"lhs":{"t":"let","v":"a"},"rhs":{"t":"let","v":"a"}}"#).is_err());
    }
}

//! Words over `{a, b}`, compressed word expressions and identities.

pub mod expr;
pub mod grammar;
pub mod identity;
pub mod letters;

pub use expr::{Node, WordExpr, EXPLICIT_THRESHOLD};
pub use grammar::{first_difference, letter_at, Difference, Grammar};
pub use identity::Identity;
pub use letters::{all_words, is_factor, Letter, Word};

/// Serde helper: arbitrary-precision naturals as decimal strings.
pub(crate) mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

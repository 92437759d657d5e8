//! Exact max-plus scalars.
//!
//! A [`TropValue`] is either `-inf` or an integer of unbounded size. Values
//! that fit in an `i64` are stored inline; arithmetic that would overflow is
//! promoted to a [`BigInt`] and demoted again whenever the result fits.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    NegInf,
    Small(i64),
    Big(BigInt),
}

/// An element of the tropical semiring: `max` is addition, `+` is
/// multiplication, and `-inf` is the additive identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropValue(Repr);

impl TropValue {
    pub const NEG_INF: TropValue = TropValue(Repr::NegInf);
    /// The multiplicative unit.
    pub const ZERO: TropValue = TropValue(Repr::Small(0));

    pub const fn fin(v: i64) -> Self {
        TropValue(Repr::Small(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => TropValue(Repr::Small(s)),
            None => TropValue(Repr::Big(v)),
        }
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self.0, Repr::NegInf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_neg_inf()
    }

    /// The finite value as an `i64`, if it is finite and fits.
    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            _ => None,
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::NegInf => None,
            Repr::Small(v) => Some(BigInt::from(*v)),
            Repr::Big(v) => Some(v.clone()),
        }
    }

    /// Tropical addition.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical multiplication: integer addition with `-inf` absorbing.
    pub fn otimes(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::NegInf, _) | (_, Repr::NegInf) => Self::NEG_INF,
            (Repr::Small(x), Repr::Small(y)) => match x.checked_add(*y) {
                Some(s) => TropValue(Repr::Small(s)),
                None => Self::from_bigint(BigInt::from(*x) + BigInt::from(*y)),
            },
            _ => {
                let x = self.to_bigint().unwrap();
                let y = other.to_bigint().unwrap();
                Self::from_bigint(x + y)
            }
        }
    }

    /// `k`-fold tropical power, i.e. `k * self`. `k = 0` gives the unit.
    pub fn scale(&self, k: u64) -> Self {
        match &self.0 {
            Repr::NegInf if k == 0 => Self::ZERO,
            Repr::NegInf => Self::NEG_INF,
            Repr::Small(v) => match i64::try_from(k).ok().and_then(|k| v.checked_mul(k)) {
                Some(s) => TropValue(Repr::Small(s)),
                None => Self::from_bigint(BigInt::from(*v) * BigInt::from(k)),
            },
            Repr::Big(v) => Self::from_bigint(v * BigInt::from(k)),
        }
    }

    /// Additive inverse of a finite value; `-inf` stays `-inf`.
    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::NegInf => Self::NEG_INF,
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => TropValue(Repr::Small(n)),
                None => Self::from_bigint(-BigInt::from(*v)),
            },
            Repr::Big(v) => Self::from_bigint(-v.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }
}

impl From<i64> for TropValue {
    fn from(v: i64) -> Self {
        TropValue::fin(v)
    }
}

impl From<BigInt> for TropValue {
    fn from(v: BigInt) -> Self {
        TropValue::from_bigint(v)
    }
}

impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::NegInf, Repr::NegInf) => Ordering::Equal,
            (Repr::NegInf, _) => Ordering::Less,
            (_, Repr::NegInf) => Ordering::Greater,
            (Repr::Small(x), Repr::Small(y)) => x.cmp(y),
            _ => self.to_bigint().unwrap().cmp(&other.to_bigint().unwrap()),
        }
    }
}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for TropValue {
    fn default() -> Self {
        Self::NEG_INF
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::NegInf => f.write_str("-inf"),
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid tropical value {0:?}")]
pub struct ParseTropValueError(String);

impl FromStr for TropValue {
    type Err = ParseTropValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "-inf" {
            return Ok(Self::NEG_INF);
        }
        t.parse::<BigInt>()
            .map(Self::from_bigint)
            .map_err(|_| ParseTropValueError(s.to_string()))
    }
}

// Finite values that fit in an i64 are written as JSON numbers, everything
// larger as a decimal string, and -inf as the string "-inf".
impl Serialize for TropValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::NegInf => serializer.serialize_str("-inf"),
            Repr::Small(v) => serializer.serialize_i64(*v),
            Repr::Big(v) => serializer.serialize_str(&v.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for TropValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TropVisitor;

        impl Visitor<'_> for TropVisitor {
            type Value = TropValue;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or the string \"-inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<TropValue, E> {
                Ok(TropValue::fin(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<TropValue, E> {
                Ok(TropValue::from_bigint(BigInt::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<TropValue, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(TropVisitor)
    }
}

/// Shorthand used throughout the crate and its tests.
pub fn t(v: i64) -> TropValue {
    TropValue::fin(v)
}

pub const NEG_INF: TropValue = TropValue::NEG_INF;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_value() -> impl Strategy<Value = TropValue> {
        prop_oneof![
            1 => Just(TropValue::NEG_INF),
            6 => (-50i64..50).prop_map(TropValue::fin),
            1 => prop_oneof![Just(i64::MAX), Just(i64::MIN), Just(i64::MAX - 3)].prop_map(TropValue::fin),
        ]
    }

    #[test]
    fn neg_inf_absorbs_and_is_neutral() {
        assert_eq!(t(5).otimes(&NEG_INF), NEG_INF);
        assert_eq!(NEG_INF.otimes(&t(-2)), NEG_INF);
        assert_eq!(t(5).oplus(&NEG_INF), t(5));
        assert_eq!(NEG_INF.oplus(&NEG_INF), NEG_INF);
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = t(i64::MAX).otimes(&t(1));
        assert!(big.as_i64().is_none());
        assert_eq!(big.to_bigint().unwrap(), BigInt::from(i64::MAX) + 1);
        let back = big.otimes(&t(-1));
        assert_eq!(back.as_i64(), Some(i64::MAX));
        assert!(big > t(i64::MAX));
        assert_eq!(t(i64::MIN).neg().to_bigint().unwrap(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn scale_matches_repeated_otimes() {
        let mut acc = TropValue::ZERO;
        for _ in 0..7 {
            acc = acc.otimes(&t(-3));
        }
        assert_eq!(t(-3).scale(7), acc);
        assert_eq!(NEG_INF.scale(0), TropValue::ZERO);
    }

    #[test]
    fn json_encoding() {
        let vals = vec![t(3), NEG_INF, t(i64::MAX).otimes(&t(5))];
        let s = serde_json::to_string(&vals).unwrap();
        assert_eq!(s, r#"[3,"-inf","9223372036854775812"]"#);
        let back: Vec<TropValue> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vals);
    }

    proptest! {
        #[test]
        fn semiring_axioms(x in arb_value(), y in arb_value(), z in arb_value()) {
            prop_assert_eq!(x.oplus(&y), y.oplus(&x));
            prop_assert_eq!(x.otimes(&y), y.otimes(&x));
            prop_assert_eq!(x.oplus(&y).oplus(&z), x.oplus(&y.oplus(&z)));
            prop_assert_eq!(x.otimes(&y).otimes(&z), x.otimes(&y.otimes(&z)));
            prop_assert_eq!(x.oplus(&x), x.clone());
            prop_assert_eq!(x.otimes(&y.oplus(&z)), x.otimes(&y).oplus(&x.otimes(&z)));
            prop_assert_eq!(x.otimes(&TropValue::ZERO), x.clone());
            prop_assert_eq!(x.otimes(&NEG_INF), NEG_INF);
        }
    }
}

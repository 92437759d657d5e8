//! Max-plus matrix semigroups and the identities that separate them.
//!
//! The crate provides exact tropical arithmetic ([`tropical`]), compressed
//! words and homomorphic evaluation ([`word`]), the identity and witness
//! constructions for upper-triangular and full tropical matrix semigroups
//! ([`construct`]), the rank-`n` plactic monoid with its tropical
//! representation ([`plactic`]), and a seeded verification engine
//! ([`verify`]).

pub mod construct;
pub mod error;
pub mod plactic;
pub mod reproduce;
pub mod tropical;
pub mod verify;
pub mod word;

pub use error::{Error, Result};

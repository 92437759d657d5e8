//! The plactic monoid: Schensted tableaux, Knuth classes, and a faithful
//! tropical representation indexed by subsets of `{1, .., n}`.

pub mod lift;
pub mod rho;
pub mod tableau;

pub use lift::{lift_inner_words, p4_ut5_separation, plactic_identity_lift};
pub use rho::{
    elements, interval_union, order_interval, rho, rho_generator, rho_identity_element, subset_leq, subset_of, Rho,
    RhoImage, Subset, SubsetIndex,
};
pub use tableau::{
    all_plactic_words, check_letters, format_word, knuth_closure, parse_word, plactic_mul, Tableau, CLOSURE_CAP,
};

use crate::error::Result;
use crate::tropical::TropMatrix;
use crate::word::WordExpr;

/// Evaluates `e` in the plactic monoid with `a -> x`, `b -> y`.
pub fn eval_tableau(e: &WordExpr, x: &[u8], y: &[u8], rank: u8) -> Result<Tableau> {
    let (tx, ty) = (Tableau::from_word(x, rank)?, Tableau::from_word(y, rank)?);
    e.evaluate(&tx, &ty, |s, t| s.mul(t))
}

/// Evaluates `e` through `rho` with `a -> rho(x)`, `b -> rho(y)`.
pub fn eval_rho(e: &WordExpr, x: &[u8], y: &[u8], r: &Rho) -> Result<TropMatrix> {
    e.eval_matrices(&r.image(x)?, &r.image(y)?)
}

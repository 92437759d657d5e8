//! Exact max-plus arithmetic: scalars, square matrices, permutations and
//! the compound digraph view of a matrix pair.

pub mod digraph;
pub mod matrix;
pub mod perm;
pub mod value;

pub use digraph::{CompoundDigraph, Edge, Label, LabeledPath};
pub use matrix::{Restricted, TropMatrix};
pub use perm::Permutation;
pub use value::{t, TropValue, NEG_INF};

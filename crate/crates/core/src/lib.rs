//! Odd Gel'fand-Zetlin bases for covariant gl(n|n) modules.
//!
//! The crate enumerates the basis patterns of a covariant module, realizes
//! the odd generators as sparse operators with exact entries of the form
//! `c·√d`, checks the algebra relations exactly, and extends the
//! construction to stable patterns of gl(∞|∞).

pub mod action;
pub mod error;
pub mod infinite;
pub mod patterns;
pub mod scalars;
pub mod schur;
pub mod sparse;
pub mod verify;

pub use action::{
    apply, apply_diagonal, apply_lowering, apply_raising, generator_matrix, l_value, weyl_element,
    Generator, Module,
};
pub use error::{Error, Result};
pub use infinite::{
    check_truncation_consistency, connectivity_probe, infinite_apply, infinite_highest_weight,
    truncate, StablePattern, StableWeight,
};
pub use patterns::{
    enumerate, highest_weight_pattern, validate, weight, Basis, GZPattern, Violation, WeightVector,
};
pub use scalars::{RadicalSum, Rational, SignedRadical};
pub use schur::{
    horizontal_strip_predecessors, in_hook, partition_from_weight, super_character,
    super_dimension, vertical_strip_predecessors, weight_from_partition, HighestWeight, Partition,
};
pub use sparse::{super_bracket, Parity, SparseOperator};
pub use verify::{Budget, Failure, VerificationReport};

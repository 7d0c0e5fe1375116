//! Exact determinants by pivot condensation.
//!
//! An order-`n` determinant is reduced to an order-`n-1` determinant of 2x2
//! minors anchored at a pivot, and the reduction repeats down to order 2.
//! The crate provides the single condensation steps, the recursive
//! algorithm with traces and operation counts, independent oracles
//! (Laplace, Bareiss, rational Gauss), identity verification and a
//! benchmark harness measuring coefficient growth.

pub mod bench;
pub mod condense;
pub mod corpus;
pub mod fixtures;
pub mod matrix;
pub mod oracle;
pub mod par;
pub mod scalar;
pub mod trace;
pub mod verify;

pub use condense::{
    condense_at, condense_at_11, det_condensation, det_condensation_with,
    dodgson_identity_residual, select_pivot, CondensationStep, CondenseError, CondenseOptions,
    DetResult, OpCounts, PivotStrategy, TraceEntry,
};
pub use matrix::{Matrix, MatrixError, PivotSpec};
pub use oracle::{det_bareiss, det_cofactor, det_gauss_rational, OracleError, OracleKind};
pub use par::Execution;
pub use scalar::{
    bit_length, parse_scalar, Float, Integer, Rational, Scalar, ScalarError, ScalarKind,
};

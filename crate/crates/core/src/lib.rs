//! Exact arithmetic and algebraic-complexity primitives: rationals and prime
//! fields, truncated power series in a formal infinitesimal, circuit DAGs with
//! reverse-mode derivatives, (trace) algebraic branching programs,
//! matrix-multiplication tensors with rank-one decompositions, and a
//! deterministic identity-testing pipeline built on low-rank matrix
//! substitution.

pub mod abp;
pub mod circuit;
pub mod cyclecover;
pub mod format;
pub mod mmtensor;
pub mod pitgen;
pub mod ring;
pub mod sympoly;

pub use ring::{EpsSeries, Field, RingElem, Scalar, SeriesCtx, DEFAULT_PRIME};

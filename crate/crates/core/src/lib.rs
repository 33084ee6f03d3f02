//! Exact computation in the graded ring of semi-invariants of m-tuples of
//! n x n matrices under the left-right SL_n x SL_n action.
//!
//! The crate computes, entirely in exact arithmetic:
//!
//! - irreducible symmetric-group characters (border-strip recursion with
//!   memoization and a persistent row cache) — [`character`];
//! - Kronecker coefficients and tensor-square decompositions —
//!   [`kronecker`];
//! - dimensions of Schur functors and of the graded pieces of the
//!   invariant ring, by two independent routes — [`graded`];
//! - Hilbert series numerators over the universal denominator (1-t)^r,
//!   with palindromy validation — [`hilbert`];
//! - explicit invariants of matrix tuples, exact invariance checks along
//!   random special-linear orbits, and the degree <= 6 null-cone test for
//!   3 x 3 matrices — [`invariant`];
//! - generating-degree bounds — [`bounds`].
//!
//! With the default `parallel` feature the class- and coefficient-level
//! loops fan out over rayon; disabling it leaves a dependency-light
//! sequential build with identical results.

pub mod arith;
pub mod bounds;
pub mod cache;
pub mod character;
pub mod error;
pub mod graded;
pub mod hilbert;
pub mod invariant;
pub mod kronecker;
pub mod linalg;
pub mod partition;

mod exec;
mod serde_util;

pub use character::{CharEngine, ClassVector};
pub use error::{Error, Result};
pub use partition::{parse_partition, partitions_of, Partition};

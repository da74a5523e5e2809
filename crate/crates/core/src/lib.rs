//! Exact determinant identities for amalgamated matrices and multivariable
//! Vandermonde determinants, with a Fekete-point estimator for the
//! transfinite diameter of compact sets.
//!
//! The central object is the amalgam `A ⋆ B` of an `mn×m` matrix `A` and an
//! `mn×n` matrix `B`: the square matrix whose i-th row is the Kronecker
//! product of row i of `A` with row i of `B`. Its determinant expands as a
//! signed sum of products of row minors of `A` and `B`, indexed by pairs of
//! rectangular standard Young tableaux, with coefficients read off from the
//! inverse transpose of a sign-conjugated pairing matrix. Multivariable
//! Vandermonde matrices are amalgams of smaller Vandermonde matrices, which
//! turns the expansion into sums of completely factorising terms.

pub mod amalgam;
pub mod cli;
pub mod error;
pub mod exact_core;
pub mod fayers;
pub mod fekete;
pub mod tableaux;
pub mod vandermonde;

pub use error::{Error, Result};

//! Exact scalar and polynomial arithmetic plus fraction-free determinants.
//!
//! Everything downstream (tableau pairings, amalgam identities, Vandermonde
//! expansions) is verified against the determinants computed here, so all
//! arithmetic in this module is exact: arbitrary-precision rationals and
//! sparse multivariate polynomials over them.

mod matrix;
mod poly;
mod scalar;

pub use matrix::ExactMatrix;
pub use poly::{MultiPoly, VarSet};
pub use scalar::{parse_rat, rat, rat_from, Rat, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored reduced with positive
/// denominator (num-rational canonicalizes on construction).
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational from a numerator/denominator pair.
pub fn rat_from(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a decimal-rational string: "-3" or "5/7".
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

/// The coefficient domains the determinant and amalgam machinery runs over.
///
/// `exact_div` is only invoked where divisibility is guaranteed (Bareiss
/// pivots); an inexact division indicates a bug and panics.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, rhs: &Self) -> Self;

    /// Whether cofactor expansion should be used for an `n`-square
    /// determinant instead of fraction-free elimination.
    fn prefer_cofactor(&self, n: usize) -> bool {
        let _ = n;
        false
    }
}

impl Scalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }

    fn one_like(&self) -> Self {
        Rat::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn exact_div(&self, rhs: &Self) -> Self {
        assert!(!Zero::is_zero(rhs), "division by zero");
        self / rhs
    }
}

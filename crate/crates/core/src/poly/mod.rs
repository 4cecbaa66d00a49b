//! Exact sparse multivariate polynomials over the rationals.
//!
//! Everything else in the crate is built on [`Polynomial`]: the free Poisson
//! algebra is a polynomial ring on Lie basis elements, and the Veronese
//! machinery works with weighted degrees of these polynomials.

mod fraction;
mod gcd;
mod grading;
mod monomial;
mod polynomial;
mod root;

pub use fraction::{reduce_fraction, RationalFunction};
pub use gcd::gcd;
pub use grading::GradedDecomposition;
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use root::{dth_root, rational_root};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Coefficient field: arbitrary-precision rationals, always reduced.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right} indeterminates")]
    ArityMismatch { left: usize, right: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: nonzero remainder {remainder:?}")]
    NotDivisible { remainder: Polynomial },
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("grading modulus must be at least 2, got {0}")]
    BadModulus(u32),
    #[error("no rational {degree}-th root: {reason}")]
    NoRoot { degree: u32, reason: String },
    #[error("root degree must be positive and the radicand nonzero")]
    BadRootInput,
}

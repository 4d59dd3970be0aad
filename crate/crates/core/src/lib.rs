//! Exact decision procedures for Gaussian conditional-independence
//! implications on cyclic binomial models.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! - [`linalg`]: exact determinants, ranks, Schur complements, Sylvester
//!   positivity, Smith/Hermite normal forms.
//! - [`ci`]: statements `A _||_ B | C`, models, and the rank test on a
//!   covariance matrix.
//! - [`lattice`]: exponent vectors of binomial generators and the lattice
//!   basis matrix.
//! - [`primes`]: sign-pattern search for the minimal primes of a lattice
//!   basis ideal.
//! - [`certificates`]: Hadamard products, the positive-definite exclusion
//!   certificate for the toric component, and counterexample matrices.
//! - [`engine`]: the end-to-end implication and sharpness checks.
//!
//! All arithmetic in the decision path is exact. The matrix code is generic
//! over [`scalar::Field`]; the aliases below fix the exact instantiation.

pub mod certificates;
pub mod ci;
pub mod document;
pub mod engine;
mod error;
pub mod lattice;
pub mod linalg;
pub mod primes;
pub mod sampling;
pub mod scalar;

use num_bigint::BigInt;

pub use error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;
pub type Integer = BigInt;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type RationalSymMatrix = linalg::SymMatrix<Rational>;
pub type IntMatrix = linalg::Matrix<Integer>;

/// Shorthand for the rational `numer / denom`.
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

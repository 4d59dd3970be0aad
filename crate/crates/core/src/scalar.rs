//! Scalar traits the matrix code is generic over.
//!
//! Every algorithm in [`crate::linalg`] that divides is written against
//! [`Field`]. The exact instantiation used throughout the crate is
//! [`crate::Rational`]; `f64` satisfies the same bound and is only used by
//! floating-point cross-checks.

use std::fmt::Debug;

use num_traits::{Num, Signed};

/// An ordered field with exact or approximate division.
pub trait Field: Clone + Debug + PartialOrd + Num + Signed {}

impl<T> Field for T where T: Clone + Debug + PartialOrd + Num + Signed {}

/// A Euclidean ring used by the integer lattice routines (Smith and Hermite
/// normal forms).
pub trait EuclideanRing: Clone + Debug + num_integer::Integer + Signed {}

impl<T> EuclideanRing for T where T: Clone + Debug + num_integer::Integer + Signed {}

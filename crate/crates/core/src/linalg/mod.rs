//! Exact linear algebra over fields and Euclidean rings.

mod elimination;
mod integer;
mod matrix;

pub use elimination::{
    det, is_diagonally_dominant, is_positive_definite, leading_principal_minors, rank,
    schur_complement, solve,
};
pub use integer::{
    hermite_normal_form, in_integer_row_span, smith_normal_form, HermiteForm, SmithForm,
};
pub use matrix::{Matrix, SymMatrix};

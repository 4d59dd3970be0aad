//! Hadamard products, the certificate that the toric component of the
//! cyclic model misses the positive-definite cone, and the explicit
//! counterexample matrices.
//!
//! For positive definite `Sigma`, the cyclic Hadamard power
//! `Sigma * pi(Sigma) * ... * pi^{n-1}(Sigma)` is positive definite, and its
//! `{1,3}` principal minor being positive reads
//! `(prod s_ii)^2 > (prod s_{i-2,i})^2`. Summing the rows of the basis
//! matrix gives `v = sum e_ii - sum e_{i-2,i}`, so the binomial
//! `prod s_ii - prod s_{i-2,i}` lies in the toric ideal and forces equality
//! of those squares on its variety.

use serde::Serialize;

use crate::ci::{cyclic_model, wrap};
use crate::error::{Error, Result};
use crate::lattice::{basis_matrix, CovVariable, ExponentVector};
use crate::linalg::{in_integer_row_span, SymMatrix};
use crate::scalar::Field;
use crate::{rat, Integer, Rational};

/// Entrywise product.
pub fn hadamard<T: Field>(sigma: &SymMatrix<T>, tau: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    if sigma.n() != tau.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("{0}x{0}", sigma.n()),
            found: format!("{0}x{0}", tau.n()),
        });
    }
    Ok(SymMatrix::from_fn(sigma.n(), |i, j| {
        sigma.get(i, j).clone() * tau.get(i, j).clone()
    }))
}

/// `pi^k(Sigma)` for the cycle `pi = (1 2 ... n)`: entry `(i, j)` of the
/// result is `Sigma[i - k, j - k]`, indices mod `n`. `k` is reduced mod `n`.
pub fn cyclic_permute<T: Field>(sigma: &SymMatrix<T>, k: usize) -> SymMatrix<T> {
    let n = sigma.n();
    if n == 0 {
        return sigma.clone();
    }
    let back = n - k % n;
    SymMatrix::from_fn(n, |i, j| sigma.get(wrap(i, back, n), wrap(j, back, n)).clone())
}

/// `Sigma * pi(Sigma) * ... * pi^{n-1}(Sigma)`.
pub fn cyclic_hadamard_power<T: Field>(sigma: &SymMatrix<T>) -> SymMatrix<T> {
    let n = sigma.n();
    (1..n).fold(sigma.clone(), |acc, k| {
        hadamard(&acc, &cyclic_permute(sigma, k)).expect("rotations keep the dimension")
    })
}

/// Evidence that the toric component of the cyclic model on `n` variables
/// contains the binomial `prod s_ii - prod s_{i-2,i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionCertificate {
    pub n: usize,
    /// Coefficients of `v` in the rows of the basis matrix.
    #[serde(serialize_with = "serialize_integers")]
    pub lattice_coeffs: Vec<Integer>,
    pub binomial: ExponentVector,
    /// `s_11, ..., s_nn`.
    pub positive_product_vars: Vec<CovVariable>,
    /// `s_{i-2,i}` for `i = 1..n`; repeats for `n = 4`.
    pub negative_product_vars: Vec<CovVariable>,
}

fn serialize_integers<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Builds and verifies the certificate for the cyclic model on `n >= 4`
/// variables.
pub fn exclusion_certificate(n: usize) -> Result<ExclusionCertificate> {
    let model = cyclic_model(n)?;
    let basis = basis_matrix(&model)?;
    let v = (0..basis.rows()).fold(ExponentVector::new(), |acc, r| &acc + &basis.row_vector(r));

    let positive_product_vars: Vec<CovVariable> = (1..=n).map(|i| CovVariable::new(i, i)).collect();
    let negative_product_vars: Vec<CovVariable> =
        (1..=n).map(|i| CovVariable::new(wrap(i, n - 2, n), i)).collect();
    let expected = ExponentVector::from_terms(
        positive_product_vars
            .iter()
            .map(|&x| (x, 1))
            .chain(negative_product_vars.iter().map(|&x| (x, -1))),
    );
    if v != expected {
        return Err(Error::Internal(format!("row sum of M_{n} is not sum e_ii - sum e_(i-2,i)")));
    }

    let dense: Vec<Integer> = v.to_dense(basis.var_order()).into_iter().map(Integer::from).collect();
    let lattice_coeffs = in_integer_row_span(&dense, basis.matrix())?
        .ok_or_else(|| Error::Internal("v is not in the row lattice".into()))?;
    if lattice_coeffs.iter().any(|c| *c != Integer::from(1)) {
        return Err(Error::Internal(format!("unexpected lattice coefficients {lattice_coeffs:?}")));
    }
    let recombined: Vec<Integer> = (0..basis.cols())
        .map(|j| {
            (0..basis.rows()).fold(Integer::from(0), |acc, r| {
                acc + &lattice_coeffs[r] * basis.matrix().get(r, j)
            })
        })
        .collect();
    if recombined != dense {
        return Err(Error::Internal("coefficients do not reproduce v".into()));
    }

    Ok(ExclusionCertificate {
        n,
        lattice_coeffs,
        binomial: v,
        positive_product_vars,
        negative_product_vars,
    })
}

/// Whether `(prod s_ii)^2 > (prod s_{i-2,i})^2` at `sigma`. Every positive
/// definite matrix satisfies the strict inequality, while every point of
/// the toric variety has equality.
pub fn certificate_violates_pd<T: Field>(cert: &ExclusionCertificate, sigma: &SymMatrix<T>) -> Result<bool> {
    if sigma.n() != cert.n {
        return Err(Error::DimensionMismatch {
            expected: format!("{0}x{0}", cert.n),
            found: format!("{0}x{0}", sigma.n()),
        });
    }
    let product = |vars: &[CovVariable]| {
        vars.iter().fold(T::one(), |acc, v| acc * sigma.get(v.i(), v.j()).clone())
    };
    let pos = product(&cert.positive_product_vars);
    let neg = product(&cert.negative_product_vars);
    Ok(pos.clone() * pos > neg.clone() * neg)
}

/// Defaults `a = 1/(2n)`, `e = 1/(4n)`.
pub fn default_counterexample_params(n: usize) -> (Rational, Rational) {
    let n = n as i64;
    (rat(1, 2 * n), rat(1, 4 * n))
}

fn pow<T: Field>(base: &T, exp: usize) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

/// Unit diagonal, `s_{i-1,i} = a^{n-i+1}` (so `s_1n = a^n`),
/// `s_{i-2,i} = a`, and `e` elsewhere, all indices cyclic.
///
/// Requires `n >= 4` and `0 < a, e < 1/n`. The matrix is diagonally dominant
/// with no zero entries, satisfies every cyclic statement except
/// `n-1 _||_ n | 1`, and none of the marginal statements `i _||_ i+1`.
pub fn counterexample_sigma<T: Field>(n: usize, a: &T, e: &T) -> Result<SymMatrix<T>> {
    if n < 4 {
        return Err(Error::UnsupportedSize { n, min: 4 });
    }
    let n_t = (0..n).fold(T::zero(), |acc, _| acc + T::one());
    let bound = T::one() / n_t;
    for (name, x) in [("a", a), ("e", e)] {
        if !(x.is_positive() && *x < bound) {
            return Err(Error::InvalidParameter(format!("{name} must lie strictly between 0 and 1/{n}")));
        }
    }
    Ok(SymMatrix::from_fn(n, |i, j| {
        let gap = j - i;
        if gap == 0 {
            T::one()
        } else if gap == 1 {
            // s_{j-1, j}
            pow(a, n - j + 1)
        } else if gap == n - 1 {
            // s_{n, 1}
            pow(a, n)
        } else if gap == 2 || gap == n - 2 {
            a.clone()
        } else {
            e.clone()
        }
    }))
}

/// The counterexample rotated so that the one failing cyclic statement is
/// `drop _||_ drop+1 | drop+2` (1-based, cyclic). `drop = n-1` is the
/// unrotated matrix.
pub fn rotated_counterexample<T: Field>(n: usize, a: &T, e: &T, drop: usize) -> Result<SymMatrix<T>> {
    if drop == 0 || drop > n {
        return Err(Error::InvalidParameter(format!("drop index {drop} outside 1..={n}")));
    }
    let base = counterexample_sigma(n, a, e)?;
    Ok(cyclic_permute(&base, (drop + 1) % n))
}

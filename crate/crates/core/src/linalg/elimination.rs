//! Determinants, rank, linear solves and positive-definiteness tests over a
//! field, all by elimination.
//!
//! Determinants and ranks use Bareiss' fraction-free recurrence: after step
//! `k` every active entry is a `(k+1) x (k+1)` minor of the input, so each
//! division by the previous pivot is exact and rational entries do not
//! accumulate spurious denominators.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::scalar::Field;

/// Exact determinant of a square matrix.
pub fn det<T: Field>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j].clone() * a[k][k].clone()
                    - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { T::one() } else { a[n - 1][n - 1].clone() };
    Ok(if negate { -d } else { d })
}

/// Rank by fraction-free row reduction.
pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut r = 0;
    let mut prev = T::one();
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                a[i][j] = (a[i][j].clone() * a[r][col].clone()
                    - a[i][col].clone() * a[r][j].clone())
                    / prev.clone();
            }
            a[i][col] = T::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Solves `a * x = b` for square nonsingular `a`; `None` when `a` is singular.
pub fn solve<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} rows", a.rows()),
            found: format!("{} rows", b.rows()),
        });
    }
    let n = a.rows();
    let w = b.cols();
    let mut aug: Vec<Vec<T>> = (0..n)
        .map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect())
        .collect();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !aug[i][k].is_zero()) else {
            return Ok(None);
        };
        aug.swap(k, p);
        let pivot = aug[k][k].clone();
        for v in aug[k].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        for i in 0..n {
            if i == k || aug[i][k].is_zero() {
                continue;
            }
            let f = aug[i][k].clone();
            for j in k..n + w {
                let delta = f.clone() * aug[k][j].clone();
                aug[i][j] = aug[i][j].clone() - delta;
            }
        }
    }
    Ok(Some(Matrix::from_fn(n, w, |i, j| aug[i][n + j].clone())))
}

fn check_indices(n: usize, sets: &[&[usize]]) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for set in sets {
        for &i in *set {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if seen[i] {
                return Err(Error::InvalidParameter(format!(
                    "index {i} appears in more than one index set"
                )));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

/// `Sigma_{A,B} - Sigma_{A,C} Sigma_{C,C}^{-1} Sigma_{C,B}`, with 1-based,
/// pairwise disjoint index sets.
pub fn schur_complement<T: Field>(
    sigma: &SymMatrix<T>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<Matrix<T>> {
    check_indices(sigma.n(), &[a, b, c])?;
    let sab = sigma.submatrix(a, b);
    if c.is_empty() {
        return Ok(sab);
    }
    let sac = sigma.submatrix(a, c);
    let scc = sigma.submatrix(c, c);
    let scb = sigma.submatrix(c, b);
    let x = solve(&scc, &scb)?
        .ok_or_else(|| Error::SingularConditioning { indices: c.to_vec() })?;
    let correction = sac.mul(&x)?;
    Ok(Matrix::from_fn(a.len(), b.len(), |i, j| {
        sab.get(i, j).clone() - correction.get(i, j).clone()
    }))
}

/// Leading principal minors `det(Sigma_{[k],[k]})` for `k = 1..=n`.
///
/// Bareiss without pivoting produces these as its successive pivots. If a
/// pivot vanishes the recurrence cannot continue, and the remaining minors
/// are computed directly.
pub fn leading_principal_minors<T: Field>(sigma: &SymMatrix<T>) -> Vec<T> {
    let n = sigma.n();
    let mut a = sigma.to_matrix().to_rows();
    let mut out = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let full = sigma.to_matrix();
            for size in k + 1..=n {
                let idx: Vec<usize> = (0..size).collect();
                out.push(det(&full.select(&idx, &idx)).expect("principal block is square"));
            }
            return out;
        }
        out.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j].clone() * a[k][k].clone()
                    - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    out
}

/// Sylvester's criterion: every leading principal minor is strictly positive.
pub fn is_positive_definite<T: Field>(sigma: &SymMatrix<T>) -> bool {
    let n = sigma.n();
    let mut a = sigma.to_matrix().to_rows();
    let mut prev = T::one();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j].clone() * a[k][k].clone()
                    - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    true
}

/// Strict row diagonal dominance: `sigma_ii > sum_{j != i} |sigma_ij|`.
pub fn is_diagonally_dominant<T: Field>(sigma: &SymMatrix<T>) -> bool {
    let n = sigma.n();
    (1..=n).all(|i| {
        let off = (1..=n)
            .filter(|&j| j != i)
            .fold(T::zero(), |acc, j| acc + sigma.get(i, j).abs());
        *sigma.get(i, i) > off
    })
}

//! Integer lattice routines: Smith normal form (saturation) and Hermite
//! normal form (row-lattice membership).

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::EuclideanRing;

/// Diagonal form `D = P M Q` with unimodular `P`, `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub diagonal: Matrix<T>,
    /// Nonzero diagonal entries `d1 | d2 | ...`, all positive.
    pub invariant_factors: Vec<T>,
}

fn sub_row<T: EuclideanRing>(a: &mut [Vec<T>], target: usize, src: usize, q: &T) {
    if q.is_zero() {
        return;
    }
    for j in 0..a[target].len() {
        let delta = q.clone() * a[src][j].clone();
        a[target][j] = a[target][j].clone() - delta;
    }
}

fn sub_col<T: EuclideanRing>(a: &mut [Vec<T>], target: usize, src: usize, q: &T) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let delta = q.clone() * row[src].clone();
        row[target] = row[target].clone() - delta;
    }
}

pub fn smith_normal_form<T: EuclideanRing>(m: &Matrix<T>) -> SmithForm<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    'outer: for t in 0..r.min(c) {
        loop {
            // smallest nonzero modulus in the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t].div_floor(&a[t][t]);
                sub_row(&mut a, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..c {
                let q = a[t][j].div_floor(&a[t][t]);
                sub_col(&mut a, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match offender {
                Some(i) => {
                    let minus_one = -T::one();
                    sub_row(&mut a, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            a[t][t] = -a[t][t].clone();
        }
    }
    let invariant_factors = (0..r.min(c))
        .map(|t| a[t][t].clone())
        .filter(|d| !d.is_zero())
        .collect();
    SmithForm {
        diagonal: Matrix::from_rows(a).expect("rows keep their length"),
        invariant_factors,
    }
}

/// Row-style Hermite normal form `H = U M` with `U` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm<T> {
    pub hermite: Matrix<T>,
    pub transform: Matrix<T>,
    /// Pivot column of each nonzero row of `hermite`, in row order.
    pub pivot_cols: Vec<usize>,
}

pub fn hermite_normal_form<T: EuclideanRing>(m: &Matrix<T>) -> HermiteForm<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut h = m.to_rows();
    let mut u = Matrix::<T>::identity(r).to_rows();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        for i in row + 1..r {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[row][col].clone();
            let b = h[i][col].clone();
            let eg = a.extended_gcd(&b);
            let (ag, bg) = (a / eg.gcd.clone(), b / eg.gcd.clone());
            for mat in [&mut h, &mut u] {
                for j in 0..mat[row].len() {
                    let top = mat[row][j].clone();
                    let bot = mat[i][j].clone();
                    mat[row][j] = eg.x.clone() * top.clone() + eg.y.clone() * bot.clone();
                    mat[i][j] = ag.clone() * bot - bg.clone() * top;
                }
            }
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            for mat in [&mut h, &mut u] {
                for v in mat[row].iter_mut() {
                    *v = -v.clone();
                }
            }
        }
        for k in 0..row {
            let q = h[k][col].div_floor(&h[row][col]);
            sub_row(&mut h, k, row, &q);
            sub_row(&mut u, k, row, &q);
        }
        pivot_cols.push(col);
        row += 1;
    }
    HermiteForm {
        hermite: Matrix::from_rows(h).expect("rows keep their length"),
        transform: Matrix::from_rows(u).expect("rows keep their length"),
        pivot_cols,
    }
}

/// Integer coefficients `x` with `x * m = v`, if `v` lies in the row lattice
/// of `m`.
pub fn in_integer_row_span<T: EuclideanRing>(v: &[T], m: &Matrix<T>) -> Result<Option<Vec<T>>> {
    if v.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", m.cols()),
            found: format!("length {}", v.len()),
        });
    }
    let hf = hermite_normal_form(m);
    let mut residual = v.to_vec();
    let mut x = vec![T::zero(); m.rows()];
    for (k, &pc) in hf.pivot_cols.iter().enumerate() {
        let pivot = hf.hermite.get(k, pc);
        if !residual[pc].is_multiple_of(pivot) {
            return Ok(None);
        }
        let q = residual[pc].clone() / pivot.clone();
        for (j, r) in residual.iter_mut().enumerate() {
            *r = r.clone() - q.clone() * hf.hermite.get(k, j).clone();
        }
        x[k] = q;
    }
    if residual.iter().any(|r| !r.is_zero()) {
        return Ok(None);
    }
    let coeffs = (0..m.rows())
        .map(|j| {
            (0..m.rows()).fold(T::zero(), |acc, k| {
                acc + x[k].clone() * hf.transform.get(k, j).clone()
            })
        })
        .collect();
    Ok(Some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn snf_identity_and_diagonal() {
        assert_eq!(smith_normal_form(&Matrix::<i64>::identity(4)).invariant_factors, vec![1; 4]);
        assert_eq!(smith_normal_form(&im(&[&[2, 0], &[0, 2]])).invariant_factors, vec![2, 2]);
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(smith_normal_form(&im(&[&[2, 0], &[0, 3]])).invariant_factors, vec![1, 6]);
        let snf = smith_normal_form(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(snf.invariant_factors, vec![2, 6, 12]);
    }

    #[test]
    fn snf_rank_deficient() {
        let snf = smith_normal_form(&im(&[&[2, -2], &[4, -4]]));
        assert_eq!(snf.invariant_factors, vec![2]);
        assert!(smith_normal_form(&Matrix::<i64>::zeros(2, 3)).invariant_factors.is_empty());
    }

    #[test]
    fn hnf_is_echelon_and_unimodular() {
        let m = im(&[&[4, 6, 2], &[2, 3, 7], &[6, 0, 1]]);
        let hf = hermite_normal_form(&m);
        assert_eq!(hf.transform.mul(&m).unwrap(), hf.hermite);
        let det = crate::linalg::det(&hf.transform.map(|&v| crate::rat(v, 1))).unwrap();
        assert!(det == crate::rat(1, 1) || det == crate::rat(-1, 1));
        for (k, &pc) in hf.pivot_cols.iter().enumerate() {
            assert!(*hf.hermite.get(k, pc) > 0);
            for below in k + 1..m.rows() {
                assert_eq!(*hf.hermite.get(below, pc), 0);
            }
        }
    }

    #[test]
    fn row_span_membership() {
        let m = im(&[&[1, -1, 0], &[0, 2, -2]]);
        assert_eq!(in_integer_row_span(&[1, -1, 0], &m).unwrap(), Some(vec![1, 0]));
        assert_eq!(in_integer_row_span(&[1, 1, -2], &m).unwrap(), Some(vec![1, 1]));
        // rational but not integral combination
        assert_eq!(in_integer_row_span(&[0, 1, -1], &m).unwrap(), None);
        // outside the rational span
        assert_eq!(in_integer_row_span(&[1, 0, 0], &m).unwrap(), None);
        assert!(in_integer_row_span(&[1, 0], &m).is_err());
    }
}

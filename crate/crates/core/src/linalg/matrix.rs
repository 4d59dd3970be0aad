use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: format!("row {i} of length {cols}"),
                    found: format!("length {}", row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Self { rows: nrows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.row_iter().map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        }))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Symmetric `n x n` matrix indexed `1..=n`, storing only the upper triangle.
///
/// Reading `(i, j)` with `i > j` returns the stored `(j, i)` entry, so
/// symmetry holds by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrix<T> {
    n: usize,
    upper: Vec<T>,
}

impl<T: Clone> SymMatrix<T> {
    /// Builds a symmetric matrix from `f(i, j)` evaluated for `1 <= i <= j <= n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 1..=n {
            for j in i..=n {
                upper.push(f(i, j));
            }
        }
        Self { n, upper }
    }

    /// Converts a square matrix, rejecting it unless it is exactly symmetric.
    pub fn from_matrix(m: &Matrix<T>) -> Result<Self>
    where
        T: PartialEq,
    {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        for i in 0..m.rows() {
            for j in i + 1..m.cols() {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self::from_fn(m.rows(), |i, j| m.get(i - 1, j - 1).clone()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 1..i-1 hold n, n-1, ..., n-i+2 entries
        (i - 1) * (self.n + 1) - i * (i - 1) / 2 + (j - i)
    }

    /// Entry `(i, j)`, 1-based. Panics when out of range; see [`Self::try_get`].
    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i}, {j}) out of range 1..={}",
            self.n
        );
        &self.upper[self.offset(i, j)]
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<&T> {
        for idx in [i, j] {
            if idx == 0 || idx > self.n {
                return Err(Error::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        Ok(&self.upper[self.offset(i, j)])
    }

    /// Returns a copy with entry `(i, j)` (and `(j, i)`) replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: T) -> Self {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        let mut out = self.clone();
        let at = self.offset(i, j);
        out.upper[at] = value;
        out
    }

    /// Dense copy, 0-based.
    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i + 1, j + 1).clone())
    }

    /// Submatrix `Sigma_{rows, cols}` for 1-based index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Iterates the stored upper triangle as `(i, j, value)` with `i <= j`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (i..=n).map(move |j| (i, j)))
            .zip(self.upper.iter())
            .map(|((i, j), v)| (i, j, v))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> SymMatrix<U> {
        SymMatrix { n: self.n, upper: self.upper.iter().map(f).collect() }
    }
}

impl<T: Clone + Zero + One> SymMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| T::one())
    }
}

impl<T: fmt::Display + Clone> fmt::Display for SymMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_matrix(), f)
    }
}

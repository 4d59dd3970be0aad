//! Exponent vectors of binomial CI generators and the lattice basis matrix
//! they form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use num_traits::{One, ToPrimitive};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::ci::{wrap, CIModel, CIStatement};
use crate::error::{Error, Result};
use crate::linalg::{rank, smith_normal_form, Matrix};
use crate::{IntMatrix, Integer, Rational};

/// The covariance indeterminate `s_ij`, stored with `i <= j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CovVariable {
    i: usize,
    j: usize,
}

impl CovVariable {
    /// `(i, j)` and `(j, i)` name the same variable.
    pub fn new(i: usize, j: usize) -> Self {
        Self { i: i.min(j), j: i.max(j) }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for CovVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{}_{}", self.i, self.j)
    }
}

impl Serialize for CovVariable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sparse integer vector over covariance variables. Zero entries are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    coords: BTreeMap<CovVariable, i64>,
}

impl ExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CovVariable, i64)>) -> Self {
        let mut v = Self::new();
        for (var, c) in terms {
            v.add_to(var, c);
        }
        v
    }

    pub fn add_to(&mut self, var: CovVariable, delta: i64) {
        let e = self.coords.entry(var).or_insert(0);
        *e += delta;
        if *e == 0 {
            self.coords.remove(&var);
        }
    }

    pub fn get(&self, var: &CovVariable) -> i64 {
        self.coords.get(var).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (CovVariable, i64)> + '_ {
        self.coords.iter().map(|(&v, &c)| (v, c))
    }

    pub fn support(&self) -> BTreeSet<CovVariable> {
        self.coords.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// `u+`: the positive entries.
    pub fn positive_part(&self) -> ExponentVector {
        Self { coords: self.coords.iter().filter(|(_, &c)| c > 0).map(|(&v, &c)| (v, c)).collect() }
    }

    /// `u-`: the negated negative entries, so that `u = u+ - u-`.
    pub fn negative_part(&self) -> ExponentVector {
        Self { coords: self.coords.iter().filter(|(_, &c)| c < 0).map(|(&v, &c)| (v, -c)).collect() }
    }

    /// Coordinates in the given column order.
    pub fn to_dense(&self, order: &[CovVariable]) -> Vec<i64> {
        order.iter().map(|v| self.get(v)).collect()
    }

    /// The variables of a monomial exponent, each repeated by its exponent.
    /// Only meaningful for nonnegative vectors.
    pub fn monomial_vars(&self) -> Vec<CovVariable> {
        self.coords
            .iter()
            .flat_map(|(&v, &c)| std::iter::repeat_n(v, c.max(0) as usize))
            .collect()
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        let mut out = self.clone();
        for (v, c) in rhs.iter() {
            out.add_to(v, c);
        }
        out
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coords.len()))?;
        for (v, c) in &self.coords {
            map.serialize_entry(&v.to_string(), c)?;
        }
        map.end()
    }
}

/// Exponent vector of `s_rr s_pq - s_pr s_qr` for the statement `p _||_ q | r`.
pub fn exponent_vector(stmt: &CIStatement, n: usize) -> Result<ExponentVector> {
    let (p, q, r) = stmt
        .as_binomial()
        .ok_or_else(|| Error::NotBinomial(stmt.to_string()))?;
    if stmt.max_index() > n {
        return Err(Error::IndexOutOfRange { index: stmt.max_index(), n });
    }
    Ok(ExponentVector::from_terms([
        (CovVariable::new(r, r), 1),
        (CovVariable::new(p, q), 1),
        (CovVariable::new(p, r), -1),
        (CovVariable::new(q, r), -1),
    ]))
}

/// Rows of linearly independent exponent vectors over a labeled column set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMatrix {
    n: usize,
    matrix: IntMatrix,
    var_order: Vec<CovVariable>,
    row_labels: Vec<String>,
    unused_vars: Vec<CovVariable>,
}

impl BasisMatrix {
    /// Validates labels and linear independence of the rows.
    pub fn new(
        n: usize,
        matrix: IntMatrix,
        var_order: Vec<CovVariable>,
        row_labels: Vec<String>,
    ) -> Result<Self> {
        if var_order.len() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} column labels", matrix.cols()),
                found: format!("{}", var_order.len()),
            });
        }
        if row_labels.len() != matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} row labels", matrix.rows()),
                found: format!("{}", row_labels.len()),
            });
        }
        let distinct: BTreeSet<_> = var_order.iter().collect();
        if distinct.len() != var_order.len() {
            return Err(Error::InvalidParameter("column labels are not distinct".into()));
        }
        if let Some(v) = var_order.iter().find(|v| v.j() > n) {
            return Err(Error::IndexOutOfRange { index: v.j(), n });
        }
        let r = rank(&matrix.map(|x| Rational::from_integer(x.clone())));
        if r < matrix.rows() {
            return Err(Error::NotABasis { rank: r, rows: matrix.rows() });
        }
        let used: BTreeSet<CovVariable> = var_order.iter().copied().collect();
        let unused_vars = (1..=n)
            .flat_map(|i| (i..=n).map(move |j| CovVariable::new(i, j)))
            .filter(|v| !used.contains(v))
            .collect();
        Ok(Self { n, matrix, var_order, row_labels, unused_vars })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn var_order(&self) -> &[CovVariable] {
        &self.var_order
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    /// Variables of `1..=n` that appear in no row (dropped columns).
    pub fn unused_vars(&self) -> &[CovVariable] {
        &self.unused_vars
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn column_of(&self, var: &CovVariable) -> Option<usize> {
        self.var_order.iter().position(|v| v == var)
    }

    pub fn row_vector(&self, r: usize) -> ExponentVector {
        ExponentVector::from_terms(
            self.var_order
                .iter()
                .zip(self.matrix.row(r))
                .map(|(&v, x)| (v, x.to_i64().expect("exponent fits in i64"))),
        )
    }

    /// Entries as machine integers.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.matrix
            .row_iter()
            .map(|row| row.iter().map(|x| x.to_i64().expect("exponent fits in i64")).collect())
            .collect()
    }
}

/// Column order of the cyclic model, in three blocks by cyclic distance
/// `|i - j| mod n` in `{0, 1, 2}`.
///
/// Block 0 follows the conditioning index of each row so that it forms the
/// identity; block 1 is `(1,2), (2,3), ..., (n,1)`; block 2 is
/// `(1,3), (2,4), ..., (n,2)`. For `n = 4` the pairs `(i, i+2)` repeat and
/// block 2 shrinks to `s_1_3, s_2_4`.
fn cyclic_columns(model: &CIModel) -> Vec<CovVariable> {
    let n = model.n();
    let mut cols: Vec<CovVariable> = model
        .statements()
        .iter()
        .filter_map(CIStatement::as_binomial)
        .map(|(_, _, c)| CovVariable::new(c, c))
        .collect();
    cols.extend((1..=n).map(|i| CovVariable::new(i, wrap(i, 1, n))));
    for i in 1..=n {
        let v = CovVariable::new(i, wrap(i, 2, n));
        if !cols.contains(&v) {
            cols.push(v);
        }
    }
    cols
}

/// Stacks the exponent vectors of a binomial model into a basis matrix,
/// keeping only the variables that occur.
pub fn basis_matrix(model: &CIModel) -> Result<BasisMatrix> {
    let n = model.n();
    let rows: Vec<ExponentVector> = model
        .statements()
        .iter()
        .map(|s| exponent_vector(s, n))
        .collect::<Result<_>>()?;
    let var_order = if model.is_cyclic() {
        cyclic_columns(model)
    } else {
        let all: BTreeSet<CovVariable> = rows.iter().flat_map(ExponentVector::support).collect();
        all.into_iter().collect()
    };
    let matrix = Matrix::from_fn(rows.len(), var_order.len(), |r, c| {
        Integer::from(rows[r].get(&var_order[c]))
    });
    let labels = model.statements().iter().map(ToString::to_string).collect();
    BasisMatrix::new(n, matrix, var_order, labels)
}

/// True iff every Smith invariant factor of the basis equals 1.
pub fn is_saturated(basis: &BasisMatrix) -> bool {
    is_saturated_matrix(basis.matrix())
}

pub fn is_saturated_matrix(m: &IntMatrix) -> bool {
    smith_normal_form(m).invariant_factors.iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::cyclic_model;

    fn v(i: usize, j: usize) -> CovVariable {
        CovVariable::new(i, j)
    }

    #[test]
    fn variables_are_unordered_pairs() {
        assert_eq!(v(3, 1), v(1, 3));
        assert_eq!(v(5, 2).to_string(), "s_2_5");
    }

    #[test]
    fn exponent_vector_examples() {
        let s = CIStatement::conditional(1, 2, 3).unwrap();
        let u = exponent_vector(&s, 3).unwrap();
        assert_eq!(u, ExponentVector::from_terms([(v(3, 3), 1), (v(1, 2), 1), (v(1, 3), -1), (v(2, 3), -1)]));
        let s = CIStatement::conditional(3, 4, 5).unwrap();
        assert_eq!(
            exponent_vector(&s, 5).unwrap(),
            ExponentVector::from_terms([(v(5, 5), 1), (v(3, 4), 1), (v(3, 5), -1), (v(4, 5), -1)])
        );
        let s = CIStatement::conditional(5, 1, 2).unwrap();
        assert_eq!(
            exponent_vector(&s, 5).unwrap(),
            ExponentVector::from_terms([(v(2, 2), 1), (v(1, 5), 1), (v(2, 5), -1), (v(1, 2), -1)])
        );
    }

    #[test]
    fn exponent_vector_rejects_non_binomial() {
        let marginal = CIStatement::marginal(1, 2).unwrap();
        assert!(matches!(exponent_vector(&marginal, 3), Err(Error::NotBinomial(_))));
        let big = CIStatement::new([1], [2], [3, 4]).unwrap();
        assert!(matches!(exponent_vector(&big, 4), Err(Error::NotBinomial(_))));
    }

    #[test]
    fn single_statement_basis() {
        let model = CIModel::new(3, vec![CIStatement::conditional(1, 2, 3).unwrap()]).unwrap();
        let b = basis_matrix(&model).unwrap();
        assert_eq!((b.rows(), b.cols()), (1, 4));
        let row = b.to_i64_rows().remove(0);
        let mut sorted = row.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-1, -1, 1, 1]);
        assert_eq!(b.row_vector(0), exponent_vector(&model.statements()[0], 3).unwrap());
        assert_eq!(b.unused_vars(), &[v(1, 1), v(2, 2)]);
    }

    #[test]
    fn dependent_rows_rejected() {
        let s = CIStatement::conditional(1, 2, 3).unwrap();
        let model = CIModel::new(3, vec![s.clone(), s]).unwrap();
        assert!(matches!(basis_matrix(&model), Err(Error::NotABasis { rank: 1, rows: 2 })));
    }

    #[test]
    fn basis_for_m4_merges_skew_columns() {
        let b = basis_matrix(&cyclic_model(4).unwrap()).unwrap();
        assert_eq!((b.rows(), b.cols()), (4, 10));
        assert_eq!(&b.var_order()[8..], &[v(1, 3), v(2, 4)]);
        for col in 8..10 {
            let entries: Vec<i64> = b.to_i64_rows().iter().map(|r| r[col]).collect();
            assert_eq!(entries.iter().filter(|&&x| x == -1).count(), 2);
        }
    }

    #[test]
    fn saturation_examples() {
        for n in 4..=8 {
            assert!(is_saturated(&basis_matrix(&cyclic_model(n).unwrap()).unwrap()));
        }
        let two = BasisMatrix::new(
            2,
            Matrix::from_rows(vec![vec![Integer::from(2), Integer::from(-2)]]).unwrap(),
            vec![v(1, 1), v(1, 2)],
            vec!["r".into()],
        )
        .unwrap();
        assert!(!is_saturated(&two));
        assert!(is_saturated_matrix(&IntMatrix::identity(3)));
    }

    #[test]
    fn basis_validation() {
        let m = IntMatrix::identity(2);
        assert!(BasisMatrix::new(2, m.clone(), vec![v(1, 1), v(1, 1)], vec!["a".into(), "b".into()]).is_err());
        assert!(BasisMatrix::new(2, m.clone(), vec![v(1, 1)], vec!["a".into(), "b".into()]).is_err());
        assert!(BasisMatrix::new(1, m, vec![v(1, 1), v(1, 2)], vec!["a".into(), "b".into()]).is_err());
    }

    #[test]
    fn positive_and_negative_parts() {
        let u = ExponentVector::from_terms([(v(1, 1), 2), (v(1, 2), -3)]);
        assert_eq!(u.positive_part().monomial_vars(), vec![v(1, 1), v(1, 1)]);
        assert_eq!(u.negative_part().get(&v(1, 2)), 3);
        let back = &u.positive_part() + &ExponentVector::from_terms(u.negative_part().iter().map(|(k, c)| (k, -c)));
        assert_eq!(back, u);
    }
}

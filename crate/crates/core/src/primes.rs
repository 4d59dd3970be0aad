//! Minimal primes of a lattice basis ideal from the sign pattern of its
//! basis matrix.
//!
//! A nonempty variable set `S` yields a minimal prime exactly when the
//! submatrix `N_S` (the rows meeting `S`, restricted to the `S` columns) is
//! irreducible: mixed, no wider than tall, and admitting no block split
//! `[N' B'; 0 D']` with `N'` mixed, `t' <= s'` and `t - t' > s - s'`. The
//! empty set is the toric component and is always a minimal prime.
//!
//! Column sets are handled as `u64` bitmasks, so sign matrices are limited
//! to 64 columns and the subset search to [`SearchConfig::max_columns`].

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{is_saturated, BasisMatrix, CovVariable};
use crate::IntMatrix;

/// A matrix over `{-1, 0, +1}` with row and column labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl SignMatrix {
    /// Rows of signs, labeled `r1.. / c1..`. Zero rows means zero columns.
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        let nrows = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: format!("rows of length {cols}"),
                    found: format!("length {}", row.len()),
                });
            }
            if let Some(bad) = row.iter().find(|x| !(-1..=1).contains(*x)) {
                return Err(Error::InvalidParameter(format!("{bad} is not a sign")));
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            entries,
            row_labels: (1..=nrows).map(|i| format!("r{i}")).collect(),
            col_labels: (1..=cols).map(|j| format!("c{j}")).collect(),
        })
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Self {
        let rows = m
            .row_iter()
            .map(|row| {
                row.iter()
                    .map(|x| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 })
                    .collect()
            })
            .collect();
        Self::new(rows).expect("signs of a rectangular matrix")
    }

    pub fn from_basis(basis: &BasisMatrix) -> Self {
        let mut s = Self::from_int_matrix(basis.matrix());
        s.row_labels = basis.row_labels().to_vec();
        s.col_labels = basis.var_order().iter().map(ToString::to_string).collect();
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.cols + j]
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Submatrix on the given rows and columns, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j)))
                .collect(),
            row_labels: rows.iter().map(|&i| self.row_labels[i].clone()).collect(),
            col_labels: cols.iter().map(|&j| self.col_labels[j].clone()).collect(),
        }
    }

    /// Nonzero count of each column.
    pub fn column_counts(&self) -> Vec<usize> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter(|&i| self.get(i, j) != 0).count())
            .collect()
    }

    /// Per-row `(positive, negative)` column bitmasks.
    fn masks(&self) -> Vec<(u64, u64)> {
        assert!(self.cols <= 64, "sign-pattern search supports at most 64 columns");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold((0u64, 0u64), |(p, q), j| match self.get(i, j) {
                    1 => (p | 1 << j, q),
                    -1 => (p, q | 1 << j),
                    _ => (p, q),
                })
            })
            .collect()
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<&str> = row
                .iter()
                .map(|&x| match x {
                    1 => "+",
                    -1 => "-",
                    _ => "0",
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Every row has a positive and a negative entry. A matrix with no rows is
/// vacuously mixed.
pub fn is_mixed(m: &SignMatrix) -> bool {
    m.masks().iter().all(|&(p, q)| p != 0 && q != 0)
}

/// Irreducibility of the submatrix on the rows meeting `cols`, restricted
/// to `cols`.
///
/// The split search only enumerates the column side `T'`. The bottom-left
/// block must vanish, so `R'` contains every row supported on `T'`; a row
/// outside that set would be all-zero on `T'` and break mixedness of `N'`.
/// Hence `R'` is determined by `T'`. `T' = {}` and `T' = cols` can never
/// satisfy `t - t' > s - s'` when `t <= s`, so only proper nonempty `T'`
/// are tried.
fn irreducible_on(masks: &[(u64, u64)], cols: u64) -> bool {
    let rows: Vec<(u64, u64)> = masks
        .iter()
        .map(|&(p, q)| (p & cols, q & cols))
        .filter(|&(p, q)| p | q != 0)
        .collect();
    let s = rows.len();
    let t = cols.count_ones() as usize;
    if s == 0 || t == 0 || t > s {
        return false;
    }
    if !rows.iter().all(|&(p, q)| p != 0 && q != 0) {
        return false;
    }
    let mut sub = cols.wrapping_sub(1) & cols;
    while sub != 0 {
        let mut s_prime = 0;
        let mut mixed = true;
        for &(p, q) in &rows {
            if (p | q) & sub != 0 {
                s_prime += 1;
                if p & sub == 0 || q & sub == 0 {
                    mixed = false;
                    break;
                }
            }
        }
        let t_prime = sub.count_ones() as usize;
        if mixed && t_prime <= s_prime && t - t_prime + s_prime > s {
            return false;
        }
        sub = (sub - 1) & cols;
    }
    true
}

pub fn is_irreducible(m: &SignMatrix) -> bool {
    let masks = m.masks();
    if masks.iter().any(|&(p, q)| p | q == 0) {
        return false;
    }
    let all = if m.cols == 64 { u64::MAX } else { (1u64 << m.cols) - 1 };
    irreducible_on(&masks, all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest candidate column pool the subset search will enumerate.
    pub max_columns: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { max_columns: 24 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateStrategy {
    /// Uses the column-count bound when every column has at most two
    /// nonzeros, otherwise falls back to all columns.
    Pruned,
    /// All columns.
    Exhaustive,
}

/// Columns that may belong to a minimal-prime variable set.
///
/// With at most two nonzeros per column, an `s x t` irreducible `N_S` has
/// at least `2s` nonzeros (mixed rows) and at most `2t` (column bound),
/// while `t <= s`; so `s = t` and every column of `S` has exactly two
/// nonzeros. Other columns are dropped from the pool.
pub fn candidate_columns(
    m: &SignMatrix,
    strategy: CandidateStrategy,
    config: &SearchConfig,
) -> Result<Vec<usize>> {
    let counts = m.column_counts();
    let pool: Vec<usize> = if strategy == CandidateStrategy::Pruned && counts.iter().all(|&c| c <= 2) {
        (0..m.cols).filter(|&j| counts[j] == 2).collect()
    } else {
        (0..m.cols).collect()
    };
    let cap = config.max_columns.min(63);
    if pool.len() > cap {
        return Err(Error::SearchTooLarge { columns: pool.len(), cap });
    }
    Ok(pool)
}

/// Column sets (sorted indices, lexicographic order) whose `N_S` is
/// irreducible.
pub fn irreducible_supports(
    m: &SignMatrix,
    strategy: CandidateStrategy,
    config: &SearchConfig,
) -> Result<Vec<Vec<usize>>> {
    let pool = candidate_columns(m, strategy, config)?;
    let masks = m.masks();
    let mut found = Vec::new();
    for bits in 1u64..(1u64 << pool.len()) {
        let cols = pool
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .fold(0u64, |acc, (_, &j)| acc | 1 << j);
        if irreducible_on(&masks, cols) {
            found.push((0..m.cols).filter(|&j| cols >> j & 1 == 1).collect::<Vec<_>>());
        }
    }
    found.sort();
    Ok(found)
}

/// Candidate sets `S` for the basis, as variables: all subsets of the
/// candidate column pool, including the empty set.
pub fn candidate_variable_sets(basis: &BasisMatrix) -> Result<Vec<BTreeSet<CovVariable>>> {
    let sign = SignMatrix::from_basis(basis);
    let pool = candidate_columns(&sign, CandidateStrategy::Pruned, &SearchConfig::default())?;
    Ok((0u64..(1u64 << pool.len()))
        .map(|bits| {
            pool.iter()
                .enumerate()
                .filter(|(k, _)| bits >> k & 1 == 1)
                .map(|(_, &j)| basis.var_order()[j])
                .collect()
        })
        .collect())
}

/// A minimal prime, represented by the variables it contains and the basis
/// rows that survive in its binomial part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MinimalPrime {
    pub vanishing_vars: BTreeSet<CovVariable>,
    /// Indices of basis rows whose support misses `vanishing_vars`.
    pub residual_rows: Vec<usize>,
}

impl MinimalPrime {
    /// The toric component `S = {}`.
    pub fn is_toric(&self) -> bool {
        self.vanishing_vars.is_empty()
    }
}

impl fmt::Display for MinimalPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_toric() {
            return f.write_str("TORIC");
        }
        let names: Vec<String> = self.vanishing_vars.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

fn prime_for(basis: &BasisMatrix, vars: BTreeSet<CovVariable>) -> MinimalPrime {
    let residual_rows = (0..basis.rows())
        .filter(|&r| basis.row_vector(r).support().is_disjoint(&vars))
        .collect();
    MinimalPrime { vanishing_vars: vars, residual_rows }
}

pub fn minimal_primes(basis: &BasisMatrix) -> Result<Vec<MinimalPrime>> {
    minimal_primes_with(basis, &SearchConfig::default())
}

/// Toric component first, then every irreducible `S` in lexicographic
/// order. Fails if an accepted set strictly contains another.
pub fn minimal_primes_with(basis: &BasisMatrix, config: &SearchConfig) -> Result<Vec<MinimalPrime>> {
    if !is_saturated(basis) {
        return Err(Error::NotSaturated);
    }
    let sign = SignMatrix::from_basis(basis);
    let supports = irreducible_supports(&sign, CandidateStrategy::Pruned, config)?;
    let sets: Vec<BTreeSet<CovVariable>> = supports
        .iter()
        .map(|cols| cols.iter().map(|&j| basis.var_order()[j]).collect())
        .collect();
    for a in &sets {
        for b in &sets {
            if a.len() < b.len() && a.is_subset(b) {
                return Err(Error::ContainmentViolation {
                    smaller: prime_for(basis, a.clone()).to_string(),
                    larger: prime_for(basis, b.clone()).to_string(),
                });
            }
        }
    }
    let mut primes = vec![prime_for(basis, BTreeSet::new())];
    let mut rest: Vec<MinimalPrime> = sets.into_iter().map(|s| prime_for(basis, s)).collect();
    rest.sort_by(|x, y| x.vanishing_vars.iter().cmp(y.vanishing_vars.iter()));
    primes.extend(rest);
    Ok(primes)
}

//! Conditional-independence statements, models, and the rank criterion on
//! a concrete covariance matrix.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::CovVariable;
use crate::linalg::{det, rank, SymMatrix};
use crate::scalar::Field;

/// `A _||_ B | C` over 1-based indices.
///
/// Normal form: each set sorted and deduplicated, and `min(A) < min(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CIStatement {
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

fn normalize_set(set: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = set.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl CIStatement {
    pub fn new(
        a: impl IntoIterator<Item = usize>,
        b: impl IntoIterator<Item = usize>,
        c: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let (mut a, mut b, c) = (normalize_set(a), normalize_set(b), normalize_set(c));
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidStatement("A and B must be nonempty".into()));
        }
        if a.iter().chain(&b).chain(&c).any(|&i| i == 0) {
            return Err(Error::InvalidStatement("indices are 1-based".into()));
        }
        let overlap = a
            .iter()
            .find(|i| b.contains(i) || c.contains(i))
            .or_else(|| b.iter().find(|i| c.contains(i)));
        if let Some(i) = overlap {
            return Err(Error::InvalidStatement(format!(
                "index {i} appears in more than one of A, B, C"
            )));
        }
        if b[0] < a[0] {
            std::mem::swap(&mut a, &mut b);
        }
        Ok(Self { a, b, c })
    }

    /// `a _||_ b | c`.
    pub fn conditional(a: usize, b: usize, c: usize) -> Result<Self> {
        Self::new([a], [b], [c])
    }

    /// `a _||_ b`.
    pub fn marginal(a: usize, b: usize) -> Result<Self> {
        Self::new([a], [b], [])
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn c(&self) -> &[usize] {
        &self.c
    }

    pub fn max_index(&self) -> usize {
        self.a.iter().chain(&self.b).chain(&self.c).copied().max().unwrap_or(0)
    }

    /// `(a, b, c)` when all three sets are singletons.
    pub fn as_binomial(&self) -> Option<(usize, usize, usize)> {
        match (&self.a[..], &self.b[..], &self.c[..]) {
            ([a], [b], [c]) => Some((*a, *b, *c)),
            _ => None,
        }
    }

    /// Row indices `A ∪ C` and column indices `B ∪ C` of the rank test.
    pub fn test_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let rows = self.a.iter().chain(&self.c).copied().collect();
        let cols = self.b.iter().chain(&self.c).copied().collect();
        (rows, cols)
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &[usize]) -> fmt::Result {
    let parts: Vec<String> = set.iter().map(ToString::to_string).collect();
    f.write_str(&parts.join(","))
}

impl fmt::Display for CIStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.a)?;
        f.write_str(" _||_ ")?;
        write_set(f, &self.b)?;
        if !self.c.is_empty() {
            f.write_str(" | ")?;
            write_set(f, &self.c)?;
        }
        Ok(())
    }
}

impl Serialize for CIStatement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An ordered list of statements on the ground set `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CIModel {
    n: usize,
    statements: Vec<CIStatement>,
}

impl CIModel {
    pub fn new(n: usize, statements: Vec<CIStatement>) -> Result<Self> {
        if let Some(bad) = statements.iter().map(CIStatement::max_index).find(|&m| m > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(Self { n, statements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn statements(&self) -> &[CIStatement] {
        &self.statements
    }

    /// The model with statement `index` (0-based) removed.
    pub fn without(&self, index: usize) -> Self {
        let mut statements = self.statements.clone();
        statements.remove(index);
        Self { n: self.n, statements }
    }

    /// True when the model contains exactly the statements of the cyclic
    /// model on `n` variables, in any order.
    pub fn is_cyclic(&self) -> bool {
        let Ok(cyclic) = cyclic_model(self.n) else {
            return false;
        };
        let mut mine = self.statements.clone();
        let mut theirs = cyclic.statements;
        mine.sort();
        theirs.sort();
        mine == theirs
    }
}

fn check_cyclic_size(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::UnsupportedSize { n, min: 4 });
    }
    Ok(())
}

/// Index `i + offset` wrapped into `1..=n`.
pub(crate) fn wrap(i: usize, offset: usize, n: usize) -> usize {
    (i - 1 + offset) % n + 1
}

/// `{ i _||_ i+1 | i+2 : i = 1..n }` with indices taken cyclically.
pub fn cyclic_model(n: usize) -> Result<CIModel> {
    check_cyclic_size(n)?;
    let statements = (1..=n)
        .map(|i| CIStatement::conditional(i, wrap(i, 1, n), wrap(i, 2, n)))
        .collect::<Result<_>>()?;
    CIModel::new(n, statements)
}

/// `{ i _||_ i+1 : i = 1..n }` with indices taken cyclically.
pub fn marginal_conclusions(n: usize) -> Result<Vec<CIStatement>> {
    check_cyclic_size(n)?;
    (1..=n).map(|i| CIStatement::marginal(i, wrap(i, 1, n))).collect()
}

/// Exact rank test: `A _||_ B | C` holds iff `rank(Sigma_{A∪C, B∪C}) <= #C`.
///
/// Requires `Sigma_{C,C}` to be nonsingular.
pub fn ci_holds<T: Field>(sigma: &SymMatrix<T>, stmt: &CIStatement) -> Result<bool> {
    let n = sigma.n();
    if stmt.max_index() > n {
        return Err(Error::IndexOutOfRange { index: stmt.max_index(), n });
    }
    if !stmt.c.is_empty() && det(&sigma.submatrix(&stmt.c, &stmt.c))?.is_zero() {
        return Err(Error::SingularConditioning { indices: stmt.c.clone() });
    }
    let (rows, cols) = stmt.test_indices();
    Ok(rank(&sigma.submatrix(&rows, &cols)) <= stmt.c.len())
}

/// A polynomial in the covariance variables with integer coefficients.
///
/// Keys are monomials as sorted multisets of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Vec<CovVariable>, i64>,
}

impl Polynomial {
    pub fn add_term(&mut self, coeff: i64, mut monomial: Vec<CovVariable>) {
        monomial.sort();
        let entry = self.terms.entry(monomial.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&monomial);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[CovVariable], i64)> {
        self.terms.iter().map(|(m, &c)| (m.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Distinct variables appearing in any term.
    pub fn support(&self) -> Vec<CovVariable> {
        let mut vars: Vec<CovVariable> = self.terms.keys().flatten().copied().collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Evaluates the polynomial at a covariance matrix.
    pub fn evaluate<T: Field>(&self, sigma: &SymMatrix<T>) -> T {
        self.terms.iter().fold(T::zero(), |acc, (mono, &c)| {
            let value = mono
                .iter()
                .fold(T::one(), |p, v| p * sigma.get(v.i(), v.j()).clone());
            let coeff = (0..c.unsigned_abs()).fold(T::zero(), |s, _| s + T::one());
            if c < 0 {
                acc - coeff * value
            } else {
                acc + coeff * value
            }
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match k {
                0 if c < 0 => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            let names: Vec<String> = mono.iter().map(ToString::to_string).collect();
            f.write_str(&names.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One minor of `Sigma_{A∪C, B∪C}` of order `#C + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorGenerator {
    pub statement: CIStatement,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub polynomial: Polynomial,
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], k));
    with
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        if prefix.len() == used.len() {
            let inversions = (0..prefix.len())
                .flat_map(|i| (i + 1..prefix.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Symbolic determinant of `Sigma_{rows, cols}` by Leibniz expansion.
pub fn symbolic_minor(rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len());
    let mut poly = Polynomial::default();
    for (perm, sign) in permutations(rows.len()) {
        let mono = perm
            .iter()
            .enumerate()
            .map(|(r, &c)| CovVariable::new(rows[r], cols[c]))
            .collect();
        poly.add_term(sign, mono);
    }
    poly
}

/// Every nonzero `(#C+1)`-minor of `Sigma_{A∪C, B∪C}` for each statement.
///
/// For a singleton statement `a _||_ b | c` this is the single binomial
/// `s_cc s_ab - s_ac s_bc`.
pub fn minor_generators(model: &CIModel) -> Vec<MinorGenerator> {
    let mut out = Vec::new();
    for stmt in &model.statements {
        let (rows, cols) = stmt.test_indices();
        let k = stmt.c.len() + 1;
        for r in subsets(&rows, k) {
            for c in subsets(&cols, k) {
                let polynomial = symbolic_minor(&r, &c);
                if !polynomial.is_zero() {
                    out.push(MinorGenerator {
                        statement: stmt.clone(),
                        rows: r.clone(),
                        cols: c,
                        polynomial,
                    });
                }
            }
        }
    }
    out
}

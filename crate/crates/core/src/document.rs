//! Text formats: the statement grammar and the JSON matrix document.
//!
//! Statements are written `A _||_ B | C` with comma-separated positive
//! integers, e.g. `1 _||_ 2 | 3`; the `| C` part is omitted for marginal
//! statements. Matrix documents look like
//! `{"n":2,"entries":[["1","1/2"],["1/2","1"]]}` with every entry a rational
//! string, so no precision is lost in transit.

use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::ci::CIStatement;
use crate::error::{Error, Result};
use crate::{Rational, RationalSymMatrix};

const INDEP: &str = "_||_";

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn parse_set(text: &str, offset: usize, what: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Err(parse_error(offset, format!("expected index list for {what}")));
    }
    let mut out = Vec::new();
    let mut start = 0;
    for item in text.split(',') {
        let lead = item.len() - item.trim_start().len();
        let pos = offset + start + lead;
        let token = item.trim();
        if token.is_empty() {
            return Err(parse_error(pos, format!("empty index in {what}")));
        }
        if !token.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_error(pos, format!("expected a positive integer in {what}, found `{token}`")));
        }
        let value: usize = token
            .parse()
            .map_err(|_| parse_error(pos, format!("index `{token}` is too large")))?;
        if value == 0 {
            return Err(parse_error(pos, "indices are 1-based"));
        }
        out.push(value);
        start += item.len() + 1;
    }
    Ok(out)
}

/// Parses `A _||_ B | C` or `A _||_ B` into a normalized statement.
pub fn parse_statement(text: &str) -> Result<CIStatement> {
    let Some(sep) = text.find(INDEP) else {
        return Err(parse_error(text.len(), format!("expected `{INDEP}`")));
    };
    let a = parse_set(&text[..sep], 0, "A")?;
    let rest_at = sep + INDEP.len();
    let rest = &text[rest_at..];
    let (b_text, c_part) = match rest.find('|') {
        Some(bar) => (&rest[..bar], Some((rest_at + bar + 1, &rest[bar + 1..]))),
        None => (rest, None),
    };
    let b = parse_set(b_text, rest_at, "B")?;
    let c = match c_part {
        Some((at, c_text)) => parse_set(c_text, at, "C")?,
        None => Vec::new(),
    };
    for (label, set) in [("A", &a), ("B", &b), ("C", &c)] {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_error(0, format!("repeated index in {label}")));
        }
    }
    CIStatement::new(a, b, c)
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    Rational::from_str(text.trim())
        .map_err(|e| Error::Document(format!("`{text}` is not a rational: {e}")))
}

/// Serialized covariance matrix: `n` and an `n x n` grid of rational strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Map<String, serde_json::Value>>,
}

impl MatrixDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn from_matrix(
        sigma: &RationalSymMatrix,
        metadata: Option<serde_json::Map<String, serde_json::Value>>,
    ) -> Self {
        Self { n: sigma.n(), entries: entry_grid(sigma), metadata }
    }

    /// Parses the grid, checking its shape and that it is symmetric after
    /// normalizing each rational.
    pub fn to_matrix(&self) -> Result<RationalSymMatrix> {
        let n = self.n;
        if self.entries.len() != n {
            return Err(Error::Document(format!("expected {n} rows, found {}", self.entries.len())));
        }
        let mut grid = Vec::with_capacity(n);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Document(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            grid.push(row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?);
        }
        for i in 0..n {
            for j in i + 1..n {
                if grid[i][j] != grid[j][i] {
                    return Err(Error::Document(format!(
                        "entries ({}, {}) and ({}, {}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(RationalSymMatrix::from_fn(n, |i, j| grid[i - 1][j - 1].clone()))
    }

    /// The same document with every entry in lowest terms.
    pub fn normalize(&self) -> Result<Self> {
        Ok(Self::from_matrix(&self.to_matrix()?, self.metadata.clone()))
    }
}

fn entry_grid(sigma: &RationalSymMatrix) -> Vec<Vec<String>> {
    (1..=sigma.n())
        .map(|i| (1..=sigma.n()).map(|j| sigma.get(i, j).to_string()).collect())
        .collect()
}

/// Serializes a matrix as its grid of rational strings.
pub fn serialize_sym_matrix<S: Serializer>(
    sigma: &RationalSymMatrix,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    entry_grid(sigma).serialize(s)
}

//! Test-only oracles and generators shared by the integration suites.
//!
//! Everything here is written against plain `Vec`s and the definitions, not
//! against the library's search code.
#![allow(dead_code)]

use gci_core::ci::CIStatement;
use gci_core::linalg::SymMatrix;
use gci_core::{rat, Rational, RationalSymMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

fn mixed_rows(rows: &[Vec<i8>], row_set: &[usize], col_set: &[usize]) -> bool {
    row_set.iter().all(|&i| {
        col_set.iter().any(|&j| rows[i][j] > 0) && col_set.iter().any(|&j| rows[i][j] < 0)
    })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n)).map(move |bits| (0..n).filter(|k| bits >> k & 1 == 1).collect())
}

/// Irreducibility straight from the definition: try every row subset `R'`
/// and column subset `T'` that leaves a zero bottom-left block.
pub fn exhaustive_irreducible(rows: &[Vec<i8>]) -> bool {
    let s = rows.len();
    let t = rows.first().map_or(0, Vec::len);
    let all_rows: Vec<usize> = (0..s).collect();
    let all_cols: Vec<usize> = (0..t).collect();
    if s == 0 || t == 0 || t > s || !mixed_rows(rows, &all_rows, &all_cols) {
        return false;
    }
    for r_prime in subsets(s) {
        for t_prime in subsets(t) {
            let zero_block = (0..s)
                .filter(|i| !r_prime.contains(i))
                .all(|i| t_prime.iter().all(|&j| rows[i][j] == 0));
            if !zero_block {
                continue;
            }
            let (sp, tp) = (r_prime.len(), t_prime.len());
            if mixed_rows(rows, &r_prime, &t_prime) && tp <= sp && t - tp > s - sp {
                return false;
            }
        }
    }
    true
}

/// `N_S`: rows meeting `cols`, restricted to `cols`.
pub fn induced(rows: &[Vec<i8>], cols: &[usize]) -> Vec<Vec<i8>> {
    rows.iter()
        .filter(|r| cols.iter().any(|&j| r[j] != 0))
        .map(|r| cols.iter().map(|&j| r[j]).collect())
        .collect()
}

/// All nonempty column sets whose induced matrix is irreducible, by brute
/// force over every subset.
pub fn exhaustive_supports(rows: &[Vec<i8>]) -> Vec<Vec<usize>> {
    let t = rows.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<usize>> = subsets(t)
        .filter(|s| !s.is_empty())
        .filter(|s| exhaustive_irreducible(&induced(rows, s)))
        .collect();
    out.sort();
    out
}

/// Random sign matrix; when `sparse`, each column gets at most two nonzeros.
pub fn random_sign_rows<R: Rng>(rng: &mut R, rows: usize, cols: usize, sparse: bool) -> Vec<Vec<i8>> {
    let mut m = vec![vec![0i8; cols]; rows];
    for j in 0..cols {
        if sparse {
            let mut idx: Vec<usize> = (0..rows).collect();
            idx.shuffle(rng);
            let k = rng.gen_range(0..=2.min(rows));
            for &i in &idx[..k] {
                m[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
            }
        } else {
            for row in m.iter_mut() {
                row[j] = rng.gen_range(-1..=1);
            }
        }
    }
    m
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64, max_denom: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_denom))
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64, max_denom: i64) -> RationalSymMatrix {
    SymMatrix::from_fn(n, |_, _| random_rational(rng, bound, max_denom))
}

fn pick_disjoint<R: Rng>(rng: &mut R, n: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut idx: Vec<usize> = (1..=n).collect();
    idx.shuffle(rng);
    let a_len = rng.gen_range(1..=2.min(n - 2));
    let b_len = rng.gen_range(1..=2.min(n - 1 - a_len));
    let c_len = rng.gen_range(0..=2.min(n - a_len - b_len));
    let a = idx[..a_len].to_vec();
    let b = idx[a_len..a_len + b_len].to_vec();
    let c = idx[a_len + b_len..a_len + b_len + c_len].to_vec();
    (a, b, c)
}

/// A random statement on `1..=n` with disjoint parts.
pub fn random_statement<R: Rng>(rng: &mut R, n: usize) -> CIStatement {
    let (a, b, c) = pick_disjoint(rng, n);
    CIStatement::new(a, b, c).unwrap()
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * int_det(&minor)
            })
            .sum(),
    }
}

/// A rational positive definite matrix in which a random statement
/// `A _||_ B | C` holds by construction.
///
/// `X = W ε` with independent latent `ε`: `X_C` loads only on `|C|` shared
/// latents through an invertible block; `X_A`, `X_B` load on those latents,
/// a block-private latent and their own noise; remaining variables load on
/// anything except other variables' noise. A random positive diagonal
/// rescaling makes the entries non-integral.
pub fn planted_pd<R: Rng>(rng: &mut R, n: usize) -> (RationalSymMatrix, CIStatement) {
    let (a, b, c) = pick_disjoint(rng, n);
    let k = c.len();
    let g = loop {
        let g: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if int_det(&g) != 0 {
            break g;
        }
    };
    // columns: k shared, U_A, U_B, then one noise column per variable
    let width = k + 2 + n;
    let mut w = vec![vec![0i64; width]; n];
    for (ci, &v) in c.iter().enumerate() {
        w[v - 1][..k].copy_from_slice(&g[ci]);
    }
    for v in 1..=n {
        if c.contains(&v) {
            continue;
        }
        let row = &mut w[v - 1];
        for x in row[..k].iter_mut() {
            *x = rng.gen_range(-2..=2);
        }
        let in_a = a.contains(&v);
        let in_b = b.contains(&v);
        if in_a || !in_b && rng.gen_bool(0.5) {
            row[k] = rng.gen_range(-2..=2);
        }
        if in_b || !in_a && rng.gen_bool(0.5) {
            row[k + 1] = rng.gen_range(-2..=2);
        }
        if in_a {
            row[k + 1] = 0;
        }
        if in_b {
            row[k] = 0;
        }
        row[k + 2 + v - 1] = rng.gen_range(1..=3);
    }
    let scale: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(1..=5), rng.gen_range(1..=5))).collect();
    let sigma = SymMatrix::from_fn(n, |i, j| {
        let dot: i64 = (0..width).map(|t| w[i - 1][t] * w[j - 1][t]).sum();
        rat(dot, 1) * &scale[i - 1] * &scale[j - 1]
    });
    (sigma, CIStatement::new(a, b, c).unwrap())
}

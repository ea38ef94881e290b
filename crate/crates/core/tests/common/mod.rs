//! Independent oracles shared by the integration tests. Nothing here calls
//! into the crate's arithmetic.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Terms `d_0..=d_m` by direct iteration with `d_{k-1} = 1`.
pub fn naive_terms(coeffs: &[i64], m: usize) -> Vec<BigInt> {
    let k = coeffs.len();
    let mut d: Vec<BigInt> = vec![BigInt::zero(); k - 1];
    d.push(BigInt::one());
    while d.len() <= m {
        let n = d.len();
        let mut next = BigInt::zero();
        for (i, a) in coeffs.iter().enumerate() {
            next += BigInt::from(*a) * &d[n - 1 - i];
        }
        d.push(next);
    }
    d.truncate(m + 1);
    d
}

pub type Grid = Vec<Vec<BigInt>>;

pub fn companion_grid(coeffs: &[i64]) -> Grid {
    let k = coeffs.len();
    let mut g = vec![vec![BigInt::zero(); k]; k];
    for (j, a) in coeffs.iter().enumerate() {
        g[0][j] = BigInt::from(*a);
    }
    for i in 1..k {
        g[i][i - 1] = BigInt::one();
    }
    g
}

pub fn grid_mul(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![BigInt::zero(); p]; n];
    for i in 0..n {
        for j in 0..p {
            for (t, bt) in b.iter().enumerate() {
                out[i][j] += &a[i][t] * &bt[j];
            }
        }
    }
    out
}

pub fn grid_identity(k: usize) -> Grid {
    let mut g = vec![vec![BigInt::zero(); k]; k];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    g
}

/// `m^n` by `n` plain multiplications.
pub fn grid_pow(m: &Grid, n: u32) -> Grid {
    (0..n).fold(grid_identity(m.len()), |acc, _| grid_mul(&acc, m))
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(g: &Grid) -> BigInt {
    fn go(g: &Grid, row: usize, used: &mut Vec<bool>, sign: i32, acc: BigInt, out: &mut BigInt) {
        let n = g.len();
        if row == n {
            if sign > 0 {
                *out += acc;
            } else {
                *out -= acc;
            }
            return;
        }
        for col in 0..n {
            if used[col] || g[row][col].is_zero() {
                continue;
            }
            // inversions added by placing `col` after the columns already used
            let inv = used[col + 1..].iter().filter(|&&u| u).count();
            used[col] = true;
            let s = if inv % 2 == 0 { sign } else { -sign };
            go(g, row + 1, used, s, &acc * &g[row][col], out);
            used[col] = false;
        }
    }
    let mut out = BigInt::zero();
    go(g, 0, &mut vec![false; g.len()], 1, BigInt::one(), &mut out);
    out
}

/// Which sums `0..=total` are reachable using each item at most once.
pub fn subset_sums(items: &[u64]) -> Vec<bool> {
    let total: u64 = items.iter().sum();
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    for &x in items {
        let x = x as usize;
        for s in (x..reach.len()).rev() {
            if reach[s - x] {
                reach[s] = true;
            }
        }
    }
    reach
}

pub fn signed_pow(base: i64, exp: u32, negative: bool) -> BigInt {
    let mag = num_traits::pow(BigInt::from(base), exp as usize);
    if negative {
        -mag
    } else {
        mag
    }
}

/// Fibonacci coefficient vectors `(c_q, ..., c_1)` whose running sums from
/// the bottom stay below the next term, grouped by value, for values up to
/// `limit`. `q` is the largest index with `d_q <= limit`.
pub fn fibonacci_canonical_forms(limit: u64) -> (usize, std::collections::HashMap<u64, Vec<Vec<u64>>>) {
    let d: Vec<u64> = naive_terms(&[1, 1], 64)
        .iter()
        .map(|v| u64::try_from(v).unwrap())
        .collect();
    let q = (1..d.len()).rev().find(|&i| d[i] <= limit).unwrap();
    let mut out: std::collections::HashMap<u64, Vec<Vec<u64>>> = Default::default();
    // c_j in 0..=(d_{j+1} - 1) / d_j, indices q down to 1
    let bounds: Vec<u64> = (1..=q).rev().map(|j| (d[j + 1] - 1) / d[j]).collect();
    let mut coeffs = vec![0u64; bounds.len()];
    'outer: loop {
        let mut partial = 0;
        let mut ok = true;
        for (t, j) in (1..=q).enumerate().map(|(t, j)| (bounds.len() - 1 - t, j)) {
            partial += coeffs[t] * d[j];
            if partial >= d[j + 1] {
                ok = false;
                break;
            }
        }
        if ok && partial <= limit {
            out.entry(partial).or_default().push(coeffs.clone());
        }
        for t in (0..coeffs.len()).rev() {
            if coeffs[t] < bounds[t] {
                coeffs[t] += 1;
                continue 'outer;
            }
            coeffs[t] = 0;
        }
        break;
    }
    (q, out)
}

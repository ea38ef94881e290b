//! Dense matrices over arbitrary precision integers.
//!
//! Text format: first line `rows cols`, then one row per line with
//! space separated decimal entries.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{parse, validation, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    /// Row-major entries; `entries.len()` must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(validation(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows<R, T>(rows: R) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(validation("ragged rows"));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
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

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(validation(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for t in 0..self.cols {
                    let a = self.get(i, t);
                    if !a.is_zero() {
                        acc += a * rhs.get(t, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `self^n` by square-and-multiply. `n = 0` gives the identity.
    pub fn pow(&self, mut n: u32) -> Self {
        assert!(self.is_square(), "pow needs a square matrix");
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign {
            -det
        } else {
            det
        }
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let entries = (0..self.rows)
            .filter(|&r| r != i)
            .flat_map(|r| {
                (0..self.cols)
                    .filter(move |&c| c != j)
                    .map(move |c| self.get(r, c).clone())
            })
            .collect();
        Self {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Signed cofactor `(-1)^{i+j} det(minor(i, j))`.
    pub fn cofactor(&self, i: usize, j: usize) -> BigInt {
        let d = self.minor(i, j).determinant();
        if (i + j) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Transposed cofactor matrix, so that `A * adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate needs a square matrix");
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                adj.set(j, i, self.cofactor(i, j));
            }
        }
        adj
    }

    /// The matrix numerator over `det`, normalized.
    pub fn inverse(&self) -> Result<ScaledMatrix> {
        ScaledMatrix::new(self.adjugate(), self.determinant())
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn mul(self, rhs: Self) -> IntegerMatrix {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Add for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn add(self, rhs: Self) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line = self
                .row(i)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for IntegerMatrix {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| parse("empty matrix text"))?;
        let dims = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse(format!("bad dimension {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [rows, cols] = dims[..] else {
            return Err(parse("matrix header must be `rows cols`"));
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| parse(format!("missing matrix row {}", r + 1)))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<BigInt>().map_err(|_| parse(format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != cols {
                return Err(parse(format!(
                    "row {} has {} entries, expected {cols}",
                    r + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        if lines.next().is_some() {
            return Err(parse("trailing data after matrix rows"));
        }
        Self::new(rows, cols, entries)
    }
}

/// An exact rational matrix `numerator / denominator`.
///
/// Always normalized: the denominator is positive and shares no common
/// factor with every numerator entry at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMatrix {
    numerator: IntegerMatrix,
    denominator: BigInt,
}

impl ScaledMatrix {
    pub fn new(numerator: IntegerMatrix, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(validation("zero denominator (singular matrix)"));
        }
        let g = numerator
            .entries
            .iter()
            .fold(denominator.abs(), |g, e| g.gcd(e));
        let mut g = if g.is_zero() { BigInt::one() } else { g };
        if denominator.is_negative() {
            g = -g;
        }
        let entries = numerator.entries.iter().map(|e| e / &g).collect();
        Ok(Self {
            numerator: IntegerMatrix { entries, ..numerator },
            denominator: denominator / g,
        })
    }

    pub fn numerator(&self) -> &IntegerMatrix {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `self * rhs`, still exact.
    pub fn mul_integer(&self, rhs: &IntegerMatrix) -> Result<Self> {
        Self::new(self.numerator.checked_mul(rhs)?, self.denominator.clone())
    }

    /// The integer matrix this represents, if every entry divides exactly.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        self.denominator.is_one().then(|| self.numerator.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.numerator.is_square()
            && self.to_integer() == Some(IntegerMatrix::identity(self.numerator.rows))
    }
}

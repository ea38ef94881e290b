use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::CodeMessage;
use crate::error::{validation, Result};
use crate::recurrence::RecurrenceSpec;

/// Largest real root of `x^k - a_1 x^{k-1} - ... - a_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominantRoot {
    pub value: f64,
    pub tol: f64,
    pub spec: RecurrenceSpec,
}

fn char_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(1.0, |acc, a| acc * x - a)
}

/// Bisection on `(1, 1 + max a_i]`, where the polynomial changes sign once.
pub fn dominant_root(spec: &RecurrenceSpec, tol: f64) -> Result<DominantRoot> {
    spec.require_positive()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(validation(format!("tolerance must be positive, got {tol}")));
    }
    let coeffs: Vec<f64> = spec
        .coeffs()
        .iter()
        .map(|a| a.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let mut lo = 1.0_f64;
    let mut hi = 1.0 + coeffs.iter().cloned().fold(0.0, f64::max);
    while hi - lo > tol * lo {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if char_poly(&coeffs, mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(DominantRoot {
        value: lo + (hi - lo) / 2.0,
        tol,
        spec: spec.clone(),
    })
}

/// `floor(alpha * 2^bits)`, exact integer bisection.
pub(crate) fn scaled_root(spec: &RecurrenceSpec, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    // p(X / 2^bits) * 2^{k bits}; only the sign matters.
    let sign_at = |x: &BigInt| {
        let mut acc = BigInt::one();
        let mut scale = BigInt::one();
        for a in spec.coeffs() {
            acc *= x;
            scale <<= bits;
            acc -= a * &scale;
        }
        acc
    };
    let max_a = spec.coeffs().iter().max().expect("degree >= 2");
    let mut lo = one.clone();
    let mut hi = (max_a + 1) * &one;
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if sign_at(&mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// Nearest integer to `e * alpha^shift`, with `alpha` given as `root / 2^bits`.
pub(crate) fn scale_by_root(e: &BigInt, root: &BigInt, bits: u32, shift: i32) -> BigInt {
    let steps = shift.unsigned_abs();
    let pow = num_traits::pow(root.clone(), steps as usize);
    let unit = BigInt::one() << (bits * steps);
    let (num, den) = if shift >= 0 {
        (e * pow, unit)
    } else {
        (e * unit, pow)
    };
    let (q, r) = num.div_mod_floor(&den);
    if (r << 1) >= den {
        q + 1
    } else {
        q
    }
}

/// One `e_ij / e_{(i+r)j}` comparison; indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCell {
    pub row: usize,
    pub col: usize,
    /// `None` when the entries are not both positive.
    pub ratio: Option<f64>,
    pub rel_error: Option<f64>,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub offset: usize,
    pub tol: f64,
    pub cells: Vec<RatioCell>,
}

impl RatioReport {
    pub fn max_rel_error(&self) -> Option<f64> {
        self.cells
            .iter()
            .filter_map(|c| c.rel_error)
            .fold(None, |m, e| Some(m.map_or(e, |m: f64| m.max(e))))
    }

    /// Every checkable cell is within tolerance and at least one was checkable.
    pub fn all_within(&self) -> bool {
        self.cells.iter().any(|c| c.ratio.is_some())
            && self.cells.iter().filter(|c| c.ratio.is_some()).all(|c| c.within)
    }
}

/// Compares `e_ij / e_{(i+r)j}` with `alpha^r` for every column and every
/// row that has a partner `r` rows down.
pub fn ratio_check(msg: &CodeMessage, root: &DominantRoot, offset: usize, tol: f64) -> Result<RatioReport> {
    let k = msg.degree();
    if offset >= k {
        return Err(validation(format!("offset {offset} leaves no row pairs for k = {k}")));
    }
    let target = root.value.powi(offset as i32);
    let mut cells = Vec::new();
    for j in 0..k {
        for i in 0..k - offset {
            let num = msg.e.get(i, j);
            let den = msg.e.get(i + offset, j);
            let ratio = (num.is_positive() && den.is_positive())
                .then(|| BigRational::new(num.clone(), den.clone()).to_f64())
                .flatten();
            let rel_error = ratio.map(|q| (q - target).abs() / target);
            cells.push(RatioCell {
                row: i,
                col: j,
                ratio,
                rel_error,
                within: rel_error.is_some_and(|e| e <= tol),
            });
        }
    }
    Ok(RatioReport { offset, tol, cells })
}

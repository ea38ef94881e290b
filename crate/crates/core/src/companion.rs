//! The companion matrix `D_k` of a recurrence and its exact powers.
//!
//! ```text
//!       | a1 a2 ... a(k-1) ak |
//!       | 1  0  ...   0    0  |
//! D_k = | 0  1  ...   0    0  |
//!       | .  .        .    .  |
//!       | 0  0  ...   1    0  |
//! ```
//!
//! Column 1 of `D_k^n` carries `d_{n+k-1}..d_n`; column `j` carries the
//! tail sums `sum_{i=1}^{k-j+1} a_{i+j-1} d_{n+k-i-r}` for row `r`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{validation, Result};
use crate::matrix::{IntegerMatrix, ScaledMatrix};
use crate::recurrence::{RecurrenceSpec, SequenceTable};

pub fn companion(spec: &RecurrenceSpec) -> IntegerMatrix {
    let k = spec.degree();
    let mut d = IntegerMatrix::zeros(k, k);
    for (j, a) in spec.coeffs().iter().enumerate() {
        d.set(0, j, a.clone());
    }
    for i in 1..k {
        d.set(i, i - 1, BigInt::one());
    }
    d
}

fn require_exponent(n: u32) -> Result<()> {
    if n < 1 {
        Err(validation("exponent must be at least 1"))
    } else {
        Ok(())
    }
}

/// `D_k^n` for `n >= 1`.
pub fn power(spec: &RecurrenceSpec, n: u32) -> Result<IntegerMatrix> {
    require_exponent(n)?;
    Ok(companion(spec).pow(n))
}

/// `D_k^{-n}` as `adj(D_k)^n / det(D_k)^n`, normalized.
///
/// `adj(D^n) = adj(D)^n`, so this never takes cofactors of the (large) power.
pub fn inverse_power(spec: &RecurrenceSpec, n: u32) -> Result<ScaledMatrix> {
    require_exponent(n)?;
    let d = companion(spec);
    let numerator = d.adjugate().pow(n);
    ScaledMatrix::new(numerator, spec.det_power_expected(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetReport {
    pub det: BigInt,
    pub expected: BigInt,
    pub holds: bool,
}

/// `det(D_k^n)` computed directly, compared with `(-1)^{(k+1)n} a_k^n`.
pub fn det_power(spec: &RecurrenceSpec, n: u32) -> Result<DetReport> {
    let det = power(spec, n)?.determinant();
    let expected = spec.det_power_expected(n);
    Ok(DetReport {
        holds: det == expected,
        det,
        expected,
    })
}

/// Terms of the recurrence on both sides of zero.
///
/// Negative indices come from running the recurrence backwards,
/// `d_j = (d_{j+k} - a_1 d_{j+k-1} - ... - a_{k-1} d_{j+1}) / a_k`, which
/// is rational in general (`d_{-1} = 1/a_k`).
struct TwoSidedTerms {
    forward: SequenceTable,
    /// `backward[t]` is `d_{-(t+1)}`.
    backward: Vec<BigRational>,
}

impl TwoSidedTerms {
    fn new(spec: &RecurrenceSpec, lo: i64, hi: usize) -> Result<Self> {
        let k = spec.degree();
        let forward = spec.generate(hi.max(k - 1))?;
        let mut this = Self {
            forward,
            backward: Vec::new(),
        };
        let ak = BigRational::from_integer(spec.last().clone());
        let mut j = -1i64;
        while j >= lo {
            let mut acc = this.get(j + k as i64);
            for i in 1..k {
                acc -= BigRational::from_integer(spec.coeff(i).clone()) * this.get(j + (k - i) as i64);
            }
            this.backward.push(acc / &ak);
            j -= 1;
        }
        Ok(this)
    }

    fn get(&self, j: i64) -> BigRational {
        if j >= 0 {
            BigRational::from_integer(self.forward.get(j as usize).clone())
        } else {
            self.backward[(-j - 1) as usize].clone()
        }
    }
}

/// Builds `D_k^n` entry by entry from recurrence terms alone.
///
/// Returns `None` if some entry is not an integer, which would itself be a
/// failure of the structure formulas.
pub fn structure_matrix(spec: &RecurrenceSpec, n: u32) -> Result<Option<IntegerMatrix>> {
    require_exponent(n)?;
    let k = spec.degree();
    let n = i64::from(n);
    let ki = k as i64;
    // column 1 with i = k, r = k touches d_{n-k}
    let terms = TwoSidedTerms::new(spec, n - ki, (n + ki) as usize)?;
    let mut out = IntegerMatrix::zeros(k, k);
    for r in 1..=k {
        for j in 1..=k {
            let mut acc = BigRational::zero();
            for i in 1..=(k - j + 1) {
                let a = BigRational::from_integer(spec.coeff(i + j - 1).clone());
                acc += a * terms.get(n + ki - i as i64 - r as i64);
            }
            if !acc.is_integer() {
                return Ok(None);
            }
            out.set(r - 1, j - 1, acc.to_integer());
        }
    }
    Ok(Some(out))
}

/// True iff every entry of `D_k^n` matches its recurrence-term formula.
pub fn structure_check(spec: &RecurrenceSpec, n: u32) -> Result<bool> {
    let expected = structure_matrix(spec, n)?;
    let actual = power(spec, n)?;
    Ok(expected.is_some_and(|m| m == actual))
}

/// `D^n = a_1 D^{n-1} + ... + a_k D^{n-k}` for `n >= k`.
pub fn matrix_recurrence_holds(spec: &RecurrenceSpec, n: u32) -> Result<bool> {
    let k = spec.degree() as u32;
    if n < k {
        return Err(validation(format!("matrix recurrence needs n >= k = {k}")));
    }
    let d = companion(spec);
    let lhs = d.pow(n);
    let rhs = (1..=k).fold(IntegerMatrix::zeros(k as usize, k as usize), |acc, i| {
        &acc + &d.pow(n - i).scale(spec.coeff(i as usize))
    });
    Ok(lhs == rhs)
}

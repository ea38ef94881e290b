//! k-term linear recurrences with exact integer terms.
//!
//! A [`RecurrenceSpec`] holds the coefficients `a_1..a_k` of
//! `d_n = a_1 d_{n-1} + ... + a_k d_{n-k}` with initial terms
//! `d_0 = ... = d_{k-2} = 0`, `d_{k-1} = 1`. Everything else in the crate is
//! derived from it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{parse, validation, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceSpec {
    coeffs: Vec<BigInt>,
}

impl RecurrenceSpec {
    /// Builds a spec from `a_1..a_k`. Requires `k >= 2` and `a_k != 0`.
    pub fn new<I, T>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.len() < 2 {
            return Err(validation(format!(
                "degree must be at least 2, got {}",
                coeffs.len()
            )));
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(validation("last coefficient a_k must be nonzero"));
        }
        Ok(Self { coeffs })
    }

    /// Parses a comma separated coefficient list such as `18,10,13,3`.
    pub fn from_list(list: &str) -> Result<Self> {
        let coeffs = list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_i` with the 1-based index used in the recurrence.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i - 1]
    }

    /// `a_k`.
    pub fn last(&self) -> &BigInt {
        &self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(Signed::is_positive)
    }

    /// The representation, cipher and block code all need `a_i >= 1`.
    pub fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(validation(format!(
                "all coefficients must be positive, got {}",
                self.list()
            )))
        }
    }

    /// Comma separated coefficients, the form used by CLI flags.
    pub fn list(&self) -> String {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `(-1)^{(k+1)n} a_k^n`, the determinant of the n-th companion power.
    pub fn det_power_expected(&self, n: u32) -> BigInt {
        let k = self.degree() as u64;
        let mag = Pow::pow(self.last(), n);
        if ((k + 1) * u64::from(n)) % 2 == 1 {
            -mag
        } else {
            mag
        }
    }

    pub fn generate(&self, m: usize) -> Result<SequenceTable> {
        SequenceTable::generate(self, m)
    }
}

impl fmt::Display for RecurrenceSpec {
    /// One line `k a1 a2 ... ak`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree())?;
        for a in &self.coeffs {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

impl FromStr for RecurrenceSpec {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let k: usize = it
            .next()
            .ok_or_else(|| parse("empty recurrence spec"))?
            .parse()
            .map_err(|_| parse("degree is not a number"))?;
        let coeffs = it
            .map(|t| t.parse::<BigInt>().map_err(|_| parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != k {
            return Err(parse(format!(
                "declared degree {k} but found {} coefficients",
                coeffs.len()
            )));
        }
        Self::new(coeffs)
    }
}

/// Terms `d_0..d_m` of a recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    spec: RecurrenceSpec,
    values: Vec<BigInt>,
}

impl SequenceTable {
    /// Terms `d_0..=d_m`; `m` must reach at least the initial `1` at `k-1`.
    pub fn generate(spec: &RecurrenceSpec, m: usize) -> Result<Self> {
        let k = spec.degree();
        if m + 1 < k {
            return Err(validation(format!(
                "table must extend to index k-1 = {}, asked for {m}",
                k - 1
            )));
        }
        let mut values = vec![BigInt::zero(); k - 1];
        values.push(BigInt::one());
        let mut table = Self {
            spec: spec.clone(),
            values,
        };
        table.extend_to(m);
        Ok(table)
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Highest stored index.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `d_i`; panics past the stored range.
    pub fn get(&self, i: usize) -> &BigInt {
        &self.values[i]
    }

    pub fn last(&self) -> &BigInt {
        &self.values[self.values.len() - 1]
    }

    /// Grows the table so that it holds `d_0..=d_m`.
    pub fn extend_to(&mut self, m: usize) {
        while self.values.len() <= m {
            self.push_next();
        }
    }

    /// Appends the next term and returns it.
    pub fn push_next(&mut self) -> &BigInt {
        let n = self.values.len();
        let next = self
            .spec
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * &self.values[n - 1 - i])
            .sum();
        self.values.push(next);
        self.last()
    }
}

/// Both sides of an integer identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

impl IdentityReport {
    fn new(lhs: BigInt, rhs: BigInt) -> Self {
        let holds = lhs == rhs;
        Self { lhs, rhs, holds }
    }
}

/// `d_{n-1} d_{n+1} - d_n^2` against `(-1)^n b^{n-1}` for `d_n = a d_{n-1} + b d_{n-2}`.
pub fn cassini_deg2(a: &BigInt, b: &BigInt, n: usize) -> Result<IdentityReport> {
    if n < 1 {
        return Err(validation("cassini_deg2 needs n >= 1"));
    }
    let spec = RecurrenceSpec::new([a.clone(), b.clone()])?;
    let t = spec.generate(n + 1)?;
    let lhs = t.get(n - 1) * t.get(n + 1) - t.get(n) * t.get(n);
    let mag = Pow::pow(b, (n - 1) as u32);
    let rhs = if n % 2 == 1 { -mag } else { mag };
    Ok(IdentityReport::new(lhs, rhs))
}

/// The degree-3 identity
/// `d_n(d_n^2 - d_{n-1}d_{n+1}) + d_{n-2}(d_{n+1}^2 - d_n d_{n+2})
///  + d_{n-1}(d_{n-1}d_{n+2} - d_n d_{n+1}) = c^{n-2}`
/// for `d_n = a d_{n-1} + b d_{n-2} + c d_{n-3}`, `d_0 = d_1 = 0`, `d_2 = 1`.
pub fn cassini_deg3(a: &BigInt, b: &BigInt, c: &BigInt, n: usize) -> Result<IdentityReport> {
    if n < 2 {
        return Err(validation("cassini_deg3 needs n >= 2"));
    }
    let spec = RecurrenceSpec::new([a.clone(), b.clone(), c.clone()])?;
    // d_{-1} = 0 is never touched for n >= 2, so the plain table suffices.
    let t = spec.generate(n + 2)?;
    let d = |i: usize| t.get(i);
    let lhs = d(n) * (d(n) * d(n) - d(n - 1) * d(n + 1))
        + d(n - 2) * (d(n + 1) * d(n + 1) - d(n) * d(n + 2))
        + d(n - 1) * (d(n - 1) * d(n + 2) - d(n) * d(n + 1));
    let rhs = Pow::pow(c, (n - 2) as u32);
    Ok(IdentityReport::new(lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletenessReport {
    pub complete: bool,
    /// Table index of the first term violating the criterion.
    pub first_failure: Option<usize>,
}

/// Brown's criterion over the stored terms: after the leading zeros the
/// first term must be 1 and every later term at most one more than the sum
/// of all terms before it.
pub fn completeness_check(table: &SequenceTable) -> Result<CompletenessReport> {
    let values = table.values();
    let start = values
        .iter()
        .position(|v| !v.is_zero())
        .ok_or_else(|| validation("table has no nonzero term"))?;
    if !values[start].is_one() {
        return Err(validation(format!(
            "first nonzero term must be 1, got {}",
            values[start]
        )));
    }
    if values[start..].windows(2).any(|w| w[1] < w[0]) {
        return Err(validation("table is not nondecreasing"));
    }
    let mut prefix = BigInt::zero();
    for (i, v) in values.iter().enumerate().skip(start) {
        if *v > &prefix + 1u32 {
            return Ok(CompletenessReport {
                complete: false,
                first_failure: Some(i),
            });
        }
        prefix += v;
    }
    Ok(CompletenessReport {
        complete: true,
        first_failure: None,
    })
}

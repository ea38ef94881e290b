//! Matrix block code over companion powers.
//!
//! A `k x k` nonnegative message `M` is sent as `E = D_k^n M` together with
//! `det M`. The receiver checks `det E = (-1)^{(k+1)n} a_k^n det M`, decodes
//! with `M = D_k^{-n} E`, and on a checksum mismatch searches for the
//! corrupted entries using the determinant equation and the near-geometric
//! shape of the columns of `E` (ratio of consecutive rows close to the
//! dominant root of the characteristic polynomial).

mod channel;
mod correct;
mod root;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::companion::{inverse_power, power};
use crate::error::{parse, validation, Error, Result};
use crate::matrix::{IntegerMatrix, ScaledMatrix};
use crate::recurrence::RecurrenceSpec;

pub use channel::{
    channel_trial, inject, run_channel, ChannelStats, Corruption, ErrorModel, TrialOutcome,
};
pub use correct::{
    correct, correct_multi, correct_single, correction_coefficient, CorrectionReport, CorrectionStatus,
    MultiOptions, DEFAULT_WINDOW,
};
pub use root::{dominant_root, ratio_check, DominantRoot, RatioCell, RatioReport};

/// A square message matrix with nonnegative entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainMatrix(IntegerMatrix);

impl PlainMatrix {
    pub fn new(m: IntegerMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(validation("message matrix must be square"));
        }
        if m.entries().iter().any(Signed::is_negative) {
            return Err(validation("message entries must be nonnegative"));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.0
    }

    pub fn into_inner(self) -> IntegerMatrix {
        self.0
    }
}

/// Code matrix `E`, exponent `n`, and the `det M` checksum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMessage {
    pub spec: RecurrenceSpec,
    pub n: u32,
    pub e: IntegerMatrix,
    pub det_m: BigInt,
}

impl CodeMessage {
    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    /// `det E` required by the checksum.
    pub fn expected_det(&self) -> BigInt {
        self.spec.det_power_expected(self.n) * &self.det_m
    }
}

impl fmt::Display for CodeMessage {
    /// `k n`, the coefficients, `det M`, then `E` in matrix text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.degree(), self.n)?;
        let coeffs: Vec<String> = self.spec.coeffs().iter().map(ToString::to_string).collect();
        writeln!(f, "{}", coeffs.join(" "))?;
        writeln!(f, "{}", self.det_m)?;
        write!(f, "{}", self.e)
    }
}

impl FromStr for CodeMessage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .map(str::trim)
                .ok_or_else(|| parse(format!("message file is missing {what}")))
        };
        let header = next("the `k n` line")?;
        let (k, n) = header
            .split_once(char::is_whitespace)
            .ok_or_else(|| parse("header must be `k n`"))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| parse(format!("bad exponent {n:?}")))?;
        let spec: RecurrenceSpec = format!("{k} {}", next("coefficients")?).parse()?;
        let det_m = next("det M")?
            .parse::<BigInt>()
            .map_err(|_| parse("bad det M"))?;
        let rest: Vec<&str> = lines.collect();
        let e: IntegerMatrix = rest.join("\n").parse()?;
        if e.rows() != spec.degree() || e.cols() != spec.degree() {
            return Err(validation(format!(
                "code matrix is {}x{}, expected {k}x{k}",
                e.rows(),
                e.cols()
            )));
        }
        Ok(Self { spec, n, e, det_m })
    }
}

fn check_spec(spec: &RecurrenceSpec, n: u32) -> Result<()> {
    spec.require_positive()?;
    if n < 1 {
        return Err(validation("exponent must be at least 1"));
    }
    Ok(())
}

/// `E = D_k^n M` with the `det M` checksum.
pub fn encode(spec: &RecurrenceSpec, n: u32, m: &PlainMatrix) -> Result<CodeMessage> {
    check_spec(spec, n)?;
    let k = spec.degree();
    if m.matrix().rows() != k {
        return Err(validation(format!(
            "message is {0}x{0}, spec has degree {k}",
            m.matrix().rows()
        )));
    }
    Ok(CodeMessage {
        spec: spec.clone(),
        n,
        e: power(spec, n)?.checked_mul(m.matrix())?,
        det_m: m.matrix().determinant(),
    })
}

/// `M = D_k^{-n} E`, failing unless every entry is a nonnegative integer.
pub fn decode(msg: &CodeMessage) -> Result<PlainMatrix> {
    check_spec(&msg.spec, msg.n)?;
    let inv = inverse_power(&msg.spec, msg.n)?;
    decode_with(&inv, &msg.e)
}

pub(crate) fn decode_with(inv: &ScaledMatrix, e: &IntegerMatrix) -> Result<PlainMatrix> {
    let m = inv
        .mul_integer(e)?
        .to_integer()
        .ok_or_else(|| Error::Decode("code matrix is not divisible by the decoding matrix".into()))?;
    if m.entries().iter().any(Signed::is_negative) {
        return Err(Error::Decode("decoded message has negative entries".into()));
    }
    Ok(PlainMatrix(m))
}

/// Checksum test `det E = (-1)^{(k+1)n} a_k^n det M`.
pub fn detect(msg: &CodeMessage) -> bool {
    msg.e.determinant() == msg.expected_det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    fn fib() -> RecurrenceSpec {
        RecurrenceSpec::new([1, 1]).unwrap()
    }

    #[test]
    fn encode_examples() {
        let msg = encode(&fib(), 2, &PlainMatrix::new(IntegerMatrix::identity(2)).unwrap()).unwrap();
        assert_eq!(msg.e, m(&[&[2, 1], &[1, 1]]));
        assert_eq!(msg.det_m, 1.into());

        let msg = encode(&fib(), 2, &PlainMatrix::new(m(&[&[1, 2], &[3, 4]])).unwrap()).unwrap();
        assert_eq!(msg.e, m(&[&[5, 8], &[4, 6]]));
        assert_eq!(msg.det_m, (-2).into());
        assert_eq!(msg.e.determinant(), msg.expected_det());

        let s = RecurrenceSpec::new([18, 10, 13, 3]).unwrap();
        let msg = encode(&s, 1, &PlainMatrix::new(IntegerMatrix::identity(4)).unwrap()).unwrap();
        assert_eq!(msg.e, crate::companion::companion(&s));
    }

    #[test]
    fn encode_rejects_bad_input() {
        assert!(PlainMatrix::new(m(&[&[1, -1], &[0, 1]])).is_err());
        assert!(PlainMatrix::new(m(&[&[1, 1]])).is_err());
        let id3 = PlainMatrix::new(IntegerMatrix::identity(3)).unwrap();
        assert!(encode(&fib(), 2, &id3).is_err());
        assert!(encode(&fib(), 0, &PlainMatrix::new(IntegerMatrix::identity(2)).unwrap()).is_err());
        let neg = RecurrenceSpec::new([1, -1]).unwrap();
        assert!(encode(&neg, 2, &PlainMatrix::new(IntegerMatrix::identity(2)).unwrap()).is_err());
    }

    #[test]
    fn decode_examples() {
        let plain = PlainMatrix::new(m(&[&[1, 2], &[3, 4]])).unwrap();
        let msg = encode(&fib(), 2, &plain).unwrap();
        assert_eq!(decode(&msg).unwrap(), plain);

        let id = PlainMatrix::new(IntegerMatrix::identity(2)).unwrap();
        assert_eq!(decode(&encode(&fib(), 7, &id).unwrap()).unwrap(), id);

        // 5 -> 7 in the corner still decodes cleanly; only the checksum sees it.
        let mut bad = msg.clone();
        bad.e.set(0, 0, 7.into());
        assert_eq!(decode(&bad).unwrap().matrix(), &m(&[&[3, 2], &[1, 4]]));
        assert!(!detect(&bad));

        let mut bad = msg;
        bad.e.set(0, 1, 3.into());
        assert!(matches!(decode(&bad), Err(Error::Decode(_))));
    }

    #[test]
    fn decode_flags_divisibility() {
        // a_k = 3: D^{-1} has denominator 3
        let s = RecurrenceSpec::new([2, 3]).unwrap();
        let plain = PlainMatrix::new(m(&[&[4, 1], &[2, 7]])).unwrap();
        let mut msg = encode(&s, 1, &plain).unwrap();
        msg.e.set(1, 0, &msg.e.get(1, 0).clone() + 1);
        let err = decode(&msg).unwrap_err();
        assert!(err.to_string().contains("divisible"), "{err}");
    }

    #[test]
    fn detect_examples() {
        let msg = encode(&fib(), 2, &PlainMatrix::new(m(&[&[1, 2], &[3, 4]])).unwrap()).unwrap();
        assert!(detect(&msg));
        let mut bad = msg.clone();
        bad.e.set(0, 0, 7.into());
        assert_eq!(bad.e.determinant(), 10.into());
        assert!(!detect(&bad));
        let mut bad = msg;
        bad.det_m = 5.into();
        assert!(!detect(&bad));
    }

    #[test]
    fn message_file_format() {
        let msg = encode(&fib(), 2, &PlainMatrix::new(m(&[&[1, 2], &[3, 4]])).unwrap()).unwrap();
        let text = msg.to_string();
        assert_eq!(text, "2 2\n1 1\n-2\n2 2\n5 8\n4 6\n");
        assert_eq!(text.parse::<CodeMessage>().unwrap(), msg);
        assert!("2 2\n1 1\n-2\n3 3\n1 0 0\n0 1 0\n0 0 1\n".parse::<CodeMessage>().is_err());
        assert!("2\n1 1\n-2\n2 2\n5 8\n4 6\n".parse::<CodeMessage>().is_err());
    }
}

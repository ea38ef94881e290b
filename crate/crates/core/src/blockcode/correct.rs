use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::root::{scale_by_root, scaled_root};
use super::{decode_with, detect, CodeMessage, PlainMatrix};
use crate::companion::inverse_power;
use crate::error::{validation, Result};
use crate::matrix::{IntegerMatrix, ScaledMatrix};

/// Default half-width of the multi-error search window.
pub const DEFAULT_WINDOW: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrectionStatus {
    Intact,
    Corrected,
    Uncorrectable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionReport {
    pub status: CorrectionStatus,
    /// Repaired positions, 0-based `(row, col)`.
    pub positions: Vec<(usize, usize)>,
    /// The repaired message; `Some` only for `Corrected`.
    pub corrected: Option<CodeMessage>,
    pub decoded: Option<PlainMatrix>,
    /// The repair replaced `det M` and left `E` alone.
    pub checksum_repaired: bool,
    /// Positions the single-error pass could not solve for (zero cofactor).
    pub zero_cofactor: Vec<(usize, usize)>,
    /// Full assignments tested against the decoder.
    pub candidates_tried: u64,
    /// The multi-error search stopped at its budget.
    pub exhausted: bool,
}

impl CorrectionReport {
    fn new(status: CorrectionStatus) -> Self {
        Self {
            status,
            positions: Vec::new(),
            corrected: None,
            decoded: None,
            checksum_repaired: false,
            zero_cofactor: Vec::new(),
            candidates_tried: 0,
            exhausted: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiOptions {
    pub max_weight: usize,
    pub window: u32,
    /// Cap on assignments examined across all position sets.
    pub budget: u64,
}

impl Default for MultiOptions {
    fn default() -> Self {
        Self {
            max_weight: 2,
            window: DEFAULT_WINDOW,
            budget: 1_000_000,
        }
    }
}

struct Repair<'a> {
    msg: &'a CodeMessage,
    target: BigInt,
    inv: ScaledMatrix,
}

impl<'a> Repair<'a> {
    fn new(msg: &'a CodeMessage) -> Result<Self> {
        msg.spec.require_positive()?;
        Ok(Self {
            msg,
            target: msg.expected_det(),
            inv: inverse_power(&msg.spec, msg.n)?,
        })
    }

    fn accept(&self, e: &IntegerMatrix) -> Option<PlainMatrix> {
        decode_with(&self.inv, e).ok()
    }

    fn intact(&self) -> CorrectionReport {
        let mut report = CorrectionReport::new(CorrectionStatus::Intact);
        report.decoded = self.accept(&self.msg.e);
        report
    }

    fn corrected(
        &self,
        e: IntegerMatrix,
        det_m: BigInt,
        decoded: PlainMatrix,
        positions: Vec<(usize, usize)>,
    ) -> CorrectionReport {
        let mut report = CorrectionReport::new(CorrectionStatus::Corrected);
        report.checksum_repaired = det_m != self.msg.det_m;
        report.corrected = Some(CodeMessage {
            spec: self.msg.spec.clone(),
            n: self.msg.n,
            e,
            det_m,
        });
        report.decoded = Some(decoded);
        report.positions = positions;
        report
    }

    /// Value of `e[pos]` that makes `det e` hit the target, if integral.
    fn solve(&self, e: &mut IntegerMatrix, (i, j): (usize, usize)) -> Option<BigInt> {
        let cofactor = e.cofactor(i, j);
        if cofactor.is_zero() {
            return None;
        }
        let saved = e.get(i, j).clone();
        e.set(i, j, BigInt::zero());
        let rest = e.determinant();
        e.set(i, j, saved);
        let (x, r) = (&self.target - rest).div_rem(&cofactor);
        r.is_zero().then_some(x)
    }
}

/// Single-error repair: each position in row-major order is solved from the
/// determinant equation; the first nonnegative integer solution that differs
/// from the received value and decodes exactly is accepted. If no position
/// works, `E` is tried as intact with a corrupted `det M`.
pub fn correct_single(msg: &CodeMessage) -> Result<CorrectionReport> {
    let repair = Repair::new(msg)?;
    if detect(msg) {
        return Ok(repair.intact());
    }
    let k = msg.degree();
    let mut zero_cofactor = Vec::new();
    let mut tried = 0;
    let mut e = msg.e.clone();
    for (i, j) in (0..k).cartesian_product(0..k) {
        if msg.e.cofactor(i, j).is_zero() {
            zero_cofactor.push((i, j));
            continue;
        }
        let Some(x) = repair.solve(&mut e, (i, j)) else {
            continue;
        };
        if x.is_negative() || &x == msg.e.get(i, j) {
            continue;
        }
        e.set(i, j, x);
        tried += 1;
        if let Some(m) = repair.accept(&e) {
            let mut report = repair.corrected(e, msg.det_m.clone(), m, vec![(i, j)]);
            report.zero_cofactor = zero_cofactor;
            report.candidates_tried = tried;
            return Ok(report);
        }
        e.set(i, j, msg.e.get(i, j).clone());
    }
    tried += 1;
    if let Some(m) = repair.accept(&msg.e) {
        let det_m = m.matrix().determinant();
        let mut report = repair.corrected(msg.e.clone(), det_m, m, Vec::new());
        report.zero_cofactor = zero_cofactor;
        report.candidates_tried = tried;
        return Ok(report);
    }
    let mut report = CorrectionReport::new(CorrectionStatus::Uncorrectable);
    report.zero_cofactor = zero_cofactor;
    report.candidates_tried = tried;
    Ok(report)
}

/// Ratio estimate of `e[pos]` from the nearest row in the same column that
/// is outside `suspects` and positive.
fn estimate(
    e: &IntegerMatrix,
    suspects: &[(usize, usize)],
    (i, j): (usize, usize),
    root: &BigInt,
    bits: u32,
) -> Option<BigInt> {
    let k = e.rows();
    for d in 1..k {
        for other in [i.checked_add(d).filter(|&r| r < k), i.checked_sub(d)]
            .into_iter()
            .flatten()
        {
            let v = e.get(other, j);
            if v.is_positive() && !suspects.contains(&(other, j)) {
                return Some(scale_by_root(v, root, bits, other as i32 - i as i32));
            }
        }
    }
    None
}

/// Multi-error repair over position sets of size `2..=max_weight` in
/// lexicographic order. In each set every position but the last takes
/// values in ascending order from the intersection of `estimate +- window`
/// and `received +- window`; the last is solved from the determinant and
/// must also lie within `received +- window`. The first assignment that
/// decodes exactly is accepted.
pub fn correct_multi(msg: &CodeMessage, options: &MultiOptions) -> Result<CorrectionReport> {
    let repair = Repair::new(msg)?;
    let k = msg.degree();
    if options.max_weight < 2 || options.max_weight >= k * k {
        return Err(validation(format!(
            "max weight must be in 2..={}, got {}",
            k * k - 1,
            options.max_weight
        )));
    }
    if detect(msg) {
        return Ok(repair.intact());
    }
    let window = BigInt::from(options.window);
    let bits = msg.e.entries().iter().map(|v| v.bits()).max().unwrap_or(0) as u32 + 64;
    let root = scaled_root(&msg.spec, bits);
    let cells: Vec<(usize, usize)> = (0..k).cartesian_product(0..k).collect();
    let mut tried = 0u64;

    for w in 2..=options.max_weight {
        for set in cells.iter().copied().combinations(w) {
            let (&last, fixed) = set.split_last().expect("w >= 2");
            let Some(ranges) = fixed
                .iter()
                .map(|&p| {
                    let recv = msg.e.get(p.0, p.1);
                    let est = estimate(&msg.e, &set, p, &root, bits)?;
                    let lo = (&est - &window).max(recv - &window).max(BigInt::zero());
                    let hi = (&est + &window).min(recv + &window);
                    let values: Vec<BigInt> = span(lo, hi).filter(|v| v != recv).collect();
                    (!values.is_empty()).then_some(values)
                })
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let recv_last = msg.e.get(last.0, last.1);
            let mut e = msg.e.clone();
            for values in ranges.iter().multi_cartesian_product() {
                if tried >= options.budget {
                    let mut report = CorrectionReport::new(CorrectionStatus::Uncorrectable);
                    report.candidates_tried = tried;
                    report.exhausted = true;
                    return Ok(report);
                }
                tried += 1;
                for (&(i, j), v) in fixed.iter().zip(values) {
                    e.set(i, j, v.clone());
                }
                let Some(x) = repair.solve(&mut e, last) else {
                    continue;
                };
                if x.is_negative() || &x == recv_last || (&x - recv_last).abs() > window {
                    continue;
                }
                e.set(last.0, last.1, x);
                if let Some(m) = repair.accept(&e) {
                    let mut report = repair.corrected(e, msg.det_m.clone(), m, set.clone());
                    report.candidates_tried = tried;
                    return Ok(report);
                }
                e.set(last.0, last.1, recv_last.clone());
            }
        }
    }
    let mut report = CorrectionReport::new(CorrectionStatus::Uncorrectable);
    report.candidates_tried = tried;
    Ok(report)
}

fn span(lo: BigInt, hi: BigInt) -> impl Iterator<Item = BigInt> {
    std::iter::successors(Some(lo), |v| Some(v + 1)).take_while(move |v| *v <= hi)
}

/// Single-error pass, then the multi-error search if it fails.
pub fn correct(msg: &CodeMessage, options: &MultiOptions) -> Result<CorrectionReport> {
    let single = correct_single(msg)?;
    if single.status != CorrectionStatus::Uncorrectable || options.max_weight < 2 {
        return Ok(single);
    }
    let mut multi = correct_multi(msg, options)?;
    multi.zero_cofactor = single.zero_cofactor;
    multi.candidates_tried += single.candidates_tried;
    Ok(multi)
}

/// `(2^{k^2} - 2) / (2^{k^2} - 1)`.
pub fn correction_coefficient(k: usize) -> Result<BigRational> {
    if k < 2 {
        return Err(validation(format!("degree must be at least 2, got {k}")));
    }
    let all = (BigInt::one() << (k * k)) - 1;
    Ok(BigRational::new(&all - 1, all))
}

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::correct::{correct, CorrectionStatus, MultiOptions};
use super::{detect, encode, PlainMatrix};
use crate::error::{validation, Result};
use crate::matrix::IntegerMatrix;
use crate::recurrence::RecurrenceSpec;

/// Corrupts `weight` distinct entries by `+-delta` with the magnitude drawn
/// uniformly from `delta_min..=delta_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorModel {
    pub weight: usize,
    pub delta_min: u32,
    pub delta_max: u32,
    pub seed: u64,
}

impl ErrorModel {
    pub fn new(weight: usize, delta_min: u32, delta_max: u32, seed: u64) -> Result<Self> {
        if delta_min == 0 || delta_min > delta_max {
            return Err(validation(format!(
                "delta range {delta_min}..={delta_max} must be nonempty and exclude 0"
            )));
        }
        Ok(Self {
            weight,
            delta_min,
            delta_max,
            seed,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub status: CorrectionStatus,
    pub detected: bool,
    pub corrected: bool,
    /// The final decoded matrix equals the original.
    pub exact: bool,
}

/// One applied corruption, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corruption {
    pub row: usize,
    pub col: usize,
    pub delta: i64,
}

/// Corrupts `e` as the model describes, seeded by `model.seed`.
pub fn inject(e: &mut IntegerMatrix, model: &ErrorModel) -> Result<Vec<Corruption>> {
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    corrupt(e, model, &mut rng)
}

fn corrupt(e: &mut IntegerMatrix, model: &ErrorModel, rng: &mut ChaCha8Rng) -> Result<Vec<Corruption>> {
    let k = e.rows();
    if model.weight > k * k {
        return Err(validation(format!(
            "weight {} exceeds the {} entries",
            model.weight,
            k * k
        )));
    }
    let mut applied = Vec::with_capacity(model.weight);
    for cell in sample(rng, k * k, model.weight).into_vec() {
        let magnitude = i64::from(rng.random_range(model.delta_min..=model.delta_max));
        let delta = if rng.random_bool(0.5) { magnitude } else { -magnitude };
        let (row, col) = (cell / k, cell % k);
        let v = e.get(row, col) + BigInt::from(delta);
        e.set(row, col, v);
        applied.push(Corruption { row, col, delta });
    }
    Ok(applied)
}

fn trial_with(
    spec: &RecurrenceSpec,
    n: u32,
    m: &PlainMatrix,
    model: &ErrorModel,
    options: &MultiOptions,
    rng: &mut ChaCha8Rng,
) -> Result<TrialOutcome> {
    let mut msg = encode(spec, n, m)?;
    corrupt(&mut msg.e, model, rng)?;
    let detected = !detect(&msg);
    let report = correct(&msg, options)?;
    Ok(TrialOutcome {
        status: report.status,
        detected,
        corrected: report.status == CorrectionStatus::Corrected,
        exact: report.decoded.as_ref() == Some(m) && report.status != CorrectionStatus::Uncorrectable,
    })
}

/// Encodes `m`, corrupts it, and runs the correction pipeline.
pub fn channel_trial(
    spec: &RecurrenceSpec,
    n: u32,
    m: &PlainMatrix,
    model: &ErrorModel,
    options: &MultiOptions,
) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    trial_with(spec, n, m, model, options, &mut rng)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChannelStats {
    pub trials: usize,
    pub detected: usize,
    pub corrected: usize,
    pub exact: usize,
}

/// `trials` runs with fresh random messages (entries in `0..=100`), all
/// drawn from one stream seeded by `model.seed`.
pub fn run_channel(
    spec: &RecurrenceSpec,
    n: u32,
    trials: usize,
    model: &ErrorModel,
    options: &MultiOptions,
) -> Result<ChannelStats> {
    let k = spec.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let mut stats = ChannelStats {
        trials,
        ..ChannelStats::default()
    };
    for _ in 0..trials {
        let entries = (0..k * k).map(|_| BigInt::from(rng.random_range(0..=100u32))).collect();
        let m = PlainMatrix::new(IntegerMatrix::new(k, k, entries)?)?;
        let outcome = trial_with(spec, n, &m, model, options, &mut rng)?;
        stats.detected += usize::from(outcome.detected);
        stats.corrected += usize::from(outcome.corrected);
        stats.exact += usize::from(outcome.exact && outcome.corrected);
    }
    Ok(stats)
}

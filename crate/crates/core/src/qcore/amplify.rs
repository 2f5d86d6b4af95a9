//! Amplitude amplification over a randomized base routine, repetition
//! boosting for one-sided routines, and unknown-probability scheduling.

use rand::Rng;

use crate::error::{Error, Result};
use crate::instances::oracle::Meter;
use crate::qcore::search::SearchParams;
use crate::qcore::SimRng;

pub const AMPLIFY_SCOPE: &str = "amplify_rounds";

/// How the amplification schedule learns the base success probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub enum AmplifyMode {
    /// Enumerate the routine's outer randomness against the ideal map.
    #[default]
    Exact,
    /// Monte-Carlo estimate from uncharged runs.
    Estimated { samples: usize },
}


pub trait BaseRoutine {
    type Payload;

    fn meter(&self) -> &Meter;

    /// Worst-case charge of a single invocation.
    fn max_charge(&self) -> u64;

    /// Smallest success probability the caller promises whenever the
    /// routine can succeed at all. It fixes the cutoff of the schedule.
    fn success_floor(&self) -> f64;

    /// One charged invocation.
    fn run(&self, rng: &mut SimRng) -> Result<Option<Self::Payload>>;

    /// One invocation whose outer random choice is restricted to where the
    /// ideal map says success is possible. Used to draw the payload of a
    /// successful round in exact mode.
    fn run_on_support(&self, rng: &mut SimRng) -> Result<Option<Self::Payload>> {
        self.run(rng)
    }

    /// Success probability from the ideal map, if the routine can enumerate
    /// its own randomness.
    fn exact_probability(&self) -> Option<f64>;
}

/// Cutoff of the schedule in units of the base routine's worst-case charge.
pub fn amplify_cap_units(success_floor: f64, params: &SearchParams) -> u64 {
    (params.cutoff / success_floor.clamp(f64::MIN_POSITIVE, 1.0).sqrt()).ceil() as u64
}

pub fn amplify_max_charge(max_charge: u64, success_floor: f64, params: &SearchParams) -> u64 {
    amplify_cap_units(success_floor, params) * max_charge
}

pub fn success_probability<B: BaseRoutine + ?Sized>(base: &B, mode: AmplifyMode, rng: &mut SimRng) -> Result<f64> {
    match mode {
        AmplifyMode::Exact => base
            .exact_probability()
            .ok_or_else(|| Error::UndefinedProbability("routine cannot enumerate its randomness".into())),
        AmplifyMode::Estimated { samples } => {
            if samples == 0 {
                return Err(Error::UndefinedProbability("estimation needs at least one sample".into()));
            }
            let meter = base.meter();
            let mut hits = 0usize;
            for _ in 0..samples {
                if meter.uncharged(|| base.run(rng))?.is_some() {
                    hits += 1;
                }
            }
            Ok(hits as f64 / samples as f64)
        }
    }
}

const MAX_CONDITIONAL_DRAWS: usize = 200_000;

/// QSearch-style amplification: a round with `j` applications succeeds with
/// probability `sin^2((2j + 1) * asin(sqrt(p)))` and charges `(2j + 1)` times
/// the base worst case. A success hands back a payload drawn from the base
/// routine conditioned on success.
pub fn amplitude_amplify<B: BaseRoutine + ?Sized>(
    base: &B,
    mode: AmplifyMode,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<Option<B::Payload>> {
    let p = success_probability(base, mode, rng)?;
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::UndefinedProbability(format!("p = {p}")));
    }
    let meter = base.meter();
    let floor = base.success_floor();
    let cutoff = amplify_cap_units(floor, params);
    let max_cap = 1.0 / floor.clamp(f64::MIN_POSITIVE, 1.0).sqrt();
    let theta = p.sqrt().asin();
    let per_application = base.max_charge();
    let mut cap = 1.0f64;
    let mut spent = 0u64;
    loop {
        let j = rng.gen_range(0..cap.ceil() as u64);
        let units = 2 * j + 1;
        if spent + units > cutoff {
            return Ok(None);
        }
        spent += units;
        meter.scope(AMPLIFY_SCOPE, || meter.charge(units * per_application));
        let s = (units as f64 * theta).sin();
        if p > 0.0 && (p >= 1.0 || rng.gen::<f64>() < s * s) {
            return draw_success(base, mode, rng);
        }
        cap = (cap * params.growth).min(max_cap.max(1.0));
    }
}

fn draw_success<B: BaseRoutine + ?Sized>(base: &B, mode: AmplifyMode, rng: &mut SimRng) -> Result<Option<B::Payload>> {
    let meter = base.meter();
    meter.uncharged(|| {
        for _ in 0..MAX_CONDITIONAL_DRAWS {
            let draw = match mode {
                AmplifyMode::Exact => base.run_on_support(rng)?,
                AmplifyMode::Estimated { .. } => base.run(rng)?,
            };
            if let Some(payload) = draw {
                return Ok(Some(payload));
            }
        }
        Ok(None)
    })
}

/// `ceil(2 * log2(log2(n)))`, at least 1.
pub fn boost_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let ll = (n as f64).log2().log2();
    ((2.0 * ll - 1e-9).ceil() as usize).max(1)
}

/// Runs a one-sided routine up to `repetitions` times and returns its first
/// non-`None` answer.
pub fn boost<T>(repetitions: usize, mut routine: impl FnMut() -> Result<Option<T>>) -> Result<Option<T>> {
    for _ in 0..repetitions.max(1) {
        if let Some(v) = routine()? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

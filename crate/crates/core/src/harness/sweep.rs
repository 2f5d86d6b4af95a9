//! Sweeps over a size grid with per-trial isolation.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harness::config::{Axis, Config, Problem};
use crate::harness::stats::{loglog_fit, mean, median, wilson_interval, Fit};
use crate::harness::trial::{run_trial, TrialReport};

/// Seed of trial `trial` at grid point `point`: word 0 of the ChaCha stream
/// `point * 2^32 + trial` keyed by the master seed.
pub fn trial_seed(master: u64, point: usize, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(((point as u64) << 32) | trial as u64);
    rng.next_u64()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointStats {
    pub n: usize,
    pub d: Option<usize>,
    pub trials: usize,
    pub q_mean: f64,
    pub q_median: f64,
    pub c_median: f64,
    pub errors: usize,
    pub error_rate: f64,
    pub wilson: (f64, f64),
    pub unsound: usize,
}

impl PointStats {
    /// The swept coordinate.
    pub fn x(&self, axis: Axis) -> f64 {
        match axis {
            Axis::N => self.n as f64,
            Axis::D => self.d.unwrap_or(0) as f64,
        }
    }

    pub fn half_width(&self) -> f64 {
        (self.wilson.1 - self.wilson.0) / 2.0
    }
}

/// Expected exponent of the median charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub quantum: f64,
    pub classical: f64,
    pub note: &'static str,
}

pub fn target(problem: Problem, axis: Axis) -> Target {
    match (problem, axis) {
        (Problem::Lseg, _) => Target { quantum: 0.5, classical: 1.0, note: "sqrt(n) log n log log n" },
        (Problem::Szbt, _) => Target { quantum: 0.5, classical: 1.0, note: "sqrt(n log n)" },
        (Problem::Lsqr, _) => Target { quantum: 1.5, classical: 2.0, note: "n^1.5 log n log log n" },
        (Problem::Lrecw, Axis::N) => Target { quantum: 0.5, classical: 2.0, note: "n sqrt(d) log n, d fixed" },
        (Problem::Lrecw, Axis::D) => Target { quantum: 0.5, classical: 0.0, note: "n sqrt(d) log n, n fixed" },
        (Problem::Lrec2, _) => Target { quantum: 1.5, classical: 2.0, note: "n^1.5" },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub problem: Problem,
    pub axis: Axis,
    pub seed: u64,
    pub points: Vec<PointStats>,
    pub q_fit: Option<Fit>,
    pub c_fit: Option<Fit>,
    pub target: Target,
    pub trials: Vec<TrialReport>,
}

fn aggregate(n: usize, d: Option<usize>, trials: &[TrialReport]) -> PointStats {
    let q: Vec<f64> = trials.iter().map(|t| t.q_charge as f64).collect();
    let c: Vec<f64> = trials.iter().map(|t| t.c_charge as f64).collect();
    let errors = trials.iter().filter(|t| !t.correct()).count();
    PointStats {
        n,
        d,
        trials: trials.len(),
        q_mean: mean(&q),
        q_median: median(&q),
        c_median: median(&c),
        errors,
        error_rate: errors as f64 / trials.len() as f64,
        wilson: wilson_interval(errors, trials.len()),
        unsound: trials.iter().filter(|t| !t.sound).count(),
    }
}

/// Runs every grid point. Trials execute on the rayon pool but are
/// collected in trial order, so the report depends only on the config.
pub fn run_sweep(cfg: &Config) -> Result<SweepReport> {
    cfg.validate()?;
    let work = || -> Result<SweepReport> {
        let axis = cfg.axis();
        let mut points = Vec::new();
        let mut all = Vec::new();
        for (pi, (n, d)) in cfg.points().into_iter().enumerate() {
            let trials: Vec<TrialReport> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| run_trial(cfg, n, d, trial_seed(cfg.seed, pi, t)))
                .collect::<Result<_>>()?;
            points.push(aggregate(n, (cfg.problem == Problem::Lrecw).then_some(d), &trials));
            all.extend(trials);
        }
        let xs: Vec<f64> = points.iter().map(|p| p.x(axis)).collect();
        let qs: Vec<f64> = points.iter().map(|p| p.q_median).collect();
        let cs: Vec<f64> = points.iter().map(|p| p.c_median).collect();
        Ok(SweepReport {
            problem: cfg.problem,
            axis,
            seed: cfg.seed,
            q_fit: loglog_fit(&xs, &qs),
            c_fit: loglog_fit(&xs, &cs),
            target: target(cfg.problem, axis),
            points,
            trials: all,
        })
    };
    if cfg.threads == 0 {
        return work();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(work)
}

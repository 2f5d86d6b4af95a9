//! Experiment configuration, trials, sweeps and reports.

pub mod config;
pub mod emit;
pub mod stats;
pub mod sweep;
pub mod trial;
pub mod verify;

pub use config::{Axis, Config, Generator, Problem};
pub use emit::{emit, read_trials_csv, trials_csv, Format};
pub use sweep::{run_sweep, trial_seed, SweepReport};
pub use trial::{run_on, run_trial, Answer, TrialReport, TrialSpec};

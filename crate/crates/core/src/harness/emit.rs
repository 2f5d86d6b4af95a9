//! CSV and text output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::stats::Fit;
use crate::harness::sweep::SweepReport;
use crate::harness::trial::{TrialReport, TrialRow};

pub const TRIAL_HEADER: [&str; 9] = ["problem", "n", "d", "seed", "q_charge", "c_charge", "q_value", "c_value", "correct"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// One row per trial.
    TrialsCsv,
    /// One row per grid point.
    AggregateCsv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub problem: String,
    pub axis: String,
    pub n: usize,
    pub d: Option<usize>,
    pub trials: usize,
    pub q_mean: f64,
    pub q_median: f64,
    pub c_median: f64,
    pub errors: usize,
    pub error_rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

fn csv_bytes<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

pub fn trials_csv(trials: &[TrialReport]) -> Result<Vec<u8>> {
    if trials.is_empty() {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(TRIAL_HEADER)?;
        return w.into_inner().map_err(|e| Error::Io(e.into_error()));
    }
    csv_bytes(trials.iter().map(|t| t.row()))
}

pub fn read_trials_csv(bytes: &[u8]) -> Result<Vec<TrialRow>> {
    let mut r = csv::Reader::from_reader(bytes);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != TRIAL_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

fn fit_line(label: &str, fit: Option<Fit>, target: f64, note: &str) -> String {
    match fit {
        Some(f) => format!(
            "{label}: fitted exponent {:.3} (residual {:.3}, {} points); target {target} [{note}]",
            f.slope, f.residual, f.points
        ),
        None => format!("{label}: no fit (fewer than 4 usable points); target {target} [{note}]"),
    }
}

pub fn text_report(rep: &SweepReport) -> String {
    let mut s = String::new();
    let axis = rep.axis.name();
    let _ = writeln!(s, "problem {}  axis {}  seed {}", rep.problem, axis, rep.seed);
    let _ = writeln!(
        s,
        "{:>8} {:>6} {:>7} {:>14} {:>14} {:>12} {:>8} {:>19} {:>7}",
        "n", "d", "trials", "q_mean", "q_median", "c_median", "err", "wilson95", "unsound"
    );
    for p in &rep.points {
        let _ = writeln!(
            s,
            "{:>8} {:>6} {:>7} {:>14.1} {:>14.1} {:>12.1} {:>8.4} {:>9.4}..{:<8.4} {:>7}",
            p.n,
            p.d.map_or("-".to_string(), |d| d.to_string()),
            p.trials,
            p.q_mean,
            p.q_median,
            p.c_median,
            p.error_rate,
            p.wilson.0,
            p.wilson.1,
            p.unsound
        );
    }
    let _ = writeln!(s, "{}", fit_line("quantum", rep.q_fit, rep.target.quantum, rep.target.note));
    let _ = writeln!(s, "{}", fit_line("classical", rep.c_fit, rep.target.classical, "reads every cell"));
    s
}

pub fn emit(rep: &SweepReport, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::TrialsCsv => trials_csv(&rep.trials),
        Format::AggregateCsv => csv_bytes(rep.points.iter().map(|p| AggregateRow {
            problem: rep.problem.name().to_string(),
            axis: rep.axis.name().to_string(),
            n: p.n,
            d: p.d,
            trials: p.trials,
            q_mean: p.q_mean,
            q_median: p.q_median,
            c_median: p.c_median,
            errors: p.errors,
            error_rate: p.error_rate,
            wilson_lo: p.wilson.0,
            wilson_hi: p.wilson.1,
        })),
        Format::Text => Ok(text_report(rep).into_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{Config, Problem};
    use crate::harness::sweep::run_sweep;
    use crate::harness::trial::run_trial;

    #[test]
    fn single_trial_has_one_row() {
        let cfg = Config::new(Problem::Lseg, vec![64]);
        let t = run_trial(&cfg, 64, 2, 1).unwrap();
        let bytes = trials_csv(std::slice::from_ref(&t)).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), TRIAL_HEADER.join(","));
        let rows = read_trials_csv(&bytes).unwrap();
        assert_eq!(rows, vec![t.row()]);
        let empty = trials_csv(&[]).unwrap();
        assert!(read_trials_csv(&empty).unwrap().is_empty());
        assert!(read_trials_csv(b"a,b\n1,2\n").is_err());
    }

    #[test]
    fn sweep_outputs() {
        let mut cfg = Config::new(Problem::Lrecw, vec![16]);
        cfg.d = vec![1, 2, 4, 8];
        cfg.trials = 3;
        let rep = run_sweep(&cfg).unwrap();
        let rows = read_trials_csv(&emit(&rep, Format::TrialsCsv).unwrap()).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r.d.is_some()));
        let agg = String::from_utf8(emit(&rep, Format::AggregateCsv).unwrap()).unwrap();
        assert_eq!(agg.lines().count(), 5);
        let text = String::from_utf8(emit(&rep, Format::Text).unwrap()).unwrap();
        assert!(text.contains("target 0.5"));
        assert!(text.contains("axis d"));
    }
}

//! Invariant suites behind the `verify` command.

use rand::{Rng, SeedableRng};

use crate::algos::{self, SimParams};
use crate::harness::config::{Config, Generator, Problem};
use crate::harness::trial::run_trial;
use crate::harness::sweep::trial_seed;
use crate::instances::{self, CountingOracle};
use crate::qcore::predicate::BitLine;
use crate::qcore::{grover_success_prob, sample_grover_run, SimRng};
use crate::window::{sliding_extrema, Mode};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn suite(name: &'static str, passed: bool, detail: String) -> SuiteResult {
    SuiteResult { name, passed, detail }
}

fn grover(samples: usize, rng: &mut SimRng) -> SuiteResult {
    let mut worst = 0.0f64;
    for n in [4usize, 16] {
        for t in 0..=n {
            let bits: Vec<bool> = (0..n).map(|i| i < t).collect();
            let map = instances::Map1D::from_bools(bits).expect("valid bits");
            let o = CountingOracle::new(&map);
            let line = BitLine::new(&o);
            for k in 0..4u64 {
                let p = grover_success_prob(n, t, k);
                let hits = (0..samples)
                    .filter(|_| sample_grover_run(&line, 0, n - 1, k, rng).expect("valid range").marked())
                    .count();
                let sigma = (p * (1.0 - p) / samples as f64).sqrt().max(1e-12);
                worst = worst.max((hits as f64 / samples as f64 - p).abs() / sigma);
            }
        }
    }
    suite("grover_law", worst <= 4.0, format!("largest deviation {worst:.2} sigma"))
}

fn monotone_queue(rng: &mut SimRng) -> SuiteResult {
    let mut ok = true;
    for _ in 0..20 {
        let v: Vec<i32> = (0..2000).map(|_| rng.gen_range(-100..100)).collect();
        for w in [1usize, 2, 17, 500] {
            for mode in [Mode::Min, Mode::Max] {
                let naive: Vec<i32> = v
                    .windows(w)
                    .map(|s| if mode == Mode::Min { *s.iter().min().unwrap() } else { *s.iter().max().unwrap() })
                    .collect();
                ok &= sliding_extrema(&v, w, mode) == naive;
            }
        }
    }
    suite("monotone_queue", ok, "20 sequences x 4 widths x 2 modes".into())
}

fn one_sided(trials: usize, rng: &mut SimRng) -> SuiteResult {
    let p = SimParams::default();
    let mut bad = 0usize;
    for s in 0..trials as u64 {
        let m = instances::gen_random_1d(64, 0.1, s).expect("valid");
        let d = rng.gen_range(1..=16);
        if let Some(seg) = algos::fixed_len(&CountingOracle::new(&m), d, &p, rng).expect("valid") {
            bad += !(seg.len() == d && (seg.l..=seg.r).all(|i| !m.get(i as usize))) as usize;
        }
        let m2 = instances::gen_random_2d(16, 0.08, s).expect("valid");
        let d = rng.gen_range(1..=8);
        if let Some(sq) = algos::fixed_size_square(&CountingOracle::new(&m2), d, &p, rng).expect("valid") {
            bad += !(sq.d == d && (sq.x..sq.x + d).all(|a| (sq.y..sq.y + d).all(|b| !m2.get(a, b)))) as usize;
        }
        let t = instances::gen_random_trit(64, 0.1, 0.1, s).expect("valid");
        if let Some(seg) = algos::szbt(&CountingOracle::new(&t), &p, rng).expect("valid") {
            bad += !(t.get(seg.l) == 2 && t.get(seg.r) == 2 && (seg.l + 1..seg.r).all(|i| t.get(i) == 0)) as usize;
        }
    }
    suite("one_sided_soundness", bad == 0, format!("{bad} unsound answers"))
}

fn ledger(trials: usize, rng: &mut SimRng) -> SuiteResult {
    let p = SimParams::default();
    let mut bad = 0usize;
    for s in 0..trials as u64 {
        let m = instances::gen_random_2d(16, 0.05, s).expect("valid");
        let o = CountingOracle::new(&m);
        algos::lrecw(&o, rng.gen_range(1..=4), &p, rng).expect("valid");
        let l = o.meter().ledger();
        bad += (l.exclusive_total() != o.count() || l.inclusive_of(algos::lrecw::LRECW_SCOPE) != o.count()) as usize;
    }
    suite("ledger_audit", bad == 0, format!("{bad} mismatching runs"))
}

fn optimality(problem: Problem, n: usize, trials: usize, seed: u64) -> SuiteResult {
    let mut cfg = Config::new(problem, vec![n]);
    if problem == Problem::Lrec2 {
        cfg.generator = Generator::Promise;
    }
    let mut ok = 0usize;
    let mut unsound = 0usize;
    for t in 0..trials {
        let r = run_trial(&cfg, n, 3, trial_seed(seed, 0, t)).expect("valid trial");
        ok += r.correct() as usize;
        unsound += !r.sound as usize;
    }
    let rate = ok as f64 / trials as f64;
    let name = match problem {
        Problem::Lseg => "lseg_optimality",
        Problem::Szbt => "szbt_decision",
        Problem::Lsqr => "lsqr_optimality",
        Problem::Lrecw => "lrecw_optimality",
        Problem::Lrec2 => "lrec2_optimality",
    };
    suite(name, rate >= 0.9, format!("{ok}/{trials} agree with the baseline, {unsound} unsound"))
}

/// Runs every suite. `quick` shrinks the sample sizes.
pub fn run_suites(quick: bool, seed: u64) -> Vec<SuiteResult> {
    let mut rng = SimRng::seed_from_u64(seed);
    let scale = if quick { 1 } else { 5 };
    vec![
        grover(2000 * scale, &mut rng),
        monotone_queue(&mut rng),
        one_sided(20 * scale, &mut rng),
        ledger(10 * scale, &mut rng),
        optimality(Problem::Lseg, 256, 20 * scale, seed),
        optimality(Problem::Szbt, 256, 20 * scale, seed),
        optimality(Problem::Lsqr, 32, 10 * scale, seed),
        optimality(Problem::Lrecw, 24, 10 * scale, seed),
        optimality(Problem::Lrec2, 24, 10 * scale, seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for r in run_suites(true, 1) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}

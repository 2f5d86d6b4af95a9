//! One trial: build an instance, run the quantum algorithm and its classical
//! baseline on separate counting oracles, and compare optimum values.

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::algos::{self, SimParams};
use crate::baseline;
use crate::error::{Error, Result};
use crate::harness::config::{Config, Generator, Problem};
use crate::instances::io::InstanceMap;
use crate::instances::{self, rect_rank, CountingOracle, Map1D, Map2D, Rect, Segment, Square, TritMap1D};
use crate::qcore::SimRng;

/// Answer of either side, with the value used to compare them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Segment(Option<Segment>),
    Square(Option<Square>),
    Rect(Option<Rect>),
}

impl Answer {
    pub fn render(&self) -> String {
        fn show<T: std::fmt::Display>(x: &Option<T>) -> String {
            x.as_ref().map_or_else(|| "NULL".to_string(), |v| v.to_string())
        }
        match self {
            Answer::Segment(s) => show(s),
            Answer::Square(s) => show(s),
            Answer::Rect(r) => show(r),
        }
    }
}

/// Comparable optimum: segment length for LSEG, 1 or 0 for the SZBT
/// existence decision, side for LSQR, column count for LRECW and the
/// rectangle rank for LREC2.
pub fn answer_value(problem: Problem, n: usize, a: &Answer) -> u64 {
    match (problem, a) {
        (Problem::Szbt, Answer::Segment(s)) => s.is_some() as u64,
        (_, Answer::Segment(s)) => instances::segment_len(*s) as u64,
        (_, Answer::Square(s)) => instances::square_size(*s) as u64,
        (Problem::Lrec2, Answer::Rect(r)) => rect_rank(*r, n),
        (_, Answer::Rect(r)) => r.map_or(0, |r| r.height() as u64),
    }
}

/// Grid-point parameters of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialSpec {
    pub problem: Problem,
    pub n: usize,
    /// LRECW width; other problems ignore it.
    pub d: usize,
    pub h: usize,
    pub w: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    pub problem: Problem,
    pub n: usize,
    pub d: Option<usize>,
    pub seed: u64,
    pub instance: String,
    pub quantum: Answer,
    pub q_value: u64,
    pub q_charge: u64,
    pub classical: Answer,
    pub c_value: u64,
    pub c_charge: u64,
    /// Whether a non-NULL quantum answer is really empty (uncharged check).
    pub sound: bool,
}

impl TrialReport {
    pub fn correct(&self) -> bool {
        self.q_value == self.c_value
    }

    pub fn row(&self) -> TrialRow {
        TrialRow {
            problem: self.problem.name().to_string(),
            n: self.n,
            d: self.d,
            seed: self.seed,
            q_charge: self.q_charge,
            c_charge: self.c_charge,
            q_value: self.q_value,
            c_value: self.c_value,
            correct: self.correct(),
        }
    }
}

/// CSV schema of a trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRow {
    pub problem: String,
    pub n: usize,
    pub d: Option<usize>,
    pub seed: u64,
    pub q_charge: u64,
    pub c_charge: u64,
    pub q_value: u64,
    pub c_value: u64,
    pub correct: bool,
}

/// Builds the instance of a trial from the configured generator.
pub fn generate(cfg: &Config, n: usize, d: usize, seed: u64) -> Result<(InstanceMap, String)> {
    let frac = |f: f64| (f * n as f64).round() as isize;
    let k = cfg.k.unwrap_or_else(|| frac(cfg.k_frac));
    let t = cfg.t.unwrap_or_else(|| frac(cfg.t_frac));
    // Clamp derived defaults into the family's admissible range.
    let upper = |x: isize| x.clamp(n as isize / 2 + 1, n as isize - 1) as usize;
    let p = cfg.p_one;
    Ok(match (cfg.problem, cfg.generator) {
        (Problem::Lseg, Generator::Random) => (
            InstanceMap::Map1D(instances::gen_random_1d(n, p, seed)?),
            format!("random_1d(p_one={p},seed={seed})"),
        ),
        (Problem::Lseg, Generator::Adversarial) => {
            let k = if cfg.k.is_some() { k as usize } else { upper(k) };
            (InstanceMap::Map1D(instances::gen_adversarial_1d(n, k)?), format!("adversarial_1d(k={k})"))
        }
        (Problem::Szbt, Generator::Random) => (
            InstanceMap::Trit1D(instances::gen_random_trit(n, p, cfg.p_two, seed)?),
            format!("random_trit(p_one={p},p_two={},seed={seed})", cfg.p_two),
        ),
        (Problem::Lsqr | Problem::Lrecw, Generator::Random) => (
            InstanceMap::Map2D(instances::gen_random_2d(n, p, seed)?),
            format!("random_2d(p_one={p},seed={seed})"),
        ),
        (Problem::Lsqr, Generator::Adversarial) => {
            let (k, t) = if cfg.k.is_some() || cfg.t.is_some() { (k as usize, t as usize) } else { (upper(k), upper(t)) };
            (InstanceMap::Map2D(instances::gen_adversarial_square(n, k, t)?), format!("adversarial_square(k={k},t={t})"))
        }
        (Problem::Lrecw, Generator::Adversarial) => {
            let k = cfg.k.map_or(d / 2, |k| k as usize);
            let t = if cfg.t.is_some() { t as usize } else { upper(t) };
            (
                InstanceMap::Map2D(instances::gen_adversarial_recw(n, d, k, t)?),
                format!("adversarial_recw(d={d},k={k},t={t})"),
            )
        }
        (Problem::Lrec2, Generator::Adversarial) => {
            let (k, t) = (cfg.k.unwrap_or(n as isize / 2), cfg.t.unwrap_or(n as isize / 3));
            (InstanceMap::Map2D(instances::gen_adversarial_rec2(n, k, t)?), format!("adversarial_rec2(k={k},t={t})"))
        }
        (Problem::Lrec2, Generator::Promise) => {
            let attempts = cfg.attempts.unwrap_or(n);
            let side = cfg.max_side.unwrap_or((n / 4).max(1));
            let (map, _) = instances::gen_promise_2d(n, attempts, side, seed)?;
            (InstanceMap::Map2D(map), format!("promise_2d(attempts={attempts},max_side={side},seed={seed})"))
        }
        (problem, generator) => {
            return Err(Error::Config(format!("generator {generator:?} does not apply to {problem}")));
        }
    })
}

fn wrong_kind(problem: Problem, map: &InstanceMap) -> Error {
    Error::Config(format!("{problem} cannot run on a {} instance", map.kind()))
}

fn map1d(problem: Problem, map: &InstanceMap) -> Result<&Map1D> {
    match map {
        InstanceMap::Map1D(m) => Ok(m),
        _ => Err(wrong_kind(problem, map)),
    }
}

fn trit1d(problem: Problem, map: &InstanceMap) -> Result<&TritMap1D> {
    match map {
        InstanceMap::Trit1D(m) => Ok(m),
        _ => Err(wrong_kind(problem, map)),
    }
}

fn map2d(problem: Problem, map: &InstanceMap) -> Result<&Map2D> {
    match map {
        InstanceMap::Map2D(m) => Ok(m),
        _ => Err(wrong_kind(problem, map)),
    }
}

/// Quantum answer and its charge.
pub fn solve_quantum(spec: &TrialSpec, map: &InstanceMap, params: &SimParams, rng: &mut SimRng) -> Result<(Answer, u64)> {
    let p = spec.problem;
    Ok(match p {
        Problem::Lseg => {
            let o = CountingOracle::new(map1d(p, map)?);
            (Answer::Segment(algos::lseg(&o, params, rng)?), o.count())
        }
        Problem::Szbt => {
            let o = CountingOracle::new(trit1d(p, map)?);
            (Answer::Segment(algos::szbt(&o, params, rng)?), o.count())
        }
        Problem::Lsqr => {
            let o = CountingOracle::new(map2d(p, map)?);
            (Answer::Square(algos::lsqr(&o, params, rng)?), o.count())
        }
        Problem::Lrecw => {
            let o = CountingOracle::new(map2d(p, map)?);
            (Answer::Rect(algos::lrecw(&o, spec.d, params, rng)?), o.count())
        }
        Problem::Lrec2 => {
            let o = CountingOracle::new(map2d(p, map)?);
            (Answer::Rect(algos::lrec2(&o, spec.h, spec.w, params, rng)?), o.count())
        }
    })
}

/// Classical answer and its charge.
pub fn solve_classical(spec: &TrialSpec, map: &InstanceMap) -> Result<(Answer, u64)> {
    let p = spec.problem;
    Ok(match p {
        Problem::Lseg => {
            let o = CountingOracle::new(map1d(p, map)?);
            (Answer::Segment(baseline::lseg_scan(&o)?), o.count())
        }
        Problem::Szbt => {
            let o = CountingOracle::new(trit1d(p, map)?);
            (Answer::Segment(baseline::szbt_scan(&o)?), o.count())
        }
        Problem::Lsqr => {
            let o = CountingOracle::new(map2d(p, map)?);
            (Answer::Square(baseline::lsqr_dp(&o)?), o.count())
        }
        Problem::Lrecw => {
            let o = CountingOracle::new(map2d(p, map)?);
            (Answer::Rect(baseline::lrecw_scan(&o, spec.d)?), o.count())
        }
        Problem::Lrec2 => {
            let o = CountingOracle::new(map2d(p, map)?);
            let best = baseline::lrec2_scan(&o)?.filter(|r| baseline::meets_minima(r, spec.h, spec.w));
            (Answer::Rect(best), o.count())
        }
    })
}

/// Whether an answer is really empty, read straight off the map.
pub fn is_sound(problem: Problem, map: &InstanceMap, a: &Answer) -> bool {
    match (map, a) {
        (_, Answer::Segment(None) | Answer::Square(None) | Answer::Rect(None)) => true,
        (InstanceMap::Map1D(m), Answer::Segment(Some(s))) => {
            s.l >= 0 && (s.r as usize) < m.n() && (s.l..=s.r).all(|p| !m.get(p as usize))
        }
        (InstanceMap::Trit1D(m), Answer::Segment(Some(s))) => {
            problem == Problem::Szbt
                && s.r - s.l >= 2
                && m.get(s.l) == 2
                && m.get(s.r) == 2
                && (s.l + 1..s.r).all(|p| m.get(p) == 0)
        }
        (InstanceMap::Map2D(m), Answer::Square(Some(s))) => {
            s.x + s.d <= m.n() && s.y + s.d <= m.n() && (s.x..s.x + s.d).all(|a| (s.y..s.y + s.d).all(|b| !m.get(a, b)))
        }
        (InstanceMap::Map2D(m), Answer::Rect(Some(r))) => {
            r.x2 < m.n() && r.y2 < m.n() && (r.x1..=r.x2).all(|a| (r.y1..=r.y2).all(|b| !m.get(a, b)))
        }
        _ => false,
    }
}

/// Solves one instance with both sides. The quantum random stream is seeded
/// from `seed` on its own stream so it never overlaps the instance draw.
pub fn run_on(spec: &TrialSpec, map: &InstanceMap, instance: String, params: &SimParams, seed: u64) -> Result<TrialReport> {
    let mut rng = SimRng::seed_from_u64(seed);
    rng.set_stream(1);
    let (quantum, q_charge) = solve_quantum(spec, map, params, &mut rng)?;
    let (classical, c_charge) = solve_classical(spec, map)?;
    let n = map.n();
    Ok(TrialReport {
        problem: spec.problem,
        n,
        d: (spec.problem == Problem::Lrecw).then_some(spec.d),
        seed,
        instance,
        q_value: answer_value(spec.problem, n, &quantum),
        c_value: answer_value(spec.problem, n, &classical),
        sound: is_sound(spec.problem, map, &quantum),
        quantum,
        q_charge,
        classical,
        c_charge,
    })
}

/// One trial at grid point `(n, d)` with its own seed.
pub fn run_trial(cfg: &Config, n: usize, d: usize, seed: u64) -> Result<TrialReport> {
    let (map, instance) = generate(cfg, n, d, seed)?;
    let spec = TrialSpec { problem: cfg.problem, n, d, h: cfg.h, w: cfg.w };
    run_on(&spec, &map, instance, &cfg.params, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_problem_runs() {
        for (problem, gen) in [
            (Problem::Lseg, Generator::Random),
            (Problem::Lseg, Generator::Adversarial),
            (Problem::Szbt, Generator::Random),
            (Problem::Lsqr, Generator::Random),
            (Problem::Lsqr, Generator::Adversarial),
            (Problem::Lrecw, Generator::Random),
            (Problem::Lrecw, Generator::Adversarial),
            (Problem::Lrec2, Generator::Promise),
            (Problem::Lrec2, Generator::Adversarial),
        ] {
            let mut cfg = Config::new(problem, vec![16]);
            cfg.generator = gen;
            cfg.d = vec![3];
            let r = run_trial(&cfg, 16, 3, 5).unwrap();
            assert_eq!(r.n, 16);
            assert!(r.c_charge > 0 && r.q_charge > 0, "{problem} {gen:?}");
            assert_eq!(r.d.is_some(), problem == Problem::Lrecw);
            assert_eq!(run_trial(&cfg, 16, 3, 5).unwrap(), r);
        }
    }

    #[test]
    fn values() {
        let seg = Answer::Segment(Some(Segment::new(2, 6)));
        assert_eq!(answer_value(Problem::Lseg, 8, &seg), 5);
        assert_eq!(answer_value(Problem::Szbt, 8, &seg), 1);
        assert_eq!(answer_value(Problem::Szbt, 8, &Answer::Segment(None)), 0);
        let r = Answer::Rect(Some(Rect::new(0, 1, 2, 4)));
        assert_eq!(answer_value(Problem::Lrecw, 8, &r), 4);
        assert_eq!(answer_value(Problem::Lrec2, 8, &r), 1 + 6 * 65 + 12);
        assert_eq!(r.render(), "(0,1,2,4)");
        assert_eq!(Answer::Square(None).render(), "NULL");
    }

    #[test]
    fn soundness_check() {
        let m = InstanceMap::Map1D(Map1D::from_bits(&[0, 0, 1, 0]).unwrap());
        assert!(is_sound(Problem::Lseg, &m, &Answer::Segment(Some(Segment::new(0, 1)))));
        assert!(!is_sound(Problem::Lseg, &m, &Answer::Segment(Some(Segment::new(1, 2)))));
        let t = InstanceMap::Trit1D(TritMap1D::from_trits(&[0, 2, 0]).unwrap());
        assert!(is_sound(Problem::Szbt, &t, &Answer::Segment(Some(Segment::new(-1, 1)))));
        assert!(!is_sound(Problem::Szbt, &t, &Answer::Segment(Some(Segment::new(0, 2)))));
    }
}

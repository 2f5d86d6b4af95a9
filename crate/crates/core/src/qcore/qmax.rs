//! Maximum finding over candidates whose evaluation is itself a bounded-error
//! routine.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{invalid, Result};
use crate::instances::oracle::Meter;
use crate::qcore::grover::sample_grover_run;
use crate::qcore::predicate::TablePredicate;
use crate::qcore::search::SearchParams;
use crate::qcore::SimRng;

pub const QMAX_SCOPE: &str = "qmax_coherent";

pub trait Candidates {
    type Payload: Clone;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn meter(&self) -> &Meter;

    /// Exact value of candidate `i` (simulator knowledge, uncharged).
    fn ideal_value(&self, i: usize) -> u64;

    /// Worst-case charge of one evaluation.
    fn max_charge(&self) -> u64;

    /// Charged, possibly erroneous evaluation.
    fn evaluate(&self, i: usize, rng: &mut SimRng) -> Result<(u64, Option<Self::Payload>)>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct QmaxOutcome<P> {
    pub index: usize,
    pub value: u64,
    pub payload: Option<P>,
}

/// Iteration budget of the threshold descent over `m` candidates.
pub fn qmax_budget_units(m: usize) -> u64 {
    let lg = (m.max(1) as f64).log2();
    (22.5 * (m as f64).sqrt() + 1.4 * lg * lg).ceil() as u64
}

/// Worst-case charge of [`qmax`].
pub fn qmax_max_charge(m: usize, reps: usize, max_charge: u64) -> u64 {
    let reps = reps.max(1) as u64;
    if m <= 1 {
        return reps * max_charge;
    }
    // Initial evaluation plus, per unit, either a coherent iteration or a
    // verification of up to `reps` evaluations.
    reps * max_charge * (1 + qmax_budget_units(m))
}

/// Majority value over `reps` evaluations, the first of which is `first`.
fn robust_value<C: Candidates + ?Sized>(
    cands: &C,
    i: usize,
    reps: usize,
    first: (u64, Option<C::Payload>),
    rng: &mut SimRng,
) -> Result<(u64, Option<C::Payload>)> {
    let mut tally: BTreeMap<u64, (usize, Option<C::Payload>)> = BTreeMap::new();
    tally.insert(first.0, (1, first.1));
    for _ in 1..reps {
        let (v, p) = cands.evaluate(i, rng)?;
        let e = tally.entry(v).or_insert((0, None));
        e.0 += 1;
        if e.1.is_none() {
            e.1 = p;
        }
    }
    // Most frequent value, larger value on ties.
    let (v, (_, p)) = tally
        .into_iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .expect("at least one evaluation");
    Ok((v, p))
}

/// Threshold descent with BBHT rounds. Each coherent iteration charges
/// `reps` worst-case evaluations; a measured candidate is evaluated once and,
/// if it beats the threshold, confirmed by a `reps`-fold majority.
pub fn qmax<C: Candidates + ?Sized>(
    cands: &C,
    reps: usize,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<QmaxOutcome<C::Payload>> {
    let m = cands.len();
    if m == 0 {
        return Err(invalid("qmax needs at least one candidate"));
    }
    let reps = reps.max(1);
    let y = rng.gen_range(0..m);
    let first = cands.evaluate(y, rng)?;
    let (mut best_v, mut best_p) = robust_value(cands, y, reps, first, rng)?;
    let mut best_i = y;
    if m == 1 {
        return Ok(QmaxOutcome { index: best_i, value: best_v, payload: best_p });
    }
    let budget = qmax_budget_units(m);
    let coherent = reps as u64 * cands.max_charge();
    let max_cap = (m as f64).sqrt();
    let mut cap = 1.0f64;
    let mut spent = 0u64;
    let mut pred = threshold_predicate(cands, best_v, reps, coherent);
    loop {
        let k = rng.gen_range(0..cap.ceil() as u64);
        if spent + k + 1 > budget {
            break;
        }
        spent += k + 1;
        let outcome = sample_grover_run(&pred, 0, m - 1, k, rng)?;
        match outcome.witness {
            Some((v, p)) => {
                best_i = outcome.index;
                best_v = v;
                best_p = p;
                pred = threshold_predicate(cands, best_v, reps, coherent);
                cap = 1.0;
            }
            None => cap = (cap * params.growth).min(max_cap),
        }
    }
    Ok(QmaxOutcome { index: best_i, value: best_v, payload: best_p })
}

type Improvement<P> = (u64, Option<P>);

fn threshold_predicate<'a, C: Candidates + ?Sized>(
    cands: &'a C,
    threshold: u64,
    reps: usize,
    coherent: u64,
) -> TablePredicate<'a, Improvement<C::Payload>> {
    let ideal = (0..cands.len()).map(|i| cands.ideal_value(i) > threshold).collect();
    TablePredicate::new(cands.meter(), ideal, coherent, move |i, rng| {
        let first = cands.evaluate(i, rng).ok()?;
        if first.0 <= threshold {
            return None;
        }
        let (v, p) = robust_value(cands, i, reps, first, rng).ok()?;
        (v > threshold).then_some((v, p))
    })
    .with_scope(QMAX_SCOPE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    struct Table<'a> {
        meter: &'a Meter,
        values: Vec<u64>,
        noise: f64,
    }

    impl Candidates for Table<'_> {
        type Payload = usize;
        fn len(&self) -> usize {
            self.values.len()
        }
        fn meter(&self) -> &Meter {
            self.meter
        }
        fn ideal_value(&self, i: usize) -> u64 {
            self.values[i]
        }
        fn max_charge(&self) -> u64 {
            2
        }
        fn evaluate(&self, i: usize, rng: &mut SimRng) -> Result<(u64, Option<usize>)> {
            self.meter.charge(2);
            if rng.gen::<f64>() < self.noise {
                return Ok((0, None));
            }
            Ok((self.values[i], Some(i)))
        }
    }

    #[test]
    fn single_candidate() {
        let meter = Meter::new();
        let t = Table { meter: &meter, values: vec![5], noise: 0.0 };
        let mut rng = SimRng::seed_from_u64(1);
        let out = qmax(&t, 1, &SearchParams::default(), &mut rng).unwrap();
        assert_eq!((out.index, out.value, out.payload), (0, 5, Some(0)));
        assert_eq!(meter.count(), 2);
    }

    #[test]
    fn equal_values_any_index() {
        let meter = Meter::new();
        let t = Table { meter: &meter, values: vec![3; 20], noise: 0.0 };
        let mut rng = SimRng::seed_from_u64(2);
        let out = qmax(&t, 1, &SearchParams::default(), &mut rng).unwrap();
        assert_eq!(out.value, 3);
    }

    #[test]
    fn argmax_matches_scan() {
        let params = SearchParams::default();
        let mut rng = SimRng::seed_from_u64(3);
        let trials = 2000;
        let mut ok = 0;
        for _ in 0..trials {
            let meter = Meter::new();
            let values: Vec<u64> = (0..64).map(|_| rng.gen_range(0..1000)).collect();
            let best = *values.iter().max().unwrap();
            let t = Table { meter: &meter, values, noise: 0.0 };
            let out = qmax(&t, 1, &params, &mut rng).unwrap();
            ok += (out.value == best) as u32;
            assert!(meter.count() <= qmax_max_charge(64, 1, 2));
        }
        assert!(ok as f64 / trials as f64 >= 0.9, "{ok}/{trials}");
    }

    #[test]
    fn noisy_evaluations_with_majority() {
        let params = SearchParams::default();
        let mut rng = SimRng::seed_from_u64(4);
        let trials = 1000;
        let mut ok = 0;
        for _ in 0..trials {
            let meter = Meter::new();
            let values: Vec<u64> = (0..50).map(|_| rng.gen_range(1..100)).collect();
            let best = *values.iter().max().unwrap();
            let t = Table { meter: &meter, values, noise: 0.1 };
            let out = qmax(&t, 5, &params, &mut rng).unwrap();
            ok += (out.value == best) as u32;
            assert!(meter.count() <= qmax_max_charge(50, 5, 2));
        }
        assert!(ok as f64 / trials as f64 >= 0.9, "{ok}/{trials}");
    }
}

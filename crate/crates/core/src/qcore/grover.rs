//! Grover runs sampled in the two-dimensional marked/unmarked subspace.

use rand::Rng;

use crate::error::{invalid, Result};
use crate::qcore::predicate::{select, Predicate};
use crate::qcore::SimRng;

pub const GROVER_SCOPE: &str = "grover_iterations";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverSpec {
    pub size: usize,
    pub marked: usize,
    pub iterations: u64,
}

impl GroverSpec {
    pub fn new(size: usize, marked: usize, iterations: u64) -> Result<Self> {
        if size == 0 || marked > size {
            return Err(invalid(format!("need 1 <= N and t <= N, got N={size}, t={marked}")));
        }
        Ok(Self { size, marked, iterations })
    }

    pub fn angle(&self) -> f64 {
        (self.marked as f64 / self.size as f64).sqrt().asin()
    }

    pub fn success_probability(&self) -> f64 {
        grover_success_prob(self.size, self.marked, self.iterations)
    }
}

/// `sin^2((2k + 1) * asin(sqrt(t / N)))`, exactly zero when `t = 0`.
pub fn grover_success_prob(size: usize, marked: usize, iterations: u64) -> f64 {
    if marked == 0 {
        return 0.0;
    }
    if marked == size {
        // theta = pi/2: every odd multiple lands on a pole.
        return 1.0;
    }
    let theta = (marked as f64 / size as f64).sqrt().asin();
    let s = ((2 * iterations + 1) as f64 * theta).sin();
    s * s
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeSample<W> {
    pub index: usize,
    /// Result of the charged verification of `index`.
    pub witness: Option<W>,
}

impl<W> OutcomeSample<W> {
    pub fn marked(&self) -> bool {
        self.witness.is_some()
    }
}

/// One Grover run of `iterations` steps over `lo..=hi` followed by a
/// verification of the measured index.
///
/// Charges `iterations` coherent evaluations; the predicate charges its own
/// verification.
pub fn sample_grover_run<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    hi: usize,
    iterations: u64,
    rng: &mut SimRng,
) -> Result<OutcomeSample<P::Witness>> {
    if lo > hi || hi >= pred.len() {
        return Err(invalid(format!("empty or out-of-range search range {lo}..={hi}")));
    }
    let size = hi - lo + 1;
    let marked = pred.count_marked(lo, hi);
    let p = grover_success_prob(size, marked, iterations);
    let hit = marked == size || (marked > 0 && rng.gen::<f64>() < p);
    let index = if hit {
        select(pred, lo, hi, rng.gen_range(0..marked), true)
    } else {
        select(pred, lo, hi, rng.gen_range(0..size - marked), false)
    };
    let meter = pred.meter();
    meter.scope(pred.coherent_scope(), || meter.charge(iterations * pred.coherent_charge_in(lo, hi)));
    let witness = pred.evaluate(index, rng);
    Ok(OutcomeSample { index, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{CountingOracle, Map1D};
    use crate::qcore::predicate::BitLine;
    use rand::SeedableRng;

    #[test]
    fn closed_form_examples() {
        assert!((grover_success_prob(4, 1, 1) - 1.0).abs() < 1e-12);
        assert!((grover_success_prob(4, 1, 0) - 0.25).abs() < 1e-12);
        assert_eq!(grover_success_prob(8, 0, 3), 0.0);
        assert_eq!(grover_success_prob(8, 8, 0), 1.0);
        assert!(GroverSpec::new(4, 5, 0).is_err());
        assert!(GroverSpec::new(0, 0, 0).is_err());
    }

    #[test]
    fn run_charges_k_plus_one() {
        let map = Map1D::from_bits(&[0, 0, 1, 0]).unwrap();
        let o = CountingOracle::new(&map);
        let line = BitLine::new(&o);
        let mut rng = SimRng::seed_from_u64(1);
        let s = sample_grover_run(&line, 0, 3, 1, &mut rng).unwrap();
        assert_eq!(o.count(), 2);
        // N = 4, t = 1, k = 1 succeeds with certainty up to rounding.
        assert_eq!(s.index, 2);
        assert!(s.marked());
        assert!(sample_grover_run(&line, 3, 2, 0, &mut rng).is_err());
    }

    #[test]
    fn unmarked_range_never_hits() {
        let map = Map1D::from_bits(&[0; 16]).unwrap();
        let o = CountingOracle::new(&map);
        let line = BitLine::new(&o);
        let mut rng = SimRng::seed_from_u64(2);
        for k in 0..6 {
            assert!(!sample_grover_run(&line, 0, 15, k, &mut rng).unwrap().marked());
        }
    }

    #[test]
    fn all_marked_hits_at_k_zero() {
        let map = Map1D::from_bits(&[1; 7]).unwrap();
        let o = CountingOracle::new(&map);
        let line = BitLine::new(&o);
        let mut rng = SimRng::seed_from_u64(3);
        assert!(sample_grover_run(&line, 0, 6, 0, &mut rng).unwrap().marked());
    }

    #[test]
    fn marked_rate_matches_closed_form() {
        // N = 16, t = 4, k = 1: sin^2(3 * asin(1/2)) = 1.
        let bits: Vec<u8> = (0..16).map(|i| (i % 4 == 1) as u8).collect();
        let map = Map1D::from_bits(&bits).unwrap();
        let o = CountingOracle::new(&map);
        let line = BitLine::new(&o);
        let mut rng = SimRng::seed_from_u64(4);
        let hits = (0..100_000).filter(|_| sample_grover_run(&line, 0, 15, 1, &mut rng).unwrap().marked()).count();
        assert_eq!(hits, 100_000);
    }

    #[test]
    fn conditional_index_is_uniform_over_marked() {
        let bits: Vec<u8> = (0..12).map(|i| (i % 3 == 0) as u8).collect();
        let map = Map1D::from_bits(&bits).unwrap();
        let o = CountingOracle::new(&map);
        let line = BitLine::new(&o);
        let mut rng = SimRng::seed_from_u64(5);
        let mut counts = [0usize; 12];
        for _ in 0..40_000 {
            let s = sample_grover_run(&line, 0, 11, 0, &mut rng).unwrap();
            if s.marked() {
                counts[s.index] += 1;
            }
        }
        let marked: Vec<usize> = (0..12).filter(|i| i % 3 == 0).map(|i| counts[i]).collect();
        let total: usize = marked.iter().sum();
        for c in marked {
            let frac = c as f64 / total as f64;
            assert!((frac - 0.25).abs() < 0.02, "fraction {frac}");
        }
    }
}

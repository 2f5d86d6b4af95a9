//! Unknown-count search and minimal/maximal-index search.

use rand::Rng;

use crate::error::{invalid, Result};
use crate::qcore::grover::sample_grover_run;
use crate::qcore::predicate::{Predicate, Reversed};
use crate::qcore::SimRng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    /// Growth ratio of the random iteration cap.
    pub growth: f64,
    /// A search over `N` positions stops after `ceil(cutoff * sqrt(N))`
    /// evaluation units.
    pub cutoff: f64,
    /// Budget of the descending refinement in `first_one`, as a multiple of
    /// the search cap of the window where the first marked index was found.
    pub refine_factor: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self { growth: 6.0 / 5.0, cutoff: 9.0, refine_factor: 2.0 }
    }
}

impl SearchParams {
    /// Evaluation-unit cap of one search over `size` positions.
    pub fn cap_units(&self, size: usize) -> u64 {
        (self.cutoff * (size as f64).sqrt()).ceil() as u64
    }
}

/// QSearch over `lo..=hi` with an explicit unit budget. Returns the verified
/// index (if any) and the units spent; a round of `k` iterations costs
/// `k + 1` units.
pub fn qsearch_budgeted<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    hi: usize,
    budget_units: u64,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<(Option<(usize, P::Witness)>, u64)> {
    if lo > hi || hi >= pred.len() {
        return Err(invalid(format!("empty or out-of-range search range {lo}..={hi}")));
    }
    let size = (hi - lo + 1) as f64;
    let max_cap = size.sqrt();
    let mut cap = 1.0f64;
    let mut spent = 0u64;
    loop {
        let k = rng.gen_range(0..cap.ceil() as u64);
        if spent + k + 1 > budget_units {
            return Ok((None, spent));
        }
        spent += k + 1;
        let outcome = sample_grover_run(pred, lo, hi, k, rng)?;
        if let Some(w) = outcome.witness {
            return Ok((Some((outcome.index, w)), spent));
        }
        cap = (cap * params.growth).min(max_cap.max(1.0));
    }
}

/// QSearch with the standard cap. Returns a verified marked index or `None`.
pub fn qsearch<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    hi: usize,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<Option<(usize, P::Witness)>> {
    let budget = params.cap_units(hi.saturating_sub(lo) + 1);
    Ok(qsearch_budgeted(pred, lo, hi, budget, params, rng)?.0)
}

/// Minimal marked index in `lo..=hi`: exponential doubling of the right end
/// followed by a descending refinement on the prefix before the hit.
pub fn first_one<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    hi: usize,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<Option<(usize, P::Witness)>> {
    if lo > hi {
        return Err(invalid(format!("first_one needs L <= R, got {lo} > {hi}")));
    }
    if hi >= pred.len() {
        return Err(invalid(format!("range end {hi} outside 0..{}", pred.len())));
    }
    let mut width = 1usize;
    loop {
        let right = (lo + width - 1).min(hi);
        if let Some(hit) = qsearch(pred, lo, right, params, rng)? {
            let budget = (params.refine_factor * params.cap_units(right - lo + 1) as f64).ceil() as u64;
            return refine_down(pred, lo, hit, budget, params, rng).map(Some);
        }
        if right == hi {
            return Ok(None);
        }
        width *= 2;
    }
}

fn refine_down<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    mut best: (usize, P::Witness),
    mut budget: u64,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<(usize, P::Witness)> {
    while best.0 > lo && budget > 0 {
        let cap = params.cap_units(best.0 - lo).min(budget);
        let (found, spent) = qsearch_budgeted(pred, lo, best.0 - 1, cap, params, rng)?;
        budget -= spent;
        match found {
            Some(hit) => best = hit,
            None => break,
        }
    }
    Ok(best)
}

/// Maximal marked index in `lo..=hi`.
pub fn last_one<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    hi: usize,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<Option<(usize, P::Witness)>> {
    if lo > hi {
        return Err(invalid(format!("last_one needs L <= R, got {lo} > {hi}")));
    }
    if hi >= pred.len() {
        return Err(invalid(format!("range end {hi} outside 0..{}", pred.len())));
    }
    let rev = Reversed::new(pred);
    let found = first_one(&rev, rev.flip(hi), rev.flip(lo), params, rng)?;
    Ok(found.map(|(i, w)| (rev.flip(i), w)))
}

/// Repetitions needed to push a per-run failure of 0.1 below `target`.
pub fn repetitions_for(target: f64) -> usize {
    if target >= 0.1 {
        return 1;
    }
    (target.ln() / 0.1f64.ln() - 1e-9).ceil() as usize
}

/// `first_one` repeated `reps` times keeping the smallest verified index.
/// Every returned index is marked, so the minimum is missed only if every
/// repetition misses it.
pub fn first_one_repeated<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    hi: usize,
    reps: usize,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<Option<(usize, P::Witness)>> {
    let mut best: Option<(usize, P::Witness)> = None;
    for _ in 0..reps.max(1) {
        if let Some(hit) = first_one(pred, lo, hi, params, rng)? {
            if best.as_ref().is_none_or(|b| hit.0 < b.0) {
                best = Some(hit);
            }
        }
        if best.as_ref().is_some_and(|b| b.0 == lo) {
            break;
        }
    }
    Ok(best)
}

pub fn last_one_repeated<P: Predicate + ?Sized>(
    pred: &P,
    lo: usize,
    hi: usize,
    reps: usize,
    params: &SearchParams,
    rng: &mut SimRng,
) -> Result<Option<(usize, P::Witness)>> {
    let rev = Reversed::new(pred);
    let found = first_one_repeated(&rev, rev.flip(hi), rev.flip(lo), reps, params, rng)?;
    Ok(found.map(|(i, w)| (rev.flip(i), w)))
}

/// Upper bound on the evaluation units of `first_one` over `len` positions.
pub fn first_one_cap_units(len: usize, params: &SearchParams) -> u64 {
    let mut total = 0u64;
    let mut width = 1usize;
    loop {
        let w = width.min(len);
        total += params.cap_units(w);
        if w == len {
            break;
        }
        width *= 2;
    }
    total + (params.refine_factor * params.cap_units(len) as f64).ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_first_one_1d, gen_random_1d, CountingOracle, Map1D};
    use crate::qcore::predicate::BitLine;
    use rand::SeedableRng;

    fn bits(s: &str) -> Map1D {
        Map1D::from_bits(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn qsearch_cases() {
        let params = SearchParams::default();
        let mut rng = SimRng::seed_from_u64(9);
        let zeros = Map1D::from_bits(&[0; 64]).unwrap();
        let o = CountingOracle::new(&zeros);
        assert!(qsearch(&BitLine::new(&o), 0, 63, &params, &mut rng).unwrap().is_none());
        assert!(o.count() <= params.cap_units(64) + 1);

        let ones = Map1D::from_bits(&[1; 64]).unwrap();
        let o = CountingOracle::new(&ones);
        assert!(qsearch(&BitLine::new(&o), 0, 63, &params, &mut rng).unwrap().is_some());
        assert_eq!(o.count(), 1);

        let single = Map1D::from_bools((0..64).map(|i| i == 5)).unwrap();
        let mut found = 0;
        for _ in 0..2000 {
            let o = CountingOracle::new(&single);
            if let Some((i, ())) = qsearch(&BitLine::new(&o), 0, 63, &params, &mut rng).unwrap() {
                assert_eq!(i, 5);
                found += 1;
            }
        }
        assert!(found as f64 / 2000.0 >= 0.9, "qsearch success {found}/2000");
    }

    #[test]
    fn first_and_last_one_examples() {
        let params = SearchParams::default();
        let mut rng = SimRng::seed_from_u64(10);
        let m = bits("00100100");
        let (mut first_ok, mut last_ok) = (0, 0);
        for _ in 0..1000 {
            let o = CountingOracle::new(&m);
            let line = BitLine::new(&o);
            first_ok += (first_one(&line, 0, 7, &params, &mut rng).unwrap().map(|h| h.0) == Some(2)) as u32;
            last_ok += (last_one(&line, 0, 7, &params, &mut rng).unwrap().map(|h| h.0) == Some(5)) as u32;
        }
        assert!(first_ok >= 900 && last_ok >= 900, "{first_ok} {last_ok}");
        let z = bits("00000000");
        let o = CountingOracle::new(&z);
        assert!(first_one(&BitLine::new(&o), 0, 7, &params, &mut rng).unwrap().is_none());
        assert!(last_one(&BitLine::new(&o), 0, 7, &params, &mut rng).unwrap().is_none());
        assert!(first_one(&BitLine::new(&o), 5, 4, &params, &mut rng).is_err());
    }

    #[test]
    fn first_one_matches_left_scan_on_random_maps() {
        let params = SearchParams::default();
        let mut rng = SimRng::seed_from_u64(11);
        let trials = 2000;
        let mut ok = 0;
        for seed in 0..trials {
            let map = gen_random_1d(256, 0.02, seed).unwrap();
            let scan = (0..256).find(|&i| map.get(i));
            let o = CountingOracle::new(&map);
            let line = BitLine::new(&o);
            let got = first_one(&line, 0, 255, &params, &mut rng).unwrap();
            if let Some((i, ())) = got {
                assert!(map.get(i), "returned index must be marked");
            }
            ok += (got.map(|h| h.0) == scan) as u32;
            let got_last = last_one(&line, 0, 255, &params, &mut rng).unwrap();
            if let Some((i, ())) = got_last {
                assert!(map.get(i));
            }
        }
        assert!(ok as f64 / trials as f64 >= 0.9, "first_one agreement {ok}/{trials}");
    }

    #[test]
    fn charges_stay_under_cap() {
        let params = SearchParams::default();
        let mut rng = SimRng::seed_from_u64(12);
        for seed in 0..300 {
            let map = gen_first_one_1d(200, (seed as usize * 7) % 200, 0.3, seed).unwrap();
            let o = CountingOracle::new(&map);
            first_one(&BitLine::new(&o), 0, 199, &params, &mut rng).unwrap();
            assert!(o.count() <= first_one_cap_units(200, &params));
        }
    }

    #[test]
    fn repetition_counts() {
        assert_eq!(repetitions_for(0.1), 1);
        assert_eq!(repetitions_for(0.025), 2);
        assert_eq!(repetitions_for(0.001), 3);
        assert_eq!(repetitions_for(0.1 / 40.0), 3);
    }
}

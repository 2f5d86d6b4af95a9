//! Longest empty segment.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algos::{
    check_index, check_len, lift_and_search, lift_and_search_max_charge, positions_in_runs, SimParams,
    FIXED_LEN_SCOPE, VERIFY_SCOPE,
};
use crate::error::Result;
use crate::instances::oracle::Meter;
use crate::instances::{CountingOracle, Map1D, Segment};
use crate::qcore::amplify::amplify_max_charge;
use crate::qcore::predicate::BitLine;
use crate::qcore::search::first_one_cap_units;
use crate::qcore::{amplitude_amplify, first_one, last_one, BaseRoutine, Predicate, SearchParams, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LsegParams {
    pub n: usize,
}

/// Segment of length exactly `d` containing `i` on which `pred` is unmarked,
/// found by one first-one search to the right and one last-one search to
/// the left.
pub(crate) fn flfp_on<P: Predicate + ?Sized>(
    pred: &P,
    i: usize,
    d: usize,
    search: &SearchParams,
    rng: &mut SimRng,
) -> Result<Option<Segment>> {
    let n = pred.len();
    check_index(i, n)?;
    check_len(d, n)?;
    if pred.evaluate(i, rng).is_some() {
        return Ok(None);
    }
    if d == 1 {
        return Ok(Some(Segment::new(i as isize, i as isize)));
    }
    let right_end = (i + d - 1).min(n - 1);
    let r = match first_one(pred, i, right_end, search, rng)? {
        Some((m, _)) => m - 1,
        None => right_end,
    };
    let left_end = (r + 1).saturating_sub(d);
    let l = match last_one(pred, left_end, r, search, rng)? {
        Some((m, _)) => m + 1,
        None => left_end,
    };
    if r + 1 >= l + d {
        // Leftmost length-d window inside (l, r) that still contains i.
        let start = l.max((i + 1).saturating_sub(d)) as isize;
        return Ok(Some(Segment::new(start, start + d as isize - 1)));
    }
    Ok(None)
}

/// Worst-case charge of [`flfp_on`] when one evaluation costs at most `t`.
pub(crate) fn flfp_max_charge(d: usize, t: u64, search: &SearchParams) -> u64 {
    if d <= 1 {
        return t;
    }
    t * (1 + 2 * first_one_cap_units(d, search))
}

fn fixed_len_floor(n: usize, d: usize) -> f64 {
    (0.8 * d as f64 / n as f64).min(1.0)
}

pub(crate) fn fixed_len_max_charge(n: usize, d: usize, t: u64, search: &SearchParams) -> u64 {
    amplify_max_charge(flfp_max_charge(d, t, search), fixed_len_floor(n, d), search) + d as u64 * t
}

struct FixedLenBase<'p, P: ?Sized> {
    pred: &'p P,
    d: usize,
    good: Vec<usize>,
    max_charge: u64,
    search: SearchParams,
}

impl<P: Predicate + ?Sized> BaseRoutine for FixedLenBase<'_, P> {
    type Payload = Segment;

    fn meter(&self) -> &Meter {
        self.pred.meter()
    }

    fn max_charge(&self) -> u64 {
        self.max_charge
    }

    fn success_floor(&self) -> f64 {
        fixed_len_floor(self.pred.len(), self.d)
    }

    fn run(&self, rng: &mut SimRng) -> Result<Option<Segment>> {
        let i = rng.gen_range(0..self.pred.len());
        flfp_on(self.pred, i, self.d, &self.search, rng)
    }

    fn run_on_support(&self, rng: &mut SimRng) -> Result<Option<Segment>> {
        match self.good.choose(rng) {
            Some(&i) => flfp_on(self.pred, i, self.d, &self.search, rng),
            None => Ok(None),
        }
    }

    fn exact_probability(&self) -> Option<f64> {
        Some(self.good.len() as f64 / self.pred.len() as f64)
    }
}

/// Amplified fixed-length probe with a classical check of the answer.
/// `t` bounds the charge of one evaluation of `pred`.
pub(crate) fn fixed_len_on<P: Predicate + ?Sized>(
    pred: &P,
    d: usize,
    t: u64,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Segment>> {
    let n = pred.len();
    check_len(d, n)?;
    let meter = pred.meter();
    meter.scope(FIXED_LEN_SCOPE, || {
        let ideal: Vec<bool> = meter.uncharged(|| (0..n).map(|i| pred.ideal(i)).collect());
        let base = FixedLenBase {
            pred,
            d,
            good: positions_in_runs(&ideal, d),
            max_charge: flfp_max_charge(d, t, &params.search),
            search: params.search,
        };
        let Some(seg) = amplitude_amplify(&base, params.amplify, &params.search, rng)? else {
            return Ok(None);
        };
        let clean = meter.scope(VERIFY_SCOPE, || (seg.l..=seg.r).all(|p| pred.evaluate(p as usize, rng).is_none()));
        Ok(clean.then_some(seg))
    })
}

/// Binary lifting then binary search over an arbitrary line predicate.
pub(crate) fn lseg_on<P: Predicate + ?Sized>(
    pred: &P,
    t: u64,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Segment>> {
    let n = pred.len();
    if n == 1 {
        return Ok(pred.evaluate(0, rng).is_none().then(|| Segment::new(0, 0)));
    }
    lift_and_search(n, params.boost_for(n), |d| fixed_len_on(pred, d, t, params, rng))
}

pub(crate) fn lseg_max_charge(n: usize, t: u64, params: &SimParams) -> u64 {
    if n <= 1 {
        return t;
    }
    lift_and_search_max_charge(n, params.boost_for(n), |d| fixed_len_max_charge(n, d, t, &params.search))
}

pub fn fixed_len_fixed_point(
    oracle: &CountingOracle<'_, Map1D>,
    i: usize,
    d: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Segment>> {
    flfp_on(&BitLine::new(oracle), i, d, &params.search, rng)
}

pub fn fixed_len(
    oracle: &CountingOracle<'_, Map1D>,
    d: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Segment>> {
    check_len(d, oracle.n())?;
    fixed_len_on(&BitLine::new(oracle), d, 1, params, rng)
}

pub fn lseg(oracle: &CountingOracle<'_, Map1D>, params: &SimParams, rng: &mut SimRng) -> Result<Option<Segment>> {
    lseg_on(&BitLine::new(oracle), 1, params, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::longest_zero_run;
    use crate::instances::{gen_adversarial_1d, gen_random_1d};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn bits(s: &str) -> Map1D {
        Map1D::from_bits(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>()).unwrap()
    }

    fn is_empty(map: &Map1D, s: &Segment) -> bool {
        s.l >= 0 && (s.r as usize) < map.n() && (s.l..=s.r).all(|p| !map.get(p as usize))
    }

    #[test]
    fn fixed_point_examples() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(1);
        let zeros = bits("00000000");
        let o = CountingOracle::new(&zeros);
        let s = fixed_len_fixed_point(&o, 3, 4, &p, &mut rng).unwrap().unwrap();
        assert!(s.len() == 4 && s.contains(3) && is_empty(&zeros, &s));

        let ones = bits("00010000");
        let o = CountingOracle::new(&ones);
        assert_eq!(fixed_len_fixed_point(&o, 3, 2, &p, &mut rng).unwrap(), None);
        assert_eq!(o.count(), 1);

        assert!(fixed_len_fixed_point(&o, 8, 2, &p, &mut rng).is_err());
        assert!(fixed_len_fixed_point(&o, 0, 9, &p, &mut rng).is_err());
        assert!(fixed_len_fixed_point(&o, 0, 0, &p, &mut rng).is_err());
    }

    #[test]
    fn fixed_point_walled_window() {
        // The only length-6 window containing 4 inside 10000001 is (1, 6).
        let map = bits("10000001");
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(2);
        let trials = 2000;
        let mut hits = 0;
        for _ in 0..trials {
            let o = CountingOracle::new(&map);
            if let Some(s) = fixed_len_fixed_point(&o, 4, 6, &p, &mut rng).unwrap() {
                assert_eq!(s, Segment::new(1, 6));
                hits += 1;
            }
            assert!(o.count() <= flfp_max_charge(6, 1, &p.search));
        }
        assert!(hits as f64 / trials as f64 >= 0.8, "{hits}");
    }

    #[test]
    fn fixed_len_examples() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(3);
        let zeros = Map1D::from_bools(vec![false; 32]).unwrap();
        let o = CountingOracle::new(&zeros);
        assert_eq!(fixed_len(&o, 32, &p, &mut rng).unwrap(), Some(Segment::new(0, 31)));
        let ones = Map1D::from_bools(vec![true; 32]).unwrap();
        for d in [1, 5, 32] {
            let o = CountingOracle::new(&ones);
            assert_eq!(fixed_len(&o, d, &p, &mut rng).unwrap(), None);
        }
    }

    #[test]
    fn fixed_len_on_the_k_family() {
        let map = gen_adversarial_1d(1024, 700).unwrap();
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(4);
        let trials = 300;
        let mut hits = 0;
        for _ in 0..trials {
            let o = CountingOracle::new(&map);
            if let Some(s) = fixed_len(&o, 512, &p, &mut rng).unwrap() {
                assert!(s.len() == 512 && is_empty(&map, &s));
                hits += 1;
            }
            assert!(o.count() <= fixed_len_max_charge(1024, 512, 1, &p.search));
        }
        assert!(hits as f64 / trials as f64 >= 0.9, "{hits}");
    }

    #[test]
    fn lseg_examples() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(5);
        let zeros = Map1D::from_bools(vec![false; 16]).unwrap();
        let o = CountingOracle::new(&zeros);
        assert_eq!(lseg(&o, &p, &mut rng).unwrap(), Some(Segment::new(0, 15)));

        let ones = Map1D::from_bools(vec![true; 16]).unwrap();
        assert_eq!(lseg(&CountingOracle::new(&ones), &p, &mut rng).unwrap(), None);

        let single = bits("0");
        let o = CountingOracle::new(&single);
        assert_eq!(lseg(&o, &p, &mut rng).unwrap(), Some(Segment::new(0, 0)));
        assert_eq!(o.count(), 1);
        assert_eq!(lseg(&CountingOracle::new(&bits("1")), &p, &mut rng).unwrap(), None);

        let map = gen_adversarial_1d(1024, 700).unwrap();
        let trials = 50;
        let mut hits = 0;
        for _ in 0..trials {
            let o = CountingOracle::new(&map);
            let s = lseg(&o, &p, &mut rng).unwrap();
            hits += s.is_some_and(|s| s.len() == 699) as u32;
            assert!(o.count() <= lseg_max_charge(1024, 1, &p));
        }
        assert!(hits as f64 / trials as f64 >= 0.9, "{hits}");
    }

    #[test]
    fn monotone_probes() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(6);
        let map = gen_random_1d(512, 0.03, 11).unwrap();
        let best = longest_zero_run((0..map.n()).map(|i| map.get(i))).map_or(0, |s| s.len());
        let reps = p.boost_for(512);
        for d in [1, best / 2, best, best + 1, 2 * best] {
            if d == 0 || d > 512 {
                continue;
            }
            let mut hits = 0;
            for _ in 0..100 {
                let o = CountingOracle::new(&map);
                let got = crate::qcore::boost(reps, || fixed_len(&o, d, &p, &mut rng)).unwrap();
                hits += got.is_some() as u32;
            }
            if d <= best {
                assert!(hits >= 90, "d={d} hits={hits}");
            } else {
                assert_eq!(hits, 0, "d={d}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fixed_len_is_sound(bits in proptest::collection::vec(any::<bool>(), 1..80), d in 1usize..80, seed in any::<u64>()) {
            let map = Map1D::from_bools(bits).unwrap();
            let d = d.min(map.n());
            let o = CountingOracle::new(&map);
            let mut rng = SimRng::seed_from_u64(seed);
            if let Some(s) = fixed_len(&o, d, &SimParams::default(), &mut rng).unwrap() {
                prop_assert_eq!(s.len(), d);
                prop_assert!(is_empty(&map, &s));
            }
        }

        #[test]
        fn lseg_answers_are_empty(bits in proptest::collection::vec(any::<bool>(), 1..80), seed in any::<u64>()) {
            let map = Map1D::from_bools(bits).unwrap();
            let o = CountingOracle::new(&map);
            let mut rng = SimRng::seed_from_u64(seed);
            let got = lseg(&o, &SimParams::default(), &mut rng).unwrap();
            let best = longest_zero_run((0..map.n()).map(|i| map.get(i))).map_or(0, |s| s.len());
            if let Some(s) = got {
                prop_assert!(is_empty(&map, &s));
                prop_assert!(s.len() <= best);
            }
            prop_assert!(o.count() <= lseg_max_charge(map.n(), 1, &SimParams::default()));
        }
    }
}

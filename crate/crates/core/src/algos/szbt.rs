//! Segment of zeros bounded by twos.
//!
//! The searches run over the non-zero indicator of the sentinel-extended
//! line, so position `p` of the predicate is index `p - 1` of the map and the
//! sentinels `f(-1) = f(n) = 2` are free.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algos::{check_index, SimParams, FIXED_LEN_SCOPE, VERIFY_SCOPE};
use crate::error::{invalid, Result};
use crate::instances::oracle::Meter;
use crate::instances::{CountingOracle, Segment, TritMap1D};
use crate::qcore::amplify::amplify_max_charge;
use crate::qcore::predicate::NonzeroLine;
use crate::qcore::search::first_one_cap_units;
use crate::qcore::{amplitude_amplify, boost, first_one, last_one, BaseRoutine, Predicate, SearchParams, SimRng};

pub const LADDER_SCOPE: &str = "probe_ladder";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SzbtParams {
    pub n: usize,
}

pub fn fixed_len_fixed_point_szbt(
    oracle: &CountingOracle<'_, TritMap1D>,
    i: usize,
    d: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Segment>> {
    let n = oracle.n();
    check_index(i, n)?;
    if d == 0 {
        return Err(invalid("segment size must be at least 1"));
    }
    let line = NonzeroLine::new(oracle);
    let s = &params.search;
    if line.evaluate(i + 1, rng).is_some() {
        return Ok(None);
    }
    // A bounded segment needs two bounds and at least one zero.
    if d < 3 {
        return Ok(None);
    }
    let right_end = (i + d - 1).min(n);
    let r = match first_one(&line, i + 1, right_end + 1, s, rng)? {
        Some((_, 1)) => return Ok(None),
        Some((p, _)) => p - 1,
        None => {
            if line.evaluate(right_end + 1, rng) != Some(2) {
                return Ok(None);
            }
            right_end
        }
    };
    // Positions of indices max(r - d + 1, -1) ..= r - 1.
    let lo = (r + 2).saturating_sub(d);
    let l = match last_one(&line, lo, r, s, rng)? {
        Some((p, 2)) => p as isize - 1,
        _ => return Ok(None),
    };
    Ok(Some(Segment::new(l, r as isize)))
}

fn flfp_max_charge(d: usize, search: &SearchParams) -> u64 {
    if d < 3 {
        return 1;
    }
    2 + 2 * first_one_cap_units(d, search)
}

/// Holds when the smallest bounded segment has size above `d/2`, so that it
/// holds at least `d/2 - 1` zeros. The ladder stops at the first such size.
fn fixed_len_floor(n: usize, d: usize) -> f64 {
    (0.8 * (d / 2).saturating_sub(1).max(1) as f64 / n as f64).min(1.0)
}

fn fixed_len_szbt_max_charge(n: usize, d: usize, search: &SearchParams) -> u64 {
    let d = d.min(n + 2);
    amplify_max_charge(flfp_max_charge(d, search), fixed_len_floor(n, d), search) + d as u64
}

/// Zero indices strictly inside a `2 0… 2` segment of size at most `d`,
/// and the smallest such size (simulator knowledge).
fn bounded_zeros(map: &TritMap1D, d: usize) -> (Vec<usize>, Option<usize>) {
    let n = map.n() as isize;
    let mut good = Vec::new();
    let mut smallest: Option<usize> = None;
    let mut prev = -1isize;
    for p in 0..=n {
        let v = map.get(p);
        if v == 0 {
            continue;
        }
        let size = (p - prev + 1) as usize;
        if size >= 3 && v == 2 && map.get(prev) == 2 {
            smallest = Some(smallest.map_or(size, |m| m.min(size)));
            if size <= d {
                good.extend((prev + 1) as usize..p as usize);
            }
        }
        prev = p;
    }
    (good, smallest)
}

struct SzbtBase<'o, 'm> {
    oracle: &'o CountingOracle<'m, TritMap1D>,
    d: usize,
    good: Vec<usize>,
    params: SimParams,
}

impl BaseRoutine for SzbtBase<'_, '_> {
    type Payload = Segment;

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn max_charge(&self) -> u64 {
        flfp_max_charge(self.d, &self.params.search)
    }

    fn success_floor(&self) -> f64 {
        fixed_len_floor(self.oracle.n(), self.d)
    }

    fn run(&self, rng: &mut SimRng) -> Result<Option<Segment>> {
        let i = rng.gen_range(0..self.oracle.n());
        fixed_len_fixed_point_szbt(self.oracle, i, self.d, &self.params, rng)
    }

    fn run_on_support(&self, rng: &mut SimRng) -> Result<Option<Segment>> {
        match self.good.choose(rng) {
            Some(&i) => fixed_len_fixed_point_szbt(self.oracle, i, self.d, &self.params, rng),
            None => Ok(None),
        }
    }

    fn exact_probability(&self) -> Option<f64> {
        Some(self.good.len() as f64 / self.oracle.n() as f64)
    }
}

/// Amplified probe for a bounded segment of size at most `d`, checked
/// classically before it is returned.
pub(crate) fn fixed_len_szbt(
    oracle: &CountingOracle<'_, TritMap1D>,
    d: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Segment>> {
    let d = d.min(oracle.n() + 2);
    let meter = oracle.meter();
    meter.scope(FIXED_LEN_SCOPE, || {
        let base = SzbtBase { oracle, d, good: bounded_zeros(oracle.map(), d).0, params: *params };
        let Some(seg) = amplitude_amplify(&base, params.amplify, &params.search, rng)? else {
            return Ok(None);
        };
        let ok = meter.scope(VERIFY_SCOPE, || -> Result<bool> {
            let mut ok = oracle.query(seg.l)? == 2 && oracle.query(seg.r)? == 2;
            for p in seg.l + 1..seg.r {
                ok = ok && oracle.query(p)? == 0;
            }
            Ok(ok)
        })?;
        Ok(ok.then_some(seg))
    })
}

/// Probe sizes `2, 4, …` capped by the largest possible segment `n + 2`.
fn size_ladder(n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut d = 2usize;
    while d < n + 2 {
        sizes.push(d);
        d *= 2;
    }
    sizes.push(n + 2);
    sizes
}

/// First-one search over the size ladder: position `j` is marked when a
/// boosted probe of size `sizes[j]` succeeds.
struct Ladder<'o, 'm> {
    oracle: &'o CountingOracle<'m, TritMap1D>,
    sizes: Vec<usize>,
    smallest: Option<usize>,
    reps: usize,
    params: SimParams,
}

impl Predicate for Ladder<'_, '_> {
    type Witness = Segment;

    fn len(&self) -> usize {
        self.sizes.len()
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal(&self, j: usize) -> bool {
        self.smallest.is_some_and(|m| m <= self.sizes[j])
    }

    fn coherent_charge(&self) -> u64 {
        self.coherent_charge_in(0, self.sizes.len() - 1)
    }

    fn coherent_charge_in(&self, _lo: usize, hi: usize) -> u64 {
        self.reps as u64 * fixed_len_szbt_max_charge(self.oracle.n(), self.sizes[hi], &self.params.search)
    }

    fn coherent_scope(&self) -> &'static str {
        LADDER_SCOPE
    }

    fn evaluate(&self, j: usize, rng: &mut SimRng) -> Option<Segment> {
        boost(self.reps, || fixed_len_szbt(self.oracle, self.sizes[j], &self.params, rng))
            .expect("probe sizes are valid")
    }
}

pub fn szbt(oracle: &CountingOracle<'_, TritMap1D>, params: &SimParams, rng: &mut SimRng) -> Result<Option<Segment>> {
    let n = oracle.n();
    let ladder = Ladder {
        oracle,
        sizes: size_ladder(n),
        smallest: bounded_zeros(oracle.map(), n + 2).1,
        reps: params.boost_for(n),
        params: *params,
    };
    let found = first_one(&ladder, 0, ladder.len() - 1, &params.search, rng)?;
    Ok(found.map(|(_, seg)| seg))
}

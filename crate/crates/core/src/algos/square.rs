//! Largest empty square.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algos::{check_index, check_len, lift_and_search, SimParams, FIXED_LEN_SCOPE, VERIFY_SCOPE};
use crate::baseline::rect_empty_check;
use crate::error::Result;
use crate::instances::oracle::Meter;
use crate::instances::{CountingOracle, Map2D, Rect, Square};
use crate::qcore::amplify::amplify_max_charge;
use crate::qcore::predicate::RowLine;
use crate::qcore::search::{first_one_cap_units, first_one_repeated, last_one_repeated, repetitions_for};
use crate::qcore::{amplitude_amplify, BaseRoutine, SimRng};
use crate::window::MonotoneQueue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LsqrParams {
    pub n: usize,
}

/// Repetitions of each row search, so that all `4d` searches together fail
/// with probability at most 0.1.
fn row_reps(d: usize) -> usize {
    repetitions_for(0.1 / (4 * d) as f64)
}

/// Empty `d x d` square containing `(i, j)`. Every row that can share a
/// square with `(i, j)` gets its nearest one left and right of column `j`;
/// a window of `d` consecutive rows then fits a square when
/// `min r - max l >= d + 1`.
pub fn fixed_size_fixed_point_square(
    oracle: &CountingOracle<'_, Map2D>,
    i: usize,
    j: usize,
    d: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Square>> {
    let n = oracle.n();
    check_index(i, n)?;
    check_index(j, n)?;
    check_len(d, n)?;
    if oracle.query(i, j)? {
        return Ok(None);
    }
    if d == 1 {
        return Ok(Some(Square { x: i, y: j, d: 1 }));
    }
    let reps = row_reps(d);
    let s = &params.search;
    let (jl, jr) = ((j + 1).saturating_sub(d), (j + d - 1).min(n - 1));
    let wall_l = j as isize - d as isize;
    let wall_r = (j + d).min(n) as isize;
    // Square top rows y with y <= i < y + d, kept inside the map.
    let (top_lo, top_hi) = ((i + 1).saturating_sub(d), i.min(n - d));
    let mut lq = MonotoneQueue::max();
    let mut rq = MonotoneQueue::min();
    for k in top_lo..top_hi + d {
        let row = RowLine::new(oracle, k);
        let l = match last_one_repeated(&row, jl, j, reps, s, rng)? {
            Some((m, _)) => m as isize,
            None => wall_l.max(-1),
        };
        let r = match first_one_repeated(&row, j, jr, reps, s, rng)? {
            Some((m, _)) => m as isize,
            None => wall_r,
        };
        lq.add(l);
        rq.add(r);
        if k >= top_lo + d {
            lq.remove()?;
            rq.remove()?;
        }
        if k + 1 >= top_lo + d {
            let (ml, mr) = (lq.extremum()?, rq.extremum()?);
            if mr - ml > d as isize {
                return Ok(Some(Square { x: k + 1 - d, y: (ml + 1) as usize, d }));
            }
        }
    }
    Ok(None)
}

pub(crate) fn fsfps_max_charge(d: usize, params: &SimParams) -> u64 {
    if d <= 1 {
        return 1;
    }
    let per_row = 2 * row_reps(d) as u64 * first_one_cap_units(d, &params.search);
    1 + (2 * d as u64 - 1) * per_row
}

fn square_floor(n: usize, d: usize) -> f64 {
    (0.9 * (d * d) as f64 / (n * n) as f64).min(1.0)
}

pub fn fixed_size_square_max_charge(n: usize, d: usize, params: &SimParams) -> u64 {
    amplify_max_charge(fsfps_max_charge(d, params), square_floor(n, d), &params.search) + (d * d) as u64
}

/// Cells covered by some empty `d x d` square, row-major.
fn covered_cells(map: &Map2D, d: usize) -> Vec<usize> {
    let n = map.n();
    let mut side = vec![0usize; n * n];
    let mut diff = vec![0i32; (n + 1) * (n + 1)];
    for a in 0..n {
        for b in 0..n {
            if map.get(a, b) {
                continue;
            }
            let s = if a == 0 || b == 0 {
                1
            } else {
                1 + side[(a - 1) * n + b].min(side[a * n + b - 1]).min(side[(a - 1) * n + b - 1])
            };
            side[a * n + b] = s;
            if s >= d {
                let (a0, b0) = (a + 1 - d, b + 1 - d);
                diff[a0 * (n + 1) + b0] += 1;
                diff[a0 * (n + 1) + b + 1] -= 1;
                diff[(a + 1) * (n + 1) + b0] -= 1;
                diff[(a + 1) * (n + 1) + b + 1] += 1;
            }
        }
    }
    let w = n + 1;
    for a in 0..=n {
        for b in 0..=n {
            let mut v = diff[a * w + b];
            if a > 0 {
                v += diff[(a - 1) * w + b];
            }
            if b > 0 {
                v += diff[a * w + b - 1];
            }
            if a > 0 && b > 0 {
                v -= diff[(a - 1) * w + b - 1];
            }
            diff[a * w + b] = v;
        }
    }
    (0..n * n).filter(|&c| diff[(c / n) * w + c % n] > 0).collect()
}

struct SquareBase<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map2D>,
    d: usize,
    good: Vec<usize>,
    params: SimParams,
}

impl BaseRoutine for SquareBase<'_, '_> {
    type Payload = Square;

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn max_charge(&self) -> u64 {
        fsfps_max_charge(self.d, &self.params)
    }

    fn success_floor(&self) -> f64 {
        square_floor(self.oracle.n(), self.d)
    }

    fn run(&self, rng: &mut SimRng) -> Result<Option<Square>> {
        let n = self.oracle.n();
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        fixed_size_fixed_point_square(self.oracle, i, j, self.d, &self.params, rng)
    }

    fn run_on_support(&self, rng: &mut SimRng) -> Result<Option<Square>> {
        let n = self.oracle.n();
        match self.good.choose(rng) {
            Some(&c) => fixed_size_fixed_point_square(self.oracle, c / n, c % n, self.d, &self.params, rng),
            None => Ok(None),
        }
    }

    fn exact_probability(&self) -> Option<f64> {
        let n = self.oracle.n();
        Some(self.good.len() as f64 / (n * n) as f64)
    }
}

pub fn fixed_size_square(
    oracle: &CountingOracle<'_, Map2D>,
    d: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Square>> {
    check_len(d, oracle.n())?;
    let meter = oracle.meter();
    meter.scope(FIXED_LEN_SCOPE, || {
        let base = SquareBase { oracle, d, good: covered_cells(oracle.map(), d), params: *params };
        let Some(sq) = amplitude_amplify(&base, params.amplify, &params.search, rng)? else {
            return Ok(None);
        };
        let rect = Rect::new(sq.x, sq.y, sq.x + d - 1, sq.y + d - 1);
        let ok = meter.scope(VERIFY_SCOPE, || rect_empty_check(oracle, &rect))?;
        Ok(ok.then_some(sq))
    })
}

pub fn lsqr(oracle: &CountingOracle<'_, Map2D>, params: &SimParams, rng: &mut SimRng) -> Result<Option<Square>> {
    let n = oracle.n();
    if n == 1 {
        return Ok((!oracle.query(0, 0)?).then_some(Square { x: 0, y: 0, d: 1 }));
    }
    lift_and_search(n, params.boost_for(n), |d| fixed_size_square(oracle, d, params, rng))
}

//! Largest empty rectangle on promise inputs, where every zero area is a
//! rectangle bounded by ones or the border.

use crate::algos::{check_index, SimParams};
use crate::baseline::meets_minima;
use crate::error::{invalid, Result};
use crate::instances::oracle::Meter;
use crate::instances::{rect_rank, CountingOracle, Map2D, Rect};
use crate::qcore::predicate::{ColLine, RowLine};
use crate::qcore::search::{first_one_cap_units, first_one_repeated, last_one_repeated, repetitions_for};
use crate::qcore::{qmax, Candidates, SimRng};

pub const LREC2_SCOPE: &str = "lrec2";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lrec2Params {
    pub n: usize,
    pub h: usize,
    pub w: usize,
}

fn side_reps() -> usize {
    repetitions_for(0.025)
}

/// The zero area around `(i, j)`: nearest ones above and below in column
/// `j`, left and right in row `i`. A missing one is the wall at `-1` or `n`.
pub fn fixed_point_rec_area(
    oracle: &CountingOracle<'_, Map2D>,
    i: usize,
    j: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Rect>> {
    let n = oracle.n();
    check_index(i, n)?;
    check_index(j, n)?;
    if oracle.query(i, j)? {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(Rect::new(0, 0, 0, 0)));
    }
    let (s, reps) = (&params.search, side_reps());
    let col = ColLine::new(oracle, j);
    let row = RowLine::new(oracle, i);
    let x1 = last_one_repeated(&col, 0, i, reps, s, rng)?.map_or(0, |(m, _)| m + 1);
    let x2 = first_one_repeated(&col, i, n - 1, reps, s, rng)?.map_or(n - 1, |(m, _)| m - 1);
    let y1 = last_one_repeated(&row, 0, j, reps, s, rng)?.map_or(0, |(m, _)| m + 1);
    let y2 = first_one_repeated(&row, j, n - 1, reps, s, rng)?.map_or(n - 1, |(m, _)| m - 1);
    Ok(Some(Rect::new(x1, y1, x2, y2)))
}

pub(crate) fn fpra_max_charge(n: usize, params: &SimParams) -> u64 {
    if n <= 1 {
        return 1;
    }
    1 + 4 * side_reps() as u64 * first_one_cap_units(n, &params.search)
}

/// Zero area of every cell from the ideal map, row-major; `None` on ones.
fn ideal_areas(map: &Map2D) -> Vec<Option<Rect>> {
    let n = map.n();
    let mut up = vec![0usize; n * n];
    let mut left = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            up[a * n + b] = if a == 0 || map.get(a - 1, b) { a } else { up[(a - 1) * n + b] };
            left[a * n + b] = if b == 0 || map.get(a, b - 1) { b } else { left[a * n + b - 1] };
        }
    }
    let mut down = vec![0usize; n * n];
    let mut right = vec![0usize; n * n];
    for a in (0..n).rev() {
        for b in (0..n).rev() {
            down[a * n + b] = if a == n - 1 || map.get(a + 1, b) { a } else { down[(a + 1) * n + b] };
            right[a * n + b] = if b == n - 1 || map.get(a, b + 1) { b } else { right[a * n + b + 1] };
        }
    }
    (0..n * n)
        .map(|c| (!map.get(c / n, c % n)).then(|| Rect::new(up[c], left[c], down[c], right[c])))
        .collect()
}

struct Cells<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map2D>,
    params: SimParams,
    ideal: Vec<u64>,
}

impl Candidates for Cells<'_, '_> {
    type Payload = Rect;

    fn len(&self) -> usize {
        self.ideal.len()
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal_value(&self, c: usize) -> u64 {
        self.ideal[c]
    }

    fn max_charge(&self) -> u64 {
        fpra_max_charge(self.oracle.n(), &self.params)
    }

    fn evaluate(&self, c: usize, rng: &mut SimRng) -> Result<(u64, Option<Rect>)> {
        let n = self.oracle.n();
        let r = fixed_point_rec_area(self.oracle, c / n, c % n, &self.params, rng)?;
        Ok((rect_rank(r, n), r))
    }
}

pub fn lrec2_max_charge(n: usize, params: &SimParams) -> u64 {
    crate::qcore::qmax::qmax_max_charge(n * n, 1, fpra_max_charge(n, params))
}

pub fn lrec2(
    oracle: &CountingOracle<'_, Map2D>,
    h: usize,
    w: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<Option<Rect>> {
    let n = oracle.n();
    if h == 0 || w == 0 || h > n || w > n {
        return Err(invalid(format!("minimum dimensions {h}x{w} outside 1..={n}")));
    }
    let meter = oracle.meter();
    meter.scope(LREC2_SCOPE, || {
        let ideal = meter.uncharged(|| ideal_areas(oracle.map()).into_iter().map(|r| rect_rank(r, n)).collect());
        let cells = Cells { oracle, params: *params, ideal };
        let out = qmax(&cells, 1, &params.search, rng)?;
        if out.value == 0 {
            return Ok(None);
        }
        Ok(out.payload.filter(|r| meets_minima(r, h, w)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::{lrec2_scan, zero_blocks};
    use crate::instances::{gen_adversarial_rec2, gen_blocks, gen_promise_2d};
    use rand::SeedableRng;

    #[test]
    fn fixed_point_examples() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(1);
        let mut map = Map2D::zeros(8).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let o = CountingOracle::new(&map);
                let r = fixed_point_rec_area(&o, i, j, &p, &mut rng).unwrap();
                assert_eq!(r, Some(Rect::new(0, 0, 7, 7)));
            }
        }
        map.set(3, 3, true);
        let o = CountingOracle::new(&map);
        assert_eq!(fixed_point_rec_area(&o, 3, 3, &p, &mut rng).unwrap(), None);
        assert_eq!(o.count(), 1);
        assert!(fixed_point_rec_area(&o, 8, 0, &p, &mut rng).is_err());

        let block = Rect::new(2, 3, 5, 5);
        let map = gen_blocks(10, &[block]).unwrap();
        let mut hits = 0;
        for _ in 0..200 {
            let o = CountingOracle::new(&map);
            hits += (fixed_point_rec_area(&o, 4, 4, &p, &mut rng).unwrap() == Some(block)) as u32;
            assert!(o.count() <= fpra_max_charge(10, &p));
        }
        assert!(hits >= 180, "{hits}");
    }

    #[test]
    fn ideal_areas_are_the_blocks() {
        let (map, _) = gen_promise_2d(24, 30, 8, 9).unwrap();
        let blocks = zero_blocks(&CountingOracle::new(&map)).unwrap();
        let areas = ideal_areas(&map);
        for b in blocks {
            for a in b.x1..=b.x2 {
                for c in b.y1..=b.y2 {
                    assert_eq!(areas[a * 24 + c], Some(b));
                }
            }
        }
    }

    #[test]
    fn examples() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(2);
        let ones = Map2D::ones(8).unwrap();
        assert_eq!(lrec2(&CountingOracle::new(&ones), 1, 1, &p, &mut rng).unwrap(), None);
        assert!(lrec2(&CountingOracle::new(&ones), 0, 1, &p, &mut rng).is_err());

        let single = gen_adversarial_rec2(8, 5, 2).unwrap();
        let mut hits = 0;
        for _ in 0..50 {
            let got = lrec2(&CountingOracle::new(&single), 1, 1, &p, &mut rng).unwrap();
            hits += (got == Some(Rect::new(5, 2, 5, 2))) as u32;
        }
        assert!(hits >= 45, "{hits}");
        assert_eq!(lrec2(&CountingOracle::new(&single), 2, 1, &p, &mut rng).unwrap(), None);
    }

    #[test]
    fn matches_scan_on_promise_maps() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(3);
        let trials = 40;
        let mut hits = 0;
        for t in 0..trials {
            let (map, _) = gen_promise_2d(32, 20, 10, t).unwrap();
            let want = lrec2_scan(&CountingOracle::new(&map)).unwrap();
            let o = CountingOracle::new(&map);
            let got = lrec2(&o, 1, 1, &p, &mut rng).unwrap();
            hits += (rect_rank(got, 32) == rect_rank(want, 32)) as u32;
            assert!(o.count() <= lrec2_max_charge(32, &p));
        }
        assert!(hits as f64 / trials as f64 >= 0.9, "{hits}");
    }
}

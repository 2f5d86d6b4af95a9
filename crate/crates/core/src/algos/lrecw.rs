//! Largest empty rectangle of fixed width `d`.
//!
//! The width runs along rows: a candidate is a top row `x1` and the
//! rectangle covers rows `x1..x1+d`. Column `j` is blocked for `x1` when
//! `g_{x1}(j) = 1`, i.e. some row of the window has a one in column `j`, and
//! the best rectangle for `x1` is the longest unblocked run of columns.

use crate::algos::lseg::{lseg_max_charge, lseg_on};
use crate::algos::{check_len, SimParams};
use crate::baseline::longest_zero_run;
use crate::error::{invalid, Result};
use crate::instances::oracle::Meter;
use crate::instances::{CountingOracle, Map2D, PrefixCounts, Rect};
use crate::qcore::predicate::ColLine;
use crate::qcore::{qmax, qsearch, Candidates, Predicate, SimRng};

pub const G_SCOPE: &str = "g_window";
pub const LRECW_SCOPE: &str = "lrecw";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrecwParams {
    pub n: usize,
    pub d: usize,
}

/// `g_{x1}(j)`: whether column `j` holds a one in rows `x1..x1+d`. A
/// returned `true` is always right; a one can be missed.
pub fn g_window(
    oracle: &CountingOracle<'_, Map2D>,
    x1: usize,
    d: usize,
    j: usize,
    params: &SimParams,
    rng: &mut SimRng,
) -> Result<bool> {
    let n = oracle.n();
    check_len(d, n)?;
    if x1 + d > n || j >= n {
        return Err(invalid(format!("window x1={x1}, d={d}, column {j} outside the {n}x{n} map")));
    }
    oracle.meter().scope(G_SCOPE, || {
        if d == 1 {
            return oracle.query(x1, j);
        }
        Ok(qsearch(&ColLine::new(oracle, j), x1, x1 + d - 1, &params.search, rng)?.is_some())
    })
}

/// Worst-case charge of one [`g_window`] call.
pub(crate) fn g_max_charge(d: usize, params: &SimParams) -> u64 {
    if d <= 1 {
        1
    } else {
        params.search.cap_units(d)
    }
}

struct GLine<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map2D>,
    x1: usize,
    d: usize,
    blocked: PrefixCounts,
    params: SimParams,
}

impl<'o, 'm> GLine<'o, 'm> {
    fn new(oracle: &'o CountingOracle<'m, Map2D>, x1: usize, d: usize, params: SimParams) -> Self {
        Self { oracle, x1, d, blocked: blocked_columns(oracle.map(), x1, d), params }
    }
}

fn blocked_columns(map: &Map2D, x1: usize, d: usize) -> PrefixCounts {
    PrefixCounts::from_iter((0..map.n()).map(|j| map.col_ones(j, x1, x1 + d - 1) > 0))
}

impl Predicate for GLine<'_, '_> {
    type Witness = ();

    fn len(&self) -> usize {
        self.oracle.n()
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal(&self, j: usize) -> bool {
        self.blocked.count(j, j) > 0
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        self.blocked.count(lo, hi)
    }

    fn coherent_charge(&self) -> u64 {
        g_max_charge(self.d, &self.params)
    }

    fn coherent_scope(&self) -> &'static str {
        G_SCOPE
    }

    fn evaluate(&self, j: usize, rng: &mut SimRng) -> Option<()> {
        g_window(self.oracle, self.x1, self.d, j, &self.params, rng).expect("column inside the map").then_some(())
    }
}

struct TopRows<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map2D>,
    d: usize,
    params: SimParams,
    /// Longest unblocked column run per top row (simulator knowledge).
    ideal: Vec<u64>,
    max_charge: u64,
}

impl Candidates for TopRows<'_, '_> {
    type Payload = Rect;

    fn len(&self) -> usize {
        self.ideal.len()
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal_value(&self, x1: usize) -> u64 {
        self.ideal[x1]
    }

    fn max_charge(&self) -> u64 {
        self.max_charge
    }

    fn evaluate(&self, x1: usize, rng: &mut SimRng) -> Result<(u64, Option<Rect>)> {
        let line = GLine::new(self.oracle, x1, self.d, self.params);
        let seg = lseg_on(&line, g_max_charge(self.d, &self.params), &self.params, rng)?;
        Ok(match seg {
            Some(s) => (s.len() as u64, Some(Rect::new(x1, s.l as usize, x1 + self.d - 1, s.r as usize))),
            None => (0, None),
        })
    }
}

fn lrecw_reps(candidates: usize) -> usize {
    ((candidates as f64).log2().ceil() as usize).max(1)
}

/// Worst-case charge of one top-level [`lrecw`] call.
pub fn lrecw_max_charge(n: usize, d: usize, params: &SimParams) -> u64 {
    let m = n + 1 - d;
    let per = lseg_max_charge(n, g_max_charge(d, params), params);
    crate::qcore::qmax::qmax_max_charge(m, lrecw_reps(m), per)
}

pub fn lrecw(oracle: &CountingOracle<'_, Map2D>, d: usize, params: &SimParams, rng: &mut SimRng) -> Result<Option<Rect>> {
    let n = oracle.n();
    check_len(d, n)?;
    let meter = oracle.meter();
    meter.scope(LRECW_SCOPE, || {
        let ideal = meter.uncharged(|| {
            (0..=n - d)
                .map(|x1| {
                    let b = blocked_columns(oracle.map(), x1, d);
                    longest_zero_run((0..n).map(|j| b.count(j, j) > 0)).map_or(0, |s| s.len() as u64)
                })
                .collect::<Vec<_>>()
        });
        let cands = TopRows {
            oracle,
            d,
            params: *params,
            ideal,
            max_charge: lseg_max_charge(n, g_max_charge(d, params), params),
        };
        let out = qmax(&cands, lrecw_reps(cands.len()), &params.search, rng)?;
        Ok(if out.value == 0 { None } else { out.payload })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::lrecw_scan;
    use crate::instances::{gen_adversarial_recw, gen_random_2d};
    use rand::SeedableRng;

    fn empty(map: &Map2D, r: &Rect) -> bool {
        (r.x1..=r.x2).all(|a| (r.y1..=r.y2).all(|b| !map.get(a, b)))
    }

    #[test]
    fn g_examples() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(1);
        let mut map = Map2D::zeros(16).unwrap();
        let o = CountingOracle::new(&map);
        assert!(!g_window(&o, 3, 5, 7, &p, &mut rng).unwrap());
        map.set(6, 7, true);
        let mut hits = 0;
        for _ in 0..500 {
            let o = CountingOracle::new(&map);
            hits += g_window(&o, 3, 5, 7, &p, &mut rng).unwrap() as u32;
            assert!(o.count() <= g_max_charge(5, &p));
            assert!(!g_window(&o, 3, 5, 6, &p, &mut rng).unwrap());
        }
        assert!(hits >= 450, "{hits}");
        let o = CountingOracle::new(&map);
        assert!(g_window(&o, 6, 1, 7, &p, &mut rng).unwrap());
        assert_eq!(o.count(), 1);
        assert_eq!(o.meter().ledger().inclusive_of(G_SCOPE), 1);
        assert!(g_window(&o, 12, 5, 0, &p, &mut rng).is_err());
        assert!(g_window(&o, 0, 1, 16, &p, &mut rng).is_err());
    }

    #[test]
    fn examples() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(2);
        let zeros = Map2D::zeros(8).unwrap();
        let r = lrecw(&CountingOracle::new(&zeros), 3, &p, &mut rng).unwrap().unwrap();
        assert_eq!((r.x2 - r.x1, r.y1, r.y2, r.size()), (2, 0, 7, 14));

        let ones = Map2D::ones(8).unwrap();
        assert_eq!(lrecw(&CountingOracle::new(&ones), 2, &p, &mut rng).unwrap(), None);
        assert!(lrecw(&CountingOracle::new(&ones), 9, &p, &mut rng).is_err());

        let fam = gen_adversarial_recw(16, 4, 2, 10).unwrap();
        let mut hits = 0;
        for _ in 0..20 {
            let o = CountingOracle::new(&fam);
            let r = lrecw(&o, 4, &p, &mut rng).unwrap();
            if let Some(r) = r {
                assert_eq!(r.x2 + 1 - r.x1, 4);
            }
            hits += (r.map(|r| r.height()) == Some(9)) as u32;
            let ledger = o.meter().ledger();
            assert_eq!(ledger.exclusive_total(), o.count());
            assert_eq!(ledger.inclusive_of(LRECW_SCOPE), o.count());
            assert!(o.count() <= lrecw_max_charge(16, 4, &p));
        }
        assert!(hits >= 18, "{hits}");
    }

    #[test]
    fn matches_scan_on_random_maps() {
        let p = SimParams::default();
        let mut rng = SimRng::seed_from_u64(3);
        let trials = 30;
        let mut hits = 0;
        for t in 0..trials {
            let map = gen_random_2d(24, 0.03, t).unwrap();
            let d = 1 + (t as usize % 5);
            let want = lrecw_scan(&CountingOracle::new(&map), d).unwrap().map(|r| r.height());
            let got = lrecw(&CountingOracle::new(&map), d, &p, &mut rng).unwrap();
            if let Some(r) = got {
                assert_eq!(r.x2 + 1 - r.x1, d);
            }
            hits += (got.map(|r| r.height()) == want) as u32;
            if got.is_some() && got.map(|r| r.height()) == want {
                assert!(empty(&map, &got.unwrap()));
            }
        }
        assert!(hits as f64 / trials as f64 >= 0.9, "{hits}");
    }
}

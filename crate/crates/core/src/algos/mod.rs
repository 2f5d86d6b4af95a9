//! The five problem algorithms as classical control flow over the simulated
//! quantum subroutines.
//!
//! Coordinates: a 2-D cell is `(x, y)` with `x` the row. Rectangles are
//! `(x1, y1, x2, y2)`, inclusive.

pub mod lrec2;
pub mod lrecw;
pub mod lseg;
pub mod square;
pub mod szbt;

use crate::error::{invalid, Result};
use crate::qcore::{boost, boost_count, AmplifyMode, SearchParams};

pub use lrec2::{fixed_point_rec_area, lrec2, Lrec2Params};
pub use lrecw::{g_window, lrecw, LrecwParams};
pub use lseg::{fixed_len, fixed_len_fixed_point, lseg, LsegParams};
pub use square::{fixed_size_fixed_point_square, fixed_size_square, lsqr, LsqrParams};
pub use szbt::{fixed_len_fixed_point_szbt, szbt, SzbtParams};

/// Knobs shared by every algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SimParams {
    pub search: SearchParams,
    pub amplify: AmplifyMode,
    /// Overrides the default repetition count of boosted probes.
    pub boost: Option<usize>,
}

impl SimParams {
    pub fn boost_for(&self, n: usize) -> usize {
        self.boost.unwrap_or_else(|| boost_count(n)).max(1)
    }
}

pub const FIXED_LEN_SCOPE: &str = "fixed_len";
pub const VERIFY_SCOPE: &str = "verify";

/// Binary lifting over probe sizes `2, 4, …` followed by a binary search on
/// the bracket, then a final probe at `left - 1`. `probe(d)` must be
/// one-sided and is boosted `reps` times. Sizes above `n` are never probed.
pub(crate) fn lift_and_search<T>(
    n: usize,
    reps: usize,
    mut probe: impl FnMut(usize) -> Result<Option<T>>,
) -> Result<Option<T>> {
    let mut run = |d: usize| -> Result<Option<T>> {
        if d == 0 || d > n {
            return Ok(None);
        }
        boost(reps, || probe(d))
    };
    let mut d = 1usize;
    let mut seg = run(2)?;
    while seg.is_some() {
        d *= 2;
        seg = run(2 * d)?;
    }
    let (mut left, mut right) = (d, 2 * d);
    while left < right {
        let middle = (left + right) / 2;
        if run(middle)?.is_none() {
            right = middle;
        } else {
            left = middle + 1;
        }
    }
    run(left - 1)
}

/// Worst-case charge of [`lift_and_search`] given a per-probe bound.
pub(crate) fn lift_and_search_max_charge(n: usize, reps: usize, probe_max: impl Fn(usize) -> u64) -> u64 {
    let reps = reps.max(1) as u64;
    let mut total = 0u64;
    let mut d = 2usize;
    while d <= n {
        total += probe_max(d);
        d *= 2;
    }
    // The bracket holds at most n values, so the search makes at most
    // ceil(log2 n) + 1 probes, plus the final one.
    let log = usize::BITS - n.max(1).leading_zeros();
    let worst = (1..=n).map(&probe_max).max().unwrap_or(0);
    total += (log as u64 + 2) * worst;
    reps * total
}

pub(crate) fn check_len(d: usize, n: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(invalid(format!("length {d} outside 1..={n}")));
    }
    Ok(())
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= n {
        return Err(invalid(format!("index {i} outside 0..{n}")));
    }
    Ok(())
}

/// Positions lying in a run of `false` of length at least `d`.
pub(crate) fn positions_in_runs(values: &[bool], d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut start = 0usize;
    for i in 0..=values.len() {
        if i == values.len() || values[i] {
            if i - start >= d {
                out.extend(start..i);
            }
            start = i + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifting_finds_the_threshold() {
        for n in 1..70usize {
            for opt in 0..=n {
                let mut probes = Vec::new();
                let got = lift_and_search(n, 1, |d| {
                    probes.push(d);
                    Ok((d <= opt).then_some(d))
                })
                .unwrap();
                assert_eq!(got, (opt > 0).then_some(opt), "n={n} opt={opt}");
                assert!(probes.iter().all(|&d| d <= 2 * opt.max(1)));
            }
        }
    }

    #[test]
    fn runs() {
        let v = [false, true, false, false, true, false, false, false];
        assert_eq!(positions_in_runs(&v, 2), vec![2, 3, 5, 6, 7]);
        assert_eq!(positions_in_runs(&v, 3), vec![5, 6, 7]);
        assert_eq!(positions_in_runs(&v, 1).len(), 6);
    }
}

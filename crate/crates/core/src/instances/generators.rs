//! Random and adversarial instance families.
//!
//! The adversarial families are the lower-bound inputs: a 1-D map with ones
//! at `0` and `k`, the two-obstacle square map, the fixed-width strip, the
//! single-zero map for rectangle empty areas and the single-obstacle map.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::instances::maps::{Map1D, Map2D, TritMap1D};
use crate::instances::results::Rect;

fn check_probability(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("{what} = {p} is not a probability")));
    }
    Ok(())
}

pub fn gen_random_1d(n: usize, p_one: f64, seed: u64) -> Result<Map1D> {
    check_probability(p_one, "p_one")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Map1D::from_bools((0..n).map(|_| rng.gen_bool(p_one)))
}

/// Zeros on `0..first`, a one at `first`, then i.i.d. bits with `p_after`.
pub fn gen_first_one_1d(n: usize, first: usize, p_after: f64, seed: u64) -> Result<Map1D> {
    check_probability(p_after, "p_after")?;
    if first >= n {
        return Err(invalid(format!("first one {first} outside 0..{n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Map1D::from_bools((0..n).map(|i| match i.cmp(&first) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => true,
        std::cmp::Ordering::Greater => rng.gen_bool(p_after),
    }))
}

pub fn gen_random_trit(n: usize, p_one: f64, p_two: f64, seed: u64) -> Result<TritMap1D> {
    check_probability(p_one, "p_one")?;
    check_probability(p_two, "p_two")?;
    check_probability(p_one + p_two, "p_one + p_two")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trits: Vec<u8> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            if u < p_one {
                1
            } else if u < p_one + p_two {
                2
            } else {
                0
            }
        })
        .collect();
    TritMap1D::from_trits(&trits)
}

pub fn gen_random_2d(n: usize, p_one: f64, seed: u64) -> Result<Map2D> {
    check_probability(p_one, "p_one")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Map2D::zeros(n)?;
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(p_one) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Ones at `0` and `k`, for even `n` and `n/2 + 1 <= k <= n - 1`.
pub fn gen_adversarial_1d(n: usize, k: usize) -> Result<Map1D> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(invalid(format!("n = {n} must be even and positive")));
    }
    if k < n / 2 + 1 || k > n - 1 {
        return Err(invalid(format!("k = {k} outside {}..={}", n / 2 + 1, n - 1)));
    }
    Map1D::from_bools((0..n).map(|i| i == 0 || i == k))
}

/// Ones at `(0,0)` and `(k,t)` with `n/2 + 1 <= k, t <= n - 1`.
pub fn gen_adversarial_square(n: usize, k: usize, t: usize) -> Result<Map2D> {
    let lo = n / 2 + 1;
    if n < 2 || k < lo || t < lo || k > n - 1 || t > n - 1 {
        return Err(invalid(format!("(k,t) = ({k},{t}) outside {lo}..={}", n.saturating_sub(1))));
    }
    let mut m = Map2D::zeros(n)?;
    m.set(0, 0, true);
    m.set(k, t, true);
    Ok(m)
}

/// Rows `0..d` are zero except `(0,0)` and `(k,t)`; rows `d..n` are all ones.
pub fn gen_adversarial_recw(n: usize, d: usize, k: usize, t: usize) -> Result<Map2D> {
    if d == 0 || d > n {
        return Err(invalid(format!("d = {d} outside 1..={n}")));
    }
    if k >= d {
        return Err(invalid(format!("k = {k} outside 0..{d}")));
    }
    let lo = n / 2 + 1;
    if t < lo || t > n - 1 {
        return Err(invalid(format!("t = {t} outside {lo}..={}", n - 1)));
    }
    let mut m = Map2D::zeros(n)?;
    for i in d..n {
        for j in 0..n {
            m.set(i, j, true);
        }
    }
    m.set(0, 0, true);
    m.set(k, t, true);
    Ok(m)
}

fn grid_point_or_none(n: usize, k: isize, t: isize) -> Result<Option<(usize, usize)>> {
    if k == -1 && t == -1 {
        return Ok(None);
    }
    if k < 0 || t < 0 || k as usize >= n || t as usize >= n {
        return Err(invalid(format!("(k,t) = ({k},{t}) is neither a cell nor (-1,-1)")));
    }
    Ok(Some((k as usize, t as usize)))
}

/// All ones except a single zero at `(k,t)`; `(-1,-1)` gives the all-one map.
pub fn gen_adversarial_rec2(n: usize, k: isize, t: isize) -> Result<Map2D> {
    let point = grid_point_or_none(n, k, t)?;
    let mut m = Map2D::ones(n)?;
    if let Some((k, t)) = point {
        m.set(k, t, false);
    }
    Ok(m)
}

/// All zeros except a single one at `(k,t)`; `(-1,-1)` gives the all-zero map.
pub fn gen_adversarial_rec(n: usize, k: isize, t: isize) -> Result<Map2D> {
    let point = grid_point_or_none(n, k, t)?;
    let mut m = Map2D::zeros(n)?;
    if let Some((k, t)) = point {
        m.set(k, t, true);
    }
    Ok(m)
}

/// A map whose zero cells are exactly the given rectangles. The rectangles
/// must be pairwise separated so each one is a separate zero area.
pub fn gen_blocks(n: usize, blocks: &[Rect]) -> Result<Map2D> {
    let mut m = Map2D::ones(n)?;
    for b in blocks {
        if b.x2 >= n || b.y2 >= n {
            return Err(invalid(format!("block {b} outside {n}x{n}")));
        }
        for i in b.x1..=b.x2 {
            for j in b.y1..=b.y2 {
                m.set(i, j, false);
            }
        }
    }
    Ok(m)
}

/// Random instance satisfying the rectangle-empty-areas promise: up to
/// `attempts` random rectangles with sides in `1..=max_side`, kept only if
/// they stay at least one cell away from every earlier rectangle.
pub fn gen_promise_2d(n: usize, attempts: usize, max_side: usize, seed: u64) -> Result<(Map2D, Vec<Rect>)> {
    if n == 0 || max_side == 0 {
        return Err(invalid("n and max_side must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks: Vec<Rect> = Vec::new();
    let side = max_side.min(n);
    for _ in 0..attempts {
        let h = rng.gen_range(1..=side);
        let w = rng.gen_range(1..=side);
        let x1 = rng.gen_range(0..=n - h);
        let y1 = rng.gen_range(0..=n - w);
        let cand = Rect::new(x1, y1, x1 + h - 1, y1 + w - 1);
        let separated = blocks.iter().all(|b| {
            cand.x1 > b.x2 + 1 || b.x1 > cand.x2 + 1 || cand.y1 > b.y2 + 1 || b.y1 > cand.y2 + 1
        });
        if separated {
            blocks.push(cand);
        }
    }
    Ok((gen_blocks(n, &blocks)?, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_probabilities() {
        assert!(gen_random_1d(8, 0.0, 3).unwrap().to_bits().iter().all(|&b| b == 0));
        assert!(gen_random_1d(8, 1.0, 3).unwrap().to_bits().iter().all(|&b| b == 1));
        assert!(gen_random_1d(8, 1.5, 3).is_err());
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        assert_eq!(gen_random_1d(500, 0.3, 11).unwrap(), gen_random_1d(500, 0.3, 11).unwrap());
        assert_eq!(gen_random_2d(20, 0.3, 11).unwrap(), gen_random_2d(20, 0.3, 11).unwrap());
        assert_eq!(gen_random_trit(99, 0.2, 0.2, 5).unwrap(), gen_random_trit(99, 0.2, 0.2, 5).unwrap());
        assert_eq!(gen_promise_2d(32, 20, 6, 2).unwrap().1, gen_promise_2d(32, 20, 6, 2).unwrap().1);
        assert_ne!(gen_random_1d(500, 0.3, 11).unwrap(), gen_random_1d(500, 0.3, 12).unwrap());
    }

    #[test]
    fn adversarial_1d_layout() {
        let m = gen_adversarial_1d(16, 11).unwrap();
        let ones: Vec<usize> = (0..16).filter(|&i| m.get(i)).collect();
        assert_eq!(ones, vec![0, 11]);
        let m = gen_adversarial_1d(16, 15).unwrap();
        assert!(m.get(0) && m.get(15));
        assert!(gen_adversarial_1d(16, 8).is_err());
        assert!(gen_adversarial_1d(16, 16).is_err());
        assert!(gen_adversarial_1d(15, 9).is_err());
    }

    #[test]
    fn adversarial_2d_ranges() {
        assert!(gen_adversarial_square(16, 8, 12).is_err());
        assert!(gen_adversarial_square(16, 11, 13).unwrap().get(11, 13));
        assert!(gen_adversarial_recw(16, 4, 4, 10).is_err());
        assert!(gen_adversarial_recw(16, 4, 2, 5).is_err());
        let m = gen_adversarial_recw(16, 4, 2, 10).unwrap();
        assert!(m.get(0, 0) && m.get(2, 10) && m.get(4, 3) && !m.get(3, 3));
        let m = gen_adversarial_rec2(8, 3, 5).unwrap();
        assert!(!m.get(3, 5) && m.get(5, 3));
        assert!(gen_adversarial_rec2(8, -1, 2).is_err());
        let m = gen_adversarial_rec(8, -1, -1).unwrap();
        assert!((0..8).all(|i| (0..8).all(|j| !m.get(i, j))));
    }

    #[test]
    fn promise_blocks_are_separated() {
        let (m, blocks) = gen_promise_2d(40, 50, 8, 9).unwrap();
        assert!(!blocks.is_empty());
        let zeros: usize = (0..40).map(|i| (0..40).filter(|&j| !m.get(i, j)).count()).sum();
        let cells: u64 = blocks.iter().map(|b| b.cells()).sum();
        assert_eq!(zeros as u64, cells);
    }
}

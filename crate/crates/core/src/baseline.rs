//! Classical exact solvers. Each reads cells through a counting oracle, so
//! the classical query count is reported on the same scale as the quantum
//! one.

use crate::error::Result;
use crate::instances::{CountingOracle, Map1D, Map2D, Rect, Segment, Square, TritMap1D};

fn read_line(oracle: &CountingOracle<'_, Map1D>) -> Result<Vec<bool>> {
    (0..oracle.n()).map(|i| oracle.query(i)).collect()
}

fn read_grid(oracle: &CountingOracle<'_, Map2D>) -> Result<Vec<Vec<bool>>> {
    let n = oracle.n();
    (0..n).map(|i| (0..n).map(|j| oracle.query(i, j)).collect()).collect()
}

/// Longest run of zeros in a bit sequence, leftmost on ties.
pub fn longest_zero_run(bits: impl IntoIterator<Item = bool>) -> Option<Segment> {
    let mut best: Option<Segment> = None;
    let mut start: Option<usize> = None;
    let consider = |s: usize, e: usize, best: &mut Option<Segment>| {
        let seg = Segment::new(s as isize, e as isize);
        if best.is_none_or(|b| seg.len() > b.len()) {
            *best = Some(seg);
        }
    };
    let mut n = 0;
    for (i, one) in bits.into_iter().enumerate() {
        n = i + 1;
        match (one, start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                consider(s, i - 1, &mut best);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        consider(s, n - 1, &mut best);
    }
    best
}

/// Largest empty segment by a single left-to-right pass. Charge `n`.
pub fn lseg_scan(oracle: &CountingOracle<'_, Map1D>) -> Result<Option<Segment>> {
    Ok(longest_zero_run(read_line(oracle)?))
}

/// Shortest segment `(l, r)` with `f(l) = f(r) = 2`, at least one zero and
/// only zeros strictly inside, over the sentinel-extended line. Charge `n`.
pub fn szbt_scan(oracle: &CountingOracle<'_, TritMap1D>) -> Result<Option<Segment>> {
    let n = oracle.n() as isize;
    let mut best: Option<Segment> = None;
    let mut last_two: Option<isize> = None;
    let mut zeros_since_two = 0usize;
    for p in -1..=n {
        match oracle.query(p)? {
            0 => zeros_since_two += 1,
            2 => {
                if let Some(l) = last_two {
                    if zeros_since_two > 0 && zeros_since_two == (p - l - 1) as usize {
                        let seg = Segment::new(l, p);
                        if best.is_none_or(|b| seg.len() < b.len()) {
                            best = Some(seg);
                        }
                    }
                }
                last_two = Some(p);
                zeros_since_two = 0;
            }
            _ => {
                last_two = None;
                zeros_since_two = 0;
            }
        }
    }
    Ok(best)
}

/// Largest empty square by the classic dynamic program. Charge `n^2`.
/// Ties go to the first bottom-right corner in row-major order.
pub fn lsqr_dp(oracle: &CountingOracle<'_, Map2D>) -> Result<Option<Square>> {
    let grid = read_grid(oracle)?;
    Ok(largest_square(&grid))
}

fn largest_square(grid: &[Vec<bool>]) -> Option<Square> {
    let n = grid.len();
    let mut side = vec![vec![0usize; n]; n];
    let mut best: Option<Square> = None;
    for i in 0..n {
        for j in 0..n {
            if grid[i][j] {
                continue;
            }
            let s = if i == 0 || j == 0 { 1 } else { 1 + side[i - 1][j].min(side[i][j - 1]).min(side[i - 1][j - 1]) };
            side[i][j] = s;
            if best.is_none_or(|b| s > b.d) {
                best = Some(Square { x: i + 1 - s, y: j + 1 - s, d: s });
            }
        }
    }
    best
}

/// Largest empty rectangle of width `d` (rows `x1..x1+d`): for every row
/// window, the longest run of columns that are zero throughout the window.
/// Charge `n^2`. Ties go to the smallest `x1`, then the smallest `y1`.
pub fn lrecw_scan(oracle: &CountingOracle<'_, Map2D>, d: usize) -> Result<Option<Rect>> {
    let n = oracle.n();
    if d == 0 || d > n {
        return Err(crate::error::invalid(format!("width {d} outside 1..={n}")));
    }
    let grid = read_grid(oracle)?;
    Ok(widest_run_rect(&grid, d))
}

fn widest_run_rect(grid: &[Vec<bool>], d: usize) -> Option<Rect> {
    let n = grid.len();
    // ones[j] = ones in column j within the current row window.
    let mut ones: Vec<usize> = (0..n).map(|j| (0..d).filter(|&i| grid[i][j]).count()).collect();
    let mut best: Option<Rect> = None;
    for x1 in 0..=n - d {
        if x1 > 0 {
            for (j, c) in ones.iter_mut().enumerate() {
                *c = *c + grid[x1 + d - 1][j] as usize - grid[x1 - 1][j] as usize;
            }
        }
        if let Some(seg) = longest_zero_run(ones.iter().map(|&c| c > 0)) {
            let rect = Rect::new(x1, seg.l as usize, x1 + d - 1, seg.r as usize);
            if best.is_none_or(|b| rect.height() > b.height()) {
                best = Some(rect);
            }
        }
    }
    best
}

/// Order used to pick the largest rectangle: size, then cell count.
fn rect_key(r: &Rect) -> (u64, u64) {
    (r.size(), r.cells())
}

/// Maximal zero blocks of a promise instance, read off their top-left
/// corners. Charge `n^2`.
pub fn zero_blocks(oracle: &CountingOracle<'_, Map2D>) -> Result<Vec<Rect>> {
    let grid = read_grid(oracle)?;
    Ok(blocks_of(&grid))
}

fn blocks_of(grid: &[Vec<bool>]) -> Vec<Rect> {
    let n = grid.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let corner = !grid[i][j] && (i == 0 || grid[i - 1][j]) && (j == 0 || grid[i][j - 1]);
            if !corner {
                continue;
            }
            let mut x2 = i;
            while x2 + 1 < n && !grid[x2 + 1][j] {
                x2 += 1;
            }
            let mut y2 = j;
            while y2 + 1 < n && !grid[i][y2 + 1] {
                y2 += 1;
            }
            out.push(Rect::new(i, j, x2, y2));
        }
    }
    out
}

/// Largest zero block of a promise instance. Charge `n^2`.
pub fn lrec2_scan(oracle: &CountingOracle<'_, Map2D>) -> Result<Option<Rect>> {
    Ok(zero_blocks(oracle)?.into_iter().max_by_key(rect_key))
}

/// Whether a rectangle meets the minimum height and width.
pub fn meets_minima(r: &Rect, h: usize, w: usize) -> bool {
    r.height() >= h && r.width() >= w
}

/// Reads the cells of `rect` until a one turns up.
pub fn rect_empty_check(oracle: &CountingOracle<'_, Map2D>, rect: &Rect) -> Result<bool> {
    for i in rect.x1..=rect.x2 {
        for j in rect.y1..=rect.y2 {
            if oracle.query(i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every cell of the promise holds: each zero area is a rectangle
/// bounded by ones or the border. Reads the map directly.
pub fn satisfies_promise(map: &Map2D) -> bool {
    let n = map.n();
    let grid: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| map.get(i, j)).collect()).collect();
    let mut covered = vec![vec![false; n]; n];
    for b in blocks_of(&grid) {
        for i in b.x1..=b.x2 {
            for j in b.y1..=b.y2 {
                if grid[i][j] || covered[i][j] {
                    return false;
                }
                covered[i][j] = true;
            }
        }
        // The block must not continue past its right or bottom edge anywhere.
        for i in b.x1..=b.x2 {
            if b.y2 + 1 < n && !grid[i][b.y2 + 1] {
                return false;
            }
        }
        for j in b.y1..=b.y2 {
            if b.x2 + 1 < n && !grid[b.x2 + 1][j] {
                return false;
            }
        }
    }
    (0..n).all(|i| (0..n).all(|j| grid[i][j] || covered[i][j]))
}

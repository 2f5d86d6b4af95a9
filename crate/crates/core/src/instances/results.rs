//! Answer records. `None` plays the role of the all-NULL answer.

use std::fmt;

/// Closed index interval `l..=r`. Indices are signed because bounded-segment
/// answers may touch the sentinels at `-1` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub l: isize,
    pub r: isize,
}

impl Segment {
    pub fn new(l: isize, r: isize) -> Self {
        debug_assert!(l <= r);
        Self { l, r }
    }

    pub fn len(&self) -> usize {
        (self.r - self.l + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: isize) -> bool {
        self.l <= i && i <= self.r
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.r)
    }
}

pub fn segment_len(s: Option<Segment>) -> usize {
    s.map_or(0, |s| s.len())
}

/// `d x d` square covering rows `x..x+d` and columns `y..y+d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub x: usize,
    pub y: usize,
    pub d: usize,
}

impl Square {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.x <= i && i < self.x + self.d && self.y <= j && j < self.y + self.d
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.d)
    }
}

pub fn square_size(s: Option<Square>) -> usize {
    s.map_or(0, |s| s.d)
}

/// Rectangle over rows `x1..=x2` and columns `y1..=y2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x1: usize,
    pub y1: usize,
    pub x2: usize,
    pub y2: usize,
}

impl Rect {
    pub fn new(x1: usize, y1: usize, x2: usize, y2: usize) -> Self {
        debug_assert!(x1 <= x2 && y1 <= y2);
        Self { x1, y1, x2, y2 }
    }

    /// `(x2 - x1) * (y2 - y1)`, one less than the cell count per side.
    pub fn size(&self) -> u64 {
        ((self.x2 - self.x1) * (self.y2 - self.y1)) as u64
    }

    pub fn cells(&self) -> u64 {
        ((self.x2 - self.x1 + 1) * (self.y2 - self.y1 + 1)) as u64
    }

    pub fn height(&self) -> usize {
        self.y2 - self.y1 + 1
    }

    pub fn width(&self) -> usize {
        self.x2 - self.x1 + 1
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.x1 <= i && i <= self.x2 && self.y1 <= j && j <= self.y2
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.x1, self.y1, self.x2, self.y2)
    }
}

pub fn rect_size(r: Option<Rect>) -> u64 {
    r.map_or(0, |r| r.size())
}

/// Total order used when maximizing rectangles: size first, then cell
/// count, and any rectangle beats NULL.
pub fn rect_rank(r: Option<Rect>, n: usize) -> u64 {
    match r {
        None => 0,
        Some(r) => 1 + r.size() * (n as u64 * n as u64 + 1) + r.cells(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_size_is_product_of_differences() {
        let r = Rect::new(0, 0, 7, 2);
        assert_eq!(r.size(), 14);
        assert_eq!(r.cells(), 24);
        assert_eq!(rect_size(None), 0);
        assert_eq!(Rect::new(3, 5, 3, 5).size(), 0);
    }

    #[test]
    fn rank_prefers_any_rect_over_null() {
        let single = Some(Rect::new(3, 5, 3, 5));
        assert!(rect_rank(single, 8) > rect_rank(None, 8));
        let bar = Some(Rect::new(0, 0, 0, 3));
        assert!(rect_rank(bar, 8) > rect_rank(single, 8));
        let block = Some(Rect::new(0, 0, 1, 1));
        assert!(rect_rank(block, 8) > rect_rank(bar, 8));
    }
}

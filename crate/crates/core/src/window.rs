//! Monotone FIFO queue with O(1) amortized minimum or maximum.

use std::collections::VecDeque;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Min,
    Max,
}

#[derive(Debug, Clone)]
pub struct MonotoneQueue<T> {
    mode: Mode,
    /// `(value, arrival)` pairs whose values improve toward the front.
    entries: VecDeque<(T, u64)>,
    next_arrival: u64,
    next_departure: u64,
    moves: u64,
}

impl<T: Ord + Copy> MonotoneQueue<T> {
    pub fn new(mode: Mode) -> Self {
        Self { mode, entries: VecDeque::new(), next_arrival: 0, next_departure: 0, moves: 0 }
    }

    pub fn min() -> Self {
        Self::new(Mode::Min)
    }

    pub fn max() -> Self {
        Self::new(Mode::Max)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of live elements.
    pub fn len(&self) -> usize {
        (self.next_arrival - self.next_departure) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pushes and pops performed on the internal deque so far.
    pub fn moves(&self) -> u64 {
        self.moves
    }

    fn dominates(&self, a: T, b: T) -> bool {
        match self.mode {
            Mode::Min => a <= b,
            Mode::Max => a >= b,
        }
    }

    pub fn add(&mut self, value: T) {
        while let Some(&(back, _)) = self.entries.back() {
            if !self.dominates(value, back) {
                break;
            }
            self.entries.pop_back();
            self.moves += 1;
        }
        self.entries.push_back((value, self.next_arrival));
        self.next_arrival += 1;
        self.moves += 1;
    }

    /// Removes the oldest live element.
    pub fn remove(&mut self) -> Result<()> {
        if self.is_empty() {
            return Err(invalid("remove on an empty queue"));
        }
        if self.entries.front().is_some_and(|&(_, a)| a == self.next_departure) {
            self.entries.pop_front();
            self.moves += 1;
        }
        self.next_departure += 1;
        Ok(())
    }

    pub fn extremum(&self) -> Result<T> {
        if self.is_empty() {
            return Err(invalid("extremum of an empty queue"));
        }
        Ok(self.entries.front().expect("live elements keep the front").0)
    }
}

/// Extremum of every length-`width` window, left to right.
pub fn sliding_extrema<T: Ord + Copy>(values: &[T], width: usize, mode: Mode) -> Vec<T> {
    if width == 0 || width > values.len() {
        return Vec::new();
    }
    let mut q = MonotoneQueue::new(mode);
    let mut out = Vec::with_capacity(values.len() - width + 1);
    for (i, &v) in values.iter().enumerate() {
        q.add(v);
        if i >= width {
            q.remove().expect("window is non-empty");
        }
        if i + 1 >= width {
            out.push(q.extremum().expect("window is non-empty"));
        }
    }
    out
}

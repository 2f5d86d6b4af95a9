//! Packed input tables.
//!
//! Maps are immutable once built. Each one carries prefix counts of its
//! non-zero cells so the simulator can count marked positions in a range
//! without touching the query counter.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const BITS_PER_WORD: usize = 64;
const TRITS_PER_WORD: usize = 32;

/// Cumulative counts over a boolean sequence; `count(lo, hi)` is inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCounts {
    sums: Vec<u32>,
}

impl PrefixCounts {
    pub fn from_iter<I: IntoIterator<Item = bool>>(values: I) -> Self {
        let mut sums = vec![0u32];
        let mut acc = 0u32;
        for v in values {
            acc += v as u32;
            sums.push(acc);
        }
        Self { sums }
    }

    pub fn len(&self) -> usize {
        self.sums.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi && hi < self.len());
        (self.sums[hi + 1] - self.sums[lo]) as usize
    }

    pub fn total(&self) -> usize {
        *self.sums.last().unwrap() as usize
    }
}

/// `f : {0..n-1} -> {0,1}` stored one bit per cell.
#[derive(Debug, Clone)]
pub struct Map1D {
    n: usize,
    words: Vec<u64>,
    prefix: PrefixCounts,
}

impl PartialEq for Map1D {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}
impl Eq for Map1D {}

impl Map1D {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Malformed("1-D map must have n >= 1".into()));
        }
        let mut words = vec![0u64; bits.len().div_ceil(BITS_PER_WORD)];
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => words[i / BITS_PER_WORD] |= 1 << (i % BITS_PER_WORD),
                v => return Err(Error::Malformed(format!("bit value {v} at {i}"))),
            }
        }
        let prefix = PrefixCounts::from_iter(bits.iter().map(|&b| b == 1));
        Ok(Self { n: bits.len(), words, prefix })
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let v: Vec<u8> = bits.into_iter().map(u8::from).collect();
        Self::from_bits(&v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw read, not charged. Oracles wrap this.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n, "index {i} outside 0..{}", self.n);
        (self.words[i / BITS_PER_WORD] >> (i % BITS_PER_WORD)) & 1 == 1
    }

    pub fn ones(&self) -> &PrefixCounts {
        &self.prefix
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i) as u8).collect()
    }
}

/// `f : {0..n-1} -> {0,1,2}` with virtual sentinels `f(-1) = f(n) = 2`.
#[derive(Debug, Clone)]
pub struct TritMap1D {
    n: usize,
    words: Vec<u64>,
    nonzero: PrefixCounts,
}

impl PartialEq for TritMap1D {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}
impl Eq for TritMap1D {}

impl TritMap1D {
    pub fn from_trits(trits: &[u8]) -> Result<Self> {
        if trits.is_empty() {
            return Err(Error::Malformed("ternary map must have n >= 1".into()));
        }
        let mut words = vec![0u64; trits.len().div_ceil(TRITS_PER_WORD)];
        for (i, &t) in trits.iter().enumerate() {
            if t > 2 {
                return Err(Error::Malformed(format!("trit value {t} at {i}")));
            }
            words[i / TRITS_PER_WORD] |= (t as u64) << (2 * (i % TRITS_PER_WORD));
        }
        // Sentinel-extended: position p holds f(p - 1).
        let nonzero = PrefixCounts::from_iter(
            std::iter::once(true)
                .chain(trits.iter().map(|&t| t != 0))
                .chain(std::iter::once(true)),
        );
        Ok(Self { n: trits.len(), words, nonzero })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw read at a sentinel-extended index `-1..=n`.
    pub fn get(&self, i: isize) -> u8 {
        if i == -1 || i == self.n as isize {
            return 2;
        }
        assert!(i >= 0 && (i as usize) < self.n, "index {i} outside -1..={}", self.n);
        let i = i as usize;
        ((self.words[i / TRITS_PER_WORD] >> (2 * (i % TRITS_PER_WORD))) & 3) as u8
    }

    /// Non-zero indicator over the extended domain; position `p` is `f(p - 1)`.
    pub fn nonzero_extended(&self) -> &PrefixCounts {
        &self.nonzero
    }

    pub fn to_trits(&self) -> Vec<u8> {
        (0..self.n as isize).map(|i| self.get(i)).collect()
    }
}

/// `f : {0..n-1}^2 -> {0,1}`, row-major; `get(i, j)` is row `i`, column `j`.
#[derive(Debug)]
pub struct Map2D {
    n: usize,
    words: Vec<u64>,
    rows: OnceLock<Vec<u32>>,
    cols: OnceLock<Vec<u32>>,
}

impl Clone for Map2D {
    fn clone(&self) -> Self {
        Self { n: self.n, words: self.words.clone(), rows: OnceLock::new(), cols: OnceLock::new() }
    }
}

impl PartialEq for Map2D {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}
impl Eq for Map2D {}

impl Map2D {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("2-D map must have n >= 1".into()));
        }
        Ok(Self {
            n,
            words: vec![0u64; (n * n).div_ceil(BITS_PER_WORD)],
            rows: OnceLock::new(),
            cols: OnceLock::new(),
        })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {i} has {} cells, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    v => return Err(Error::Malformed(format!("cell value {v} at ({i},{j})"))),
                }
            }
        }
        Ok(m)
    }

    /// Only valid while building; cached prefix tables are reset.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let k = i * self.n + j;
        let (w, b) = (k / BITS_PER_WORD, k % BITS_PER_WORD);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
        self.rows = OnceLock::new();
        self.cols = OnceLock::new();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "cell ({i},{j}) outside {0}x{0}", self.n);
        let k = i * self.n + j;
        (self.words[k / BITS_PER_WORD] >> (k % BITS_PER_WORD)) & 1 == 1
    }

    fn row_table(&self) -> &[u32] {
        self.rows.get_or_init(|| {
            let n = self.n;
            let mut t = vec![0u32; n * (n + 1)];
            for i in 0..n {
                let base = i * (n + 1);
                for j in 0..n {
                    t[base + j + 1] = t[base + j] + self.get(i, j) as u32;
                }
            }
            t
        })
    }

    fn col_table(&self) -> &[u32] {
        self.cols.get_or_init(|| {
            let n = self.n;
            let mut t = vec![0u32; n * (n + 1)];
            for j in 0..n {
                let base = j * (n + 1);
                for i in 0..n {
                    t[base + i + 1] = t[base + i] + self.get(i, j) as u32;
                }
            }
            t
        })
    }

    /// Ones in row `i` over columns `lo..=hi`.
    pub fn row_ones(&self, i: usize, lo: usize, hi: usize) -> usize {
        let t = self.row_table();
        let base = i * (self.n + 1);
        (t[base + hi + 1] - t[base + lo]) as usize
    }

    /// Ones in column `j` over rows `lo..=hi`.
    pub fn col_ones(&self, j: usize, lo: usize, hi: usize) -> usize {
        let t = self.col_table();
        let base = j * (self.n + 1);
        (t[base + hi + 1] - t[base + lo]) as usize
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect()).collect()
    }
}

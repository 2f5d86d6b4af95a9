//! Search predicates.
//!
//! A predicate exposes two faces. The ideal face (`ideal`, `count_marked`) is
//! simulator knowledge used to draw Grover outcomes and is never charged. The
//! charged face (`evaluate`) is what the algorithm itself runs.

use crate::instances::maps::{Map1D, Map2D, PrefixCounts, TritMap1D};
use crate::instances::oracle::{CountingOracle, Meter};
use crate::qcore::grover::GROVER_SCOPE;
use crate::qcore::SimRng;

pub trait Predicate {
    /// What a successful evaluation hands back besides the index.
    type Witness;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn meter(&self) -> &Meter;

    fn ideal(&self, i: usize) -> bool;

    /// Marked positions in `lo..=hi` under the ideal face.
    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        (lo..=hi).filter(|&i| self.ideal(i)).count()
    }

    /// Charge of one coherent evaluation inside a Grover iteration.
    fn coherent_charge(&self) -> u64 {
        1
    }

    /// Coherent charge when the superposition only spans `lo..=hi`.
    fn coherent_charge_in(&self, _lo: usize, _hi: usize) -> u64 {
        self.coherent_charge()
    }

    /// Ledger label for the coherent part of a Grover run.
    fn coherent_scope(&self) -> &'static str {
        GROVER_SCOPE
    }

    /// Charged evaluation. A returned witness means the position is marked.
    fn evaluate(&self, i: usize, rng: &mut SimRng) -> Option<Self::Witness>;
}

/// Position of the `k`-th (0-based) marked or unmarked index in `lo..=hi`.
pub(crate) fn select<P: Predicate + ?Sized>(p: &P, lo: usize, hi: usize, k: usize, marked: bool) -> usize {
    let count = |a: usize, b: usize| {
        let c = p.count_marked(a, b);
        if marked { c } else { b - a + 1 - c }
    };
    let (mut a, mut b) = (lo, hi);
    // Invariant: the target is in a..=b and count(lo, a-1) <= k.
    let mut before = 0usize;
    while a < b {
        let mid = a + (b - a) / 2;
        let left = count(a, mid);
        if before + left > k {
            b = mid;
        } else {
            before += left;
            a = mid + 1;
        }
    }
    a
}

/// Bits of a 1-D map; marked means `f(i) = 1`.
pub struct BitLine<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map1D>,
}

impl<'o, 'm> BitLine<'o, 'm> {
    pub fn new(oracle: &'o CountingOracle<'m, Map1D>) -> Self {
        Self { oracle }
    }
}

impl Predicate for BitLine<'_, '_> {
    type Witness = ();

    fn len(&self) -> usize {
        self.oracle.n()
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal(&self, i: usize) -> bool {
        self.oracle.map().get(i)
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        self.oracle.map().ones().count(lo, hi)
    }

    fn evaluate(&self, i: usize, _rng: &mut SimRng) -> Option<()> {
        self.oracle.query(i).expect("index inside the line").then_some(())
    }
}

/// Non-zero indicator `f'` of a ternary map over the sentinel-extended
/// domain: position `p` stands for `f(p - 1)`, so the line has `n + 2` cells.
pub struct NonzeroLine<'o, 'm> {
    oracle: &'o CountingOracle<'m, TritMap1D>,
}

impl<'o, 'm> NonzeroLine<'o, 'm> {
    pub fn new(oracle: &'o CountingOracle<'m, TritMap1D>) -> Self {
        Self { oracle }
    }
}

impl Predicate for NonzeroLine<'_, '_> {
    type Witness = u8;

    fn len(&self) -> usize {
        self.oracle.n() + 2
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal(&self, p: usize) -> bool {
        self.oracle.map().get(p as isize - 1) != 0
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        self.oracle.map().nonzero_extended().count(lo, hi)
    }

    fn evaluate(&self, p: usize, _rng: &mut SimRng) -> Option<u8> {
        let v = self.oracle.query(p as isize - 1).expect("position inside the extended line");
        (v != 0).then_some(v)
    }
}

/// Row `i` of a 2-D map as a line over columns.
pub struct RowLine<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map2D>,
    row: usize,
}

impl<'o, 'm> RowLine<'o, 'm> {
    pub fn new(oracle: &'o CountingOracle<'m, Map2D>, row: usize) -> Self {
        Self { oracle, row }
    }
}

impl Predicate for RowLine<'_, '_> {
    type Witness = ();

    fn len(&self) -> usize {
        self.oracle.n()
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal(&self, j: usize) -> bool {
        self.oracle.map().get(self.row, j)
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        self.oracle.map().row_ones(self.row, lo, hi)
    }

    fn evaluate(&self, j: usize, _rng: &mut SimRng) -> Option<()> {
        self.oracle.query(self.row, j).expect("cell inside the map").then_some(())
    }
}

/// Column `j` of a 2-D map as a line over rows.
pub struct ColLine<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map2D>,
    col: usize,
}

impl<'o, 'm> ColLine<'o, 'm> {
    pub fn new(oracle: &'o CountingOracle<'m, Map2D>, col: usize) -> Self {
        Self { oracle, col }
    }
}

impl Predicate for ColLine<'_, '_> {
    type Witness = ();

    fn len(&self) -> usize {
        self.oracle.n()
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal(&self, i: usize) -> bool {
        self.oracle.map().get(i, self.col)
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        self.oracle.map().col_ones(self.col, lo, hi)
    }

    fn evaluate(&self, i: usize, _rng: &mut SimRng) -> Option<()> {
        self.oracle.query(i, self.col).expect("cell inside the map").then_some(())
    }
}

/// Cells of the block `rows x cols` flattened row by row.
pub struct BlockCells<'o, 'm> {
    oracle: &'o CountingOracle<'m, Map2D>,
    row0: usize,
    col0: usize,
    height: usize,
    width: usize,
}

impl<'o, 'm> BlockCells<'o, 'm> {
    pub fn new(oracle: &'o CountingOracle<'m, Map2D>, row0: usize, col0: usize, height: usize, width: usize) -> Self {
        debug_assert!(row0 + height <= oracle.n() && col0 + width <= oracle.n());
        Self { oracle, row0, col0, height, width }
    }

    fn cell(&self, k: usize) -> (usize, usize) {
        (self.row0 + k / self.width, self.col0 + k % self.width)
    }
}

impl Predicate for BlockCells<'_, '_> {
    type Witness = ();

    fn len(&self) -> usize {
        self.height * self.width
    }

    fn meter(&self) -> &Meter {
        self.oracle.meter()
    }

    fn ideal(&self, k: usize) -> bool {
        let (i, j) = self.cell(k);
        self.oracle.map().get(i, j)
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        let map = self.oracle.map();
        let (ra, ca) = (lo / self.width, lo % self.width);
        let (rb, cb) = (hi / self.width, hi % self.width);
        let c0 = self.col0;
        let last = self.width - 1;
        if ra == rb {
            return map.row_ones(self.row0 + ra, c0 + ca, c0 + cb);
        }
        let mut total = map.row_ones(self.row0 + ra, c0 + ca, c0 + last);
        for r in ra + 1..rb {
            total += map.row_ones(self.row0 + r, c0, c0 + last);
        }
        total + map.row_ones(self.row0 + rb, c0, c0 + cb)
    }

    fn evaluate(&self, k: usize, _rng: &mut SimRng) -> Option<()> {
        let (i, j) = self.cell(k);
        self.oracle.query(i, j).expect("cell inside the map").then_some(())
    }
}

/// Mirror image of a predicate: position `i` reads `inner(len - 1 - i)`.
pub struct Reversed<'p, P: ?Sized> {
    inner: &'p P,
}

impl<'p, P: Predicate + ?Sized> Reversed<'p, P> {
    pub fn new(inner: &'p P) -> Self {
        Self { inner }
    }

    pub fn flip(&self, i: usize) -> usize {
        self.inner.len() - 1 - i
    }
}

impl<P: Predicate + ?Sized> Predicate for Reversed<'_, P> {
    type Witness = P::Witness;

    fn len(&self) -> usize {
        self.inner.len()
    }

    fn meter(&self) -> &Meter {
        self.inner.meter()
    }

    fn ideal(&self, i: usize) -> bool {
        self.inner.ideal(self.flip(i))
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        self.inner.count_marked(self.flip(hi), self.flip(lo))
    }

    fn coherent_charge(&self) -> u64 {
        self.inner.coherent_charge()
    }

    fn coherent_charge_in(&self, lo: usize, hi: usize) -> u64 {
        self.inner.coherent_charge_in(self.flip(hi), self.flip(lo))
    }

    fn coherent_scope(&self) -> &'static str {
        self.inner.coherent_scope()
    }

    fn evaluate(&self, i: usize, rng: &mut SimRng) -> Option<P::Witness> {
        self.inner.evaluate(self.flip(i), rng)
    }
}

/// Predicate over a precomputed ideal table with a caller-supplied charged
/// evaluator. Used for computed predicates such as probe outcomes and
/// threshold tests.
pub struct TablePredicate<'a, W> {
    meter: &'a Meter,
    ideal: Vec<bool>,
    prefix: PrefixCounts,
    coherent: u64,
    scope: &'static str,
    eval: Box<dyn Fn(usize, &mut SimRng) -> Option<W> + 'a>,
}

impl<'a, W> TablePredicate<'a, W> {
    pub fn new(
        meter: &'a Meter,
        ideal: Vec<bool>,
        coherent: u64,
        eval: impl Fn(usize, &mut SimRng) -> Option<W> + 'a,
    ) -> Self {
        let prefix = PrefixCounts::from_iter(ideal.iter().copied());
        Self { meter, ideal, prefix, coherent, scope: GROVER_SCOPE, eval: Box::new(eval) }
    }

    pub fn with_scope(mut self, scope: &'static str) -> Self {
        self.scope = scope;
        self
    }
}

impl<W> Predicate for TablePredicate<'_, W> {
    type Witness = W;

    fn len(&self) -> usize {
        self.ideal.len()
    }

    fn meter(&self) -> &Meter {
        self.meter
    }

    fn ideal(&self, i: usize) -> bool {
        self.ideal[i]
    }

    fn count_marked(&self, lo: usize, hi: usize) -> usize {
        self.prefix.count(lo, hi)
    }

    fn coherent_charge(&self) -> u64 {
        self.coherent
    }

    fn coherent_scope(&self) -> &'static str {
        self.scope
    }

    fn evaluate(&self, i: usize, rng: &mut SimRng) -> Option<W> {
        (self.eval)(i, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Map2D;
    use rand::SeedableRng;

    #[test]
    fn select_finds_kth_marked_and_unmarked() {
        let map = Map1D::from_bits(&[0, 1, 1, 0, 0, 1, 0, 1]).unwrap();
        let o = CountingOracle::new(&map);
        let line = BitLine::new(&o);
        let marked: Vec<usize> = (0..4).map(|k| select(&line, 0, 7, k, true)).collect();
        assert_eq!(marked, vec![1, 2, 5, 7]);
        let unmarked: Vec<usize> = (0..3).map(|k| select(&line, 2, 7, k, false)).collect();
        assert_eq!(unmarked, vec![3, 4, 6]);
        assert_eq!(o.count(), 0);
    }

    #[test]
    fn reversed_mirrors_counts() {
        let map = Map1D::from_bits(&[1, 0, 0, 1, 1]).unwrap();
        let o = CountingOracle::new(&map);
        let line = BitLine::new(&o);
        let rev = Reversed::new(&line);
        assert!(rev.ideal(0) && rev.ideal(1) && !rev.ideal(2));
        assert_eq!(rev.count_marked(0, 1), 2);
        assert_eq!(rev.count_marked(2, 4), 1);
    }

    #[test]
    fn block_cells_count_matches_scan() {
        let map = crate::instances::gen_random_2d(9, 0.4, 1).unwrap();
        let o = CountingOracle::new(&map);
        let block = BlockCells::new(&o, 2, 3, 4, 5);
        for lo in 0..20 {
            for hi in lo..20 {
                let scan = (lo..=hi).filter(|&k| block.ideal(k)).count();
                assert_eq!(block.count_marked(lo, hi), scan);
            }
        }
        let _ = Map2D::zeros(1);
    }

    #[test]
    fn nonzero_line_has_free_sentinels() {
        let map = TritMap1D::from_trits(&[0, 2, 0]).unwrap();
        let o = CountingOracle::new(&map);
        let line = NonzeroLine::new(&o);
        let mut rng = SimRng::seed_from_u64(0);
        assert_eq!(line.len(), 5);
        assert_eq!(line.evaluate(0, &mut rng), Some(2));
        assert_eq!(line.evaluate(4, &mut rng), Some(2));
        assert_eq!(o.count(), 0);
        assert_eq!(line.evaluate(2, &mut rng), Some(2));
        assert_eq!(line.evaluate(1, &mut rng), None);
        assert_eq!(o.count(), 2);
    }
}

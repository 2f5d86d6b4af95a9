//! Query counting.
//!
//! A [`Meter`] accumulates charged queries and keeps a ledger that attributes
//! every unit to the innermost open scope. [`CountingOracle`] pairs a meter
//! with a borrowed map and charges one unit per raw read.

use std::cell::{Cell, RefCell};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instances::maps::{Map1D, Map2D, TritMap1D};

pub const ROOT_SCOPE: &str = "root";

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Ledger {
    /// Units charged while `label` was the innermost scope.
    pub exclusive: BTreeMap<&'static str, u64>,
    /// Units charged anywhere inside the outermost instance of `label`.
    pub inclusive: BTreeMap<&'static str, u64>,
    /// Number of completed scopes per label.
    pub invocations: BTreeMap<&'static str, u64>,
    stack: Vec<(&'static str, u64)>,
}

impl Ledger {
    pub fn exclusive_total(&self) -> u64 {
        self.exclusive.values().sum()
    }

    pub fn inclusive_of(&self, label: &str) -> u64 {
        self.inclusive.get(label).copied().unwrap_or(0)
    }

    pub fn exclusive_of(&self, label: &str) -> u64 {
        self.exclusive.get(label).copied().unwrap_or(0)
    }

    pub fn invocations_of(&self, label: &str) -> u64 {
        self.invocations.get(label).copied().unwrap_or(0)
    }
}

#[derive(Debug, Default)]
pub struct Meter {
    count: Cell<u64>,
    suspended: Cell<u32>,
    ledger: RefCell<Ledger>,
}

impl Meter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count.get()
    }

    pub fn is_charging(&self) -> bool {
        self.suspended.get() == 0
    }

    pub fn charge(&self, units: u64) {
        if units == 0 || !self.is_charging() {
            return;
        }
        self.count.set(self.count.get() + units);
        let mut ledger = self.ledger.borrow_mut();
        let label = ledger.stack.last().map_or(ROOT_SCOPE, |f| f.0);
        *ledger.exclusive.entry(label).or_default() += units;
    }

    /// Runs `f` with every charge attributed to `label` unless a nested scope
    /// takes over.
    pub fn scope<T>(&self, label: &'static str, f: impl FnOnce() -> T) -> T {
        if !self.is_charging() {
            return f();
        }
        self.ledger.borrow_mut().stack.push((label, self.count()));
        let out = f();
        let mut ledger = self.ledger.borrow_mut();
        let (label, start) = ledger.stack.pop().expect("scope stack underflow");
        let delta = self.count.get() - start;
        if !ledger.stack.iter().any(|f| f.0 == label) {
            *ledger.inclusive.entry(label).or_default() += delta;
        }
        *ledger.invocations.entry(label).or_default() += 1;
        out
    }

    /// Runs `f` without charging. Used for simulator-internal sampling.
    pub fn uncharged<T>(&self, f: impl FnOnce() -> T) -> T {
        struct Resume<'a>(&'a Cell<u32>);
        impl Drop for Resume<'_> {
            fn drop(&mut self) {
                self.0.set(self.0.get() - 1);
            }
        }
        self.suspended.set(self.suspended.get() + 1);
        let _resume = Resume(&self.suspended);
        f()
    }

    pub fn ledger(&self) -> Ledger {
        self.ledger.borrow().clone()
    }
}

#[derive(Debug)]
pub struct CountingOracle<'m, M> {
    map: &'m M,
    meter: Meter,
}

impl<'m, M> CountingOracle<'m, M> {
    pub fn new(map: &'m M) -> Self {
        Self { map, meter: Meter::new() }
    }

    pub fn map(&self) -> &'m M {
        self.map
    }

    pub fn meter(&self) -> &Meter {
        &self.meter
    }

    pub fn count(&self) -> u64 {
        self.meter.count()
    }
}

impl CountingOracle<'_, Map1D> {
    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn query(&self, i: usize) -> Result<bool> {
        if i >= self.map.n() {
            return Err(Error::OutOfDomain(format!("index {i} not in 0..{}", self.map.n())));
        }
        self.meter.charge(1);
        Ok(self.map.get(i))
    }
}

impl CountingOracle<'_, TritMap1D> {
    pub fn n(&self) -> usize {
        self.map.n()
    }

    /// Sentinel positions `-1` and `n` read as 2 without charge.
    pub fn query(&self, i: isize) -> Result<u8> {
        let n = self.map.n() as isize;
        if i < -1 || i > n {
            return Err(Error::OutOfDomain(format!("index {i} not in -1..={n}")));
        }
        if i >= 0 && i < n {
            self.meter.charge(1);
        }
        Ok(self.map.get(i))
    }
}

impl CountingOracle<'_, Map2D> {
    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn query(&self, i: usize, j: usize) -> Result<bool> {
        let n = self.map.n();
        if i >= n || j >= n {
            return Err(Error::OutOfDomain(format!("cell ({i},{j}) not in {n}x{n}")));
        }
        self.meter.charge(1);
        Ok(self.map.get(i, j))
    }
}

//! c-friezes of order `n`: construction from a seed, lazy extension of the
//! first row in both directions, value queries on the band, periodicity.
//!
//! Row `n + 1` alternates two values. Following the usual convention, `s` is
//! the value at even anchors (`s = f(0, n)`) and `t` the one at odd anchors,
//! whatever the parity of the seed's base index.

mod period;
mod relations;
mod seed;

pub use period::{PeriodKind, PeriodicityReport};
pub use relations::{check_local_relations, Relation, RelationFailure};
pub use seed::{seed_validate, FriezeDescriptor, PolygonalSequence, Violation, ViolationList};

use std::fmt;
use std::sync::RwLock;

use serde::Serialize;
use thiserror::Error;

use crate::continuant::continuant;
use crate::exactnum::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FriezeError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate seed: P_(n+1) of the free values vanishes")]
    DegenerateSeed,
    #[error("invalid seed: {0}")]
    InvalidSeed(ViolationList),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("point ({i}, {j}) lies outside the band of order {n}")]
    OutOfBand { i: i64, j: i64, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FriezeParams {
    c: Rat,
    n: usize,
}

impl FriezeParams {
    pub fn new(c: Rat, n: usize) -> Result<Self, FriezeError> {
        if c.is_zero() {
            return Err(FriezeError::InvalidParams("c must be nonzero".into()));
        }
        if n == 0 {
            return Err(FriezeError::InvalidParams("order n must be at least 1".into()));
        }
        Ok(FriezeParams { c, n })
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(-c)^k`, the right-hand side of the mesh relation on row `k`.
    pub fn neg_c_pow(&self, k: i64) -> Rat {
        (-&self.c).pow(k as i32).expect("c is nonzero")
    }

    /// Highest row index, `n + 2`.
    pub fn last_row(&self) -> i64 {
        self.n as i64 + 2
    }
}

/// A point `(i, j)` of the plane; it lies on row `j - i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub i: i64,
    pub j: i64,
}

impl GridPoint {
    pub fn new(i: i64, j: i64) -> Self {
        GridPoint { i, j }
    }

    /// The point of row `k` anchored at `i`.
    pub fn on_row(i: i64, k: i64) -> Self {
        GridPoint { i, j: i + k - 1 }
    }

    pub fn row(&self) -> i64 {
        self.j - self.i + 1
    }

    pub fn in_band(&self, n: usize) -> bool {
        (-1..=n as i64 + 2).contains(&self.row())
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// `x_{i+period} = ±x_i` for every `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shift {
    period: i64,
    negate: bool,
}

#[derive(Debug, Clone)]
struct FirstRow {
    start: i64,
    values: Vec<Rat>,
}

impl FirstRow {
    fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    fn get(&self, i: i64) -> Option<&Rat> {
        if i < self.start {
            return None;
        }
        self.values.get((i - self.start) as usize)
    }
}

/// A c-frieze over the rationals.
///
/// The first row is materialized lazily behind a lock. Queries take `&self`;
/// callers that fan out over threads should call [`Frieze::ensure_range`] first
/// so that workers only ever take the read lock.
pub struct Frieze {
    params: FriezeParams,
    seed: PolygonalSequence,
    s: Rat,
    t: Rat,
    shift: Option<Shift>,
    cache: RwLock<FirstRow>,
}

impl Frieze {
    pub fn new(seed: PolygonalSequence) -> Frieze {
        let params = seed.params().clone();
        let n = params.n() as i64;
        let (at_base, after_base) = seed.penultimate_pair();
        let (s, t) = if seed.base_index().rem_euclid(2) == 0 {
            (at_base, after_base)
        } else {
            (after_base, at_base)
        };
        // with s = t (resp. s = -t) the odd-row scaling factors are 1 (resp. -1);
        // for even n the two odd-row factors multiply to 1
        let shift = if s == t {
            Some(Shift { period: n + 3, negate: false })
        } else if s == -&t {
            Some(Shift { period: n + 3, negate: true })
        } else if n % 2 == 0 {
            Some(Shift { period: 2 * n + 6, negate: false })
        } else {
            None
        };
        let frieze = Frieze {
            cache: RwLock::new(FirstRow {
                start: seed.base_index(),
                values: seed.values().to_vec(),
            }),
            params,
            seed,
            s,
            t,
            shift,
        };
        if let Some(shift) = frieze.shift {
            let base = frieze.seed.base_index();
            frieze.grow_to(base, base + shift.period);
        }
        frieze
    }

    pub fn from_free(params: FriezeParams, base_index: i64, free: &[Rat]) -> Result<Frieze, FriezeError> {
        Ok(Frieze::new(PolygonalSequence::from_free(params, base_index, free)?))
    }

    pub fn from_seed_values(
        params: FriezeParams,
        base_index: i64,
        values: Vec<Rat>,
    ) -> Result<Frieze, FriezeError> {
        Ok(Frieze::new(PolygonalSequence::new(params, base_index, values)?))
    }

    pub fn params(&self) -> &FriezeParams {
        &self.params
    }

    pub fn c(&self) -> &Rat {
        self.params.c()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn seed(&self) -> &PolygonalSequence {
        &self.seed
    }

    pub fn base_index(&self) -> i64 {
        self.seed.base_index()
    }

    pub fn descriptor(&self) -> FriezeDescriptor {
        FriezeDescriptor::from_seed(&self.seed)
    }

    /// Row `n + 1` value at even anchors.
    pub fn s(&self) -> &Rat {
        &self.s
    }

    /// Row `n + 1` value at odd anchors.
    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn s_t(&self) -> (Rat, Rat) {
        (self.s.clone(), self.t.clone())
    }

    /// Row `n + 1` value at anchor `i`.
    pub fn penultimate(&self, i: i64) -> &Rat {
        if i.rem_euclid(2) == 0 {
            &self.s
        } else {
            &self.t
        }
    }

    /// `(-c)^{n+1} / t^2`, relating odd rows at even anchors across a shift of `n + 3`.
    pub fn odd_row_scaling_even_anchor(&self) -> Rat {
        let num = self.params.neg_c_pow(self.n() as i64 + 1);
        num.checked_div(&(&self.t * &self.t)).expect("t is nonzero")
    }

    /// `(-c)^{n+1} / s^2`, the odd-anchor counterpart.
    pub fn odd_row_scaling_odd_anchor(&self) -> Rat {
        let num = self.params.neg_c_pow(self.n() as i64 + 1);
        num.checked_div(&(&self.s * &self.s)).expect("s is nonzero")
    }

    /// The shift `p` with `x_{i+p} = ±x_i`, if the first row has one that the
    /// frieze's `s`, `t` guarantee.
    pub fn quasi_period(&self) -> Option<(i64, bool)> {
        self.shift.map(|s| (s.period, s.negate))
    }

    /// Next first-row value: solves `P_{n+2}(x_{m-n-1}..x_m) = 0` for `x_m`.
    fn solve_forward(&self, window: &[Rat]) -> Rat {
        let c = self.c();
        let n = self.n();
        let pivot = continuant(c, window);
        (-c * continuant(c, &window[..n]))
            .checked_div(&pivot)
            .expect("row n+1 values are nonzero")
    }

    /// Previous first-row value: solves `P_{n+2}(x_m..x_{m+n+1}) = 0` for `x_m`.
    fn solve_backward(&self, window: &[Rat]) -> Rat {
        let c = self.c();
        let pivot = continuant(c, window);
        (-c * continuant(c, &window[1..]))
            .checked_div(&pivot)
            .expect("row n+1 values are nonzero")
    }

    /// Extends the cache to cover `[lo, hi)`, growing by at least doubling.
    fn grow_to(&self, lo: i64, hi: i64) {
        {
            let guard = self.cache.read().expect("cache lock");
            if guard.start <= lo && hi <= guard.end() {
                return;
            }
        }
        let mut guard = self.cache.write().expect("cache lock");
        let w = self.n() + 1;
        let len = guard.values.len() as i64;
        if hi > guard.end() {
            let target = hi.max(guard.end() + len);
            while guard.end() < target {
                let tail = &guard.values[guard.values.len() - w..];
                let next = self.solve_forward(tail);
                guard.values.push(next);
            }
        }
        if lo < guard.start {
            let target = lo.min(guard.start - len);
            let extra = (guard.start - target) as usize;
            let mut front: Vec<Rat> = Vec::with_capacity(extra);
            // build the prefix right to left, then prepend once
            let mut window: Vec<Rat> = guard.values[..w].to_vec();
            for _ in 0..extra {
                let prev = self.solve_backward(&window);
                window.pop();
                window.insert(0, prev.clone());
                front.push(prev);
            }
            front.reverse();
            front.append(&mut guard.values);
            guard.values = front;
            guard.start = target;
        }
    }

    /// Pre-materializes first-row values on `[lo, hi]` so that later queries in
    /// that range are read-only.
    pub fn ensure_range(&self, lo: i64, hi: i64) {
        if self.shift.is_none() && lo <= hi {
            self.grow_to(lo, hi + 1);
        }
    }

    fn lookup(&self, row: &FirstRow, i: i64) -> Option<Rat> {
        if let Some(v) = row.get(i) {
            return Some(v.clone());
        }
        let shift = self.shift?;
        let off = i - self.base_index();
        let reduced = self.base_index() + off.rem_euclid(shift.period);
        let v = row.get(reduced)?.clone();
        if shift.negate && off.div_euclid(shift.period).rem_euclid(2) == 1 {
            Some(-v)
        } else {
            Some(v)
        }
    }

    /// `x_i`, the first-row value at `i`.
    pub fn first_row(&self, i: i64) -> Rat {
        {
            let guard = self.cache.read().expect("cache lock");
            if let Some(v) = self.lookup(&guard, i) {
                return v;
            }
        }
        self.grow_to(i, i + 1);
        let guard = self.cache.read().expect("cache lock");
        self.lookup(&guard, i).expect("cache covers i after growth")
    }

    /// `x_lo, ..., x_hi` (inclusive); empty when `hi < lo`.
    pub fn first_row_range(&self, lo: i64, hi: i64) -> Vec<Rat> {
        if hi < lo {
            return Vec::new();
        }
        self.ensure_range(lo, hi);
        let guard = self.cache.read().expect("cache lock");
        (lo..=hi)
            .map(|i| self.lookup(&guard, i).expect("range materialized"))
            .collect()
    }

    /// `f(i, j)` on the band.
    pub fn value_at(&self, i: i64, j: i64) -> Result<Rat, FriezeError> {
        let k = j - i + 1;
        let last = self.params.last_row();
        match k {
            -1 => Ok(Rat::zero()),
            0 => Ok(Rat::one()),
            k if k == last => Ok(Rat::zero()),
            k if (1..last).contains(&k) => Ok(continuant(self.c(), &self.first_row_range(i, j))),
            _ => Err(FriezeError::OutOfBand { i, j, n: self.n() }),
        }
    }

    pub fn value(&self, p: GridPoint) -> Result<Rat, FriezeError> {
        self.value_at(p.i, p.j)
    }

    /// Row `k` values `f(i, i + k - 1)` for `i` in `lo..hi`.
    pub fn row(&self, k: i64, lo: i64, hi: i64) -> Result<Vec<Rat>, FriezeError> {
        if !(-1..=self.params.last_row()).contains(&k) {
            return Err(FriezeError::OutOfBand { i: lo, j: lo + k - 1, n: self.n() });
        }
        if hi <= lo {
            return Ok(Vec::new());
        }
        if k < 1 || k == self.params.last_row() {
            let fill = if k == 0 { Rat::one() } else { Rat::zero() };
            return Ok(vec![fill; (hi - lo) as usize]);
        }
        let xs = self.first_row_range(lo, hi + k - 2);
        let width = k as usize;
        Ok(xs.windows(width).map(|w| continuant(self.c(), w)).collect())
    }

    /// Every band value anchored in `lo..hi`, filled row by row with the
    /// recurrence.
    pub fn value_table(&self, lo: i64, hi: i64) -> ValueTable {
        let n = self.n();
        let c = self.c();
        if hi <= lo {
            return ValueTable { lo, n, values: Vec::new() };
        }
        let xs = self.first_row_range(lo, hi + n as i64 - 1);
        let mut values = Vec::with_capacity((hi - lo) as usize * (n + 4));
        for start in 0..(hi - lo) as usize {
            values.push(Rat::zero());
            values.push(Rat::one());
            let (mut prev, mut cur) = (Rat::zero(), Rat::one());
            for x in &xs[start..start + n + 1] {
                let next = x * &cur + c * &prev;
                prev = std::mem::replace(&mut cur, next);
                values.push(cur.clone());
            }
            values.push(Rat::zero());
        }
        ValueTable { lo, n, values }
    }

    /// The `n + 3` first-row values starting at `base`, as a seed.
    pub fn polygonal_sequence_at(&self, base: i64) -> PolygonalSequence {
        let n = self.n() as i64;
        PolygonalSequence::new(self.params.clone(), base, self.first_row_range(base, base + n + 2))
            .expect("every window of an admissible row is a valid seed")
    }

    /// Whether both friezes have the same order and agree at every band point
    /// anchored in `lo..hi`.
    pub fn agrees_with(&self, other: &Frieze, lo: i64, hi: i64) -> bool {
        if self.n() != other.n() {
            return false;
        }
        (-1..=self.params.last_row()).all(|k| self.row(k, lo, hi).ok() == other.row(k, lo, hi).ok())
    }

    pub fn period_report(&self) -> PeriodicityReport {
        period::period_report(self)
    }
}

/// Band values for a contiguous range of anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueTable {
    lo: i64,
    n: usize,
    values: Vec<Rat>,
}

impl ValueTable {
    /// `f(i, j)`, if `i` is in the table's anchor range and `(i, j)` is in the band.
    pub fn get(&self, i: i64, j: i64) -> Option<&Rat> {
        let k = j - i + 1;
        if i < self.lo || !(-1..=self.n as i64 + 2).contains(&k) {
            return None;
        }
        let idx = (i - self.lo) as usize * (self.n + 4) + (k + 1) as usize;
        self.values.get(idx)
    }
}

impl Clone for Frieze {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("cache lock").clone();
        Frieze {
            params: self.params.clone(),
            seed: self.seed.clone(),
            s: self.s.clone(),
            t: self.t.clone(),
            shift: self.shift,
            cache: RwLock::new(cache),
        }
    }
}

impl fmt::Debug for Frieze {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frieze")
            .field("c", self.c())
            .field("n", &self.n())
            .field("base_index", &self.base_index())
            .field("seed", &self.seed.values())
            .field("s", &self.s)
            .field("t", &self.t)
            .finish()
    }
}

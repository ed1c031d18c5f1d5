//! Maps between friezes: sign flip `c -> -c`, scaling `c -> c d^2`, and the
//! order-changing pair `gamma` / `gamma_inverse`.

use thiserror::Error;

use crate::continuant::sign_flip_factor;
use crate::exactnum::Rat;
use crate::frieze::{Frieze, FriezeError, FriezeParams, GridPoint, PolygonalSequence};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("scale factor is zero")]
    ZeroScale,
    #[error("frieze is not repetitive (needs s = t and c < 0)")]
    NotRepetitive,
    #[error("-c = {0} has no rational square root")]
    IrrationalRoot(Rat),
    #[error("frieze is not c-induced at {index}: x{index} = {value}")]
    NotInduced { index: i64, value: Rat },
    #[error("order {0} is too small; gamma_inverse needs n >= 2")]
    OrderTooSmall(usize),
    /// An output seed failed validation.
    #[error("internal error: {0}")]
    Internal(String),
}

fn revalidated(params: FriezeParams, base: i64, values: Vec<Rat>) -> Result<PolygonalSequence, TransformError> {
    PolygonalSequence::new(params, base, values).map_err(|e| TransformError::Internal(e.to_string()))
}

fn new_params(c: Rat, n: usize) -> Result<FriezeParams, TransformError> {
    FriezeParams::new(c, n).map_err(|e: FriezeError| TransformError::Internal(e.to_string()))
}

/// Sign relating a frieze to its flip, by row order and anchor parity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlipSignTable;

impl FlipSignTable {
    pub fn sign(&self, k: i64, i: i64) -> i32 {
        sign_flip_factor(k, i)
    }
}

/// Negates the entries at odd indices; the result is a seed for `-c`.
pub fn flip_sign_seed(seed: &PolygonalSequence) -> Result<PolygonalSequence, TransformError> {
    let base = seed.base_index();
    let values = seed
        .values()
        .iter()
        .enumerate()
        .map(|(idx, x)| if (base + idx as i64).rem_euclid(2) == 1 { -x } else { x.clone() })
        .collect();
    let params = new_params(-seed.params().c(), seed.params().n())?;
    revalidated(params, base, values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailurePoint {
    pub point: GridPoint,
    pub expected: Rat,
    pub got: Rat,
}

/// Checks `f'(i, j) = sign(j - i + 1, i) f(i, j)` for anchors in `lo..hi` on
/// every row of the band.
pub fn flip_sign_value_check(
    f: &Frieze,
    flipped: &Frieze,
    lo: i64,
    hi: i64,
    exec: Exec,
) -> Result<(), FailurePoint> {
    let last = f.params().last_row();
    let (before, after) = (f.value_table(lo, hi), flipped.value_table(lo, hi));
    exec.try_range(lo, hi, |i| {
        for k in -1..=last {
            let p = GridPoint::on_row(i, k);
            let v = before.get(p.i, p.j).expect("point in table");
            let expected = if FlipSignTable.sign(k, i) == 1 { v.clone() } else { -v };
            let got = after.get(p.i, p.j).expect("point in table").clone();
            if got != expected {
                return Err(FailurePoint { point: p, expected, got });
            }
        }
        Ok(())
    })
}

/// `(d x_1, ..., d x_{n+3})`, a seed for `c d^2`.
pub fn scale_seed(seed: &PolygonalSequence, d: &Rat) -> Result<PolygonalSequence, TransformError> {
    if d.is_zero() {
        return Err(TransformError::ZeroScale);
    }
    let values = seed.values().iter().map(|x| d * x).collect();
    let params = new_params(seed.params().c() * d * d, seed.params().n())?;
    revalidated(params, seed.base_index(), values)
}

/// `(x_1 + r, x_2, ..., x_{n+2}, x_{n+3} + r, r)` with `r = sqrt(-c) >= 0`: a
/// seed of order `n + 1` for the same `c`, whose frieze is c-induced.
pub fn gamma(seed: &PolygonalSequence) -> Result<PolygonalSequence, TransformError> {
    let c = seed.params().c();
    let (a, b) = seed.penultimate_pair();
    if a != b || !c.is_negative() {
        return Err(TransformError::NotRepetitive);
    }
    let r = (-c).sqrt_exact().map_err(|_| TransformError::IrrationalRoot(-c))?;
    let mut values = seed.values().to_vec();
    values[0] = &values[0] + &r;
    let last = values.len() - 1;
    values[last] = &values[last] + &r;
    values.push(r);
    let params = new_params(c.clone(), seed.params().n() + 1)?;
    revalidated(params, seed.base_index(), values)
}

/// Deletes the entry `r = sqrt(-c)` at `j0` and subtracts `r` from its two
/// neighbours, giving the repetitive frieze of order `n - 1`.
pub fn gamma_inverse(f: &Frieze, j0: i64) -> Result<Frieze, TransformError> {
    let n = f.n();
    if n < 2 {
        return Err(TransformError::OrderTooSmall(n));
    }
    let value = f.first_row(j0);
    let not_induced = || TransformError::NotInduced { index: j0, value: value.clone() };
    if f.s() != f.t() || !f.c().is_negative() {
        return Err(not_induced());
    }
    let r = (-f.c()).sqrt_exact().map_err(|_| not_induced())?;
    if value != r {
        return Err(not_induced());
    }
    let base = j0 - n as i64 - 2;
    let mut values = f.first_row_range(base, j0 - 1);
    values[0] = &values[0] - &r;
    let last = values.len() - 1;
    values[last] = &values[last] - &r;
    let params = new_params(f.c().clone(), n - 1)?;
    Ok(Frieze::new(revalidated(params, base, values)?))
}

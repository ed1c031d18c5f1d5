//! Decision procedures on friezes: positivity, integrality and the
//! classification flags.

use serde::Serialize;
use thiserror::Error;

use crate::continuant::continuant_det;
use crate::exactnum::Rat;
use crate::frieze::{Frieze, FriezeParams, GridPoint};
use crate::par::Exec;
use crate::section::{reconstruct, SectionError, SectionValues};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("precondition breach: {0}")]
    PreconditionBreach(String),
    #[error("frieze is not monotonic (|s| != |t|)")]
    NotMonotonic,
    #[error("zero pivot on row {row}")]
    ZeroPivot { row: i64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Section(#[from] SectionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// `|s| = |t|`
    pub monotonic: bool,
    /// `s = t` and `c < 0`
    pub repetitive: bool,
    /// monotonic with `c = 1`
    pub alternating: bool,
    /// repetitive with a first-row entry equal to `sqrt(-c)`
    pub c_induced: bool,
    pub induced_index: Option<i64>,
}

pub fn classify(f: &Frieze) -> Classification {
    let (s, t) = f.s_t();
    let monotonic = s.abs() == t.abs();
    let repetitive = s == t && f.c().is_negative();
    let alternating = monotonic && f.c().is_one();
    let induced_index = if repetitive {
        // repetitive means a first-row period dividing n + 3
        let base = f.base_index();
        (-f.c()).sqrt_exact().ok().and_then(|r| {
            let row = f.first_row_range(base, base + f.n() as i64 + 2);
            row.iter().position(|x| *x == r).map(|p| base + p as i64)
        })
    } else {
        None
    };
    Classification {
        monotonic,
        repetitive,
        alternating,
        c_induced: induced_index.is_some(),
        induced_index,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IntegralityVerdict {
    AllInteger,
    NonInteger { witness: GridPoint, value: Rat },
    /// Every value anchored in `lo..hi` is an integer; nothing is claimed beyond.
    WindowVerified { lo: i64, hi: i64 },
}

/// First point, in row-then-anchor order over rows `1..=n+1` and anchors
/// `lo..hi`, whose value fails `keep`.
fn scan_rows<F>(f: &Frieze, lo: i64, hi: i64, keep: F) -> Option<(GridPoint, Rat)>
where
    F: Fn(&Rat) -> bool + Sync + Send,
{
    let n = f.n() as i64;
    f.ensure_range(lo, hi + n);
    let per_row = Exec::default().map_range(1, n + 2, |k| {
        let row = f.row(k, lo, hi).expect("row in band");
        row.into_iter()
            .enumerate()
            .find(|(_, v)| !keep(v))
            .map(|(idx, v)| (GridPoint::on_row(lo + idx as i64, k), v))
    });
    per_row.into_iter().flatten().next()
}

pub fn is_integer_frieze(f: &Frieze) -> IntegralityVerdict {
    let n = f.n() as i64;
    let base = f.base_index();
    let monotonic = f.s().abs() == f.t().abs();
    if monotonic && f.c().is_integer() {
        // integer first row and integer c give integer continuants everywhere
        let period = n + 3;
        let row = f.first_row_range(base, base + period - 1);
        return match row.iter().position(|x| !x.is_integer()) {
            Some(p) => IntegralityVerdict::NonInteger {
                witness: GridPoint::new(base + p as i64, base + p as i64),
                value: row[p].clone(),
            },
            None => IntegralityVerdict::AllInteger,
        };
    }
    let (hi, proven) = match f.quasi_period() {
        Some((period, _)) => (base + period, true),
        None => (base + 2 * (n + 3), false),
    };
    match scan_rows(f, base, hi, Rat::is_integer) {
        Some((witness, value)) => IntegralityVerdict::NonInteger { witness, value },
        None if proven => IntegralityVerdict::AllInteger,
        None => IntegralityVerdict::WindowVerified { lo: base, hi },
    }
}

/// Whether every value on rows `1..=n+1` is positive.
pub fn is_positive(f: &Frieze) -> bool {
    let n = f.n() as i64;
    let base = f.base_index();
    let width = match f.quasi_period() {
        Some((period, false)) => period,
        Some((period, true)) => 2 * period,
        None => {
            // Odd n here, so (-c)^{n+1} > 0 and both odd-row factors are
            // positive: odd rows keep their signs under a shift by n + 3, and
            // even rows repeat with period dividing n + 3.
            assert!(
                f.odd_row_scaling_even_anchor().is_positive() && f.odd_row_scaling_odd_anchor().is_positive(),
                "odd-row scaling factors must be positive for non-periodic friezes"
            );
            2 * (n + 3)
        }
    };
    scan_rows(f, base, base + width, Rat::is_positive).is_none()
}

/// Reconstructs the frieze of a positive section with `c < 0` and confirms it
/// is positive.
pub fn positivity_from_section(params: &FriezeParams, sv: &SectionValues) -> Result<bool, AnalysisError> {
    if !params.c().is_negative() {
        return Err(AnalysisError::PreconditionBreach(format!("c = {} is not negative", params.c())));
    }
    for k in 1..=params.n() as i64 + 1 {
        if !sv.at_row(k).is_positive() {
            return Err(AnalysisError::PreconditionBreach(format!(
                "section value {} on row {k} is not positive",
                sv.at_row(k)
            )));
        }
    }
    let f = reconstruct(params, sv)?;
    if is_positive(&f) {
        Ok(true)
    } else {
        Err(AnalysisError::Internal("positive section produced a frieze with a nonpositive value".into()))
    }
}

/// Whether `v_k` divides `v_{k+1} - c v_{k-1}` for every interior entry of an
/// oblique section listed from row `-1`.
pub fn divisibility_condition(c: &Rat, oblique_values: &[Rat]) -> Result<bool, AnalysisError> {
    for (idx, w) in oblique_values.windows(3).enumerate() {
        let target = &w[2] - c * &w[0];
        match w[1].divides(&target) {
            Ok(true) => {}
            Ok(false) => return Ok(false),
            Err(_) => return Err(AnalysisError::ZeroPivot { row: idx as i64 }),
        }
    }
    Ok(true)
}

/// `c f(i0+1, i0+n) / |s|` and whether it is an integer.
///
/// Also evaluates the same quantity as `c/|s|` times the determinant of the
/// tridiagonal matrix on `mu_l = x_{i0+1+l}`, each `mu_l` recovered from the
/// down-right oblique at `i0`, and fails if the two disagree.
pub fn integrality_second_condition(f: &Frieze, anchor: i64) -> Result<(Rat, bool), AnalysisError> {
    let (s, t) = f.s_t();
    if s.abs() != t.abs() {
        return Err(AnalysisError::NotMonotonic);
    }
    if !s.is_integer() {
        return Err(AnalysisError::PreconditionBreach(format!("s = {s} is not an integer")));
    }
    let n = f.n() as i64;
    let c = f.c();
    let v = |j: i64| f.value_at(anchor, j).expect("point in band");
    let abs_s = s.abs();

    let closed = (c * f.value_at(anchor + 1, anchor + n).expect("point in band"))
        .checked_div(&abs_s)
        .expect("s is nonzero");

    let mut mu = Vec::with_capacity(n as usize);
    for l in 0..n {
        let mid = v(anchor + l);
        let x = (v(anchor + l + 1) - c * v(anchor + l - 1))
            .checked_div(&mid)
            .map_err(|_| AnalysisError::ZeroPivot { row: l + 1 })?;
        mu.push(x);
    }
    let det = continuant_det(c, &mu).map_err(|e| AnalysisError::Internal(e.to_string()))?;
    let via_mu = (c * det).checked_div(&abs_s).expect("s is nonzero");
    if via_mu != closed {
        return Err(AnalysisError::Internal(format!(
            "mu-determinant gives {via_mu}, closed form gives {closed}"
        )));
    }
    let integral = closed.is_integer();
    Ok((closed, integral))
}

/// `f(i,j-1) f(i+1,j) - f(i+1,j-1) f(i,j)` for anchors `i` in `lo..hi` and
/// every `j - i` in `0..=n+1`.
pub fn mesh_determinants(f: &Frieze, lo: i64, hi: i64) -> Vec<Rat> {
    let n = f.n() as i64;
    f.ensure_range(lo, hi + n + 2);
    let v = |i: i64, j: i64| f.value_at(i, j).expect("point in band");
    Exec::default()
        .map_range(lo, hi, |i| {
            (i..=i + n + 1)
                .map(|j| v(i, j - 1) * v(i + 1, j) - v(i + 1, j - 1) * v(i, j))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect()
}

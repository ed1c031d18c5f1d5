use serde::Serialize;

use super::Frieze;
use crate::exactnum::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "period", rename_all = "snake_case")]
pub enum PeriodKind {
    Periodic(u64),
    /// Odd-order rows flip sign after `p` steps; even-order rows are periodic.
    OddRowsAntiperiodic(u64),
    NonPeriodic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    #[serde(flatten)]
    pub kind: PeriodKind,
    pub s: Rat,
    pub t: Rat,
    /// Smallest divisor of `n + 3` that is a period of every even-order row.
    pub even_row_period: u64,
    /// `(-c)^{n+1} / t^2`
    pub odd_row_scaling_even_anchor: Rat,
    /// `(-c)^{n+1} / s^2`
    pub odd_row_scaling_odd_anchor: Rat,
}

fn divisors(m: i64) -> impl Iterator<Item = i64> {
    (1..=m).filter(move |d| m % d == 0)
}

/// Smallest divisor `p` of `m` with `x_{i+p} = sign * x_i` on the window `[base, base + m)`.
fn first_row_shift(f: &Frieze, m: i64, negate: bool) -> i64 {
    let base = f.base_index();
    let xs = f.first_row_range(base, base + 2 * m);
    divisors(m)
        .find(|&p| {
            (0..m as usize).all(|i| {
                let shifted = &xs[i + p as usize];
                if negate {
                    *shifted == -&xs[i]
                } else {
                    *shifted == xs[i]
                }
            })
        })
        .unwrap_or(m)
}

fn even_row_period(f: &Frieze) -> i64 {
    let m = f.n() as i64 + 3;
    let base = f.base_index();
    let rows: Vec<Vec<Rat>> = (2..=f.n() as i64 + 1)
        .step_by(2)
        .map(|k| f.row(k, base, base + 2 * m).expect("row in band"))
        .collect();
    divisors(m)
        .find(|&p| {
            rows.iter()
                .all(|row| (0..m as usize).all(|i| row[i + p as usize] == row[i]))
        })
        .unwrap_or(m)
}

pub(super) fn period_report(f: &Frieze) -> PeriodicityReport {
    let n = f.n() as i64;
    let (s, t) = f.s_t();
    let kind = if s == t {
        PeriodKind::Periodic(first_row_shift(f, n + 3, false) as u64)
    } else if s == -&t {
        PeriodKind::OddRowsAntiperiodic(first_row_shift(f, n + 3, true) as u64)
    } else if n % 2 == 0 {
        PeriodKind::Periodic(first_row_shift(f, 2 * n + 6, false) as u64)
    } else {
        PeriodKind::NonPeriodic
    };
    PeriodicityReport {
        kind,
        even_row_period: even_row_period(f) as u64,
        odd_row_scaling_even_anchor: f.odd_row_scaling_even_anchor(),
        odd_row_scaling_odd_anchor: f.odd_row_scaling_odd_anchor(),
        s,
        t,
    }
}

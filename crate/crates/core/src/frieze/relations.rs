use std::fmt;

use super::{Frieze, ValueTable};
use crate::exactnum::Rat;
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `f(i,j-1) f(i+1,j) - f(i+1,j-1) f(i,j) = (-c)^{j-i}`
    Mesh,
    /// `f(m, m+k-1) = ((-c)^k / r) f(m+k+1, m+n+1)`, `r = t` for even `m`, `s` for odd.
    Transvection,
    /// `f(m, m+k-1) = f(m-1, m+k-1) f(m, m+n-1) / r + f(m-2, m+k-1) / c`.
    BackwardRow,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Mesh => "mesh",
            Relation::Transvection => "transvection",
            Relation::BackwardRow => "backward-row",
        })
    }
}

/// A relation that failed at `(i, j)`; never expected on a valid frieze.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub i: i64,
    pub j: i64,
    pub relation: Relation,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} relation fails at ({}, {}): {} != {}",
            self.relation, self.i, self.j, self.lhs, self.rhs
        )
    }
}

impl std::error::Error for RelationFailure {}

fn expect_eq(relation: Relation, i: i64, j: i64, lhs: Rat, rhs: Rat) -> Result<(), RelationFailure> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(RelationFailure { i, j, relation, lhs, rhs })
    }
}

/// All relations anchored at first-row index `m`.
fn check_anchor(f: &Frieze, table: &ValueTable, m: i64) -> Result<(), RelationFailure> {
    let n = f.n() as i64;
    let c = f.c();
    let v = |i: i64, j: i64| table.get(i, j).expect("point in table").clone();

    for d in 0..=n + 1 {
        let j = m + d;
        let lhs = v(m, j - 1) * v(m + 1, j) - v(m + 1, j - 1) * v(m, j);
        expect_eq(Relation::Mesh, m, j, lhs, f.params().neg_c_pow(d))?;
    }

    // the other row-(n+1) value relative to the anchor parity
    let opposite = f.penultimate(m + 1);
    for k in -1..=n + 2 {
        let coeff = f.params().neg_c_pow(k).checked_div(opposite).expect("s, t nonzero");
        let rhs = coeff * v(m + k + 1, m + n + 1);
        expect_eq(Relation::Transvection, m, m + k - 1, v(m, m + k - 1), rhs)?;
    }

    for k in 0..=n {
        let rhs = (v(m - 1, m + k - 1) * v(m, m + n - 1)).checked_div(opposite).expect("nonzero")
            + v(m - 2, m + k - 1).checked_div(c).expect("c nonzero");
        expect_eq(Relation::BackwardRow, m, m + k - 1, v(m, m + k - 1), rhs)?;
    }
    Ok(())
}

/// Verifies the mesh rule, the transvection formulas and the backward-row
/// expansion for every anchor in `lo..hi`, exactly. Returns the failure with the
/// smallest anchor.
pub fn check_local_relations(f: &Frieze, lo: i64, hi: i64, exec: Exec) -> Result<(), RelationFailure> {
    if hi <= lo {
        return Ok(());
    }
    let n = f.n() as i64;
    let table = f.value_table(lo - 2, hi + n + 3);
    exec.try_range(lo, hi, |m| check_anchor(f, &table, m))
}

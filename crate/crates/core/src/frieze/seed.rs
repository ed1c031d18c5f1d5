use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FriezeError, FriezeParams};
use crate::continuant::continuant;
use crate::exactnum::Rat;

/// One reason a candidate seed is not a polygonal sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongLength { expected: usize, got: usize },
    /// `P_{n+2}` over the window starting at absolute index `start` is `residual`, not 0.
    WindowNotVanishing { start: i64, residual: Rat },
    /// `P_{n+1}` over the window starting at `start` vanishes.
    ZeroPenultimate { start: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { expected, got } => {
                write!(f, "seed has {got} values, expected {expected}")
            }
            Violation::WindowNotVanishing { start, residual } => {
                write!(f, "window at x{start}: P_(n+2) = {residual}, expected 0")
            }
            Violation::ZeroPenultimate { start } => {
                write!(f, "window at x{start}: P_(n+1) = 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ViolationList(pub Vec<Violation>);

impl fmt::Display for ViolationList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that `values` (starting at `base_index`) can seed a frieze.
pub fn seed_validate(
    params: &FriezeParams,
    base_index: i64,
    values: &[Rat],
) -> Result<(), ViolationList> {
    let n = params.n();
    let c = params.c();
    if values.len() != n + 3 {
        return Err(ViolationList(vec![Violation::WrongLength {
            expected: n + 3,
            got: values.len(),
        }]));
    }
    let mut out = Vec::new();
    for off in 0..2 {
        let residual = continuant(c, &values[off..off + n + 2]);
        if !residual.is_zero() {
            out.push(Violation::WindowNotVanishing {
                start: base_index + off as i64,
                residual,
            });
        }
    }
    for off in 0..2 {
        if continuant(c, &values[off..off + n + 1]).is_zero() {
            out.push(Violation::ZeroPenultimate {
                start: base_index + off as i64,
            });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(ViolationList(out))
    }
}

/// `n + 3` consecutive first-row values of a c-frieze of order `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonalSequence {
    params: FriezeParams,
    base_index: i64,
    values: Vec<Rat>,
}

impl PolygonalSequence {
    pub fn new(params: FriezeParams, base_index: i64, values: Vec<Rat>) -> Result<Self, FriezeError> {
        seed_validate(&params, base_index, &values).map_err(FriezeError::InvalidSeed)?;
        Ok(PolygonalSequence {
            params,
            base_index,
            values,
        })
    }

    /// Completes `n + 1` free values by solving the two vanishing windows.
    pub fn from_free(params: FriezeParams, base_index: i64, free: &[Rat]) -> Result<Self, FriezeError> {
        let n = params.n();
        if free.len() != n + 1 {
            return Err(FriezeError::WrongLength {
                expected: n + 1,
                got: free.len(),
            });
        }
        let c = params.c().clone();
        let mut values = free.to_vec();
        for _ in 0..2 {
            let window = &values[values.len() - (n + 1)..];
            let pivot = continuant(&c, window);
            let Ok(next) = (-&c * continuant(&c, &window[..n])).checked_div(&pivot) else {
                return Err(FriezeError::DegenerateSeed);
            };
            values.push(next);
        }
        PolygonalSequence::new(params, base_index, values)
    }

    pub fn params(&self) -> &FriezeParams {
        &self.params
    }

    pub fn base_index(&self) -> i64 {
        self.base_index
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// `P_{n+1}` of the first and second windows: the row `n + 1` values at
    /// `base_index` and `base_index + 1`.
    pub fn penultimate_pair(&self) -> (Rat, Rat) {
        let n = self.params.n();
        let c = self.params.c();
        (
            continuant(c, &self.values[..n + 1]),
            continuant(c, &self.values[1..n + 2]),
        )
    }
}

/// On-disk frieze description: parameters plus a seed, values as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FriezeDescriptor {
    pub c: Rat,
    pub n: usize,
    pub base_index: i64,
    pub seed: Vec<Rat>,
}

impl FriezeDescriptor {
    pub fn from_seed(seed: &PolygonalSequence) -> Self {
        FriezeDescriptor {
            c: seed.params().c().clone(),
            n: seed.params().n(),
            base_index: seed.base_index(),
            seed: seed.values().to_vec(),
        }
    }

    pub fn to_seed(&self) -> Result<PolygonalSequence, FriezeError> {
        let params = FriezeParams::new(self.c.clone(), self.n)?;
        PolygonalSequence::new(params, self.base_index, self.seed.clone())
    }
}

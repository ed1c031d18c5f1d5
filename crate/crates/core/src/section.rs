//! Sections of the band: staircase paths with one point on every row
//! `-1..=n+2`. A section whose values on rows `1..=n+1` are nonzero determines
//! its frieze, and [`reconstruct`] recovers it.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::continuant::continuant;
use crate::exactnum::Rat;
use crate::frieze::{Frieze, FriezeError, FriezeParams, GridPoint, PolygonalSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionError {
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("expected {expected} section values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("zero pivot: the middle value of the triple is 0")]
    ZeroPivot,
    #[error("section value on row {row} is zero")]
    ZeroOnSection { row: i64 },
    #[error("inconsistent section: value at {point} is {got}, a frieze would have {expected}")]
    InconsistentSection { point: GridPoint, expected: Rat, got: Rat },
    #[error(transparent)]
    Frieze(#[from] FriezeError),
}

/// How a section moves from row `k` to row `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// `(i, j) -> (i - 1, j)`
    Up,
    /// `(i, j) -> (i, j + 1)`
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Fixed `i`.
    DownRight,
    /// Fixed `j`.
    UpRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    points: Vec<GridPoint>,
}

impl Section {
    /// `points` must run from row `-1` to row `n + 2`, each one step up or
    /// down-right from the previous.
    pub fn new(n: usize, points: Vec<GridPoint>) -> Result<Section, SectionError> {
        if points.len() != n + 4 {
            return Err(SectionError::InvalidSection(format!(
                "{} points, a section of order {n} has {}",
                points.len(),
                n + 4
            )));
        }
        for (idx, p) in points.iter().enumerate() {
            let row = idx as i64 - 1;
            if p.row() != row {
                return Err(SectionError::InvalidSection(format!(
                    "point {idx} is {p} on row {}, expected row {row}",
                    p.row()
                )));
            }
        }
        for pair in points.windows(2) {
            step_between(pair[0], pair[1])?;
        }
        Ok(Section { points })
    }

    /// Builds the section whose row `-1` point is `(i, i - 2)` and which then
    /// follows `steps`; its order is `steps.len() - 3`.
    pub fn from_steps(i: i64, steps: &[Step]) -> Result<Section, SectionError> {
        if steps.len() < 4 {
            return Err(SectionError::InvalidSection("need at least 4 steps".into()));
        }
        let mut p = GridPoint::new(i, i - 2);
        let mut points = vec![p];
        for step in steps {
            p = match step {
                Step::Up => GridPoint::new(p.i - 1, p.j),
                Step::Down => GridPoint::new(p.i, p.j + 1),
            };
            points.push(p);
        }
        Section::new(steps.len() - 3, points)
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len() - 4
    }

    pub fn steps(&self) -> Vec<Step> {
        self.points
            .windows(2)
            .map(|w| step_between(w[0], w[1]).expect("validated"))
            .collect()
    }

    /// The point on row `k`.
    pub fn at_row(&self, k: i64) -> GridPoint {
        self.points[(k + 1) as usize]
    }

    pub fn orientation(&self) -> Option<Orientation> {
        let first = self.points[0];
        if self.points.iter().all(|p| p.i == first.i) {
            Some(Orientation::DownRight)
        } else if self.points.iter().all(|p| p.j == first.j) {
            Some(Orientation::UpRight)
        } else {
            None
        }
    }

    pub fn is_oblique(&self) -> bool {
        self.orientation().is_some()
    }
}

fn step_between(a: GridPoint, b: GridPoint) -> Result<Step, SectionError> {
    if b == GridPoint::new(a.i - 1, a.j) {
        Ok(Step::Up)
    } else if b == GridPoint::new(a.i, a.j + 1) {
        Ok(Step::Down)
    } else {
        Err(SectionError::InvalidSection(format!("{a} and {b} are not adjacent")))
    }
}

/// Down-right: `(a, a - 2), ..., (a, a + n + 1)`. Up-right: `(a + 2, a), ..., (a - n - 1, a)`.
pub fn oblique_section(params: &FriezeParams, anchor: i64, orientation: Orientation) -> Section {
    let n = params.n() as i64;
    let points = (-1..=n + 2)
        .map(|k| match orientation {
            Orientation::DownRight => GridPoint::on_row(anchor, k),
            Orientation::UpRight => GridPoint::new(anchor - k + 1, anchor),
        })
        .collect();
    Section::new(params.n(), points).expect("oblique sections are sections")
}

/// A section together with the frieze values on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionValues {
    section: Section,
    values: Vec<Rat>,
}

impl SectionValues {
    /// Checks the fixed rows: `0` on rows `-1` and `n + 2`, `1` on row `0`.
    pub fn new(section: Section, values: Vec<Rat>) -> Result<SectionValues, SectionError> {
        let n = section.n();
        if values.len() != n + 4 {
            return Err(SectionError::WrongLength { expected: n + 4, got: values.len() });
        }
        for (k, expected) in [(-1, Rat::zero()), (0, Rat::one()), (n as i64 + 2, Rat::zero())] {
            let got = &values[(k + 1) as usize];
            if *got != expected {
                return Err(SectionError::InconsistentSection {
                    point: section.at_row(k),
                    expected,
                    got: got.clone(),
                });
            }
        }
        Ok(SectionValues { section, values })
    }

    /// The values of `f` on `section`.
    pub fn extract(f: &Frieze, section: Section) -> Result<SectionValues, SectionError> {
        if section.n() != f.n() {
            return Err(SectionError::InvalidSection(format!(
                "section has order {}, frieze has order {}",
                section.n(),
                f.n()
            )));
        }
        let values = section
            .points()
            .iter()
            .map(|&p| f.value(p))
            .collect::<Result<Vec<_>, _>>()?;
        SectionValues::new(section, values)
    }

    pub fn section(&self) -> &Section {
        &self.section
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// The value on row `k`.
    pub fn at_row(&self, k: i64) -> &Rat {
        &self.values[(k + 1) as usize]
    }
}

/// Solves the recurrence around a nonzero middle value for the adjacent
/// first-row variable.
///
/// Forward, with `(f(i,j-1), f(i,j), f(i,j+1))`: returns `x_{j+1}`.
/// Backward, with `(f(i-1,j), f(i,j), f(i+1,j))`: returns `x_{i-1}`.
pub fn recover_x(c: &Rat, triple: (&Rat, &Rat, &Rat), direction: Direction) -> Result<Rat, SectionError> {
    let (prev, mid, next) = triple;
    let num = match direction {
        Direction::Forward => next - c * prev,
        Direction::Backward => prev - c * next,
    };
    num.checked_div(mid).map_err(|_| SectionError::ZeroPivot)
}

/// Rebuilds the frieze whose values on `sv.section()` are `sv.values()`.
///
/// Walks the section upward from its row-1 point `(a, a)`, which gives `x_a`.
/// Each step to the next row extends the known stretch of the first row by
/// one variable: a down-right step to the right, an up step to the left. With
/// `n + 1` variables known, the zeros of row `n + 2` on either side give the
/// last two, which makes `n + 3` consecutive values.
pub fn reconstruct(params: &FriezeParams, sv: &SectionValues) -> Result<Frieze, SectionError> {
    let n = params.n();
    let c = params.c();
    if sv.section().n() != n {
        return Err(SectionError::InvalidSection(format!(
            "section has order {}, expected {n}",
            sv.section().n()
        )));
    }
    for k in 1..=n as i64 + 1 {
        if sv.at_row(k).is_zero() {
            return Err(SectionError::ZeroOnSection { row: k });
        }
    }

    let section = sv.section();
    let mut lo = section.at_row(1).i;
    let mut xs = vec![sv.at_row(1).clone()];
    for (k, step) in (1..=n as i64).zip(&section.steps()[2..]) {
        let mid = sv.at_row(k);
        let next_value = sv.at_row(k + 1);
        match step {
            Step::Down => {
                let inner = continuant(c, &xs[..xs.len() - 1]);
                xs.push(recover_x(c, (&inner, mid, next_value), Direction::Forward)?);
            }
            Step::Up => {
                let inner = continuant(c, &xs[1..]);
                xs.insert(0, recover_x(c, (next_value, mid, &inner), Direction::Backward)?);
                lo -= 1;
            }
        }
    }

    let top = sv.at_row(n as i64 + 1);
    let zero = Rat::zero();
    let right = recover_x(c, (&continuant(c, &xs[..n]), top, &zero), Direction::Forward)?;
    let left = recover_x(c, (&zero, top, &continuant(c, &xs[1..])), Direction::Backward)?;
    xs.insert(0, left);
    xs.push(right);

    let seed = PolygonalSequence::new(params.clone(), lo - 1, xs)?;
    let frieze = Frieze::new(seed);
    for (&point, got) in section.points().iter().zip(sv.values()) {
        let expected = frieze.value(point)?;
        if expected != *got {
            return Err(SectionError::InconsistentSection {
                point,
                expected,
                got: got.clone(),
            });
        }
    }
    Ok(frieze)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObliqueSpec {
    pub anchor: i64,
    pub orientation: Orientation,
}

/// On-disk section: either explicit `points` or an `oblique` shorthand, plus
/// the values from row `-1` upward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oblique: Option<ObliqueSpec>,
    pub values: Vec<Rat>,
}

impl SectionJson {
    pub fn to_section_values(&self, params: &FriezeParams) -> Result<SectionValues, SectionError> {
        let section = match (&self.points, &self.oblique) {
            (Some(points), None) => Section::new(
                params.n(),
                points.iter().map(|&[i, j]| GridPoint::new(i, j)).collect(),
            )?,
            (None, Some(ob)) => oblique_section(params, ob.anchor, ob.orientation),
            _ => {
                return Err(SectionError::InvalidSection(
                    "give exactly one of \"points\" and \"oblique\"".into(),
                ))
            }
        };
        SectionValues::new(section, self.values.clone())
    }

    pub fn from_section_values(sv: &SectionValues) -> SectionJson {
        let section = sv.section();
        let values = sv.values().to_vec();
        match section.orientation() {
            Some(orientation) => {
                let p = section.at_row(1);
                let anchor = if orientation == Orientation::DownRight { p.i } else { p.j };
                SectionJson {
                    points: None,
                    oblique: Some(ObliqueSpec { anchor, orientation }),
                    values,
                }
            }
            None => SectionJson {
                points: Some(section.points().iter().map(|p| [p.i, p.j]).collect()),
                oblique: None,
                values,
            },
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::Up => "U",
            Step::Down => "D",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, rats};
    use crate::frieze::tests::example_one;
    use proptest::prelude::*;

    fn params(c: i64, n: usize) -> FriezeParams {
        FriezeParams::new(Rat::from(c), n).unwrap()
    }

    #[test]
    fn oblique_shapes() {
        let s = oblique_section(&params(4, 2), 5, Orientation::DownRight);
        assert_eq!(s.points().first(), Some(&GridPoint::new(5, 3)));
        assert_eq!(s.points().last(), Some(&GridPoint::new(5, 8)));
        assert_eq!(s.orientation(), Some(Orientation::DownRight));
        let s = oblique_section(&params(4, 2), 5, Orientation::UpRight);
        assert_eq!(s.points().first(), Some(&GridPoint::new(7, 5)));
        assert_eq!(s.points().last(), Some(&GridPoint::new(2, 5)));
        assert_eq!(s.orientation(), Some(Orientation::UpRight));
        assert_eq!(oblique_section(&params(1, 1), -3, Orientation::UpRight).points().len(), 5);
    }

    #[test]
    fn example_one_sections() {
        let f = example_one();
        let down = SectionValues::extract(&f, oblique_section(f.params(), 1, Orientation::DownRight)).unwrap();
        assert_eq!(down.values(), rats(&["0", "1", "2", "-2", "10", "0"]).as_slice());
        let up = SectionValues::extract(&f, oblique_section(f.params(), 4, Orientation::UpRight)).unwrap();
        assert_eq!(up.values(), rats(&["0", "1", "4/5", "16/5", "-32/5", "0"]).as_slice());

        let points = [(2, 0), (2, 1), (2, 2), (1, 2), (1, 3), (0, 3)]
            .map(|(i, j)| GridPoint::new(i, j))
            .to_vec();
        let skew = Section::new(2, points).unwrap();
        assert!(!skew.is_oblique());
        assert_eq!(skew.steps(), vec![Step::Down, Step::Down, Step::Up, Step::Down, Step::Up]);
        let sv = SectionValues::extract(&f, skew).unwrap();
        assert_eq!(sv.values(), rats(&["0", "1", "-3", "-2", "10", "0"]).as_slice());

        for sv in [down, up, sv] {
            let g = reconstruct(f.params(), &sv).unwrap();
            assert!(g.agrees_with(&f, -10, 15));
        }
    }

    #[test]
    fn recover_x_examples() {
        let one = Rat::one();
        assert_eq!(
            recover_x(&one, (&one, &Rat::from(-4), &Rat::from(-3)), Direction::Forward),
            Ok(one.clone())
        );
        let c = Rat::from(-4);
        assert_eq!(
            recover_x(&c, (&one, &Rat::from(4), &Rat::from(8)), Direction::Forward),
            Ok(Rat::from(3))
        );
        assert_eq!(
            recover_x(&c, (&one, &Rat::zero(), &one), Direction::Backward),
            Err(SectionError::ZeroPivot)
        );
    }

    #[test]
    fn reconstruct_examples() {
        let p = params(-4, 2);
        let sv = SectionValues::new(
            oblique_section(&p, 1, Orientation::DownRight),
            rats(&["0", "1", "4", "8", "8", "0"]),
        )
        .unwrap();
        let f = reconstruct(&p, &sv).unwrap();
        assert_eq!(f.first_row_range(1, 5), rats(&["4", "3", "3", "4", "5/2"]));
        assert_eq!(f.first_row(6), Rat::from(4));

        let p = params(1, 4);
        let sv = SectionValues::new(
            oblique_section(&p, 0, Orientation::DownRight),
            rats(&["0", "1", "-4", "-3", "5", "2", "-1", "0"]),
        )
        .unwrap();
        let f = reconstruct(&p, &sv).unwrap();
        assert_eq!(f.first_row_range(0, 6), rats(&["-4", "1", "-3", "1", "-3", "2", "-1"]));
        assert_eq!(f.first_row_range(7, 13), rats(&["4", "-1", "3", "-1", "3", "-2", "1"]));
    }

    #[test]
    fn reconstruct_refusals() {
        let p = params(-4, 2);
        let section = oblique_section(&p, 1, Orientation::DownRight);
        let sv = SectionValues::new(section.clone(), rats(&["0", "1", "4", "0", "8", "0"])).unwrap();
        assert_eq!(reconstruct(&p, &sv).unwrap_err(), SectionError::ZeroOnSection { row: 2 });
        let err = SectionValues::new(section.clone(), rats(&["0", "2", "4", "8", "8", "0"])).unwrap_err();
        assert!(matches!(err, SectionError::InconsistentSection { .. }));
        assert!(matches!(
            SectionValues::new(section, rats(&["0", "1"])),
            Err(SectionError::WrongLength { expected: 6, got: 2 })
        ));
        let bad = vec![GridPoint::new(0, -2), GridPoint::new(0, -1), GridPoint::new(1, 1)];
        assert!(Section::new(1, bad).is_err());
    }

    #[test]
    fn json_forms() {
        let p = params(-4, 2);
        let oblique: SectionJson = serde_json::from_str(
            r#"{"oblique":{"anchor":1,"orientation":"down-right"},"values":["0","1","4","8","8","0"]}"#,
        )
        .unwrap();
        let sv = oblique.to_section_values(&p).unwrap();
        assert_eq!(SectionJson::from_section_values(&sv), oblique);

        let explicit: SectionJson = serde_json::from_str(
            r#"{"points":[[2,0],[2,1],[2,2],[1,2],[1,3],[0,3]],"values":["0","1","-3","-2","10","0"]}"#,
        )
        .unwrap();
        let sv = explicit.to_section_values(&params(4, 2)).unwrap();
        let f = reconstruct(&params(4, 2), &sv).unwrap();
        assert_eq!(f.first_row(1), Rat::from(2));
        assert_eq!(f.first_row(5), q(35, 8));
        let text = serde_json::to_string(&SectionJson::from_section_values(&sv)).unwrap();
        assert!(text.starts_with(r#"{"points":[[2,0]"#));

        let both: SectionJson = serde_json::from_str(
            r#"{"points":[],"oblique":{"anchor":1,"orientation":"up-right"},"values":[]}"#,
        )
        .unwrap();
        assert!(both.to_section_values(&p).is_err());
    }

    fn random_frieze() -> impl Strategy<Value = Frieze> {
        (1usize..=5, prop_oneof![-5i64..=-1, 1i64..=5])
            .prop_flat_map(|(n, c)| (Just(n), Just(c), prop::collection::vec(-4i64..=4, n + 1)))
            .prop_filter_map("degenerate seed", |(n, c, free)| {
                let free: Vec<Rat> = free.into_iter().map(Rat::from).collect();
                Frieze::from_free(params(c, n), 0, &free).ok()
            })
    }

    proptest! {
        #[test]
        fn round_trip(f in random_frieze(), start in -6i64..6, bits in any::<u32>()) {
            let n = f.n();
            let steps: Vec<Step> = (0..n + 3)
                .map(|b| if bits >> b & 1 == 1 { Step::Up } else { Step::Down })
                .collect();
            let section = Section::from_steps(start, &steps).unwrap();
            let sv = SectionValues::extract(&f, section).unwrap();
            match reconstruct(f.params(), &sv) {
                Ok(g) => prop_assert!(g.agrees_with(&f, -12, 12)),
                Err(SectionError::ZeroOnSection { row }) => {
                    prop_assert!(sv.at_row(row).is_zero());
                }
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn recover_x_inverts_recurrence(f in random_frieze(), i in -5i64..5, len in 0i64..4) {
            let j = i + len.min(f.n() as i64 - 1);
            let mid = f.value_at(i, j).unwrap();
            prop_assume!(!mid.is_zero());
            let fwd = recover_x(
                f.c(),
                (&f.value_at(i, j - 1).unwrap(), &mid, &f.value_at(i, j + 1).unwrap()),
                Direction::Forward,
            ).unwrap();
            prop_assert_eq!(fwd, f.first_row(j + 1));
            let back = recover_x(
                f.c(),
                (&f.value_at(i - 1, j).unwrap(), &mid, &f.value_at(i + 1, j).unwrap()),
                Direction::Backward,
            ).unwrap();
            prop_assert_eq!(back, f.first_row(i - 1));
        }
    }
}

//! Continuant polynomials with a parameter `c`.
//!
//! `P_k(x_1..x_k) = x_k P_{k-1}(x_1..x_{k-1}) + c P_{k-2}(x_1..x_{k-2})`, with
//! `P_{-1} = 0` and `P_0 = 1`. The rest of the crate evaluates with the forward
//! recurrence; the determinant, front recursion, continued fraction and
//! two-parameter evaluators are independent cross-checks.

mod identity;
pub mod poly;

pub use identity::{
    identity_suite, verify_identity, verify_suite, Certificate, Identity, Parity,
};
pub use poly::{Monomial, Poly, Var};

use thiserror::Error;

use crate::exactnum::Rat;

/// Largest order expanded symbolically unless the caller raises it.
pub const DEFAULT_SYMBOLIC_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContinuantError {
    #[error("the parameter must be nonzero")]
    ZeroParameter,
    #[error("continued fraction hits a zero denominator at the suffix starting at x{position}")]
    ZeroDenominatorInCF { position: usize },
    #[error("order {requested} exceeds the symbolic bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("identity {identity} needs orders at least 1")]
    InvalidIdentity { identity: String },
    #[error("identity {identity} fails; residual {residual}")]
    Counterexample { identity: String, residual: Poly },
}

fn nonzero_param(c: &Rat) -> Result<(), ContinuantError> {
    if c.is_zero() {
        Err(ContinuantError::ZeroParameter)
    } else {
        Ok(())
    }
}

/// Forward recurrence without the parameter check. Callers guarantee `c != 0`.
pub(crate) fn continuant(c: &Rat, xs: &[Rat]) -> Rat {
    let mut prev = Rat::zero();
    let mut cur = Rat::one();
    for x in xs {
        let next = x * &cur + c * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `P_k^c(xs)` by the defining recurrence, linear in `k`.
pub fn continuant_eval(c: &Rat, xs: &[Rat]) -> Result<Rat, ContinuantError> {
    nonzero_param(c)?;
    Ok(continuant(c, xs))
}

/// Determinant of the tridiagonal matrix with `xs` on the diagonal, `-c` above
/// and `1` below, by Gaussian elimination over the rationals.
pub fn continuant_det(c: &Rat, xs: &[Rat]) -> Result<Rat, ContinuantError> {
    nonzero_param(c)?;
    let k = xs.len();
    let mut m: Vec<Vec<Rat>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|col| {
                    if col == r {
                        xs[r].clone()
                    } else if col == r + 1 {
                        -c
                    } else if col + 1 == r {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = Rat::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Rat::zero());
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col]
                .checked_div(&p)
                .expect("pivot chosen nonzero");
            for cc in col..k {
                let delta = &factor * &m[col][cc];
                m[r][cc] -= delta;
            }
        }
    }
    Ok(det)
}

/// `P_k` through the front recursion `P_k = x_1 P_{k-1}(x_2..) + c P_{k-2}(x_3..)`.
pub fn continuant_front_eval(c: &Rat, xs: &[Rat]) -> Result<Rat, ContinuantError> {
    nonzero_param(c)?;
    // suffix values: after processing x_m, `cur` = P(x_m..x_k), `next` = P(x_{m+1}..x_k)
    let mut next = Rat::zero();
    let mut cur = Rat::one();
    for x in xs.iter().rev() {
        let val = x * &cur + c * &next;
        next = std::mem::replace(&mut cur, val);
    }
    Ok(cur)
}

/// The continued fraction `x_1 + c/(x_2 + c/(... + c/x_k))`, which equals
/// `P_k(x_1..x_k) / P_{k-1}(x_2..x_k)` whenever every partial denominator is nonzero.
pub fn continued_fraction_eval(c: &Rat, xs: &[Rat]) -> Result<Rat, ContinuantError> {
    nonzero_param(c)?;
    let Some((last, rest)) = xs.split_last() else {
        return Err(ContinuantError::ZeroDenominatorInCF { position: 1 });
    };
    let mut acc = last.clone();
    for (idx, x) in rest.iter().enumerate().rev() {
        let frac = c
            .checked_div(&acc)
            .map_err(|_| ContinuantError::ZeroDenominatorInCF { position: idx + 2 })?;
        acc = x + frac;
    }
    Ok(acc)
}

/// `P'_k = b x_k P'_{k-1} + c P'_{k-2}`; equals `P_k^c(b x_1, ..., b x_k)`.
pub fn biparam_eval(b: &Rat, c: &Rat, xs: &[Rat]) -> Result<Rat, ContinuantError> {
    if b.is_zero() {
        return Err(ContinuantError::ZeroParameter);
    }
    nonzero_param(c)?;
    let mut prev = Rat::zero();
    let mut cur = Rat::one();
    for x in xs {
        let next = b * x * &cur + c * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Sign relating `P_k^{-c}(x'_j..x'_{j+k-1})` to `P_k^c(x_j..x_{j+k-1})` when
/// `x'` negates the odd-indexed variables.
///
/// | k mod 4 | j even | j odd |
/// |---------|--------|-------|
/// | 0       | +1     | +1    |
/// | 1       | +1     | -1    |
/// | 2       | -1     | -1    |
/// | 3       | -1     | +1    |
pub fn sign_flip_factor(order: i64, start: i64) -> i32 {
    let even = start.rem_euclid(2) == 0;
    match (order.rem_euclid(4), even) {
        (0, _) => 1,
        (1, true) => 1,
        (1, false) => -1,
        (2, _) => -1,
        (3, true) => -1,
        (3, false) => 1,
        _ => unreachable!(),
    }
}

/// Continuant recurrence over arbitrary polynomial entries.
pub fn continuant_poly(param: &Poly, xs: &[Poly]) -> Poly {
    let mut prev = Poly::zero();
    let mut cur = Poly::one();
    for x in xs {
        let next = &(x * &cur) + &(param * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Symbolic `P_k^c(x_1, ..., x_k)` in `Q[c, x_1..x_k]`.
pub fn continuant_sym(k: usize, bound: usize) -> Result<Poly, ContinuantError> {
    if k > bound {
        return Err(ContinuantError::BoundExceeded { requested: k, bound });
    }
    let xs: Vec<Poly> = (1..=k as i64).map(Poly::x).collect();
    Ok(continuant_poly(&Poly::c(), &xs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, rats};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from(x)).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(continuant_eval(&Rat::from(1), &ints(&[1, 2])).unwrap(), Rat::from(3));
        assert_eq!(continuant_eval(&Rat::from(4), &ints(&[2, -3, -1])).unwrap(), Rat::from(10));
        assert_eq!(continuant_eval(&Rat::from(-1), &[]).unwrap(), Rat::one());
        assert_eq!(continuant_eval(&Rat::zero(), &[]), Err(ContinuantError::ZeroParameter));
    }

    #[test]
    fn det_examples() {
        assert_eq!(continuant_det(&Rat::from(4), &ints(&[2, -3])).unwrap(), Rat::from(-2));
        assert_eq!(continuant_det(&Rat::from(1), &ints(&[5])).unwrap(), Rat::from(5));
        assert_eq!(continuant_det(&Rat::from(-1), &ints(&[1, 2, 2, 1])).unwrap(), Rat::zero());
        assert_eq!(continuant_det(&Rat::from(3), &[]).unwrap(), Rat::one());
        // zero leading diagonal forces a row swap
        assert_eq!(
            continuant_det(&Rat::from(2), &ints(&[0, 5, 1])).unwrap(),
            continuant(&Rat::from(2), &ints(&[0, 5, 1]))
        );
    }

    #[test]
    fn front_examples() {
        assert_eq!(continuant_front_eval(&Rat::from(4), &ints(&[2, -3, -1])).unwrap(), Rat::from(10));
        assert_eq!(continuant_front_eval(&Rat::from(7), &ints(&[-5])).unwrap(), Rat::from(-5));
        assert_eq!(continuant_front_eval(&Rat::from(-4), &ints(&[3, 3, 4])).unwrap(), Rat::from(8));
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(continued_fraction_eval(&Rat::one(), &ints(&[1, 1])).unwrap(), Rat::from(2));
        let c = Rat::from(4);
        assert_eq!(continued_fraction_eval(&c, &ints(&[2, -3, -1])).unwrap(), q(10, 7));
        assert_eq!(continuant_eval(&c, &ints(&[-3, -1])).unwrap(), Rat::from(7));
        assert_eq!(
            continued_fraction_eval(&Rat::one(), &ints(&[1, 0])),
            Err(ContinuantError::ZeroDenominatorInCF { position: 2 })
        );
        assert!(continued_fraction_eval(&Rat::one(), &[]).is_err());
    }

    #[test]
    fn biparam_examples() {
        let (b, c) = (Rat::from(2), Rat::from(3));
        assert_eq!(biparam_eval(&b, &c, &ints(&[5])).unwrap(), Rat::from(10));
        assert_eq!(biparam_eval(&b, &c, &ints(&[1, 2])).unwrap(), Rat::from(11));
        assert_eq!(continuant_eval(&c, &ints(&[2, 4])).unwrap(), Rat::from(11));
        assert_eq!(biparam_eval(&Rat::one(), &Rat::from(-1), &ints(&[1, 2, 2])).unwrap(), Rat::one());
        assert_eq!(biparam_eval(&Rat::zero(), &c, &[]), Err(ContinuantError::ZeroParameter));
    }

    #[test]
    fn symbolic_small_orders() {
        assert_eq!(continuant_sym(0, 8).unwrap(), Poly::one());
        assert_eq!(continuant_sym(2, 8).unwrap().to_string(), "x1*x2 + c");
        assert_eq!(continuant_sym(3, 8).unwrap().to_string(), "x1*x2*x3 + c*x1 + c*x3");
        assert_eq!(continuant_sym(8, 8).unwrap().len(), 34);
        assert_eq!(
            continuant_sym(9, 8),
            Err(ContinuantError::BoundExceeded { requested: 9, bound: 8 })
        );
        // every coefficient is 1
        assert!(continuant_sym(7, 8).unwrap().terms().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn sign_table() {
        let expected = [(0, [1, 1]), (1, [1, -1]), (2, [-1, -1]), (3, [-1, 1])];
        for (k, [even, odd]) in expected {
            for shift in [0, 4, 8] {
                assert_eq!(sign_flip_factor(k + shift, 0), even);
                assert_eq!(sign_flip_factor(k + shift, -2), even);
                assert_eq!(sign_flip_factor(k + shift, 1), odd);
                assert_eq!(sign_flip_factor(k + shift, -3), odd);
            }
        }
    }

    #[test]
    fn sign_flip_numeric_matches_table() {
        // odd-indexed entries negated, parameter negated
        let c = q(3, 2);
        let base = rats(&["2", "-1/3", "5", "7/2", "-4", "1", "3", "-2", "9", "1/5"]);
        for start in 0..2i64 {
            for k in 0..=8usize {
                let xs = &base[..k];
                let flipped: Vec<Rat> = xs
                    .iter()
                    .enumerate()
                    .map(|(off, x)| if (start + off as i64) % 2 != 0 { -x } else { x.clone() })
                    .collect();
                let lhs = continuant(&-&c, &flipped);
                let rhs = continuant(&c, xs) * Rat::from(sign_flip_factor(k as i64, start) as i64);
                assert_eq!(lhs, rhs, "k={k} start={start}");
            }
        }
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-30i64..30, 1i64..6).prop_map(|(n, d)| q(n, d))
    }

    fn arb_nonzero() -> impl Strategy<Value = Rat> {
        arb_rat().prop_filter("nonzero", |r| !r.is_zero())
    }

    proptest! {
        #[test]
        fn evaluators_agree(c in arb_nonzero(), xs in proptest::collection::vec(arb_rat(), 0..12)) {
            let a = continuant_eval(&c, &xs).unwrap();
            prop_assert_eq!(&a, &continuant_det(&c, &xs).unwrap());
            prop_assert_eq!(&a, &continuant_front_eval(&c, &xs).unwrap());
        }

        #[test]
        fn continued_fraction_consistent(c in arb_nonzero(), xs in proptest::collection::vec(arb_rat(), 1..10)) {
            if let Ok(v) = continued_fraction_eval(&c, &xs) {
                let tail = continuant(&c, &xs[1..]);
                prop_assert_eq!(v * tail, continuant(&c, &xs));
            }
        }

        #[test]
        fn modular_identity(c in arb_nonzero(), xs in proptest::collection::vec(arb_rat(), 2..12)) {
            let k = xs.len() - 1;
            let lhs = continuant(&c, &xs[..k]) * continuant(&c, &xs[1..])
                - continuant(&c, &xs[1..k]) * continuant(&c, &xs);
            prop_assert_eq!(lhs, (-&c).pow(k as i32).unwrap());
        }

        #[test]
        fn positivity(c in 1i64..20, xs in proptest::collection::vec(1i64..20, 0..12)) {
            let xs: Vec<Rat> = xs.into_iter().map(Rat::from).collect();
            prop_assert!(continuant(&Rat::from(c), &xs).is_positive());
        }

        #[test]
        fn scaling(c in arb_nonzero(), d in arb_nonzero(), xs in proptest::collection::vec(arb_rat(), 0..10)) {
            let scaled: Vec<Rat> = xs.iter().map(|x| x * &d).collect();
            let lhs = continuant(&(&c * &d * &d), &scaled);
            prop_assert_eq!(lhs, d.pow(xs.len() as i32).unwrap() * continuant(&c, &xs));
        }

        #[test]
        fn biparam_reduces(b in arb_nonzero(), c in arb_nonzero(), xs in proptest::collection::vec(arb_rat(), 0..10)) {
            let scaled: Vec<Rat> = xs.iter().map(|x| x * &b).collect();
            prop_assert_eq!(biparam_eval(&b, &c, &xs).unwrap(), continuant(&c, &scaled));
        }
    }
}

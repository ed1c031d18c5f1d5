//! Zero-polynomial checks of the continuant identities.

use std::fmt;

use super::poly::{Poly, Var};
use super::{continuant_poly, sign_flip_factor, ContinuantError};
use crate::exactnum::Rat;
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn start(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// `P_{k+l} = P_k P_l(shifted) + c P_{k-1} P_{l-1}(shifted by one more)`.
    Concat { k: usize, l: usize },
    /// `P_k(x_1..x_k) P_k(x_2..x_{k+1}) - P_{k-1}(x_2..x_k) P_{k+1}(x_1..x_{k+1}) = (-c)^k`.
    Modular { k: usize },
    /// `P_k^{c d^2}(d x) = d^k P_k^c(x)`.
    Scaling { k: usize },
    /// `P_k = x_1 P_{k-1}(x_2..) + c P_{k-2}(x_3..)`.
    Front { k: usize },
    /// Negating `c` and the odd-indexed variables multiplies `P_k` by a sign.
    SignFlip { k: usize, start: Parity },
    /// `P_k` is homogeneous for both parity gradings.
    Homogeneity { k: usize },
}

impl Identity {
    /// Highest continuant order the check expands.
    pub fn max_order(&self) -> usize {
        match *self {
            Identity::Concat { k, l } => k + l,
            Identity::Modular { k } => k + 1,
            Identity::Scaling { k }
            | Identity::Front { k }
            | Identity::SignFlip { k, .. }
            | Identity::Homogeneity { k } => k,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Concat { k, l } => write!(f, "concat({k},{l})"),
            Identity::Modular { k } => write!(f, "modular({k})"),
            Identity::Scaling { k } => write!(f, "scaling({k})"),
            Identity::Front { k } => write!(f, "front({k})"),
            Identity::SignFlip { k, start: Parity::Even } => write!(f, "signflip({k},even)"),
            Identity::SignFlip { k, start: Parity::Odd } => write!(f, "signflip({k},odd)"),
            Identity::Homogeneity { k } => write!(f, "homogeneity({k})"),
        }
    }
}

/// Evidence of a passed check: the expanded left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub identity: Identity,
    pub lhs: Poly,
}

fn xs(range: std::ops::RangeInclusive<i64>) -> Vec<Poly> {
    range.map(Poly::x).collect()
}

fn p(vars: &[Poly]) -> Poly {
    continuant_poly(&Poly::c(), vars)
}

fn zero_check(identity: Identity, lhs: Poly, rhs: Poly) -> Result<Certificate, ContinuantError> {
    let residual = &lhs - &rhs;
    if residual.is_zero() {
        Ok(Certificate { identity, lhs })
    } else {
        Err(ContinuantError::Counterexample {
            identity: identity.to_string(),
            residual,
        })
    }
}

/// Expands both sides of `which` and checks their difference is the zero polynomial.
pub fn verify_identity(which: Identity, bound: usize) -> Result<Certificate, ContinuantError> {
    if which.max_order() > bound {
        return Err(ContinuantError::BoundExceeded {
            requested: which.max_order(),
            bound,
        });
    }
    let invalid = || ContinuantError::InvalidIdentity {
        identity: which.to_string(),
    };
    match which {
        Identity::Concat { k, l } => {
            if k == 0 || l == 0 {
                return Err(invalid());
            }
            let (k, l) = (k as i64, l as i64);
            let lhs = p(&xs(1..=k + l));
            let rhs = &(&p(&xs(1..=k)) * &p(&xs(k + 1..=k + l)))
                + &(&Poly::c() * &(&p(&xs(1..=k - 1)) * &p(&xs(k + 2..=k + l))));
            zero_check(which, lhs, rhs)
        }
        Identity::Modular { k } => {
            if k == 0 {
                return Err(invalid());
            }
            let ki = k as i64;
            let lhs = &(&p(&xs(1..=ki)) * &p(&xs(2..=ki + 1)))
                - &(&p(&xs(2..=ki)) * &p(&xs(1..=ki + 1)));
            let rhs = (-&Poly::c()).pow(k as u32);
            zero_check(which, lhs, rhs)
        }
        Identity::Scaling { k } => {
            let d = Poly::var(Var::D);
            let param = &Poly::c() * &d.pow(2);
            let scaled: Vec<Poly> = xs(1..=k as i64).iter().map(|x| &d * x).collect();
            let lhs = continuant_poly(&param, &scaled);
            let rhs = &d.pow(k as u32) * &p(&xs(1..=k as i64));
            zero_check(which, lhs, rhs)
        }
        Identity::Front { k } => {
            if k == 0 {
                return Err(invalid());
            }
            let ki = k as i64;
            let lhs = p(&xs(1..=ki));
            // P_{-1} = 0 when k = 1
            let tail2 = if k >= 2 { p(&xs(3..=ki)) } else { Poly::zero() };
            let rhs = &(&Poly::x(1) * &p(&xs(2..=ki))) + &(&Poly::c() * &tail2);
            zero_check(which, lhs, rhs)
        }
        Identity::SignFlip { k, start } => {
            let j = start.start();
            let window = xs(j..=j + k as i64 - 1);
            let flipped: Vec<Poly> = window
                .iter()
                .zip(j..)
                .map(|(x, idx)| if idx.rem_euclid(2) == 1 { -x } else { x.clone() })
                .collect();
            let lhs = continuant_poly(&-&Poly::c(), &flipped);
            let sign = Rat::from(sign_flip_factor(k as i64, j) as i64);
            let rhs = p(&window).scale(&sign);
            zero_check(which, lhs, rhs)
        }
        Identity::Homogeneity { k } => {
            let poly = p(&xs(1..=k as i64));
            let even_grading = |v: Var| match v {
                Var::C => 1,
                Var::X(j) if j.rem_euclid(2) == 0 => 1,
                _ => 0,
            };
            let odd_grading = |v: Var| match v {
                Var::C => 1,
                Var::X(j) if j.rem_euclid(2) == 1 => 1,
                _ => 0,
            };
            if poly.weighted_degrees(even_grading).len() <= 1
                && poly.weighted_degrees(odd_grading).len() <= 1
            {
                Ok(Certificate {
                    identity: which,
                    lhs: poly,
                })
            } else {
                Err(ContinuantError::Counterexample {
                    identity: which.to_string(),
                    residual: poly,
                })
            }
        }
    }
}

/// Every identity instance whose expansion stays within `max_k`.
pub fn identity_suite(max_k: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    for k in 1..max_k {
        for l in 1..=max_k - k {
            out.push(Identity::Concat { k, l });
        }
    }
    out.extend((1..max_k).map(|k| Identity::Modular { k }));
    out.extend((0..=max_k).map(|k| Identity::Scaling { k }));
    out.extend((1..=max_k).map(|k| Identity::Front { k }));
    for k in 0..=max_k {
        out.push(Identity::SignFlip { k, start: Parity::Even });
        out.push(Identity::SignFlip { k, start: Parity::Odd });
    }
    out.extend((0..=max_k).map(|k| Identity::Homogeneity { k }));
    out
}

pub fn verify_suite(
    max_k: usize,
    exec: Exec,
) -> Vec<(Identity, Result<Certificate, ContinuantError>)> {
    let suite = identity_suite(max_k);
    let results = exec.map(&suite, |id| verify_identity(*id, max_k));
    suite.into_iter().zip(results).collect()
}

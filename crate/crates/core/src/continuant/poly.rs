//! Sparse multivariate polynomials over the rationals.
//!
//! Indeterminates are the parameter `c`, an auxiliary scalar `d`, and the
//! sequence variables `x_j` indexed by absolute integer position. Terms with a
//! zero coefficient are never stored, so structural equality is polynomial
//! equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    C,
    D,
    X(i64),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::C => f.write_str("c"),
            Var::D => f.write_str("d"),
            Var::X(j) if *j >= 0 => write!(f, "x{j}"),
            Var::X(j) => write!(f, "x({j})"),
        }
    }
}

/// Product of variables with positive exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(BTreeMap::from([(v, 1)]))
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// Degree under a per-variable weight.
    pub fn weighted_degree(&self, weight: impl Fn(Var) -> u32) -> u32 {
        self.0.iter().map(|(v, e)| weight(*v) * e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(*v).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(value: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), value);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Rat::one());
        p
    }

    pub fn c() -> Self {
        Poly::var(Var::C)
    }

    pub fn x(j: i64) -> Self {
        Poly::var(Var::X(j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Replaces each variable for which `sub` returns a polynomial.
    pub fn substitute(&self, sub: impl Fn(Var) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, coeff) in &self.terms {
            let mut term = Poly::constant(coeff.clone());
            for (v, e) in m.vars() {
                let factor = match sub(v) {
                    Some(p) => p.pow(e),
                    None => Poly {
                        terms: BTreeMap::from([(Monomial(BTreeMap::from([(v, e)])), Rat::one())]),
                    },
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, value: impl Fn(Var) -> Rat) -> Rat {
        self.terms
            .iter()
            .map(|(m, coeff)| {
                let mut acc = coeff.clone();
                for (v, e) in m.vars() {
                    let x = value(v);
                    for _ in 0..e {
                        acc *= &x;
                    }
                }
                acc
            })
            .sum()
    }

    /// Distinct weighted degrees over all terms; a homogeneous polynomial has at most one.
    pub fn weighted_degrees(&self, weight: impl Fn(Var) -> u32) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.weighted_degree(&weight)).collect()
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms by descending total degree, then by monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
        for (idx, (m, coeff)) in terms.into_iter().enumerate() {
            let negative = coeff.is_negative();
            let mag = coeff.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rat::from(-1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    #[test]
    fn cancellation_drops_terms() {
        let a = &Poly::x(1) * &Poly::x(2);
        let b = &a + &Poly::c();
        let diff = &b - &a;
        assert_eq!(diff, Poly::c());
        assert!((&diff - &Poly::c()).is_zero());
        assert_eq!((&diff - &Poly::c()).to_string(), "0");
    }

    #[test]
    fn display_orders_by_degree() {
        let p = &(&(&Poly::x(1) * &Poly::x(2)) * &Poly::x(3))
            + &(&(&Poly::c() * &Poly::x(3)) + &(&Poly::c() * &Poly::x(1)));
        assert_eq!(p.to_string(), "x1*x2*x3 + c*x1 + c*x3");
        let r = &Poly::constant(q(-3, 2)) + &Poly::x(-1).scale(&q(2, 1));
        assert_eq!(r.to_string(), "2*x(-1) - 3/2");
        assert_eq!(Poly::c().pow(2).neg().to_string(), "-c^2");
    }

    #[test]
    fn substitution_and_eval_commute() {
        let p = &(&Poly::x(1) * &Poly::x(2)) + &Poly::c();
        let flipped = p.substitute(|v| match v {
            Var::C => Some(-&Poly::c()),
            Var::X(1) => Some(-&Poly::x(1)),
            _ => None,
        });
        assert_eq!(flipped, -&p);
        let val = p.eval(|v| match v {
            Var::C => Rat::from(4),
            Var::X(1) => Rat::from(2),
            _ => Rat::from(-3),
        });
        assert_eq!(val, Rat::from(-2));
    }

    #[test]
    fn weighted_degrees_detect_inhomogeneity() {
        let p = &Poly::x(1) + &Poly::c();
        assert_eq!(p.weighted_degrees(|_| 1).len(), 1);
        let w = |v: Var| if v == Var::C { 1 } else { 0 };
        assert_eq!(p.weighted_degrees(w).len(), 2);
    }
}

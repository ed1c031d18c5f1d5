//! Exact rational scalars.
//!
//! [`Rat`] wraps an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. Division is only available through
//! [`Rat::checked_div`], so a zero divisor surfaces as an error value.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("malformed rational {0:?}: expected [+-]digits or [+-]digits/digits")]
    MalformedRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is zero")]
    DivisorZero,
    #[error("{0} is not the square of a rational")]
    NotASquare(Rat),
}

/// Exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den` reduced to lowest terms.
    pub fn new(num: i64, den: i64) -> Result<Self, ExactError> {
        if den == 0 {
            return Err(ExactError::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rat, ExactError> {
        Rat::one().checked_div(self)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i32) -> Result<Rat, ExactError> {
        if exp < 0 && self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(num_traits::Pow::pow(&self.0, exp)))
    }

    /// The nonnegative rational square root, when one exists.
    pub fn sqrt_exact(&self) -> Result<Rat, ExactError> {
        if self.is_negative() {
            return Err(ExactError::NotASquare(self.clone()));
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        if &(&num * &num) != self.numer() || &(&den * &den) != self.denom() {
            return Err(ExactError::NotASquare(self.clone()));
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    /// Whether `q / self` is an integer.
    pub fn divides(&self, q: &Rat) -> Result<bool, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisorZero);
        }
        Ok(q.checked_div(self)?.is_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

/// Parses `[+-]digits` or `[+-]digits/digits`.
pub fn rat_parse(text: &str) -> Result<Rat, ExactError> {
    fn signed_digits(s: &str) -> bool {
        let body = s.strip_prefix(['+', '-']).unwrap_or(s);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    }
    fn digits(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    }
    let malformed = || ExactError::MalformedRational(text.to_string());
    let (num_txt, den_txt) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    if !signed_digits(num_txt) {
        return Err(malformed());
    }
    let num: BigInt = num_txt
        .strip_prefix('+')
        .unwrap_or(num_txt)
        .parse()
        .map_err(|_| malformed())?;
    let den: BigInt = match den_txt {
        None => BigInt::one(),
        Some(d) if digits(d) => d.parse().map_err(|_| malformed())?,
        Some(_) => return Err(malformed()),
    };
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator(text.to_string()));
    }
    Ok(Rat(BigRational::new(num, den)))
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        rat_parse(s)
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

impl From<BigInt> for Rat {
    fn from(v: BigInt) -> Self {
        Rat(BigRational::from_integer(v))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        rat_parse(&text).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $assign_trait<&Rat> for Rat {
            fn $assign_method(&mut self, rhs: &Rat) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign_trait<Rat> for Rat {
            fn $assign_method(&mut self, rhs: Rat) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && self.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

/// Shorthand for building rationals in tests and examples. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Rat {
    Rat::new(num, den).expect("nonzero denominator")
}

/// Parses a list of rationals, panicking on malformed input. Test helper.
pub fn rats(items: &[&str]) -> Vec<Rat> {
    items
        .iter()
        .map(|s| rat_parse(s).expect("well-formed rational"))
        .collect()
}

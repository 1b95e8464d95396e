use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::Field;
use crate::error::{Error, Result};

/// Element of ℚ in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n"` or `"n/d"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
        match s.trim().split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::integer(s.trim().parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational(self.0 + o.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        Rational(self.0 - o.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        Rational(self.0 * o.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero_in(_: &()) -> Self {
        Rational(BigRational::zero())
    }

    fn one_in(_: &()) -> Self {
        Rational(BigRational::one())
    }

    fn from_int(_: &(), n: i64) -> Self {
        Rational::integer(n)
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Only perfect squares of rationals have roots; the non-negative root is
    /// returned.
    fn sqrt(&self) -> Option<Self> {
        let n = exact_sqrt(self.0.numer())?;
        let d = exact_sqrt(self.0.denom())?;
        Some(Rational(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn field_ops() {
        let a: Rational = "2/3".parse().unwrap();
        assert!((a.clone() * a.inv().unwrap()).is_one());
        assert_eq!(Rational::from(0).inv(), Err(Error::ZeroInverse));
        let q: Rational = "9/4".parse().unwrap();
        assert_eq!(q.sqrt().unwrap(), "3/2".parse().unwrap());
        assert!(Rational::from(2).sqrt().is_none());
        assert!(Rational::from(-4).sqrt().is_none());
    }
}

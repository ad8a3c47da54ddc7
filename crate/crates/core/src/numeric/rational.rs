//! Arbitrary-precision rationals.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigRat(BigRational);

impl BigRat {
    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn one() -> Self {
        BigRat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        BigRat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        BigRat(BigRational::from_integer(n))
    }

    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRat(BigRational::new(numer, denom)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        self.0.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &BigRat) -> Result<BigRat> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRat(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<BigRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRat(self.0.recip()))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i32) -> Result<BigRat> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRat(num_traits::Pow::pow(&self.0, exp)))
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for BigRat {
    fn from(n: i64) -> Self {
        BigRat::from_int(n)
    }
}

impl From<BigInt> for BigRat {
    fn from(n: BigInt) -> Self {
        BigRat::from_bigint(n)
    }
}

impl From<BigRational> for BigRat {
    fn from(r: BigRational) -> Self {
        BigRat(r)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for BigRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadRational(s.to_string());
        let s = s.trim();
        let s = s.strip_prefix('+').unwrap_or(s);
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                BigRat::new(n, d)
            }
            None => Ok(BigRat::from_bigint(s.parse().map_err(|_| bad())?)),
        }
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident, $imp_assign:ident, $method_assign:ident) => {
        impl $imp for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat(self.0.$method(rhs.0))
            }
        }

        impl<'a> $imp<&'a BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &'a BigRat) -> BigRat {
                BigRat(self.0.$method(&rhs.0))
            }
        }

        impl<'a, 'b> $imp<&'b BigRat> for &'a BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &'b BigRat) -> BigRat {
                BigRat((&self.0).$method(&rhs.0))
            }
        }

        impl<'a> $imp<BigRat> for &'a BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat((&self.0).$method(rhs.0))
            }
        }

        impl $imp_assign for BigRat {
            fn $method_assign(&mut self, rhs: BigRat) {
                self.0.$method_assign(rhs.0);
            }
        }

        impl<'a> $imp_assign<&'a BigRat> for BigRat {
            fn $method_assign(&mut self, rhs: &'a BigRat) {
                self.0.$method_assign(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

impl Sum for BigRat {
    fn sum<I: Iterator<Item = BigRat>>(iter: I) -> BigRat {
        iter.fold(BigRat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a BigRat> for BigRat {
    fn sum<I: Iterator<Item = &'a BigRat>>(iter: I) -> BigRat {
        iter.fold(BigRat::zero(), |acc, x| acc + x)
    }
}

impl Product for BigRat {
    fn product<I: Iterator<Item = BigRat>>(iter: I) -> BigRat {
        iter.fold(BigRat::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRat {
        s.parse().unwrap()
    }

    #[test]
    fn fraction_arithmetic() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("3/7") * q("7/3"), BigRat::one());
        assert_eq!(q("1/2") - q("1/2"), BigRat::zero());
        assert_eq!(-q("2/5"), q("-2/5"));
    }

    #[test]
    fn lowest_terms() {
        let r = BigRat::ratio(2, 4).unwrap();
        assert_eq!(r.to_string(), "1/2");
        let r = BigRat::ratio(3, -6).unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(BigRat::ratio(0, 5).unwrap().to_string(), "0");
        assert!(BigRat::ratio(0, 5).unwrap().denom() == &BigInt::from(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            q("1").checked_div(&BigRat::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(BigRat::zero().recip(), Err(Error::DivisionByZero)));
        assert!(matches!(BigRat::ratio(1, 0), Err(Error::DivisionByZero)));
        assert!(matches!("3/0".parse::<BigRat>(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("+4/6").to_string(), "2/3");
        assert_eq!(q("-12").to_string(), "-12");
        assert!("x/2".parse::<BigRat>().is_err());
        assert!("".parse::<BigRat>().is_err());
    }

    #[test]
    fn ordering_and_sign() {
        assert!(q("1/3") < q("1/2"));
        assert_eq!(q("-1/3").sign(), Ordering::Less);
        assert_eq!(BigRat::zero().sign(), Ordering::Equal);
        assert_eq!(q("2").pow(-2).unwrap(), q("1/4"));
    }
}

//! The field Q(√3), elements `a + b√3` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::BigRat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt3 {
    pub rat: BigRat,
    pub irr: BigRat,
}

impl QuadExt3 {
    pub fn new(rat: BigRat, irr: BigRat) -> Self {
        QuadExt3 { rat, irr }
    }

    pub fn from_int(n: i64) -> Self {
        QuadExt3::new(BigRat::from_int(n), BigRat::zero())
    }

    pub fn from_rat(r: BigRat) -> Self {
        QuadExt3::new(r, BigRat::zero())
    }

    pub fn zero() -> Self {
        QuadExt3::from_int(0)
    }

    pub fn one() -> Self {
        QuadExt3::from_int(1)
    }

    /// `3 + 2√3`.
    pub fn three_plus_two_sqrt3() -> Self {
        QuadExt3::new(BigRat::from_int(3), BigRat::from_int(2))
    }

    /// `2√3`.
    pub fn two_sqrt3() -> Self {
        QuadExt3::new(BigRat::zero(), BigRat::from_int(2))
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt3::new(self.rat.clone(), -&self.irr)
    }

    /// The field norm `a² − 3b²`.
    pub fn norm(&self) -> BigRat {
        &self.rat * &self.rat - BigRat::from_int(3) * &self.irr * &self.irr
    }

    /// Exact sign of `a + b√3`, decided without floating point.
    pub fn sign(&self) -> Ordering {
        let (sa, sb) = (self.rat.sign(), self.irr.sign());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // opposite signs: |a| vs √3|b|, i.e. a² vs 3b²
            _ => {
                let a2 = &self.rat * &self.rat;
                let b2 = BigRat::from_int(3) * &self.irr * &self.irr;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("√3 is irrational"),
                }
            }
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(QuadExt3::new(c.rat.checked_div(&n)?, c.irr.checked_div(&n)?))
    }

    pub fn div_rat(&self, r: &BigRat) -> Result<Self> {
        Ok(QuadExt3::new(self.rat.checked_div(r)?, self.irr.checked_div(r)?))
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        QuadExt3::new(&self.rat * r, &self.irr * r)
    }

    /// Power by repeated squaring; a negative exponent inverts first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let mut base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = QuadExt3::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Power by `exp` successive multiplications, for cross-checking `pow`.
    pub fn pow_naive(&self, exp: u32) -> Self {
        (0..exp).fold(QuadExt3::one(), |acc, _| &acc * self)
    }

    /// Lossy decimal approximation, for display only.
    pub fn approx_f64(&self) -> f64 {
        let to_f = |r: &BigRat| {
            use num_traits::ToPrimitive;
            r.as_inner().to_f64().unwrap_or(f64::NAN)
        };
        to_f(&self.rat) + to_f(&self.irr) * 3f64.sqrt()
    }
}

impl PartialOrd for QuadExt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

impl From<BigRat> for QuadExt3 {
    fn from(r: BigRat) -> Self {
        QuadExt3::from_rat(r)
    }
}

impl<'b> Add<&'b QuadExt3> for &QuadExt3 {
    type Output = QuadExt3;
    fn add(self, rhs: &'b QuadExt3) -> QuadExt3 {
        QuadExt3::new(&self.rat + &rhs.rat, &self.irr + &rhs.irr)
    }
}

impl<'b> Sub<&'b QuadExt3> for &QuadExt3 {
    type Output = QuadExt3;
    fn sub(self, rhs: &'b QuadExt3) -> QuadExt3 {
        QuadExt3::new(&self.rat - &rhs.rat, &self.irr - &rhs.irr)
    }
}

impl<'b> Mul<&'b QuadExt3> for &QuadExt3 {
    type Output = QuadExt3;
    fn mul(self, rhs: &'b QuadExt3) -> QuadExt3 {
        let three = BigRat::from_int(3);
        QuadExt3::new(
            &self.rat * &rhs.rat + three * &self.irr * &rhs.irr,
            &self.rat * &rhs.irr + &rhs.rat * &self.irr,
        )
    }
}

impl Add for QuadExt3 {
    type Output = QuadExt3;
    fn add(self, rhs: QuadExt3) -> QuadExt3 {
        &self + &rhs
    }
}

impl Sub for QuadExt3 {
    type Output = QuadExt3;
    fn sub(self, rhs: QuadExt3) -> QuadExt3 {
        &self - &rhs
    }
}

impl Mul for QuadExt3 {
    type Output = QuadExt3;
    fn mul(self, rhs: QuadExt3) -> QuadExt3 {
        &self * &rhs
    }
}

impl Neg for QuadExt3 {
    type Output = QuadExt3;
    fn neg(self) -> QuadExt3 {
        QuadExt3::new(-self.rat, -self.irr)
    }
}

impl fmt::Display for QuadExt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let irr_abs = self.irr.abs();
        let irr_str = if irr_abs.is_integer() {
            format!("{irr_abs}")
        } else {
            format!("({irr_abs})")
        };
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => {
                let sign = if self.irr.is_negative() { "-" } else { "" };
                write!(f, "{sign}{irr_str}√3")
            }
            (false, false) => {
                let sign = if self.irr.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{irr_str}√3", self.rat)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qe(a: i64, b: i64) -> QuadExt3 {
        QuadExt3::new(BigRat::from_int(a), BigRat::from_int(b))
    }

    #[test]
    fn square_of_three_plus_two_sqrt3() {
        let x = QuadExt3::three_plus_two_sqrt3();
        assert_eq!(x.pow(2).unwrap(), qe(21, 12));
        assert_eq!(&x * &x, qe(21, 12));
    }

    #[test]
    fn sign_by_case_analysis() {
        // 21² = 441 > 432 = 3·12²
        assert_eq!(qe(-21, 12).sign(), Ordering::Less);
        assert_eq!(qe(21, -12).sign(), Ordering::Greater);
        assert_eq!(qe(-1, 1).sign(), Ordering::Greater);
        assert_eq!(qe(0, 0).sign(), Ordering::Equal);
        assert_eq!(qe(0, -1).sign(), Ordering::Less);
        assert!(qe(3, 2) > qe(6, 0));
        assert!(qe(3, 2) < qe(7, 0));
    }

    #[test]
    fn powers_of_two_sqrt3() {
        assert_eq!(QuadExt3::two_sqrt3().pow(6).unwrap(), qe(1728, 0));
        assert_eq!(QuadExt3::two_sqrt3().pow_naive(6), qe(1728, 0));
        assert_eq!(QuadExt3::two_sqrt3().pow(0).unwrap(), QuadExt3::one());
    }

    #[test]
    fn inverse_and_negative_power() {
        let x = QuadExt3::three_plus_two_sqrt3();
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, QuadExt3::one());
        assert_eq!(&x.pow(-3).unwrap() * &x.pow(3).unwrap(), QuadExt3::one());
        assert!(QuadExt3::zero().inverse().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(qe(21, 12).to_string(), "21+12√3");
        assert_eq!(qe(-21, 12).to_string(), "-21+12√3");
        assert_eq!(qe(0, -2).to_string(), "-2√3");
        assert_eq!(qe(1728, 0).to_string(), "1728");
        let h = QuadExt3::new(BigRat::ratio(1, 2).unwrap(), BigRat::ratio(-1, 3).unwrap());
        assert_eq!(h.to_string(), "1/2-(1/3)√3");
    }
}

//! Exact scalars: arbitrary-precision rationals over ℚ and the
//! combinatorial helpers (generalized binomials, factorials) that every
//! structure-constant formula in the crate consumes.
//!
//! `Rational` is kept in lowest terms with a positive denominator at all
//! times, so equality is structural and hashing is safe.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Construct `p/q`, reducing to canonical form. Errors on `q = 0`.
    pub fn new(p: i64, q: i64) -> Result<Self, Error> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// True iff the value is an integer (denominator 1).
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The numerator, valid as an integer only when `is_integer`.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.0.to_integer())
        } else {
            None
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

/// Generalized binomial coefficient with integer upper index: for `a` any
/// integer and `b ≥ 0`,
/// `binomial(a, b) = a(a-1)⋯(a-b+1) / b!`, always an exact integer.
pub fn binomial(a: i64, b: u32) -> BigInt {
    // The running product after step i is binomial(a, i+1), an integer, so
    // each division is exact.
    let mut acc = BigInt::one();
    for i in 0..b as i64 {
        acc *= BigInt::from(a - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `binomial` packaged as a `Rational` coefficient.
pub fn binomial_rat(a: i64, b: u32) -> Rational {
    Rational::from_bigint(binomial(a, b))
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as i64 {
        acc *= BigInt::from(i);
    }
    acc
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints "p" when the denominator is 1 and "p/q"
        // otherwise, with the sign on the numerator.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |_| Error::InvalidRationalLiteral(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(bad)?;
                let q = BigInt::from_str(q.trim()).map_err(bad)?;
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                if q.is_negative() {
                    return Err(Error::InvalidRationalLiteral(s.to_string()));
                }
                Ok(Rational(BigRational::new(p, q)))
            }
            None => {
                let p = BigInt::from_str(s.trim()).map_err(bad)?;
                Ok(Rational(BigRational::from_integer(p)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn arithmetic_canonicalizes() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(rat(2, 4) * Rational::from_int(2), Rational::one());
        assert_eq!(rat(-3, 7).inv().unwrap(), rat(-7, 3));
        assert_eq!(rat(2, -4), rat(-1, 2));
    }

    #[test]
    fn inv_of_zero_errors() {
        assert!(Rational::zero().inv().is_err());
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        // the image constant C(2n, n) at n = 2
        assert_eq!(binomial(4, 2), BigInt::from(6));
        // (-1)(-2)(-3)/6
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn binomial_pascal_rule() {
        for a in -10..=10i64 {
            for b in 1..=10u32 {
                assert_eq!(
                    binomial(a, b),
                    binomial(a - 1, b - 1) + binomial(a - 1, b),
                    "Pascal fails at ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn alternating_binomial_sum_identity() {
        // Σ_{j=0..n} (-1)^j C(i,j) = (-1)^n C(i-1,n)
        for i in 0..=12i64 {
            for n in 0..=8u32 {
                let mut sum = BigInt::from(0);
                for j in 0..=n {
                    let term = binomial(i, j);
                    if j % 2 == 0 {
                        sum += term;
                    } else {
                        sum -= term;
                    }
                }
                let rhs = if n % 2 == 0 {
                    binomial(i - 1, n)
                } else {
                    -binomial(i - 1, n)
                };
                assert_eq!(sum, rhs, "identity fails at (i={i}, n={n})");
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        for s in ["5/6", "-7/3", "0", "12", "-4"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("2/4".parse::<Rational>().unwrap().to_string(), "1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in -40i64..40, b in -40i64..40, c in -40i64..40,
                        p in 1i64..9, q in 1i64..9, r in 1i64..9) {
            let x = rat(a, p);
            let y = rat(b, q);
            let z = rat(c, r);
            prop_assert_eq!((&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x + &(-&x), Rational::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Rational::one());
            }
        }
    }
}

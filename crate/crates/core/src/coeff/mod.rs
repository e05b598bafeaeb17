//! Exact coefficient domains for the series field.
//!
//! [`ConstructibleReal`] is the production coefficient: it is closed under
//! square roots, which is what makes the series field Euclidean.
//! [`BigRational`] also implements [`Coefficient`], with square roots limited
//! to perfect squares; it is handy for cheap property tests of the series
//! layer.

mod interval;
mod quad;
mod real;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use real::ConstructibleReal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Self {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.to_i8() * rhs.to_i8())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::from_i8(-self.to_i8())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("square root is not representable in this coefficient domain")]
    NotRepresentable,
}

/// An exact ordered coefficient field with decidable sign.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_rational(q: BigRational) -> Self;
    fn sign(&self) -> Sign;
    fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError>;
    fn checked_sqrt(&self) -> Result<Self, CoeffError>;
    /// The value as a rational when this is cheap to see.
    fn as_rational(&self) -> Option<BigRational>;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

impl Coefficient for ConstructibleReal {
    fn from_rational(q: BigRational) -> Self {
        ConstructibleReal::from_rational(q)
    }
    fn sign(&self) -> Sign {
        ConstructibleReal::sign(self)
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        ConstructibleReal::checked_div(self, rhs)
    }
    fn checked_sqrt(&self) -> Result<Self, CoeffError> {
        ConstructibleReal::checked_sqrt(self)
    }
    fn as_rational(&self) -> Option<BigRational> {
        ConstructibleReal::as_rational(self)
    }
}

impl Coefficient for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn sign(&self) -> Sign {
        if self.is_positive() {
            Sign::Positive
        } else if self.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if rhs.is_zero() {
            Err(CoeffError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
    fn checked_sqrt(&self) -> Result<Self, CoeffError> {
        if self.is_negative() {
            return Err(CoeffError::NegativeRadicand);
        }
        let root = |n: &BigInt| -> Option<BigInt> {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        match (root(self.numer()), root(self.denom())) {
            (Some(n), Some(d)) => Ok(BigRational::new(n, d)),
            _ => Err(CoeffError::NotRepresentable),
        }
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Negative * Sign::Negative, Sign::Positive);
        assert_eq!(Sign::Zero * Sign::Positive, Sign::Zero);
        assert_eq!(-Sign::Positive, Sign::Negative);
    }

    #[test]
    fn rational_coefficient_sqrt() {
        let q = BigRational::new(9.into(), 4.into());
        assert_eq!(q.checked_sqrt().unwrap(), BigRational::new(3.into(), 2.into()));
        let two = BigRational::from_integer(2.into());
        assert_eq!(two.checked_sqrt().unwrap_err(), CoeffError::NotRepresentable);
        assert_eq!((-two).checked_sqrt().unwrap_err(), CoeffError::NegativeRadicand);
    }
}

//! Fixed-point interval enclosures with outward rounding.
//!
//! An [`Enclosure`] at precision `p` stands for the real interval
//! `[lo * 2^-p, hi * 2^-p]`. All operations round outward, so the exact value
//! of an expression is always contained in the interval computed for it.

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub prec: u64,
    pub lo: BigInt,
    pub hi: BigInt,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shl(a: &BigInt, bits: u64) -> BigInt {
    a << (bits as usize)
}

/// Floor of `a / 2^bits`.
fn shr_floor(a: &BigInt, bits: u64) -> BigInt {
    if a.sign() == BigSign::Minus {
        -ceil_shr_pos(&(-a), bits)
    } else {
        a >> (bits as usize)
    }
}

/// Ceiling of `a / 2^bits`.
fn shr_ceil(a: &BigInt, bits: u64) -> BigInt {
    if a.sign() == BigSign::Minus {
        -((-a) >> (bits as usize))
    } else {
        ceil_shr_pos(a, bits)
    }
}

fn ceil_shr_pos(a: &BigInt, bits: u64) -> BigInt {
    let q: BigInt = a >> (bits as usize);
    if &q << (bits as usize) == *a {
        q
    } else {
        q + 1
    }
}

fn isqrt_floor(a: &BigInt) -> BigInt {
    if a.sign() != BigSign::Plus {
        return BigInt::zero();
    }
    a.sqrt()
}

fn isqrt_ceil(a: &BigInt) -> BigInt {
    let r = isqrt_floor(a);
    if &r * &r == *a {
        r
    } else {
        r + 1
    }
}

impl Enclosure {
    pub fn point_rational(q: &BigRational, prec: u64) -> Self {
        let num = shl(q.numer(), prec);
        Enclosure {
            prec,
            lo: floor_div(&num, q.denom()),
            hi: ceil_div(&num, q.denom()),
        }
    }

    /// Enclosure of `sqrt(m)` for a nonnegative integer `m`.
    pub fn sqrt_uint(m: &BigUint, prec: u64) -> Self {
        let scaled = BigInt::from(m.clone()) << (2 * prec as usize);
        Enclosure {
            prec,
            lo: isqrt_floor(&scaled),
            hi: isqrt_ceil(&scaled),
        }
    }

    /// Re-expresses this enclosure at a lower (or equal) precision.
    pub fn at_precision(&self, prec: u64) -> Self {
        if prec >= self.prec {
            let d = prec - self.prec;
            return Enclosure {
                prec,
                lo: shl(&self.lo, d),
                hi: shl(&self.hi, d),
            };
        }
        let d = self.prec - prec;
        Enclosure {
            prec,
            lo: shr_floor(&self.lo, d),
            hi: shr_ceil(&self.hi, d),
        }
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        Enclosure {
            prec: self.prec,
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        Enclosure {
            prec: self.prec,
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Enclosure {
            prec: self.prec,
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let (min, max) = min_max(&cands);
        Enclosure {
            prec: self.prec,
            lo: shr_floor(min, self.prec),
            hi: shr_ceil(max, self.prec),
        }
    }

    /// Product with an exact rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        let a = &self.lo * q.numer();
        let b = &self.hi * q.numer();
        let (min, max) = if q.is_negative() { (b, a) } else { (a, b) };
        Enclosure {
            prec: self.prec,
            lo: floor_div(&min, q.denom()),
            hi: ceil_div(&max, q.denom()),
        }
    }

    /// `None` when the divisor interval contains zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        debug_assert_eq!(self.prec, o.prec);
        if o.contains_zero() {
            return None;
        }
        let a_lo = shl(&self.lo, self.prec);
        let a_hi = shl(&self.hi, self.prec);
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&a_lo, &a_hi] {
            for b in [&o.lo, &o.hi] {
                let f = floor_div(a, b);
                let c = ceil_div(a, b);
                if lo.as_ref().is_none_or(|l| f < *l) {
                    lo = Some(f);
                }
                if hi.as_ref().is_none_or(|h| c > *h) {
                    hi = Some(c);
                }
            }
        }
        Some(Enclosure {
            prec: self.prec,
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        })
    }

    /// Square root; the negative part of the operand interval is clamped to zero.
    pub fn sqrt(&self) -> Self {
        Enclosure {
            prec: self.prec,
            lo: isqrt_floor(&shl(&self.lo, self.prec)),
            hi: isqrt_ceil(&shl(&self.hi.clone().max(BigInt::zero()), self.prec)),
        }
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::from(1) << (self.prec as usize))
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::from(1) << (self.prec as usize))
    }
}

fn min_max(v: &[BigInt]) -> (&BigInt, &BigInt) {
    let mut min = &v[0];
    let mut max = &v[0];
    for x in &v[1..] {
        if x < min {
            min = x;
        }
        if x > max {
            max = x;
        }
    }
    (min, max)
}

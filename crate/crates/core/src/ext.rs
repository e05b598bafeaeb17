//! Star-extensions of sine, cosine and tangent, and the rotation they induce.
//!
//! An argument is `qπ + h` with `q` rational and `h` infinitesimal. The
//! values at `qπ` come from an exact table of constructible reals, and the
//! offset is handled by the Taylor series of `sin` and `cos` at 0, which
//! converges in the valuation topology and is cut off at the global order.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::coeff::{ConstructibleReal, Sign};
use crate::field::{Exponent, FieldError, MagnitudeClass, Precision};
use crate::geom::Point;
use crate::SeriesNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("no exact trigonometric values at {0}*pi")]
    UnsupportedBase(BigRational),
    #[error("offset must be infinitesimal")]
    NonInfinitesimalOffset,
    #[error("tangent has a pole here")]
    PoleOfTangent,
    #[error("rotation direction is the zero vector")]
    ZeroDirection,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `base·π + offset`, with rational `base` and infinitesimal `offset`.
#[derive(Clone, Debug)]
pub struct TrigArgument {
    base: BigRational,
    offset: SeriesNumber,
}

impl TrigArgument {
    pub fn new(base: BigRational, offset: SeriesNumber) -> Result<Self, ExtError> {
        exact_cos_sin(&base)?;
        let mag = offset.classify()?;
        if mag.class != MagnitudeClass::Infinitesimal {
            return Err(ExtError::NonInfinitesimalOffset);
        }
        Ok(TrigArgument { base, offset })
    }

    /// The infinitesimal `h` alone.
    pub fn infinitesimal(offset: SeriesNumber) -> Result<Self, ExtError> {
        TrigArgument::new(BigRational::zero(), offset)
    }

    /// `base·π` exactly.
    pub fn rational_multiple(base: BigRational, prec: Precision) -> Result<Self, ExtError> {
        TrigArgument::new(base, SeriesNumber::zero(prec))
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn offset(&self) -> &SeriesNumber {
        &self.offset
    }

    pub fn add(&self, o: &TrigArgument) -> Result<TrigArgument, ExtError> {
        TrigArgument::new(&self.base + &o.base, &self.offset + &o.offset)
    }

    pub fn neg(&self) -> Result<TrigArgument, ExtError> {
        TrigArgument::new(-&self.base, -&self.offset)
    }
}

impl fmt::Display for TrigArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*pi + {}", self.base, self.offset)
    }
}

fn sqrt_of(n: i64) -> ConstructibleReal {
    ConstructibleReal::from_integer(n)
        .checked_sqrt()
        .expect("positive radicand")
}

/// `(cos π/8, sin π/8)`, built once so that every value derived from it
/// shares a single nested radical, which keeps separation bounds small.
fn eighth_turn() -> &'static (ConstructibleReal, ConstructibleReal) {
    static CELL: OnceLock<(ConstructibleReal, ConstructibleReal)> = OnceLock::new();
    CELL.get_or_init(|| {
        let s2 = sqrt_of(2);
        let c = (ConstructibleReal::from_integer(2) + &s2)
            .checked_sqrt()
            .expect("positive")
            * ConstructibleReal::ratio(1, 2);
        // sin(π/8) cos(π/8) = sqrt(2)/4
        let s = (s2 * ConstructibleReal::ratio(1, 4))
            .checked_div(&c)
            .expect("nonzero");
        (c, s)
    })
}

/// `(cos, sin)` at `kπ/24` for `k` in `0..=6` with `gcd(k, 24) > 1`.
fn first_octant(k: i64) -> (ConstructibleReal, ConstructibleReal) {
    let half = ConstructibleReal::ratio(1, 2);
    let quarter = ConstructibleReal::ratio(1, 4);
    match k {
        0 => (ConstructibleReal::one(), ConstructibleReal::zero()),
        2 => {
            let (s6, s2) = (sqrt_of(6), sqrt_of(2));
            ((&s6 + &s2) * &quarter, (&s6 - &s2) * &quarter)
        }
        3 => eighth_turn().clone(),
        4 => (sqrt_of(3) * &half, half),
        6 => {
            let r = sqrt_of(2) * &half;
            (r.clone(), r)
        }
        _ => unreachable!("unsupported table index"),
    }
}

fn table(k: i64) -> (ConstructibleReal, ConstructibleReal) {
    if k >= 24 {
        let (c, s) = table(k - 24);
        (-c, -s)
    } else if k > 12 {
        let (c, s) = table(24 - k);
        (-c, s)
    } else if k > 6 {
        let (c, s) = first_octant(12 - k);
        (s, c)
    } else {
        first_octant(k)
    }
}

/// Exact `(cos qπ, sin qπ)` for `q` with denominator in `{1, 2, 3, 4, 6, 8, 12}`.
pub fn exact_cos_sin(q: &BigRational) -> Result<(ConstructibleReal, ConstructibleReal), ExtError> {
    let unsupported = || ExtError::UnsupportedBase(q.clone());
    let scaled = q * BigRational::from_integer(BigInt::from(24));
    if !scaled.is_integer() {
        return Err(unsupported());
    }
    let k = scaled.to_integer().mod_floor(&BigInt::from(48));
    let k = k.to_i64().expect("reduced mod 48");
    if k != 0 && k.gcd(&24) == 1 {
        return Err(unsupported());
    }
    Ok(table(k))
}

/// `(cos h, sin h)` for infinitesimal `h`, by Taylor series truncated at the
/// global order.
fn taylor_cos_sin(h: &SeriesNumber) -> Result<(SeriesNumber, SeriesNumber), ExtError> {
    let prec = h.precision();
    let order = Exponent::from_integer(prec.order);
    let one = SeriesNumber::one(prec);
    if h.vanishes() {
        return Ok(if h.is_exact() {
            (one, SeriesNumber::zero(prec))
        } else {
            let w = h.validity().order().expect("inexact");
            (one.truncated_at(w * 2), h.clone())
        });
    }
    let v = h.valuation()?;
    let h2 = h * h;
    let mut cos = one.clone();
    let mut sin = h.clone();
    let mut term_c = one;
    let mut term_s = h.clone();
    let mut n: i64 = 1;
    while Exponent::from_integer(2 * n) * v < order {
        let dc = ConstructibleReal::ratio(-1, (2 * n - 1) * (2 * n));
        let ds = ConstructibleReal::ratio(-1, (2 * n) * (2 * n + 1));
        term_c = (&term_c * &h2).scale(&dc);
        term_s = (&term_s * &h2).scale(&ds);
        cos = cos + &term_c;
        sin = sin + &term_s;
        n += 1;
    }
    Ok((cos.truncated_at(order), sin.truncated_at(order)))
}

/// `(cos x, sin x)`.
pub fn ext_cos_sin(x: &TrigArgument) -> Result<(SeriesNumber, SeriesNumber), ExtError> {
    let (cb, sb) = exact_cos_sin(&x.base)?;
    let (ch, sh) = taylor_cos_sin(&x.offset)?;
    let cos = ch.scale(&cb) - sh.scale(&sb);
    let sin = ch.scale(&sb) + sh.scale(&cb);
    Ok((cos, sin))
}

pub fn ext_sin(x: &TrigArgument) -> Result<SeriesNumber, ExtError> {
    Ok(ext_cos_sin(x)?.1)
}

pub fn ext_cos(x: &TrigArgument) -> Result<SeriesNumber, ExtError> {
    Ok(ext_cos_sin(x)?.0)
}

/// `sin x / cos x`; a pole exactly where `cos x = 0`.
pub fn ext_tan(x: &TrigArgument) -> Result<SeriesNumber, ExtError> {
    let (c, s) = ext_cos_sin(x)?;
    if c.sign()? == Sign::Zero {
        return Err(ExtError::PoleOfTangent);
    }
    Ok(s * c.inv()?)
}

/// Rotates `p` about the origin by the angle of the direction `c`:
/// `((c_x x - c_y y)/|c|, (c_y x + c_x y)/|c|)`.
pub fn rotate(p: &Point, c: &Point) -> Result<Point, ExtError> {
    let c = c.normalized_direction().map_err(|_| ExtError::ZeroDirection)?;
    let inv = c.norm2().sqrt()?.inv()?;
    let x = (&c.x * &p.x - &c.y * &p.y) * &inv;
    let y = (&c.y * &p.x + &c.x * &p.y) * &inv;
    Ok(Point::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::default()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn eps() -> SeriesNumber {
        SeriesNumber::epsilon(prec())
    }

    fn cr(n: i64, d: i64) -> ConstructibleReal {
        ConstructibleReal::ratio(n, d)
    }

    #[test]
    fn table_squares_to_one() {
        for k in 0..48 {
            if k != 0 && num_integer::gcd(k, 24) == 1 {
                continue;
            }
            let (c, s) = exact_cos_sin(&q(k, 24)).unwrap();
            let r = &c * &c + &s * &s - ConstructibleReal::one();
            assert_eq!(r.sign(), Sign::Zero, "k = {k}");
        }
    }

    #[test]
    fn table_known_values() {
        let (c, s) = exact_cos_sin(&q(1, 3)).unwrap();
        assert_eq!(c, cr(1, 2));
        assert_eq!(&s * &s, cr(3, 4));
        let (c, s) = exact_cos_sin(&q(-1, 2)).unwrap();
        assert_eq!(c, cr(0, 1));
        assert_eq!(s, cr(-1, 1));
        let (c, _) = exact_cos_sin(&q(7, 6)).unwrap();
        assert_eq!(c.sign(), Sign::Negative);
        assert_eq!(&c * &c, cr(3, 4));
        let (c, s) = exact_cos_sin(&q(1, 8)).unwrap();
        // cos(π/4) = cos²(π/8) - sin²(π/8)
        let d = &c * &c - &s * &s;
        assert_eq!(&d * &d, cr(1, 2));
        assert_eq!(d.sign(), Sign::Positive);
    }

    #[test]
    fn unsupported_bases() {
        assert!(matches!(exact_cos_sin(&q(1, 5)), Err(ExtError::UnsupportedBase(_))));
        assert!(matches!(exact_cos_sin(&q(1, 24)), Err(ExtError::UnsupportedBase(_))));
        assert!(exact_cos_sin(&q(25, 12)).is_ok());
    }

    #[test]
    fn offset_must_be_infinitesimal() {
        let one = SeriesNumber::one(prec());
        assert_eq!(
            TrigArgument::infinitesimal(one).unwrap_err(),
            ExtError::NonInfinitesimalOffset
        );
    }

    #[test]
    fn sin_of_epsilon_matches_taylor() {
        let s = ext_sin(&TrigArgument::infinitesimal(eps()).unwrap()).unwrap();
        assert_eq!(s.coefficient(Exponent::from_integer(1)), Some(&cr(1, 1)));
        assert_eq!(s.coefficient(Exponent::from_integer(3)), Some(&cr(-1, 6)));
        assert_eq!(s.coefficient(Exponent::from_integer(5)), Some(&cr(1, 120)));
        assert_eq!(s.coefficient(Exponent::from_integer(2)), None);
        assert_eq!(s.validity().order(), Some(Exponent::from_integer(16)));
        let c = ext_cos(&TrigArgument::infinitesimal(eps()).unwrap()).unwrap();
        assert_eq!(c.coefficient(Exponent::from_integer(2)), Some(&cr(-1, 2)));
        assert_eq!(c.coefficient(Exponent::from_integer(4)), Some(&cr(1, 24)));
    }

    #[test]
    fn tan_of_epsilon_matches_taylor() {
        let t = ext_tan(&TrigArgument::infinitesimal(eps()).unwrap()).unwrap();
        let expected = [(1, 1, 1), (3, 1, 3), (5, 2, 15), (7, 17, 315), (9, 62, 2835)];
        for (e, n, d) in expected {
            assert_eq!(t.coefficient(Exponent::from_integer(e)), Some(&cr(n, d)), "e^{e}");
        }
    }

    #[test]
    fn tangent_pole_only_without_offset() {
        let half = TrigArgument::rational_multiple(q(1, 2), prec()).unwrap();
        assert_eq!(ext_tan(&half).unwrap_err(), ExtError::PoleOfTangent);
        let near = TrigArgument::new(q(1, 2), eps()).unwrap();
        let t = ext_tan(&near).unwrap();
        assert!(t.classify().unwrap().is_infinite());
        assert_eq!(t.valuation().unwrap(), Exponent::from_integer(-1));
    }

    #[test]
    fn addition_formula() {
        let x = TrigArgument::new(q(1, 6), eps()).unwrap();
        let y = TrigArgument::new(q(1, 4), eps().powi(2).unwrap()).unwrap();
        let (cx, sx) = ext_cos_sin(&x).unwrap();
        let (cy, sy) = ext_cos_sin(&y).unwrap();
        let s = ext_sin(&x.add(&y).unwrap()).unwrap();
        assert!(s.agrees_with(&(&sx * &cy + &cx * &sy)));
        let r = &cx * &cx + &sx * &sx - SeriesNumber::one(prec());
        assert!(r.vanishes_below(16));
    }

    #[test]
    fn rotation_preserves_length() {
        let p = Point::from_integers(3, 4, prec());
        let c = Point::new(SeriesNumber::one(prec()), eps());
        let r = rotate(&p, &c).unwrap();
        let d = r.norm2() - p.norm2();
        assert!(d.vanishes_below(16));
        let quarter = rotate(&p, &Point::from_integers(0, 5, prec())).unwrap();
        assert!(quarter.agrees_with(&Point::from_integers(-4, 3, prec())));
        assert!(quarter.x.is_exact());
    }

    #[test]
    fn rotation_by_zero_vector_fails() {
        let p = Point::from_integers(1, 0, prec());
        assert_eq!(
            rotate(&p, &Point::origin(prec())).unwrap_err(),
            ExtError::ZeroDirection
        );
    }
}

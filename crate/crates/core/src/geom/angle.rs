use std::fmt;

use super::{sign, GeomResult, Point};
use crate::coeff::Sign;
use crate::field::{Exponent, Precision, Validity};
use crate::SeriesNumber;

/// An oriented angle, held as a nonzero direction `(x, y)` so that composing
/// angles needs no square roots. `cos θ = x/√(x²+y²)`, `sin θ = y/√(x²+y²)`.
///
/// The direction is rescaled by a power of `ε` so that its larger coordinate
/// is appreciable.
#[derive(Clone, Debug)]
pub struct AngleTurn {
    x: SeriesNumber,
    y: SeriesNumber,
}

impl AngleTurn {
    /// The angle from the positive x-axis to `v`.
    pub fn from_vector(v: &Point) -> GeomResult<Self> {
        let n = v.normalized_direction()?;
        Ok(AngleTurn { x: n.x, y: n.y })
    }

    pub fn zero(prec: Precision) -> Self {
        AngleTurn {
            x: SeriesNumber::one(prec),
            y: SeriesNumber::zero(prec),
        }
    }

    pub fn straight(prec: Precision) -> Self {
        AngleTurn {
            x: SeriesNumber::from_integer(-1, prec),
            y: SeriesNumber::zero(prec),
        }
    }

    pub fn right(prec: Precision) -> Self {
        AngleTurn {
            x: SeriesNumber::zero(prec),
            y: SeriesNumber::one(prec),
        }
    }

    /// The stored direction vector.
    pub fn direction(&self) -> Point {
        Point::new(self.x.clone(), self.y.clone())
    }

    /// `(cos θ, sin θ)`.
    pub fn cos_sin(&self) -> GeomResult<(SeriesNumber, SeriesNumber)> {
        let prec = self.x.precision();
        let unit = |s: &SeriesNumber| -> GeomResult<SeriesNumber> {
            Ok(SeriesNumber::from_integer(sign(s)?.to_i8() as i64, prec))
        };
        // A direction along an axis up to its validity: cos and sin are known
        // to the same order.
        for (a, b, swap) in [(&self.x, &self.y, false), (&self.y, &self.x, true)] {
            if b.vanishes() && !b.is_exact() {
                let w = b.validity().order().expect("inexact");
                let along = unit(a)?.truncated_at(w);
                let across = SeriesNumber::zero(prec).truncated_at(w);
                return Ok(if swap { (across, along) } else { (along, across) });
            }
        }
        if sign(&self.y)? == Sign::Zero {
            return Ok((unit(&self.x)?, SeriesNumber::zero(prec)));
        }
        if sign(&self.x)? == Sign::Zero {
            return Ok((SeriesNumber::zero(prec), unit(&self.y)?));
        }
        let inv = self.direction().norm2().sqrt()?.inv()?;
        Ok((&self.x * &inv, &self.y * &inv))
    }

    pub fn cos(&self) -> GeomResult<SeriesNumber> {
        Ok(self.cos_sin()?.0)
    }

    pub fn sin(&self) -> GeomResult<SeriesNumber> {
        Ok(self.cos_sin()?.1)
    }

    /// Exact equality of angles: parallel, same-sense directions.
    pub fn same_as(&self, o: &AngleTurn) -> GeomResult<bool> {
        let (a, b) = (self.direction(), o.direction());
        Ok(sign(&a.cross(&b))? == Sign::Zero && sign(&a.dot(&b))? == Sign::Positive)
    }

    /// Equality up to `O(ε^order)` in the sine of the difference.
    pub fn agrees_below(&self, o: &AngleTurn, order: i64) -> bool {
        let (a, b) = (self.direction(), o.direction());
        a.cross(&b).vanishes_below(order) && matches!(a.dot(&b).sign(), Ok(Sign::Positive))
    }

    /// Equality through the validity both sides carry, which must reach
    /// `O(ε^min_order)`.
    pub fn agrees_tracked(&self, o: &AngleTurn, min_order: i64) -> bool {
        let (a, b) = (self.direction(), o.direction());
        let cross = a.cross(&b);
        cross.vanishes()
            && cross.validity() >= Validity::Order(Exponent::from_integer(min_order))
            && matches!(a.dot(&b).sign(), Ok(Sign::Positive))
    }

    /// Equal to `π` up to `O(ε^order)`.
    pub fn is_straight_below(&self, order: i64) -> bool {
        self.agrees_below(&AngleTurn::straight(self.x.precision()), order)
    }

    /// Exactly `π`.
    pub fn is_straight(&self) -> GeomResult<bool> {
        self.same_as(&AngleTurn::straight(self.x.precision()))
    }

    pub fn negated(&self) -> AngleTurn {
        AngleTurn {
            x: self.x.clone(),
            y: -&self.y,
        }
    }
}

impl fmt::Display for AngleTurn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cos_sin() {
            Ok((c, s)) => write!(f, "(cos = {c}, sin = {s})"),
            Err(_) => write!(f, "(direction {}, {})", self.x, self.y),
        }
    }
}

/// The counterclockwise turn at `vertex` from ray `vertex→p` to ray
/// `vertex→q`.
pub fn angle_at(vertex: &Point, p: &Point, q: &Point) -> GeomResult<AngleTurn> {
    let u = (p - vertex).normalized_direction()?;
    let w = (q - vertex).normalized_direction()?;
    AngleTurn::from_vector(&Point::new(u.dot(&w), u.cross(&w)))
}

/// Sum of oriented angles: the complex product of the directions.
pub fn angle_add(a: &AngleTurn, b: &AngleTurn) -> AngleTurn {
    let v = Point::new(&a.x * &b.x - &a.y * &b.y, &a.y * &b.x + &a.x * &b.y);
    AngleTurn::from_vector(&v).unwrap_or(AngleTurn { x: v.x, y: v.y })
}

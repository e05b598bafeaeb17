use std::fmt;

use super::{point_in_ll, sign, GeomError, GeomResult, Line, Point};
use crate::coeff::{ConstructibleReal, Sign};
use crate::SeriesNumber;

#[derive(Clone, Debug)]
pub struct Circle {
    pub center: Point,
    pub radius: SeriesNumber,
}

impl Circle {
    /// A circle of the limited subplane: limited center, positive limited radius.
    pub fn new(center: Point, radius: SeriesNumber) -> GeomResult<Self> {
        let mag = radius.classify()?;
        if !point_in_ll(&center)? || !mag.is_limited() || mag.sign != Sign::Positive {
            return Err(GeomError::InvalidCircle);
        }
        Ok(Circle { center, radius })
    }

    /// A circle of the full plane: any center, positive radius.
    pub fn general(center: Point, radius: SeriesNumber) -> GeomResult<Self> {
        if sign(&radius)? != Sign::Positive {
            return Err(GeomError::InvalidCircle);
        }
        Ok(Circle { center, radius })
    }

    /// `|p - center|^2 - r^2`.
    pub fn residual(&self, p: &Point) -> SeriesNumber {
        (p - &self.center).norm2() - &self.radius * &self.radius
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "circle center {} radius {}", self.center, self.radius)
    }
}

/// Common points of a line and a circle, at most two. The pair is ordered
/// `foot + t·d`, `foot - t·d` with `d = (-b, a)` and `t > 0`.
pub fn line_circle_intersection(l: &Line, c: &Circle) -> GeomResult<Vec<Point>> {
    let (a, b) = (l.a(), l.b());
    let n2 = a * a + b * b;
    let inv_n2 = n2.inv()?;
    let t = l.residual(&c.center);
    let shift = &t * &inv_n2;
    let foot = Point::new(&c.center.x - &(a * &shift), &c.center.y - &(b * &shift));
    let disc = &c.radius * &c.radius * &n2 - &t * &t;
    match sign(&disc)? {
        Sign::Negative => Ok(vec![]),
        Sign::Zero => Ok(vec![foot]),
        Sign::Positive => {
            let s = disc.sqrt()? * &inv_n2;
            let d = l.direction().scale(&s);
            Ok(vec![&foot + &d, &foot - &d])
        }
    }
}

/// Common points of two circles, via their radical axis.
pub fn circle_circle_intersection(c1: &Circle, c2: &Circle) -> GeomResult<Vec<Point>> {
    if c1.center.coincides(&c2.center)? {
        if sign(&(&c1.radius - &c2.radius))? == Sign::Zero {
            return Err(GeomError::CoincidentCircles);
        }
        return Ok(vec![]);
    }
    let two = ConstructibleReal::from_integer(2);
    let a = (&c2.center.x - &c1.center.x).scale(&two);
    let b = (&c2.center.y - &c1.center.y).scale(&two);
    let c = c1.center.norm2() - c2.center.norm2() - &c1.radius * &c1.radius
        + &c2.radius * &c2.radius;
    let axis = Line::new(a, b, c)?;
    line_circle_intersection(&axis, c1)
}

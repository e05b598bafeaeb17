use std::fmt;
use std::ops::{Add, Sub};

use super::{is_zero, sign, GeomError, GeomResult};
use crate::coeff::{ConstructibleReal, Sign};
use crate::field::Precision;
use crate::SeriesNumber;

#[derive(Clone, Debug)]
pub struct Point {
    pub x: SeriesNumber,
    pub y: SeriesNumber,
}

impl Point {
    pub fn new(x: SeriesNumber, y: SeriesNumber) -> Self {
        Point { x, y }
    }

    pub fn from_integers(x: i64, y: i64, prec: Precision) -> Self {
        Point::new(
            SeriesNumber::from_integer(x, prec),
            SeriesNumber::from_integer(y, prec),
        )
    }

    pub fn origin(prec: Precision) -> Self {
        Point::from_integers(0, 0, prec)
    }

    pub fn scale(&self, k: &SeriesNumber) -> Self {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn scale_coeff(&self, k: &ConstructibleReal) -> Self {
        Point::new(self.x.scale(k), self.y.scale(k))
    }

    pub fn dot(&self, o: &Point) -> SeriesNumber {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> SeriesNumber {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> SeriesNumber {
        self.dot(self)
    }

    /// Exactly zero vector.
    pub fn is_origin(&self) -> GeomResult<bool> {
        Ok(is_zero(&self.x)? && is_zero(&self.y)?)
    }

    /// Exact coincidence of points.
    pub fn coincides(&self, o: &Point) -> GeomResult<bool> {
        (self - o).is_origin()
    }

    /// Coordinates agree below their validity bounds.
    pub fn agrees_with(&self, o: &Point) -> bool {
        self.x.agrees_with(&o.x) && self.y.agrees_with(&o.y)
    }

    /// Smallest valuation among the nonzero coordinates.
    pub(crate) fn valuation(&self) -> GeomResult<crate::field::Exponent> {
        let vx = self.x.valuation();
        let vy = self.y.valuation();
        match (vx, vy) {
            (Ok(a), Ok(b)) => Ok(a.min(b)),
            (Ok(a), Err(_)) if is_zero(&self.y)? => Ok(a),
            (Err(_), Ok(b)) if is_zero(&self.x)? => Ok(b),
            (Err(e), _) | (_, Err(e)) => Err(GeomError::Field(e)),
        }
    }

    /// Rescales by a power of `ε` so the larger coordinate is appreciable.
    /// Exact, and preserves the direction of the vector.
    pub(crate) fn normalized_direction(&self) -> GeomResult<Point> {
        if self.is_origin()? {
            return Err(GeomError::DegenerateRay);
        }
        let v = self.valuation()?;
        Ok(Point::new(self.x.shift(-v)?, self.y.shift(-v)?))
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Both coordinates limited.
pub fn point_in_ll(p: &Point) -> GeomResult<bool> {
    Ok(p.x.classify()?.is_limited() && p.y.classify()?.is_limited())
}

pub fn midpoint(p: &Point, q: &Point) -> Point {
    (p + q).scale_coeff(&ConstructibleReal::ratio(1, 2))
}

pub fn distance(p: &Point, q: &Point) -> GeomResult<SeriesNumber> {
    Ok((p - q).norm2().sqrt()?)
}

/// `q` lies strictly between `p` and `r` on a common line.
pub fn is_between(p: &Point, q: &Point, r: &Point) -> GeomResult<bool> {
    if !is_zero(&(q - p).cross(&(r - p)))? {
        return Ok(false);
    }
    Ok(sign(&(p - q).dot(&(r - q)))? == Sign::Negative)
}

/// Segments `ab` and `cd` have equal length.
pub fn segment_congruent(a: &Point, b: &Point, c: &Point, d: &Point) -> GeomResult<bool> {
    is_zero(&((a - b).norm2() - (c - d).norm2()))
}

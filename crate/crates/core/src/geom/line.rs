use std::fmt;

use super::{is_zero, GeomError, GeomResult, Point};
use crate::coeff::{ConstructibleReal, Sign};
use crate::field::{Exponent, Precision};
use crate::SeriesNumber;

/// The line `a x + b y + c = 0` with `a^2 + b^2 != 0`.
///
/// Stored scaled so that whichever of `a`, `b` has the smaller valuation has
/// leading term exactly `1` (the coefficient itself is `1` whenever it is a
/// monomial). Scaling is by a monomial, so exact inputs stay exact.
#[derive(Clone, Debug)]
pub struct Line {
    a: SeriesNumber,
    b: SeriesNumber,
    c: SeriesNumber,
}

impl Line {
    pub fn new(a: SeriesNumber, b: SeriesNumber, c: SeriesNumber) -> GeomResult<Self> {
        let pivot = match (a.valuation(), b.valuation()) {
            (Ok(va), Ok(vb)) => {
                if va <= vb {
                    &a
                } else {
                    &b
                }
            }
            (Ok(_), Err(_)) if is_zero(&b)? => &a,
            (Err(_), Ok(_)) if is_zero(&a)? => &b,
            (Err(_), Err(_)) if is_zero(&a)? && is_zero(&b)? => {
                return Err(GeomError::DegenerateLine)
            }
            (Err(e), _) | (_, Err(e)) => return Err(GeomError::Field(e)),
        };
        let (v, lead) = pivot.leading().expect("pivot is nonzero");
        let inv = ConstructibleReal::one().checked_div(lead).map_err(|e| GeomError::Field(e.into()))?;
        let norm = |s: &SeriesNumber| -> GeomResult<SeriesNumber> { Ok(s.scale(&inv).shift(-v)?) };
        Ok(Line {
            a: norm(&a)?,
            b: norm(&b)?,
            c: norm(&c)?,
        })
    }

    /// `y = m x + k`.
    pub fn from_slope(m: SeriesNumber, k: SeriesNumber) -> GeomResult<Self> {
        let prec = m.precision();
        Line::new(-m, SeriesNumber::one(prec), -k)
    }

    /// `y = y0`.
    pub fn horizontal(y0: SeriesNumber) -> GeomResult<Self> {
        let prec = y0.precision();
        Line::new(SeriesNumber::zero(prec), SeriesNumber::one(prec), -y0)
    }

    /// `x = x0`.
    pub fn vertical(x0: SeriesNumber) -> GeomResult<Self> {
        let prec = x0.precision();
        Line::new(SeriesNumber::one(prec), SeriesNumber::zero(prec), -x0)
    }

    pub fn from_integers(a: i64, b: i64, c: i64, prec: Precision) -> GeomResult<Self> {
        Line::new(
            SeriesNumber::from_integer(a, prec),
            SeriesNumber::from_integer(b, prec),
            SeriesNumber::from_integer(c, prec),
        )
    }

    pub fn a(&self) -> &SeriesNumber {
        &self.a
    }

    pub fn b(&self) -> &SeriesNumber {
        &self.b
    }

    pub fn c(&self) -> &SeriesNumber {
        &self.c
    }

    /// `a x + b y + c` at `p`.
    pub fn residual(&self, p: &Point) -> SeriesNumber {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    /// Exact incidence.
    pub fn contains(&self, p: &Point) -> GeomResult<bool> {
        is_zero(&self.residual(p))
    }

    /// A direction vector `(-b, a)`.
    pub fn direction(&self) -> Point {
        Point::new(-&self.b, self.a.clone())
    }

    /// Same point set: the coefficient triples are proportional.
    pub fn same_as(&self, o: &Line) -> GeomResult<bool> {
        let cross = |p: &SeriesNumber, q: &SeriesNumber, r: &SeriesNumber, s: &SeriesNumber| {
            is_zero(&(p * s - q * r))
        };
        Ok(cross(&self.a, &self.b, &o.a, &o.b)?
            && cross(&self.a, &self.c, &o.a, &o.c)?
            && cross(&self.b, &self.c, &o.b, &o.c)?)
    }

    /// Proportional coefficient triples, decided up to validity. For lines
    /// built from truncated data.
    pub fn agrees_with(&self, o: &Line) -> bool {
        let cross = |p: &SeriesNumber, q: &SeriesNumber, r: &SeriesNumber, s: &SeriesNumber| {
            (p * s - q * r).vanishes()
        };
        cross(&self.a, &self.b, &o.a, &o.b)
            && cross(&self.a, &self.c, &o.a, &o.c)
            && cross(&self.b, &self.c, &o.b, &o.c)
    }

    pub fn precision(&self) -> Precision {
        self.a.precision()
    }

    /// `valuation` of the pivot coefficient is always 0 after scaling.
    pub fn pivot_exponent() -> Exponent {
        Exponent::from_integer(0)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line [{}] [{}] [{}]", self.a, self.b, self.c)
    }
}

pub fn line_through(p: &Point, q: &Point) -> GeomResult<Line> {
    if p.coincides(q)? {
        return Err(GeomError::CoincidentPoints);
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = -(&a * &p.x + &b * &p.y);
    Line::new(a, b, c)
}

/// The unique common point, `None` for distinct parallels.
pub fn intersect_lines(l: &Line, m: &Line) -> GeomResult<Option<Point>> {
    let det = &l.a * &m.b - &m.a * &l.b;
    if det.sign()? == Sign::Zero {
        if l.same_as(m)? {
            return Err(GeomError::CoincidentLines);
        }
        return Ok(None);
    }
    let inv = det.inv()?;
    let x = (&l.b * &m.c - &m.b * &l.c) * &inv;
    let y = (&l.c * &m.a - &m.c * &l.a) * &inv;
    Ok(Some(Point::new(x, y)))
}

/// The lines meet at a point with limited coordinates.
pub fn meets_in_ll(l: &Line, m: &Line) -> GeomResult<bool> {
    match intersect_lines(l, m)? {
        Some(p) => super::point_in_ll(&p),
        None => Ok(false),
    }
}

/// Locus of points equidistant from `p` and `q`:
/// `2(q - p)·X + |p|^2 - |q|^2 = 0`.
pub fn perpendicular_bisector(p: &Point, q: &Point) -> GeomResult<Line> {
    if p.coincides(q)? {
        return Err(GeomError::CoincidentPoints);
    }
    let two = ConstructibleReal::from_integer(2);
    let a = (&q.x - &p.x).scale(&two);
    let b = (&q.y - &p.y).scale(&two);
    let c = p.norm2() - q.norm2();
    Line::new(a, b, c)
}

/// The line through `p` perpendicular to `l`.
pub fn perpendicular_through(l: &Line, p: &Point) -> GeomResult<Line> {
    let a = -&l.b;
    let b = l.a.clone();
    let c = &l.b * &p.x - &l.a * &p.y;
    Line::new(a, b, c)
}

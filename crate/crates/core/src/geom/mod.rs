//! Cartesian geometry over the series field.
//!
//! Everything here lives in the full plane over the series field. The
//! limited subplane is carved out by [`point_in_ll`]: a line of the subplane is
//! the trace of an ordinary line, so lines keep their full coefficient
//! triples even when their slope is infinite.

mod angle;
mod circle;
mod line;
mod point;

pub use angle::{angle_add, angle_at, AngleTurn};
pub use circle::{circle_circle_intersection, line_circle_intersection, Circle};
pub use line::{
    intersect_lines, line_through, meets_in_ll, perpendicular_bisector, perpendicular_through,
    Line,
};
pub use point::{distance, is_between, midpoint, point_in_ll, segment_congruent, Point};

use thiserror::Error;

use crate::coeff::Sign;
use crate::field::FieldError;
use crate::SeriesNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines coincide")]
    CoincidentLines,
    #[error("circles coincide")]
    CoincidentCircles,
    #[error("triangle vertices are collinear")]
    CollinearVertices,
    #[error("ray has zero length")]
    DegenerateRay,
    #[error("line coefficients satisfy a^2 + b^2 = 0")]
    DegenerateLine,
    #[error("circle must have a limited center and a positive limited radius")]
    InvalidCircle,
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type GeomResult<T> = Result<T, GeomError>;

fn sign(s: &SeriesNumber) -> GeomResult<Sign> {
    Ok(s.sign()?)
}

fn is_zero(s: &SeriesNumber) -> GeomResult<bool> {
    Ok(sign(s)? == Sign::Zero)
}

/// A non-degenerate triangle.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> GeomResult<Self> {
        let t = Triangle { a, b, c };
        if t.orientation()? == Sign::Zero {
            return Err(GeomError::CollinearVertices);
        }
        Ok(t)
    }

    /// Sign of the cross product of the edge vectors `b - a` and `c - a`.
    pub fn orientation(&self) -> GeomResult<Sign> {
        sign(&(&self.b - &self.a).cross(&(&self.c - &self.a)))
    }

    /// The same triangle listed counterclockwise.
    pub fn counterclockwise(&self) -> GeomResult<Self> {
        Ok(match self.orientation()? {
            Sign::Negative => Triangle {
                a: self.a.clone(),
                b: self.c.clone(),
                c: self.b.clone(),
            },
            Sign::Positive => self.clone(),
            Sign::Zero => return Err(GeomError::CollinearVertices),
        })
    }

    /// Interior angles at `a`, `b`, `c` of the counterclockwise ordering.
    pub fn interior_angles(&self) -> GeomResult<[AngleTurn; 3]> {
        let t = self.counterclockwise()?;
        Ok([
            angle_at(&t.a, &t.b, &t.c)?,
            angle_at(&t.b, &t.c, &t.a)?,
            angle_at(&t.c, &t.a, &t.b)?,
        ])
    }

    /// Composition of the three interior angles.
    pub fn angle_sum(&self) -> GeomResult<AngleTurn> {
        let [x, y, z] = self.interior_angles()?;
        Ok(angle_add(&angle_add(&x, &y), &z))
    }

    pub fn vertices(&self) -> [&Point; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn scaled(&self, factor: &SeriesNumber) -> Self {
        Triangle {
            a: self.a.scale(factor),
            b: self.b.scale(factor),
            c: self.c.scale(factor),
        }
    }
}

/// Intersection of the perpendicular bisectors of two sides.
pub fn circumcenter(t: &Triangle) -> GeomResult<Point> {
    if t.orientation()? == Sign::Zero {
        return Err(GeomError::CollinearVertices);
    }
    let ab = perpendicular_bisector(&t.a, &t.b)?;
    let ac = perpendicular_bisector(&t.a, &t.c)?;
    intersect_lines(&ab, &ac)?.ok_or(GeomError::CollinearVertices)
}

#[cfg(test)]
mod tests;

//! Exact arithmetic in a non-Archimedean Euclidean field of truncated
//! generalized power series in `ε`, and the Cartesian plane over it.

pub mod axioms;
pub mod coeff;
pub mod ext;
pub mod field;
pub mod geom;

use num_rational::BigRational;

pub use coeff::{Coefficient, ConstructibleReal, Sign};
pub use field::{Exponent, FieldError, Magnitude, MagnitudeClass, Precision, Series, Validity};

/// Series with constructible-real coefficients: the field itself.
pub type SeriesNumber = Series<ConstructibleReal>;
/// Series with rational coefficients: an ordered subfield closed under the
/// field operations but not under square roots.
pub type RationalSeries = Series<BigRational>;

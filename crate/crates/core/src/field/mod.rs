//! Truncated generalized power series in a positive infinitesimal `ε`.
//!
//! A [`Series`] is a finite sum `Σ c_q ε^q` with rational exponents plus an
//! error term `O(ε^ω)`. The field is ordered lexicographically: a series is
//! positive iff its leading coefficient is. Elements split into infinitesimal
//! (positive valuation, or zero), appreciable-limited (valuation 0) and
//! infinite (negative valuation).

mod magnitude;
mod series;

pub use magnitude::{Magnitude, MagnitudeClass};
pub use series::{Exponent, Precision, Series, Validity};

use thiserror::Error;

use crate::coeff::CoeffError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("value is zero up to the truncation order; raise the order and retry")]
    IndeterminateZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("zero has no valuation")]
    ZeroHasNoValuation,
    #[error("infinite number has no standard part")]
    InfinitePart,
    #[error("exponent denominator exceeds the configured square-root depth")]
    SqrtDepthExceeded,
    #[error(transparent)]
    Coefficient(#[from] CoeffError),
}

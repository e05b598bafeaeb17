//! Command-line front end: axiom checks, expression evaluation and figures.

pub mod app;
pub mod eval;
pub mod figure;

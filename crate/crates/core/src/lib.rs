//! Certified computations around the reciprocal Gamma function.
//!
//! The crate is layered bottom-up:
//!
//! * [`precision`] — dyadic numbers, real and complex balls, constants,
//!   truncated power series and best rational approximation;
//! * [`linalg`] — exact fraction-free elimination;
//! * [`gamma`] — certified `1/Γ` and `Γ`;
//! * [`contour`] — argument-principle zero counting;
//! * [`grid`] — interpolation points with machine-checked spacing;
//! * [`zero_lemma`] — zero counts of `P(z, 1/Γ(z))`;
//! * [`census`] — rational points on the graph of `Γ`;
//! * [`curve`] — minimal degree of plane curves through point sets;
//! * [`report`] — run manifests and plot data.

// Index loops mirror the matrix formulas; negated float comparisons reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod census;
pub mod contour;
pub mod curve;
pub mod error;
pub mod gamma;
pub mod grid;
pub mod linalg;
mod par;
pub mod precision;
pub mod report;
pub mod zero_lemma;

pub use error::{Error, Result};
pub use precision::{ComplexBall, PrecisionContext, RealBall};

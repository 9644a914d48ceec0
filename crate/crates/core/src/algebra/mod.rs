//! Complex 4×4 linear algebra and polynomial root finding.

mod matrix;
mod poly;

pub use matrix::{c, det4, numerical_rank, CMatrix4, Spinor, C64, I, ONE, ZERO};
pub use poly::{interpolate, interpolate_det_poly, poly_roots, unit_circle_filter, CPolynomial, DET_NODES};

//! Solution bases of the Dirac, Majorana and Weyl equations built by applying
//! `(iγᵃ∂ₐ + M)` to scalar Klein–Gordon seeds, the linear maps between those
//! bases and the momentum–helicity plane waves, and the quantization of the
//! longitudinal momentum for a particle confined between two parallel planes
//! with vanishing normal current.
//!
//! All solutions are held structurally: coefficient spinors attached to known
//! exponential or trigonometric factors. Derivatives become multipliers and
//! every identity reduces to finite-dimensional linear algebra.

pub mod algebra;
pub mod basis_maps;
pub mod boundary;
pub mod clifford;
mod error;
pub mod majorana;
pub mod reference;
pub mod serial;
pub mod solutions;
pub mod tolerances;

pub use error::{Error, Result};

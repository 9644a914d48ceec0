//! Vanishing normal current on the slab `−a ≤ z ≤ a`.
//!
//! The current through a plane of constant z vanishes when the spinor-basis
//! components are phase-locked, `Ψ₃ = e^{iρ}Ψ₁` and `Ψ₄ = e^{iσ}Ψ₂`. Imposing
//! this on both planes gives a homogeneous 4×4 system whose determinant is a
//! quartic in `K = e^{2iak}`; its unit-modulus roots that also match `e^{2iak}`
//! quantize k.

mod covariant;
mod current;
mod matrices;
mod quantize;
mod weyl;

pub use covariant::{
    build_covariant_g, check_g_implies_zero_current, explicit_g, fixed_part, g_agreement, g_equal_phases,
    g_opposite_phases, projector_g, CovariantG, FixedPointReport, GAgreement,
};
pub use current::{component_current, current_jz, current_value, phase_locked};
pub use matrices::{
    boundary_matrix, boundary_matrix_from_set, boundary_matrix_planewave, boundary_matrix_squared, degree_consistency,
    det_polynomial, display, row_proportionality, BoundaryPhases, MatrixVariant, SlabGeometry,
};
pub use quantize::{
    quantize_dirac, quantize_dirac_with, spectrum_distance, GridOptions, OffCircleRoot, QuantizationRoot, Spectrum,
};
pub use weyl::{weyl_determinant, weyl_k2, weyl_quantize, weyl_quantize_with};

//! Default tolerances and numeric limits, in one place.
//!
//! Every routine that accepts a tolerance takes it as a parameter; these are
//! the values used when a caller does not supply one.

/// Relative pivot threshold for [`crate::algebra::numerical_rank`].
pub const RANK_TAU: f64 = 1e-9;

/// Durand–Kerner iteration cap.
pub const DK_MAX_ITERATIONS: usize = 500;

/// Newton steps applied to each Durand–Kerner root.
pub const NEWTON_POLISH_STEPS: usize = 8;

/// Accepted root residual |p(r)| relative to max|coeff| (scaled by |r|ⁿ for |r| > 1).
pub const ROOT_RESIDUAL_REL: f64 = 1e-12;

/// Gamma-matrix algebra checks ({γᵃ, γᵇ} = 2ηᵃᵇ, (γ⁵)² = I, S·S⁻¹ = I).
pub const CLIFFORD_TOL: f64 = 1e-12;

/// Structured Dirac residual accepted for a generated solution.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Consistency of the overdetermined expansion systems.
pub const EXPANSION_TOL: f64 = 1e-10;

/// Smallest |det| treated as invertible for basis-change matrices.
pub const SINGULAR_DET: f64 = 1e-12;

/// Unit-modulus window used while tracking K-roots along the k grid.
pub const TRACK_UNIT_TOL: f64 = 1e-6;

/// Final acceptance of a quantization root: ||K| − 1|, |e^{2iak} − K| and |det|.
pub const ROOT_ACCEPT_TOL: f64 = 1e-8;

/// Grid bound: 2·a·Δk must stay below this.
pub const GRID_PHASE_STEP: f64 = std::f64::consts::PI / 4.0;

/// Phase advance 2·a·Δk actually used when the caller gives no grid size.
pub const DEFAULT_PHASE_STEP: f64 = std::f64::consts::PI / 32.0;

/// Bisection iteration cap for quantization roots.
pub const BISECTION_MAX_ITERATIONS: usize = 200;

/// Depth limit for adaptive subdivision of a grid cell.
pub const MAX_REFINEMENT_DEPTH: u32 = 12;

/// Largest per-step arg change of a tracked K-root before a cell is subdivided.
pub const MAX_TRACK_ARG_STEP: f64 = std::f64::consts::PI / 8.0;

/// Fixed-point test ‖GΨ − Ψ‖ and the zero-current bound that follows from it.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// Threshold above which two linear maps are reported as different.
pub const MAP_DIFFERENCE_TOL: f64 = 1e-6;

/// Relative k separation below which two accepted roots are one.
pub const ROOT_MERGE_TOL: f64 = 1e-7;

/// Unit-circle roots closer than this in K are tracked as one branch.
pub const ROOT_CLUSTER_TOL: f64 = 1e-5;

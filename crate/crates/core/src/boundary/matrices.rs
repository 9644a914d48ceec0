use serde::Serialize;

use crate::algebra::{c, interpolate, CMatrix4, CPolynomial, C64, DET_NODES, ONE};
use crate::clifford::Representation;
use crate::error::{Error, Result};
use crate::solutions::{helicity_data, ModeParams, SolutionForm, SolutionSet};

/// Phase-locking angles on the two planes.
///
/// At `z = −a`: `Ψ₃ = e^{iρ}Ψ₁`, `Ψ₄ = e^{iσ}Ψ₂`; at `z = +a`: `Ψ₃ = e^{iμ}Ψ₁`,
/// `Ψ₄ = e^{iν}Ψ₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPhases {
    pub rho: f64,
    pub sigma: f64,
    pub mu: f64,
    pub nu: f64,
}

impl BoundaryPhases {
    pub fn new(rho: f64, sigma: f64, mu: f64, nu: f64) -> Result<Self> {
        if ![rho, sigma, mu, nu].iter().all(|a| a.is_finite()) {
            return Err(Error::NonFinite("boundary phases"));
        }
        Ok(BoundaryPhases { rho, sigma, mu, nu })
    }

    /// The same phase everywhere.
    pub fn uniform(theta: f64) -> Result<Self> {
        Self::new(theta, theta, theta, theta)
    }

    /// `e^{iρ}`
    pub fn x(&self) -> C64 {
        C64::from_polar(1.0, self.rho)
    }

    /// `e^{iμ}`
    pub fn y(&self) -> C64 {
        C64::from_polar(1.0, self.mu)
    }

    /// `e^{iσ}`
    pub fn v(&self) -> C64 {
        C64::from_polar(1.0, self.sigma)
    }

    /// `e^{iν}`
    pub fn w(&self) -> C64 {
        C64::from_polar(1.0, self.nu)
    }
}

/// Planes at `z = ±a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlabGeometry {
    pub a: f64,
}

impl SlabGeometry {
    pub fn new(a: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidInput(format!("half-width must be positive and finite, got {a}")));
        }
        Ok(SlabGeometry { a })
    }
}

/// Which solution basis the boundary system is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixVariant {
    /// Helicity plane waves, unknowns ordered (Φ₁, Φ₃, Φ₂, Φ₄).
    PlaneWave,
    /// The sin-seeded squared set.
    Squared,
}

impl MatrixVariant {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixVariant::PlaneWave => "planewave",
            MatrixVariant::Squared => "squared",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "planewave" | "plane-wave" | "plane_wave" => Ok(MatrixVariant::PlaneWave),
            "squared" => Ok(MatrixVariant::Squared),
            other => Err(Error::InvalidInput(format!("unknown boundary basis '{other}'"))),
        }
    }
}

/// Boundary system in the helicity plane-wave basis.
///
/// Rows: `Ψ₃ = xΨ₁` at `−a`, `Ψ₃ = yΨ₁` at `+a`, `Ψ₄ = vΨ₂` at `−a`,
/// `Ψ₄ = wΨ₂` at `+a`, each multiplied through by `e^{ika}`; the last two
/// rows are rescaled by `−|k₁+ik₂|²/(k₁+ik₂)` to clear the ratios s and t.
pub fn boundary_matrix_planewave(m: &ModeParams, ph: &BoundaryPhases, k: C64) -> Result<CMatrix4> {
    let h = helicity_data(m)?;
    let (al, be) = (h.alpha, h.beta);
    let (kp, km) = (c(m.k + m.p, 0.0), c(m.k - m.p, 0.0));
    let (x, y, v, w) = (ph.x(), ph.y(), ph.v(), ph.w());
    Ok(CMatrix4([
        [al - x, be - x, (al - x) * k, (be - x) * k],
        [(al - y) * k, (be - y) * k, al - y, be - y],
        [(al - v) * km, (be - v) * kp, -(al - v) * kp * k, -(be - v) * km * k],
        [(al - w) * km * k, (be - w) * kp * k, -(al - w) * kp, -(be - w) * km],
    ]))
}

/// Boundary system in the squared sin-seeded basis, with
/// `m = ε + k`, `n = ε − k`, `f = k₁ + ik₂`, `g = k₁ − ik₂`.
pub fn boundary_matrix_squared(m: &ModeParams, ph: &BoundaryPhases, k: C64) -> Result<CMatrix4> {
    if m.mass <= 0.0 {
        return Err(Error::DegenerateMode("the squared boundary system needs M > 0".into()));
    }
    let (mm, nn, f, g) = (c(m.epsilon + m.k, 0.0), c(m.epsilon - m.k, 0.0), m.f(), m.g());
    let big_m = c(m.mass, 0.0);
    let (x, y, v, w) = (ph.x(), ph.y(), ph.v(), ph.w());
    let km1 = k - ONE;
    let diag = |a: C64, b: C64, z: C64| -(k * (a - z * big_m) - (b - z * big_m));
    let off = |a: C64, b: C64, z: C64| -(k * (big_m - z * a) - (big_m - z * b));
    Ok(CMatrix4([
        [diag(mm, nn, x), g * km1, off(nn, mm, x), x * g * km1],
        [diag(nn, mm, y), g * km1, off(mm, nn, y), y * g * km1],
        [f * km1, diag(nn, mm, v), v * f * km1, off(mm, nn, v)],
        [f * km1, diag(mm, nn, w), w * f * km1, off(nn, mm, w)],
    ]))
}

pub fn boundary_matrix(variant: MatrixVariant, m: &ModeParams, ph: &BoundaryPhases, k: C64) -> Result<CMatrix4> {
    match variant {
        MatrixVariant::PlaneWave => boundary_matrix_planewave(m, ph, k),
        MatrixVariant::Squared => boundary_matrix_squared(m, ph, k),
    }
}

/// Boundary system for any spinor-basis set of `e^{±ikz}` solutions.
///
/// With `P`, `N` the `e^{+ikz}`, `e^{−ikz}` coefficient spinors of column j:
/// `(P₃ − xP₁) + K(N₃ − xN₁)`, `K(P₃ − yP₁) + (N₃ − yN₁)`, and the same with
/// components 4, 2 and phases v, w.
pub fn boundary_matrix_from_set(set: &SolutionSet, ph: &BoundaryPhases, k: C64) -> Result<CMatrix4> {
    if !set.rep().same_as(&Representation::Spinor) {
        return Err(Error::Mismatch("phase locking is defined on spinor-basis components".into()));
    }
    let (x, y, v, w) = (ph.x(), ph.y(), ph.v(), ph.w());
    let mut out = CMatrix4::zero();
    for (j, col) in set.columns.iter().enumerate() {
        let SolutionForm::TransverseZ { plus: p, minus: n } = col.form else {
            return Err(Error::Mismatch("boundary system needs e^{±ikz} solutions".into()));
        };
        out[(0, j)] = (p[2] - x * p[0]) + k * (n[2] - x * n[0]);
        out[(1, j)] = k * (p[2] - y * p[0]) + (n[2] - y * n[0]);
        out[(2, j)] = (p[3] - v * p[1]) + k * (n[3] - v * n[1]);
        out[(3, j)] = k * (p[3] - w * p[1]) + (n[3] - w * n[1]);
    }
    Ok(out)
}

/// Largest deviation of `b` from a row-wise rescaling of `a`, relative per row.
pub fn row_proportionality(a: &CMatrix4, b: &CMatrix4) -> f64 {
    (0..4)
        .map(|i| {
            let (ra, rb) = (a.row(i), b.row(i));
            let pivot = (0..4).max_by(|&p, &q| ra[p].norm().total_cmp(&ra[q].norm())).unwrap_or(0);
            let scale = rb.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if ra[pivot].norm() == 0.0 {
                return if scale == 0.0 { 0.0 } else { f64::INFINITY };
            }
            let lambda = rb[pivot] / ra[pivot];
            let dev = (0..4).map(|j| (rb[j] - lambda * ra[j]).norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                dev
            } else {
                dev / scale
            }
        })
        .fold(0.0, f64::max)
}

/// `det B(K)` as a polynomial in K, recovered from samples at the fixed nodes.
pub fn det_polynomial(variant: MatrixVariant, m: &ModeParams, ph: &BoundaryPhases) -> Result<CPolynomial> {
    let values =
        DET_NODES.iter().map(|&k| Ok(boundary_matrix(variant, m, ph, k)?.det())).collect::<Result<Vec<_>>>()?;
    interpolate(&DET_NODES, &values)
}

/// Mismatch between the interpolated quartic and the direct determinant at an
/// extra node, relative to the polynomial's scale there.
pub fn degree_consistency(variant: MatrixVariant, m: &ModeParams, ph: &BoundaryPhases, probe: C64) -> Result<f64> {
    let p = det_polynomial(variant, m, ph)?;
    let direct = boundary_matrix(variant, m, ph, probe)?.det();
    let scale = p.max_abs_coeff() * probe.norm().max(1.0).powi(4);
    if scale == 0.0 {
        return Ok(direct.norm());
    }
    Ok((p.eval(probe) - direct).norm() / scale)
}

/// Tabulated boundary matrices, kept for comparison with the builders.
pub mod display {
    use super::*;

    /// Plane-wave matrix as tabulated: the (k ± p) factors of rows 3–4 appear interchanged.
    pub fn planewave(m: &ModeParams, ph: &BoundaryPhases, k: C64) -> Result<CMatrix4> {
        let h = helicity_data(m)?;
        let (al, be) = (h.alpha, h.beta);
        let (kp, km) = (c(m.k + m.p, 0.0), c(m.k - m.p, 0.0));
        let (x, y, v, w) = (ph.x(), ph.y(), ph.v(), ph.w());
        Ok(CMatrix4([
            [al - x, be - x, (al - x) * k, (be - x) * k],
            [(al - y) * k, (be - y) * k, al - y, be - y],
            [(al - v) * kp, (be - v) * km, -(al - v) * km * k, -(be - v) * kp * k],
            [(al - w) * kp * k, (be - w) * km * k, -(al - w) * km, -(be - w) * kp],
        ]))
    }

    /// Squared-basis matrix as tabulated: m and n interchanged in the fourth
    /// column of rows 3–4.
    pub fn squared(m: &ModeParams, ph: &BoundaryPhases, k: C64) -> Result<CMatrix4> {
        let mut out = boundary_matrix_squared(m, ph, k)?;
        let (mm, nn) = (c(m.epsilon + m.k, 0.0), c(m.epsilon - m.k, 0.0));
        let big_m = c(m.mass, 0.0);
        for (row, z, a, b) in [(2, ph.v(), nn, mm), (3, ph.w(), mm, nn)] {
            out[(row, 3)] = -(k * (big_m - z * a)) + (big_m - z * b);
        }
        Ok(out)
    }
}

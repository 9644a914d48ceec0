//! Comparison of every constructed object against its tabulated closed form.
//!
//! The report is purely descriptive: each field is a deviation (or a ratio)
//! between what the library computes and the corresponding printed
//! expression. Known disagreements show up as large entries here rather than
//! as failures elsewhere.

use serde::Serialize;

use crate::algebra::{c, CMatrix4, Spinor, C64, ZERO};
use crate::basis_maps::{map_report, MapReport};
use crate::boundary::{
    boundary_matrix_from_set, boundary_matrix_planewave, boundary_matrix_squared, display, g_agreement,
    row_proportionality, BoundaryPhases, GAgreement,
};
use crate::clifford::{build_gammas, majorana_display, CliffordDeviation, Representation};
use crate::error::Result;
use crate::majorana::{majorana_report, MajoranaReport};
use crate::solutions::{phi_basis, squared_set, weyl_current_z, weyl_waves, Event, ModeParams, SolutionSet};

#[derive(Clone, Debug, Serialize)]
pub struct CliffordSection {
    pub spinor: CliffordDeviation,
    pub standard: CliffordDeviation,
    pub majorana: CliffordDeviation,
    /// Tabulated Majorana matrices against `AγᵃA⁻¹`.
    pub majorana_display: f64,
    /// `γ⁵ = diag(−I, I)` against `−iγ⁰γ¹γ²γ³` and against `+iγ⁰γ¹γ²γ³`.
    pub gamma5_vs_minus_i_product: f64,
    pub gamma5_vs_plus_i_product: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquaredSection {
    /// `det{Ψⱼ}/k⁴` at the first sample; tabulated value is 1.
    pub det_over_k4: C64,
    /// Spread of det over z and γ samples.
    pub det_variation: f64,
    /// First column on the z-axis against `(M sin kz, 0, ε sin kz + ik cos kz, −(k₁+ik₂) sin kz)`.
    pub first_column: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundarySection {
    /// Row-proportionality defect of each builder against the first-principles system.
    pub planewave_builder: f64,
    pub squared_builder: f64,
    /// The same for the tabulated matrices.
    pub planewave_display: f64,
    pub squared_display: f64,
    /// `(ε+k)(ε−k) − (k₁+ik₂)(k₁−ik₂)`; tabulated as 0, equal to M².
    pub mn_minus_fg: f64,
    pub mass_squared: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylCurrentSection {
    /// `−|η₁|² + |η₂|²` of the unnormalised wave.
    pub raw: f64,
    /// Divided by `Jᵗ`.
    pub normalized: f64,
    /// `k/(ε − k)` as tabulated.
    pub tabulated: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceReport {
    pub mode: ModeParams,
    pub phases: BoundaryPhases,
    pub clifford: CliffordSection,
    pub squared: SquaredSection,
    pub maps: MapReport,
    pub majorana: MajoranaReport,
    pub boundary: BoundarySection,
    /// Absent when the transverse momentum vanishes.
    pub weyl_current: Option<WeylCurrentSection>,
    pub covariant_g: GAgreement,
}

fn sample_events() -> Vec<Event> {
    vec![
        Event::new(0.0, 0.0, 0.0, 0.0),
        Event::new(0.13, -0.4, 0.25, 0.9),
        Event::new(-1.1, 0.7, 1.9, -0.35),
        Event::new(2.4, 1.3, -0.8, 1.6),
    ]
}

fn clifford_section() -> CliffordSection {
    let [s, d, m] = [Representation::Spinor, Representation::Standard, Representation::Majorana].map(build_gammas);
    let tab = majorana_display();
    let product = s.gamma5_from_product();
    CliffordSection {
        spinor: s.deviation(),
        standard: d.deviation(),
        majorana: m.deviation(),
        majorana_display: (0..4).map(|a| tab[a].max_dev(&m.gamma[a])).fold(0.0, f64::max),
        gamma5_vs_minus_i_product: s.gamma5.max_dev(&product),
        gamma5_vs_plus_i_product: s.gamma5.max_dev(&(-product)),
    }
}

fn squared_section(m: &ModeParams) -> SquaredSection {
    let k4 = m.k.powi(4);
    let mut dets = Vec::new();
    for gamma in [0.0, 0.8, -1.7] {
        let set = squared_set(m, Representation::Spinor, gamma);
        for z in [0.0, 0.37, 1.9] {
            dets.push(set.evaluate(&Event::on_axis(z)).det());
        }
    }
    let spread = dets.iter().map(|d| (d - dets[0]).norm()).fold(0.0, f64::max);
    let set = squared_set(m, Representation::Spinor, 0.0);
    let first_column = [0.0, 0.37, -1.3]
        .iter()
        .map(|&z| {
            let (s, co) = ((m.k * z).sin(), (m.k * z).cos());
            let want = Spinor::new([c(m.mass * s, 0.0), ZERO, c(m.epsilon * s, m.k * co), -m.f() * s]);
            (set.columns[0].evaluate(&Event::on_axis(z)) - want).max_abs()
        })
        .fold(0.0, f64::max);
    SquaredSection {
        det_over_k4: if k4 == 0.0 { c(f64::NAN, f64::NAN) } else { dets[0] / k4 },
        det_variation: spread,
        first_column,
    }
}

fn reorder(set: &SolutionSet) -> SolutionSet {
    let c = set.columns;
    SolutionSet { columns: [c[0], c[2], c[1], c[3]], ..*set }
}

fn boundary_section(m: &ModeParams, ph: &BoundaryPhases) -> Result<BoundarySection> {
    let phi = reorder(&phi_basis(m)?);
    let sq = squared_set(m, Representation::Spinor, 0.0);
    let mut out = BoundarySection {
        planewave_builder: 0.0,
        squared_builder: 0.0,
        planewave_display: 0.0,
        squared_display: 0.0,
        mn_minus_fg: (m.epsilon + m.k) * (m.epsilon - m.k) - (m.f() * m.g()).re,
        mass_squared: m.mass * m.mass,
    };
    for k in [c(0.6, 0.8), c(0.3, -0.8), c(-1.2, 0.4)] {
        let (gp, gs) = (boundary_matrix_from_set(&phi, ph, k)?, boundary_matrix_from_set(&sq, ph, k)?);
        let upd = |acc: &mut f64, a: &CMatrix4, b: &CMatrix4| *acc = acc.max(row_proportionality(a, b));
        upd(&mut out.planewave_builder, &gp, &boundary_matrix_planewave(m, ph, k)?);
        upd(&mut out.squared_builder, &gs, &boundary_matrix_squared(m, ph, k)?);
        upd(&mut out.planewave_display, &gp, &display::planewave(m, ph, k)?);
        upd(&mut out.squared_display, &gs, &display::squared(m, ph, k)?);
    }
    Ok(out)
}

fn weyl_section(m: &ModeParams) -> Option<WeylCurrentSection> {
    let (eta, _) = weyl_waves(m.k1, m.k2, m.k).ok()?;
    let (raw, normalized) = weyl_current_z(&eta);
    let e = eta.mode.epsilon;
    Some(WeylCurrentSection { raw, normalized, tabulated: m.k / (e - m.k) })
}

/// Full comparison for one mode (M > 0, k ≠ 0, k₁ + ik₂ ≠ 0) and one set of phases.
pub fn reference_report(m: &ModeParams, ph: &BoundaryPhases) -> Result<ReferenceReport> {
    Ok(ReferenceReport {
        mode: *m,
        phases: *ph,
        clifford: clifford_section(),
        squared: squared_section(m),
        maps: map_report(m)?,
        majorana: majorana_report(m, &sample_events())?,
        boundary: boundary_section(m, ph)?,
        weyl_current: weyl_section(m),
        covariant_g: g_agreement(ph.rho, ph.sigma),
    })
}

//! Majorana-representation solutions and their real/imaginary families.
//!
//! In the Majorana basis the Dirac operator is real, so every solution splits
//! into a real part and an imaginary part that solve the equation separately.
//! The two families here are seeded by `cos θ` and `−i sin θ` with
//! `θ = εt − k₁x − k₂y − kz`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::algebra::{c, CMatrix4, Spinor, C64, I, ONE, ZERO};
use crate::clifford::{build_gammas, majorana_transform, Representation};
use crate::error::{Error, Result};
use crate::solutions::{
    helicity_wave, squared_from_seed, Event, Generator, Helicity, ModeParams, Seed, SolutionForm, SolutionSet,
    StructuredSolution,
};
use crate::tolerances::SINGULAR_DET;

/// Charge-parity class of a Majorana family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Real,
    Imaginary,
}

/// Four Majorana-basis solutions in real-phase form, all real or all imaginary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MajoranaFamily {
    pub kind: FamilyKind,
    pub columns: [StructuredSolution; 4],
    pub mode: ModeParams,
}

impl MajoranaFamily {
    pub fn evaluate(&self, e: &Event) -> CMatrix4 {
        CMatrix4::from_columns(self.columns.map(|s| s.evaluate(e)))
    }

    /// Largest coefficient component that breaks the family's reality class.
    pub fn reality_violation(&self) -> f64 {
        self.columns
            .iter()
            .map(|s| {
                let (a, b) = s.form.parts();
                match self.kind {
                    FamilyKind::Real => a.max_abs_im().max(b.max_abs_im()),
                    FamilyKind::Imaginary => a.max_abs_re().max(b.max_abs_re()),
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> Result<f64> {
        let g = build_gammas(Representation::Majorana);
        self.columns.iter().try_fold(0.0f64, |acc, s| Ok(acc.max(s.dirac_residual(&g)?)))
    }

    pub fn as_set(&self) -> Result<SolutionSet> {
        let generator = match self.kind {
            FamilyKind::Real => Generator::MajoranaCos,
            FamilyKind::Imaginary => Generator::MajoranaSin,
        };
        SolutionSet::new(self.columns, generator, None)
    }
}

/// `A·Ψ`: carries a spinor-basis solution into the Majorana basis.
pub fn to_majorana(sol: &StructuredSolution) -> Result<StructuredSolution> {
    if !sol.rep.same_as(&Representation::Spinor) {
        return Err(Error::Mismatch(format!("expected a spinor-basis solution, got {}", sol.rep)));
    }
    let a = majorana_transform();
    Ok(StructuredSolution { rep: Representation::Majorana, ..sol.map_spinors(&a.s) })
}

/// `A⁻¹·Ψ`: back to the spinor basis.
pub fn from_majorana(sol: &StructuredSolution) -> Result<StructuredSolution> {
    if !sol.rep.same_as(&Representation::Majorana) {
        return Err(Error::Mismatch(format!("expected a Majorana-basis solution, got {}", sol.rep)));
    }
    let a = majorana_transform();
    Ok(StructuredSolution { rep: Representation::Spinor, ..sol.map_spinors(&a.s_inv) })
}

/// `R = (Ψ + Ψ*)/2` and `I = (Ψ − Ψ*)/2` in real-phase form.
pub fn real_imag_split(
    sol: &StructuredSolution,
    conj_sol: &StructuredSolution,
) -> Result<(StructuredSolution, StructuredSolution)> {
    if !sol.mode.approx_eq(&conj_sol.mode) || !sol.rep.same_as(&conj_sol.rep) {
        return Err(Error::Mismatch("a solution and its conjugate must share mode and basis".into()));
    }
    let (psi, psi_c) = (sol.to_real_phase()?, conj_sol.to_real_phase()?);
    let half = c(0.5, 0.0);
    let r = psi.add(&psi_c)?.scale(half);
    let i = psi.add(&psi_c.scale(-ONE))?.scale(half);
    Ok((r, i))
}

/// The R family (seed `cos θ`) and the I family (seed `−i sin θ`).
pub fn squared_majorana_sets(m: &ModeParams) -> Result<(MajoranaFamily, MajoranaFamily)> {
    if m.mass <= 0.0 {
        return Err(Error::DegenerateMode("Majorana families need M > 0".into()));
    }
    let rep = Representation::Majorana;
    let r = squared_from_seed(m, rep, Seed::RealPhase { cos: ONE, sin: ZERO, k3: m.k }, Generator::MajoranaCos);
    let i = squared_from_seed(m, rep, Seed::RealPhase { cos: ZERO, sin: -I, k3: m.k }, Generator::MajoranaSin);
    Ok((
        MajoranaFamily { kind: FamilyKind::Real, columns: r.columns, mode: *m },
        MajoranaFamily { kind: FamilyKind::Imaginary, columns: i.columns, mode: *m },
    ))
}

/// `θ = εt − k₁x − k₂y − kz`
pub fn phase(m: &ModeParams, e: &Event) -> f64 {
    m.epsilon * e.t - m.k1 * e.x - m.k2 * e.y - m.k * e.z
}

/// Two-point test of a constant map `I = S·R`.
#[derive(Clone, Debug, Serialize)]
pub struct NonexistenceReport {
    pub points: [Event; 2],
    /// `sin 2θ` at each point.
    pub sin_2theta: [f64; 2],
    pub s1: CMatrix4,
    pub s2: CMatrix4,
    /// `max|S1 − S2|`
    pub deviation: f64,
    /// `max|S(xᵢ) − tabulated S(xᵢ)|` for each point.
    pub display_deviation: [f64; 2],
    /// Entry (1,1) against `(i/M²)(Mk₁ − F sin 2θ)` at each point.
    pub entry11_deviation: [f64; 2],
    /// True when the two maps differ by more than `tol`.
    pub maps_differ: bool,
}

/// `S(x) = [I(x)]·[R(x)]⁻¹` at two points and their difference.
pub fn linear_map_nonexistence(
    r: &MajoranaFamily,
    i: &MajoranaFamily,
    points: [Event; 2],
    tol: f64,
) -> Result<NonexistenceReport> {
    if r.kind != FamilyKind::Real || i.kind != FamilyKind::Imaginary {
        return Err(Error::InvalidInput("expected a real and an imaginary family".into()));
    }
    if !r.mode.approx_eq(&i.mode) {
        return Err(Error::Mismatch("families carry different modes".into()));
    }
    let m = r.mode;
    let map_at = |e: &Event| -> Result<CMatrix4> {
        let rm = r.evaluate(e);
        if rm.det().norm() <= SINGULAR_DET * m.mass.powi(4).max(1.0) {
            return Err(Error::Singular("R evaluated at a sample point"));
        }
        Ok(i.evaluate(e) * rm.inverse()?)
    };
    let (s1, s2) = (map_at(&points[0])?, map_at(&points[1])?);
    let thetas = points.map(|e| phase(&m, &e));
    let tab = thetas.map(|th| display::s_map(&m, th));
    let deviation = s1.max_dev(&s2);
    Ok(NonexistenceReport {
        points,
        sin_2theta: thetas.map(|th| (2.0 * th).sin()),
        s1,
        s2,
        deviation,
        display_deviation: [s1.max_dev(&tab[0]), s2.max_dev(&tab[1])],
        entry11_deviation: [(s1[(0, 0)] - tab[0][(0, 0)]).norm(), (s2[(0, 0)] - tab[1][(0, 0)]).norm()],
        maps_differ: deviation > tol,
    })
}

/// Closed form of `[I]·[R]⁻¹`: `(εγ⁰ − k₁γ¹ − k₂γ² − kγ³)/M` in the Majorana basis.
pub fn constant_map(m: &ModeParams) -> CMatrix4 {
    let g = build_gammas(Representation::Majorana);
    crate::solutions::momentum_slash(&g, m, m.k).scale(c(1.0 / m.mass, 0.0))
}

/// Tabulated Majorana-basis expressions, kept for comparison.
pub mod display {
    use super::*;

    /// Plane wave of the α (or β) helicity branch, momentum `+k`, as tabulated
    /// (amplitude without the `e^{−iθ}` factor).
    pub fn wave(m: &ModeParams, branch: Helicity) -> Result<Spinor> {
        let sol = helicity_wave(m, branch, true)?;
        let (v, _) = sol.form.parts();
        let (r, amp) = (v[1], v[2]);
        let h = c(FRAC_1_SQRT_2, 0.0);
        Ok(Spinor::new([
            h * (ONE + I * amp * r),
            h * (r - I * amp),
            h * (-I * (r + I * amp)),
            h * (I * (ONE - I * amp * r)),
        ]))
    }

    /// Tabulated wave as a solution `v·e^{−iθ}` in real-phase form.
    pub fn wave_solution(m: &ModeParams, branch: Helicity) -> Result<StructuredSolution> {
        let v = wave(m, branch)?;
        Ok(StructuredSolution::real_phase(*m, Representation::Majorana, v, -I * v, m.k))
    }

    /// Tabulated `(cos, sin)` coefficient spinors of `R_M` and `I_M` for one branch.
    pub fn real_imag_parts(m: &ModeParams, branch: Helicity) -> Result<((Spinor, Spinor), (Spinor, Spinor))> {
        let sol = helicity_wave(m, branch, true)?;
        let (v, _) = sol.form.parts();
        let (r, amp) = (v[1], v[2]);
        let (sum, diff) = (r + r.conj(), r - r.conj());
        let parts = |scale: C64, two: C64| {
            // `two` is 1 for the α display and 2 for the β display; the halves
            // in the α entries become whole terms in the β ones.
            let half = two / 2.0;
            let re = (
                Spinor::new([two + I * amp * diff * half, sum * half, two * amp - I * diff * half, amp * sum * half])
                    .scale(scale),
                Spinor::new([amp * sum * half, -I * diff * half - two * amp, -sum * half, two - I * amp * diff * half])
                    .scale(scale),
            );
            let im = (
                Spinor::new([
                    I * amp * sum * half,
                    diff * half - two * I * amp,
                    -I * sum * half,
                    two * I + amp * diff * half,
                ])
                .scale(scale),
                Spinor::new([
                    -two * I + amp * diff * half,
                    -I * sum * half,
                    -diff * half - two * I * amp,
                    -I * amp * sum * half,
                ])
                .scale(scale),
            );
            (re, im)
        };
        Ok(match branch {
            Helicity::Alpha => parts(c(FRAC_1_SQRT_2, 0.0), ONE),
            Helicity::Beta => parts(ONE, c(2.0, 0.0)),
        })
    }

    /// Tabulated real family at phase θ (columns R₁..R₄).
    pub fn r_matrix(m: &ModeParams, theta: f64) -> CMatrix4 {
        let (co, si) = (theta.cos(), theta.sin());
        let (e, k1, k2, k3, mm) = (m.epsilon, m.k1, m.k2, m.k, m.mass);
        CMatrix4::from_real([
            [mm * co + k1 * si, -(e + k3) * si, 0.0, -k2 * si],
            [(e - k3) * si, mm * co - k1 * si, k2 * si, 0.0],
            [0.0, k2 * si, mm * co + k1 * si, (e - k3) * si],
            [-k2 * si, 0.0, -(e + k3) * si, mm * co - k1 * si],
        ])
    }

    /// Tabulated imaginary family at phase θ (columns I₁..I₄).
    pub fn i_matrix(m: &ModeParams, theta: f64) -> CMatrix4 {
        let (co, si) = (theta.cos(), theta.sin());
        let (e, k1, k2, k3, mm) = (m.epsilon, m.k1, m.k2, m.k, m.mass);
        CMatrix4::from_real([
            [k1 * co - mm * si, -(e + k3) * co, 0.0, -k2 * co],
            [(e - k3) * co, -k1 * co - mm * si, k2 * co, 0.0],
            [0.0, k2 * co, k1 * co - mm * si, (e - k3) * co],
            [-k2 * co, 0.0, -(e + k3) * co, -k1 * co - mm * si],
        ])
        .scale(I)
    }

    /// The tabulated coordinate-dependent `S = I·R⁻¹`, with `F = (M² + k₁²)/2`.
    pub fn s_map(m: &ModeParams, theta: f64) -> CMatrix4 {
        let s2 = (2.0 * theta).sin();
        let (e, k1, k2, k3, mm) = (m.epsilon, m.k1, m.k2, m.k, m.mass);
        let f = 0.5 * (mm * mm + k1 * k1);
        let ep = (e + k3) * (e + k3);
        let em = (e - k3) * (e - k3);
        CMatrix4::from_real([
            [mm * k1 - f * s2, -ep * s2, 0.0, -k2 * s2],
            [-em * s2, -(mm * k1 + f * s2), -k2 * s2, 0.0],
            [0.0, -k2 * s2, mm * k1 - 0.5 * (mm * mm + k1 * k1) * s2, -em * s2],
            [-k2 * s2, 0.0, -ep * s2, -(mm * k1 + f * s2)],
        ])
        .scale(c(0.0, 1.0 / (mm * mm)))
    }
}

/// Deviations of the constructed Majorana objects from their tabulated forms.
#[derive(Clone, Debug, Serialize)]
pub struct MajoranaReport {
    /// Tabulated wave against `A·Ψ` and against `A⁻¹·Ψ`, per branch (α, β).
    pub wave_vs_a: [f64; 2],
    pub wave_vs_a_inverse: [f64; 2],
    /// Dirac residual of the tabulated wave under the Majorana-basis operator.
    pub wave_residual: [f64; 2],
    /// Tabulated R/I parts against the split of the tabulated wave.
    pub split_vs_tabulated: [f64; 2],
    /// The same with the β display rescaled by 1/(2√2).
    pub split_vs_tabulated_rescaled: [f64; 2],
    /// Squared families against the tabulated R and I matrices over the samples.
    pub r_family: f64,
    pub i_family: f64,
    /// det of the evaluated families relative to M⁴ (worst over samples).
    pub det_r_rel: f64,
    pub det_i_rel: f64,
    /// `[I]·[R]⁻¹` against the closed-form constant map (worst over samples).
    pub map_vs_constant: f64,
    /// `[I]·[R]⁻¹` against the tabulated S display (worst over samples).
    pub map_vs_tabulated: f64,
}

pub fn majorana_report(m: &ModeParams, samples: &[Event]) -> Result<MajoranaReport> {
    let g = build_gammas(Representation::Majorana);
    let (fr, fi) = squared_majorana_sets(m)?;
    let mut rep = MajoranaReport {
        wave_vs_a: [0.0; 2],
        wave_vs_a_inverse: [0.0; 2],
        wave_residual: [0.0; 2],
        split_vs_tabulated: [0.0; 2],
        split_vs_tabulated_rescaled: [0.0; 2],
        r_family: 0.0,
        i_family: 0.0,
        det_r_rel: 0.0,
        det_i_rel: 0.0,
        map_vs_constant: 0.0,
        map_vs_tabulated: 0.0,
    };
    let a = majorana_transform();
    for (n, branch) in [Helicity::Alpha, Helicity::Beta].into_iter().enumerate() {
        let (v, _) = helicity_wave(m, branch, true)?.form.parts();
        let tab = display::wave(m, branch)?;
        rep.wave_vs_a[n] = (tab - a.s * v).max_abs();
        rep.wave_vs_a_inverse[n] = (tab - a.s_inv * v).max_abs();
        let sol = display::wave_solution(m, branch)?;
        rep.wave_residual[n] = sol.dirac_residual(&g)?;
        let (r, i) = real_imag_split(&sol, &sol.conjugate()?)?;
        let ((rc, rs), (ic, is)) = display::real_imag_parts(m, branch)?;
        let dev = |scale: f64| {
            let s = |v: Spinor| v.scale(c(scale, 0.0));
            let (r1, r2) = r.form.parts();
            let (i1, i2) = i.form.parts();
            [(r1 - s(rc)), (r2 - s(rs)), (i1 - s(ic)), (i2 - s(is))].iter().map(Spinor::max_abs).fold(0.0, f64::max)
        };
        rep.split_vs_tabulated[n] = dev(1.0);
        rep.split_vs_tabulated_rescaled[n] = if branch == Helicity::Beta { dev(0.5 * FRAC_1_SQRT_2) } else { dev(1.0) };
    }
    let m4 = m.mass.powi(4);
    let k_const = constant_map(m);
    for e in samples {
        let th = phase(m, e);
        let (rm, im) = (fr.evaluate(e), fi.evaluate(e));
        rep.r_family = rep.r_family.max(rm.max_dev(&display::r_matrix(m, th)));
        rep.i_family = rep.i_family.max(im.max_dev(&display::i_matrix(m, th)));
        rep.det_r_rel = rep.det_r_rel.max((rm.det() - m4).norm() / m4);
        rep.det_i_rel = rep.det_i_rel.max((im.det() - m4).norm() / m4);
        let s = im * rm.inverse()?;
        rep.map_vs_constant = rep.map_vs_constant.max(s.max_dev(&k_const));
        rep.map_vs_tabulated = rep.map_vs_tabulated.max(s.max_dev(&display::s_map(m, th)));
    }
    Ok(rep)
}

/// Real-phase check used by tests: is a solution real (or imaginary) pointwise?
pub fn reality_class(sol: &StructuredSolution) -> Option<FamilyKind> {
    let SolutionForm::RealPhase { cos_part, sin_part, .. } = sol.form else { return None };
    let tol = 1e-14 * cos_part.max_abs().max(sin_part.max_abs()).max(1.0);
    if cos_part.max_abs_im() <= tol && sin_part.max_abs_im() <= tol {
        Some(FamilyKind::Real)
    } else if cos_part.max_abs_re() <= tol && sin_part.max_abs_re() <= tol {
        Some(FamilyKind::Imaginary)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::make_mode;

    fn mode() -> ModeParams {
        make_mode(0.3, 0.4, 1.2, 1.0).unwrap()
    }

    fn samples() -> Vec<Event> {
        vec![Event::new(0.1, 0.2, -0.3, 0.4), Event::new(-1.3, 0.7, 2.1, -0.2), Event::new(2.2, -0.5, 0.0, 1.7)]
    }

    #[test]
    fn families_match_tables_and_solve() {
        let m = mode();
        let (r, i) = squared_majorana_sets(&m).unwrap();
        assert!(r.max_residual().unwrap() < 1e-12);
        assert!(i.max_residual().unwrap() < 1e-12);
        assert!(r.reality_violation() < 1e-15 && i.reality_violation() < 1e-15);
        for e in samples() {
            let th = phase(&m, &e);
            assert!(r.evaluate(&e).max_dev(&display::r_matrix(&m, th)) < 1e-12);
            assert!(i.evaluate(&e).max_dev(&display::i_matrix(&m, th)) < 1e-12);
            let m4 = m.mass.powi(4);
            assert!((r.evaluate(&e).det() - m4).norm() < 1e-10 * m4);
            assert!((i.evaluate(&e).det() - m4).norm() < 1e-10 * m4);
        }
    }

    #[test]
    fn transform_round_trip_and_residual() {
        let m = mode();
        let g = build_gammas(Representation::Majorana);
        let psi = helicity_wave(&m, Helicity::Alpha, true).unwrap();
        let pm = to_majorana(&psi).unwrap();
        assert!(pm.dirac_residual(&g).unwrap() < 1e-12);
        assert!(from_majorana(&pm).unwrap().max_dev(&psi) < 1e-12);
        assert!(to_majorana(&pm).is_err());
    }

    #[test]
    fn on_axis_alpha_wave() {
        let m = make_mode(0.0, 0.0, 1.0, 1.0).unwrap();
        let alpha = 2f64.sqrt() - 1.0;
        let tab = display::wave(&m, Helicity::Alpha).unwrap();
        let want = Spinor::new([ONE, c(0.0, -alpha), c(alpha, 0.0), I]).scale(c(FRAC_1_SQRT_2, 0.0));
        assert!((tab - want).max_abs() < 1e-15);
        // The table corresponds to A⁻¹, the equation-preserving map is A.
        let psi = helicity_wave(&m, Helicity::Alpha, true).unwrap();
        let (v, _) = psi.form.parts();
        assert!((majorana_transform().s_inv * v - want).max_abs() < 1e-15);
        assert!((majorana_transform().s * v - want).max_abs() > 0.1);
    }

    #[test]
    fn split_is_real_and_imaginary() {
        let m = mode();
        let pm = to_majorana(&helicity_wave(&m, Helicity::Beta, true).unwrap()).unwrap();
        let (r, i) = real_imag_split(&pm, &pm.conjugate().unwrap()).unwrap();
        assert_eq!(reality_class(&r), Some(FamilyKind::Real));
        assert_eq!(reality_class(&i), Some(FamilyKind::Imaginary));
        let back = r.add(&i).unwrap();
        assert!(back.max_dev(&pm.to_real_phase().unwrap()) < 1e-15);
        for e in samples() {
            assert!(r.evaluate(&e).max_abs_im() < 1e-14);
        }
    }

    #[test]
    fn tabulated_split_consistency() {
        let m = mode();
        let rep = majorana_report(&m, &samples()).unwrap();
        assert!(rep.split_vs_tabulated[0] < 1e-14, "{rep:?}");
        assert!(rep.split_vs_tabulated_rescaled[1] < 1e-14, "{rep:?}");
        assert!(rep.split_vs_tabulated[1] > 0.1);
        assert!(rep.wave_vs_a_inverse.iter().all(|&d| d < 1e-14));
    }

    #[test]
    fn map_between_families_is_constant() {
        let m = mode();
        let (r, i) = squared_majorana_sets(&m).unwrap();
        let pts = [Event::new(0.1, 0.2, -0.3, 0.4), Event::new(-1.3, 0.7, 2.1, -0.2)];
        let rep = linear_map_nonexistence(&r, &i, pts, 1e-6).unwrap();
        assert!(rep.s1.max_dev(&constant_map(&m)) < 1e-12);
        assert!(rep.deviation < 1e-12);
        assert!(!rep.maps_differ);
    }

    #[test]
    fn massless_is_rejected() {
        assert!(squared_majorana_sets(&make_mode(0.3, 0.4, 1.2, 0.0).unwrap()).is_err());
    }
}

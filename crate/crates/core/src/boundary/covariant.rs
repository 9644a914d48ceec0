use serde::Serialize;

use super::current::current_value;
use crate::algebra::{c, CMatrix4, Spinor, C64, I};
use crate::clifford::{build_gammas, GammaSet, Representation};
use crate::tolerances::FIXED_POINT_TOL;

/// Boundary operator `G = (n₀γ⁰ + n₃γ³) + γ⁵(m₀γ⁰ + m₃γ³)` whose fixed points
/// are the phase-locked spinors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CovariantG {
    pub rho: f64,
    pub sigma: f64,
    pub matrix: CMatrix4,
    /// `(n₀, n₃, m₀, m₃)`
    pub coeffs: [C64; 4],
    pub rep: Representation,
}

fn coefficients(rho: f64, sigma: f64) -> [C64; 4] {
    let (sr, ss, cr, cs) = (rho.sin(), sigma.sin(), rho.cos(), sigma.cos());
    [c(0.5 * (cr + cs), 0.0), I * (0.5 * (sr - ss)), I * (0.5 * (sr + ss)), c(0.5 * (cr - cs), 0.0)]
}

/// Coefficient form in the basis of `g`.
pub fn build_covariant_g(rho: f64, sigma: f64, g: &GammaSet) -> CovariantG {
    let coeffs = coefficients(rho, sigma);
    let [n0, n3, m0, m3] = coeffs;
    let [g0, _, _, g3] = g.gamma;
    let matrix = (n0 * g0 + n3 * g3) + g.gamma5 * (m0 * g0 + m3 * g3);
    CovariantG { rho, sigma, matrix, coeffs, rep: g.rep }
}

/// The spinor-basis matrix with `e^{∓iρ}`, `e^{∓iσ}` on the anti-diagonal blocks.
pub fn explicit_g(rho: f64, sigma: f64) -> CMatrix4 {
    let mut g = CMatrix4::zero();
    g[(0, 2)] = C64::from_polar(1.0, -rho);
    g[(1, 3)] = C64::from_polar(1.0, -sigma);
    g[(2, 0)] = C64::from_polar(1.0, rho);
    g[(3, 1)] = C64::from_polar(1.0, sigma);
    g
}

/// `Σ e^{±iρ, ±iσ} P_± (γ⁰ ± γ³)/2` with `P_± = (1 ± γ⁵)/2`.
pub fn projector_g(rho: f64, sigma: f64, g: &GammaSet) -> CMatrix4 {
    let id = CMatrix4::identity();
    let half = c(0.5, 0.0);
    let (pp, pm) = (half * (id + g.gamma5), half * (id - g.gamma5));
    let (g0, g3) = (g.gamma[0], g.gamma[3]);
    let (up, down) = (half * (g0 + g3), half * (g0 - g3));
    let e = |t: f64| C64::from_polar(1.0, t);
    e(rho) * (pp * up) + e(-rho) * (pm * down) + e(sigma) * (pp * down) + e(-sigma) * (pm * up)
}

/// `e^{iρ}P₊γ⁰ + e^{−iρ}P₋γ⁰`, the case σ = ρ.
pub fn g_equal_phases(rho: f64, g: &GammaSet) -> CMatrix4 {
    let id = CMatrix4::identity();
    let half = c(0.5, 0.0);
    let g0 = g.gamma[0];
    C64::from_polar(1.0, rho) * (half * (id + g.gamma5) * g0)
        + C64::from_polar(1.0, -rho) * (half * (id - g.gamma5) * g0)
}

/// `e^{iρ}(γ⁰ + γ³)/2 + e^{−iρ}(γ⁰ − γ³)/2`, the case σ = −ρ.
pub fn g_opposite_phases(rho: f64, g: &GammaSet) -> CMatrix4 {
    let half = c(0.5, 0.0);
    let (g0, g3) = (g.gamma[0], g.gamma[3]);
    C64::from_polar(1.0, rho) * (half * (g0 + g3)) + C64::from_polar(1.0, -rho) * (half * (g0 - g3))
}

/// Agreement of the three constructions and the algebraic checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GAgreement {
    pub explicit_vs_coefficients: f64,
    pub explicit_vs_projectors: f64,
    /// `‖G² − I‖`
    pub square: f64,
    /// `‖G_rep − S·G_spinor·S⁻¹‖` for the standard and Majorana bases.
    pub covariance: [f64; 2],
}

pub fn g_agreement(rho: f64, sigma: f64) -> GAgreement {
    let gs = build_gammas(Representation::Spinor);
    let explicit = explicit_g(rho, sigma);
    let coeff = build_covariant_g(rho, sigma, &gs).matrix;
    let covariance = [Representation::Standard, Representation::Majorana].map(|rep| {
        let g = build_gammas(rep);
        let moved = rep.from_spinor().apply(&explicit);
        build_covariant_g(rho, sigma, &g).matrix.max_dev(&moved).max(projector_g(rho, sigma, &g).max_dev(&moved))
    });
    GAgreement {
        explicit_vs_coefficients: explicit.max_dev(&coeff),
        explicit_vs_projectors: explicit.max_dev(&projector_g(rho, sigma, &gs)),
        square: (explicit * explicit).max_dev(&CMatrix4::identity()),
        covariance,
    }
}

/// Outcome of testing `GΨ = Ψ ⇒ J^z = 0` on one spinor.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FixedPointReport {
    /// `max|GΨ − Ψ|`
    pub fixed_point_dev: f64,
    pub jz: f64,
    pub jz_imag: f64,
    pub is_fixed: bool,
    /// False only when Ψ is fixed and yet carries current.
    pub sufficiency_holds: bool,
}

pub fn check_g_implies_zero_current(g_op: &CovariantG, psi: &Spinor, g: &GammaSet) -> FixedPointReport {
    let dev = (g_op.matrix * *psi - *psi).max_abs();
    let j = current_value(psi, g);
    let is_fixed = dev <= FIXED_POINT_TOL;
    FixedPointReport {
        fixed_point_dev: dev,
        jz: j.re,
        jz_imag: j.im,
        is_fixed,
        sufficiency_holds: !is_fixed || j.re.abs() <= FIXED_POINT_TOL,
    }
}

/// Projects onto the +1 eigenspace: `(Ψ + GΨ)/2` is always a fixed point.
pub fn fixed_part(g_op: &CovariantG, psi: &Spinor) -> Spinor {
    let half = c(0.5, 0.0);
    half * (*psi + g_op.matrix * *psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ZERO;
    use crate::boundary::phase_locked;

    #[test]
    fn three_forms_agree() {
        for (rho, sigma) in [(0.3, -1.2), (2.9, 0.1), (0.0, 0.0)] {
            let a = g_agreement(rho, sigma);
            assert!(a.explicit_vs_coefficients < 1e-12 && a.explicit_vs_projectors < 1e-12, "{a:?}");
            assert!(a.square < 1e-12 && a.covariance.iter().all(|&d| d < 1e-12));
        }
    }

    #[test]
    fn special_cases() {
        let g = build_gammas(Representation::Spinor);
        assert!(g_equal_phases(0.7, &g).max_dev(&explicit_g(0.7, 0.7)) < 1e-12);
        assert!(g_opposite_phases(0.7, &g).max_dev(&explicit_g(0.7, -0.7)) < 1e-12);
    }

    #[test]
    fn locked_spinor_is_fixed_and_currentless() {
        let g = build_gammas(Representation::Spinor);
        let op = build_covariant_g(0.4, -2.2, &g);
        let psi = phase_locked(c(1.0, 0.5), c(-0.3, 2.0), 0.4, -2.2);
        let r = check_g_implies_zero_current(&op, &psi, &g);
        assert!(r.is_fixed && r.sufficiency_holds && r.jz.abs() < 1e-12);
        let r0 = check_g_implies_zero_current(&op, &Spinor::zero(), &g);
        assert!(r0.is_fixed && r0.jz == 0.0);
        let probe = Spinor::new([c(1.0, 0.0), ZERO, ZERO, ZERO]);
        assert!(!check_g_implies_zero_current(&op, &probe, &g).is_fixed);
        assert!(check_g_implies_zero_current(&op, &fixed_part(&op, &probe), &g).is_fixed);
    }
}

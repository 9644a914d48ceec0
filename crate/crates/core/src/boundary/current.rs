use crate::algebra::{Spinor, C64};
use crate::clifford::GammaSet;
use crate::error::{Error, Result};
use crate::solutions::{Event, StructuredSolution};

/// `Ψ†γ⁰γ³Ψ`, complex so that callers can inspect the (vanishing) imaginary part.
pub fn current_value(psi: &Spinor, g: &GammaSet) -> C64 {
    psi.dot(&(g.current_z() * *psi))
}

/// `J^z` of `Σ coeffs[j]·columns[j]` at a point.
pub fn current_jz(columns: &[StructuredSolution], coeffs: &[C64], g: &GammaSet, e: &Event) -> Result<f64> {
    if columns.len() != coeffs.len() || columns.is_empty() {
        return Err(Error::InvalidInput("need one coefficient per column".into()));
    }
    let (m, rep) = (columns[0].mode, columns[0].rep);
    if columns.iter().any(|s| !s.mode.approx_eq(&m) || !s.rep.same_as(&rep)) || !rep.same_as(&g.rep) {
        return Err(Error::Mismatch("columns and gammas must share mode and basis".into()));
    }
    let psi = columns.iter().zip(coeffs).fold(Spinor::zero(), |acc, (s, &z)| acc + z * s.evaluate(e));
    Ok(current_value(&psi, g).re)
}

/// `(|Ψ₁|² − |Ψ₃|²) − (|Ψ₂|² − |Ψ₄|²)`, the spinor-basis component form.
pub fn component_current(psi: &Spinor) -> f64 {
    let n = |i: usize| psi[i].norm_sqr();
    (n(0) - n(2)) - (n(1) - n(3))
}

/// `(φ₁, φ₂, e^{iρ}φ₁, e^{iσ}φ₂)`
pub fn phase_locked(phi1: C64, phi2: C64, rho: f64, sigma: f64) -> Spinor {
    Spinor::new([phi1, phi2, C64::from_polar(1.0, rho) * phi1, C64::from_polar(1.0, sigma) * phi2])
}

use serde::Serialize;

use super::mode::{make_mode, ratio, ModeParams};
use super::structured::Event;
use crate::algebra::{C64, ONE};
use crate::error::{Error, Result};

/// Massless two-component plane wave `e^{−iεt + ik₁x + ik₂y + i·sign·kz}(η₁, η₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeylSpinor {
    pub mode: ModeParams,
    /// Sign of the z-momentum.
    pub sign: i8,
    pub components: [C64; 2],
}

impl WeylSpinor {
    pub fn k3(&self) -> f64 {
        f64::from(self.sign) * self.mode.k
    }

    pub fn evaluate(&self, e: &Event) -> [C64; 2] {
        let m = &self.mode;
        let ph = C64::from_polar(1.0, -m.epsilon * e.t + m.k1 * e.x + m.k2 * e.y + self.k3() * e.z);
        self.components.map(|z| ph * z)
    }

    /// `σ·k` applied to the amplitude.
    fn sigma_k(&self) -> [C64; 2] {
        let (m, [a, b]) = (&self.mode, self.components);
        let k3 = self.k3();
        [a * k3 + m.g() * b, m.f() * a - b * k3]
    }

    /// Residual of `(i∂ₜ − i∂ⱼσʲ)η = 0`, i.e. `max|(ε + σ·k)η|`.
    pub fn equation_residual(&self) -> f64 {
        let sk = self.sigma_k();
        (0..2).map(|i| (self.components[i] * self.mode.epsilon + sk[i]).norm()).fold(0.0, f64::max)
    }

    /// Helicity eigenvalue ⟨η, σ·k η⟩/⟨η, η⟩, expected −ε.
    pub fn helicity(&self) -> f64 {
        let sk = self.sigma_k();
        let num: C64 = (0..2).map(|i| self.components[i].conj() * sk[i]).sum();
        num.re / self.norm_sqr()
    }

    fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Jᵗ = |η₁|² + |η₂|²`
    pub fn current_t(&self) -> f64 {
        self.norm_sqr()
    }

    /// `Jᶻ = −|η₁|² + |η₂|²` of the unnormalised amplitude.
    pub fn current_z(&self) -> f64 {
        -self.components[0].norm_sqr() + self.components[1].norm_sqr()
    }
}

/// The waves η (z-momentum +k) and η′ (−k) with `η₁ = 1`, `η₂ = −(k₁+ik₂)/(ε ∓ k)`.
pub fn weyl_waves(k1: f64, k2: f64, k: f64) -> Result<(WeylSpinor, WeylSpinor)> {
    let m = make_mode(k1, k2, k, 0.0)?;
    let make = |sign: i8| -> Result<WeylSpinor> {
        let den = m.epsilon - f64::from(sign) * m.k;
        let r = ratio(m.f(), den, "η₂/η₁ = −(k₁+ik₂)/(ε − k₃)")?;
        Ok(WeylSpinor { mode: m, sign, components: [ONE, -r] })
    };
    Ok((make(1)?, make(-1)?))
}

/// `f = (k₁+ik₂)/(ε−k)` and `g = (k₁+ik₂)/(ε+k)` of the massless mode.
pub fn weyl_ratios(m: &ModeParams) -> Result<(C64, C64)> {
    if m.mass != 0.0 {
        return Err(Error::InvalidInput("Weyl ratios need a massless mode".into()));
    }
    Ok((ratio(m.f(), m.epsilon - m.k, "f")?, ratio(m.f(), m.epsilon + m.k, "g")?))
}

/// `j^z` in the two conventions: raw `2k/(ε−k)` and normalised by `Jᵗ` (`k/ε`).
pub fn weyl_current_z(eta: &WeylSpinor) -> (f64, f64) {
    (eta.current_z(), eta.current_z() / eta.current_t())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    #[test]
    fn generic_waves() {
        let (eta, eta_p) = weyl_waves(0.3, 0.4, 1.2).unwrap();
        assert!((eta.mode.epsilon - 1.3).abs() < 1e-15);
        assert!((eta.components[1] + c(0.3, 0.4) / 0.1).norm() < 1e-12);
        for w in [eta, eta_p] {
            assert!(w.equation_residual() < 1e-12);
            assert!((w.helicity() + w.mode.epsilon).abs() < 1e-12);
        }
    }

    #[test]
    fn f_g_conjugate_relation() {
        let (eta, _) = weyl_waves(0.3, 0.4, 1.2).unwrap();
        let (f, g) = weyl_ratios(&eta.mode).unwrap();
        assert!((f * g.conj() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn current_factor_of_two() {
        let (eta, _) = weyl_waves(0.3, 0.4, 1.2).unwrap();
        let m = eta.mode;
        let (raw, normalised) = weyl_current_z(&eta);
        assert!((raw - 2.0 * m.k / (m.epsilon - m.k)).abs() < 1e-10);
        assert!((normalised - m.k / m.epsilon).abs() < 1e-12);
    }

    #[test]
    fn on_axis_is_degenerate() {
        assert!(weyl_waves(0.0, 0.0, 1.0).is_err());
        // k = 0 keeps both ratios finite.
        assert!(weyl_waves(0.3, 0.4, 0.0).is_ok());
    }
}

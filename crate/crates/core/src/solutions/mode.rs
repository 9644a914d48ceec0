use serde::Serialize;

use crate::algebra::{c, C64};
use crate::error::{Error, Result};

/// Kinematics of one positive-energy mode.
///
/// `k` is the magnitude attached to the `e^{±ikz}` pair; the sign of the
/// z-momentum is carried by the solution structure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModeParams {
    pub k1: f64,
    pub k2: f64,
    pub k: f64,
    pub mass: f64,
    pub epsilon: f64,
    /// `√(ε² − M²)`, the helicity momentum.
    pub p: f64,
}

/// Builds a mode on the positive-energy branch `ε = +√(k₁² + k₂² + k² + M²)`.
pub fn make_mode(k1: f64, k2: f64, k: f64, mass: f64) -> Result<ModeParams> {
    if ![k1, k2, k, mass].iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("mode parameters"));
    }
    if mass < 0.0 {
        return Err(Error::InvalidInput(format!("mass must be non-negative, got {mass}")));
    }
    if k1 == 0.0 && k2 == 0.0 && k == 0.0 && mass == 0.0 {
        return Err(Error::InvalidInput("all-zero kinematics define no mode".into()));
    }
    let p2 = k1 * k1 + k2 * k2 + k * k;
    Ok(ModeParams { k1, k2, k, mass, epsilon: (p2 + mass * mass).sqrt(), p: p2.sqrt() })
}

impl ModeParams {
    /// `k₁ + ik₂`
    pub fn f(&self) -> C64 {
        c(self.k1, self.k2)
    }

    /// `k₁ − ik₂`
    pub fn g(&self) -> C64 {
        c(self.k1, -self.k2)
    }

    /// `(ε² − k₁² − k₂² − k² − M²) / ε²`
    pub fn dispersion_residual(&self) -> f64 {
        let e2 = self.epsilon * self.epsilon;
        (e2 - self.k1 * self.k1 - self.k2 * self.k2 - self.k * self.k - self.mass * self.mass) / e2
    }

    /// Same kinematics up to a relative tolerance of 1e-14.
    pub fn approx_eq(&self, other: &ModeParams) -> bool {
        let scale = self.epsilon.max(other.epsilon);
        [
            (self.k1, other.k1),
            (self.k2, other.k2),
            (self.k, other.k),
            (self.mass, other.mass),
            (self.epsilon, other.epsilon),
        ]
        .iter()
        .all(|(a, b)| (a - b).abs() <= 1e-14 * scale)
    }

    /// The same mode with the z-momentum reversed.
    pub fn flipped(&self) -> ModeParams {
        ModeParams { k: -self.k, ..*self }
    }
}

/// Helicity parameters of the plane waves at fixed momentum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HelicityData {
    /// `(ε − p)/M`
    pub alpha: C64,
    /// `(ε + p)/M`
    pub beta: C64,
    /// `(k₁ + ik₂)/(k + p)`
    pub s: C64,
    /// `(k₁ + ik₂)/(k − p)`
    pub t: C64,
}

pub(crate) fn ratio(num: C64, den: f64, what: &str) -> Result<C64> {
    if den == 0.0 {
        if num.norm() == 0.0 {
            return Err(Error::DegenerateMode(format!("{what} is 0/0")));
        }
        return Err(Error::DegenerateMode(format!("{what} has a vanishing denominator")));
    }
    Ok(num / den)
}

pub fn helicity_data(m: &ModeParams) -> Result<HelicityData> {
    if m.mass <= 0.0 {
        return Err(Error::DegenerateMode("helicity amplitudes α, β need M > 0".into()));
    }
    Ok(HelicityData {
        alpha: c((m.epsilon - m.p) / m.mass, 0.0),
        beta: c((m.epsilon + m.p) / m.mass, 0.0),
        s: ratio(m.f(), m.k + m.p, "s = (k₁+ik₂)/(k+p)")?,
        t: ratio(m.f(), m.k - m.p, "t = (k₁+ik₂)/(k−p)")?,
    })
}

use serde::Serialize;

use super::mode::ModeParams;
use crate::algebra::{c, CMatrix4, Spinor, C64, I, ONE, ZERO};
use crate::clifford::{GammaSet, Representation};
use crate::error::{Error, Result};

/// A spacetime point `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Event {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Event { t, x, y, z }
    }

    pub const fn on_axis(z: f64) -> Self {
        Event { t: 0.0, x: 0.0, y: 0.0, z }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn from_coords(v: [f64; 4]) -> Self {
        Event { t: v[0], x: v[1], y: v[2], z: v[3] }
    }
}

/// Coefficient spinors attached to known basis functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SolutionForm {
    /// `e^{i(−εt + k₁x + k₂y)} (plus·e^{ikz} + minus·e^{−ikz})`
    TransverseZ { plus: Spinor, minus: Spinor },
    /// `cos_part·cos θ + sin_part·sin θ`, `θ = εt − k₁x − k₂y − k₃z`
    RealPhase { cos_part: Spinor, sin_part: Spinor, k3: f64 },
}

impl SolutionForm {
    pub fn kind(&self) -> &'static str {
        match self {
            SolutionForm::TransverseZ { .. } => "transverse_z",
            SolutionForm::RealPhase { .. } => "real_phase",
        }
    }

    pub fn parts(&self) -> (Spinor, Spinor) {
        match *self {
            SolutionForm::TransverseZ { plus, minus } => (plus, minus),
            SolutionForm::RealPhase { cos_part, sin_part, .. } => (cos_part, sin_part),
        }
    }

    fn with_parts(&self, a: Spinor, b: Spinor) -> SolutionForm {
        match *self {
            SolutionForm::TransverseZ { .. } => SolutionForm::TransverseZ { plus: a, minus: b },
            SolutionForm::RealPhase { k3, .. } => SolutionForm::RealPhase { cos_part: a, sin_part: b, k3 },
        }
    }
}

/// A closed-form solution of a first-order field equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StructuredSolution {
    pub mode: ModeParams,
    pub rep: Representation,
    #[serde(flatten)]
    pub form: SolutionForm,
}

impl StructuredSolution {
    pub fn transverse(mode: ModeParams, rep: Representation, plus: Spinor, minus: Spinor) -> Self {
        StructuredSolution { mode, rep, form: SolutionForm::TransverseZ { plus, minus } }
    }

    pub fn real_phase(mode: ModeParams, rep: Representation, cos_part: Spinor, sin_part: Spinor, k3: f64) -> Self {
        StructuredSolution { mode, rep, form: SolutionForm::RealPhase { cos_part, sin_part, k3 } }
    }

    /// Value at a spacetime point, overall factors included.
    pub fn evaluate(&self, e: &Event) -> Spinor {
        let m = &self.mode;
        match self.form {
            SolutionForm::TransverseZ { plus, minus } => {
                let transverse = C64::from_polar(1.0, -m.epsilon * e.t + m.k1 * e.x + m.k2 * e.y);
                let up = C64::from_polar(1.0, m.k * e.z);
                (transverse * up) * plus + (transverse / up) * minus
            }
            SolutionForm::RealPhase { cos_part, sin_part, k3 } => {
                let theta = self.phase(e, k3);
                theta.cos() * cos_part + theta.sin() * sin_part
            }
        }
    }

    fn phase(&self, e: &Event, k3: f64) -> f64 {
        let m = &self.mode;
        m.epsilon * e.t - m.k1 * e.x - m.k2 * e.y - k3 * e.z
    }

    /// `(iγᵃ∂ₐ + λM)` applied structurally.
    ///
    /// On `e^{i(−εt + k₁x + k₂y ± kz)}` the operator acts as
    /// `εγ⁰ − k₁γ¹ − k₂γ² ∓ kγ³ + λM`; on the real-phase form with
    /// `Q = εγ⁰ − k₁γ¹ − k₂γ² − k₃γ³` it maps `(C, S)` to
    /// `(iQS + λMC, −iQC + λMS)`.
    pub fn apply_operator(&self, g: &GammaSet, mass_sign: f64) -> StructuredSolution {
        let m = &self.mode;
        let lm = c(mass_sign * m.mass, 0.0);
        let form = match self.form {
            SolutionForm::TransverseZ { plus, minus } => {
                let (qp, qm) = (momentum_slash(g, m, m.k), momentum_slash(g, m, -m.k));
                SolutionForm::TransverseZ { plus: qp * plus + lm * plus, minus: qm * minus + lm * minus }
            }
            SolutionForm::RealPhase { cos_part, sin_part, k3 } => {
                let q = momentum_slash(g, m, k3);
                SolutionForm::RealPhase {
                    cos_part: I * (q * sin_part) + lm * cos_part,
                    sin_part: -I * (q * cos_part) + lm * sin_part,
                    k3,
                }
            }
        };
        StructuredSolution { mode: self.mode, rep: self.rep, form }
    }

    /// Largest coefficient of `(iγᵃ∂ₐ − M)Ψ`; zero for exact solutions.
    pub fn dirac_residual(&self, g: &GammaSet) -> Result<f64> {
        if !self.rep.same_as(&g.rep) {
            return Err(Error::Mismatch(format!("solution in {} basis, gammas in {}", self.rep, g.rep)));
        }
        let (a, b) = self.apply_operator(g, -1.0).form.parts();
        Ok(a.max_abs().max(b.max_abs()))
    }

    /// Multiplies every coefficient spinor by `S`.
    pub fn map_spinors(&self, s: &CMatrix4) -> StructuredSolution {
        let (a, b) = self.form.parts();
        StructuredSolution { form: self.form.with_parts(*s * a, *s * b), ..*self }
    }

    pub fn scale(&self, z: C64) -> StructuredSolution {
        let (a, b) = self.form.parts();
        StructuredSolution { form: self.form.with_parts(z * a, z * b), ..*self }
    }

    /// `self + other`, defined when both share mode, basis and form.
    pub fn add(&self, other: &StructuredSolution) -> Result<StructuredSolution> {
        if !self.mode.approx_eq(&other.mode) || !self.rep.same_as(&other.rep) {
            return Err(Error::Mismatch("cannot add solutions of different modes or bases".into()));
        }
        let compatible = match (self.form, other.form) {
            (SolutionForm::TransverseZ { .. }, SolutionForm::TransverseZ { .. }) => true,
            (SolutionForm::RealPhase { k3: a, .. }, SolutionForm::RealPhase { k3: b, .. }) => a == b,
            _ => false,
        };
        if !compatible {
            return Err(Error::Mismatch("cannot add solutions of different structural forms".into()));
        }
        let ((a1, b1), (a2, b2)) = (self.form.parts(), other.form.parts());
        Ok(StructuredSolution { form: self.form.with_parts(a1 + a2, b1 + b2), ..*self })
    }

    /// Pointwise complex conjugate; only the real-phase form is closed under it.
    pub fn conjugate(&self) -> Result<StructuredSolution> {
        match self.form {
            SolutionForm::RealPhase { cos_part, sin_part, k3 } => Ok(StructuredSolution {
                form: SolutionForm::RealPhase { cos_part: cos_part.conj(), sin_part: sin_part.conj(), k3 },
                ..*self
            }),
            SolutionForm::TransverseZ { .. } => self.to_real_phase()?.conjugate(),
        }
    }

    /// Rewrites a single travelling wave `v·e^{−iθ}` as `v cos θ − i v sin θ`.
    pub fn to_real_phase(&self) -> Result<StructuredSolution> {
        match self.form {
            SolutionForm::RealPhase { .. } => Ok(*self),
            SolutionForm::TransverseZ { plus, minus } => {
                let (v, k3) = match (plus.max_abs() == 0.0, minus.max_abs() == 0.0) {
                    (_, true) => (plus, self.mode.k),
                    (true, false) => (minus, -self.mode.k),
                    (false, false) => {
                        return Err(Error::InvalidInput(
                            "a standing wave has no single real phase; split it first".into(),
                        ))
                    }
                };
                Ok(StructuredSolution::real_phase(self.mode, self.rep, v, -I * v, k3))
            }
        }
    }

    /// Largest coefficient difference; infinite when the forms differ.
    pub fn max_dev(&self, other: &StructuredSolution) -> f64 {
        if self.form.kind() != other.form.kind() {
            return f64::INFINITY;
        }
        let ((a1, b1), (a2, b2)) = (self.form.parts(), other.form.parts());
        (a1 - a2).max_abs().max((b1 - b2).max_abs())
    }

    pub fn is_finite(&self) -> bool {
        let (a, b) = self.form.parts();
        a.is_finite() && b.is_finite()
    }
}

/// `εγ⁰ − k₁γ¹ − k₂γ² − k₃γ³`
pub fn momentum_slash(g: &GammaSet, m: &ModeParams, k3: f64) -> CMatrix4 {
    g.slash([c(m.epsilon, 0.0), c(-m.k1, 0.0), c(-m.k2, 0.0), c(-k3, 0.0)])
}

/// Scalar seed in the same structural forms as the solutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Seed {
    /// `e^{i(−εt + k₁x + k₂y)}(a·e^{ikz} + b·e^{−ikz})`
    TransverseZ { plus: C64, minus: C64 },
    /// `a cos θ + b sin θ`
    RealPhase { cos: C64, sin: C64, k3: f64 },
}

impl Seed {
    /// `e^{i(−εt + k₁x + k₂y)} sin(kz + γ)`
    pub fn sin_shifted(gamma: f64) -> Seed {
        let half = c(0.0, -0.5);
        Seed::TransverseZ { plus: half * C64::from_polar(1.0, gamma), minus: -half * C64::from_polar(1.0, -gamma) }
    }

    pub fn plane_wave_up() -> Seed {
        Seed::TransverseZ { plus: ONE, minus: ZERO }
    }

    pub fn plane_wave_down() -> Seed {
        Seed::TransverseZ { plus: ZERO, minus: ONE }
    }

    /// Seed times the constant column `eⱼ`.
    pub fn column(&self, mode: ModeParams, rep: Representation, j: usize) -> StructuredSolution {
        let e = Spinor::basis(j);
        match *self {
            Seed::TransverseZ { plus, minus } => StructuredSolution::transverse(mode, rep, plus * e, minus * e),
            Seed::RealPhase { cos, sin, k3 } => StructuredSolution::real_phase(mode, rep, cos * e, sin * e, k3),
        }
    }
}

//! Gamma-matrix representations and similarity transforms between them.
//!
//! The spinor (chiral) set is the reference: every other representation is
//! characterised by the matrix `S` with `Γᵃ = S γᵃ S⁻¹`, and its γ⁵ is the
//! spinor `diag(−I, I)` carried over by the same `S`. Metric signature is
//! `(+, −, −, −)`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{c, CMatrix4, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::solutions::{SolutionForm, SolutionSet};
use crate::tolerances::CLIFFORD_TOL;

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

type Block = [[C64; 2]; 2];

const B0: Block = [[ZERO, ZERO], [ZERO, ZERO]];
const B_ID: Block = [[ONE, ZERO], [ZERO, ONE]];

fn neg(b: Block) -> Block {
    b.map(|r| r.map(|z| -z))
}

/// Pauli matrices σ⁰ = I, σ¹, σ², σ³.
pub fn pauli() -> [Block; 4] {
    [B_ID, [[ZERO, ONE], [ONE, ZERO]], [[ZERO, -I], [I, ZERO]], [[ONE, ZERO], [ZERO, -ONE]]]
}

/// Transform `S` with its inverse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepTransform {
    pub s: CMatrix4,
    pub s_inv: CMatrix4,
}

impl RepTransform {
    /// Pairs `S` with its numeric inverse.
    pub fn new(s: CMatrix4) -> Result<Self> {
        let s_inv = s.inverse()?;
        Self::with_inverse(s, s_inv)
    }

    /// Pairs `S` with a given inverse, checking `S·S⁻¹ = I`.
    pub fn with_inverse(s: CMatrix4, s_inv: CMatrix4) -> Result<Self> {
        let dev = (s * s_inv).max_dev(&CMatrix4::identity());
        if dev > CLIFFORD_TOL {
            return Err(Error::InvariantViolated(format!("S·S⁻¹ deviates from I by {dev:e}")));
        }
        Ok(RepTransform { s, s_inv })
    }

    pub fn identity() -> Self {
        RepTransform { s: CMatrix4::identity(), s_inv: CMatrix4::identity() }
    }

    pub fn inverse(&self) -> Self {
        RepTransform { s: self.s_inv, s_inv: self.s }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &RepTransform) -> Self {
        RepTransform { s: self.s * first.s, s_inv: first.s_inv * self.s_inv }
    }

    pub fn apply(&self, m: &CMatrix4) -> CMatrix4 {
        m.conjugate_by(&self.s, &self.s_inv)
    }
}

/// `A = (1 − γ²)/√2`, `A⁻¹ = (1 + γ²)/√2` with the spinor γ².
pub fn majorana_transform() -> RepTransform {
    let g2 = spinor_gammas()[2];
    let id = CMatrix4::identity();
    RepTransform { s: FRAC_1_SQRT_2 * (id - g2), s_inv: FRAC_1_SQRT_2 * (id + g2) }
}

/// Spinor → standard: `S = (1/√2)[[I, I], [I, −I]]`, an involution.
pub fn standard_transform() -> RepTransform {
    let h = |b: Block| b.map(|r| r.map(|z| z * FRAC_1_SQRT_2));
    let s = CMatrix4::from_blocks(h(B_ID), h(B_ID), h(B_ID), h(neg(B_ID)));
    RepTransform { s, s_inv: s }
}

/// Which gamma-matrix basis a set or solution lives in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Representation {
    Spinor,
    Standard,
    Majorana,
    /// Arbitrary basis given by its transform from the spinor set.
    Custom(RepTransform),
}

impl Representation {
    pub fn name(&self) -> &'static str {
        match self {
            Representation::Spinor => "spinor",
            Representation::Standard => "standard",
            Representation::Majorana => "majorana",
            Representation::Custom(_) => "custom",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "spinor" | "chiral" | "weyl" => Ok(Representation::Spinor),
            "standard" | "dirac" => Ok(Representation::Standard),
            "majorana" => Ok(Representation::Majorana),
            other => Err(Error::InvalidInput(format!("unknown representation '{other}'"))),
        }
    }

    /// Transform taking the spinor set to this representation.
    pub fn from_spinor(&self) -> RepTransform {
        match self {
            Representation::Spinor => RepTransform::identity(),
            Representation::Standard => standard_transform(),
            Representation::Majorana => majorana_transform(),
            Representation::Custom(t) => *t,
        }
    }

    /// Names a transform from the spinor set, recognising the built-in ones.
    pub fn from_transform(t: RepTransform) -> Self {
        let close = |u: RepTransform| t.s.max_dev(&u.s) <= 1e-14;
        if close(RepTransform::identity()) {
            Representation::Spinor
        } else if close(standard_transform()) {
            Representation::Standard
        } else if close(majorana_transform()) {
            Representation::Majorana
        } else {
            Representation::Custom(t)
        }
    }

    /// Same basis, comparing transforms numerically for custom ones.
    pub fn same_as(&self, other: &Representation) -> bool {
        self.from_spinor().s.max_dev(&other.from_spinor().s) <= 1e-12
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// γ⁰..γ³ and γ⁵ of one representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaSet {
    pub gamma: [CMatrix4; 4],
    pub gamma5: CMatrix4,
    pub rep: Representation,
}

/// Deviations of a gamma set from the algebra it must satisfy.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct CliffordDeviation {
    /// max over a ≤ b of ‖{γᵃ, γᵇ} − 2ηᵃᵇI‖
    pub anticommutator: f64,
    /// max over a of ‖{γ⁵, γᵃ}‖
    pub gamma5_anticommutator: f64,
    /// ‖(γ⁵)² − I‖
    pub gamma5_square: f64,
}

impl CliffordDeviation {
    pub fn max(&self) -> f64 {
        self.anticommutator.max(self.gamma5_anticommutator).max(self.gamma5_square)
    }
}

fn spinor_gammas() -> [CMatrix4; 4] {
    let s = pauli();
    std::array::from_fn(|a| {
        let sigma_bar = if a == 0 { s[0] } else { neg(s[a]) };
        CMatrix4::from_blocks(B0, sigma_bar, s[a], B0)
    })
}

fn spinor_gamma5() -> CMatrix4 {
    CMatrix4::from_blocks(neg(B_ID), B0, B0, B_ID)
}

fn standard_gammas() -> [CMatrix4; 4] {
    let s = pauli();
    std::array::from_fn(|a| {
        if a == 0 {
            CMatrix4::from_blocks(B_ID, B0, B0, neg(B_ID))
        } else {
            CMatrix4::from_blocks(B0, s[a], neg(s[a]), B0)
        }
    })
}

/// The explicit Majorana matrices γ⁰_M..γ³_M as tabulated
/// (`γ⁰γ²`, `γ¹γ²`, `γ²`, `γ³γ²` of the spinor set).
pub fn majorana_display() -> [CMatrix4; 4] {
    let z = ZERO;
    let (p, m) = (I, -I);
    [
        CMatrix4([[z, m, z, z], [p, z, z, z], [z, z, z, p], [z, z, m, z]]),
        CMatrix4::diag([m, p, m, p]),
        CMatrix4([[z, z, z, p], [z, z, m, z], [z, m, z, z], [p, z, z, z]]),
        CMatrix4([[z, p, z, z], [p, z, z, z], [z, z, z, p], [z, z, p, z]]),
    ]
}

/// Gamma matrices of a representation.
///
/// Spinor and standard sets are written out directly; the Majorana set is
/// built as `A γᵃ A⁻¹` from the spinor set. γ⁵ is always transported from the
/// spinor `diag(−I, I)`.
pub fn build_gammas(rep: Representation) -> GammaSet {
    let t = rep.from_spinor();
    let gamma5 = t.apply(&spinor_gamma5());
    let gamma = match rep {
        Representation::Spinor => spinor_gammas(),
        Representation::Standard => standard_gammas(),
        Representation::Majorana | Representation::Custom(_) => spinor_gammas().map(|g| t.apply(&g)),
    };
    GammaSet { gamma, gamma5, rep }
}

/// Conjugates every matrix of `g` by `t`, then re-checks the algebra.
pub fn transform_gammas(t: &RepTransform, g: &GammaSet) -> Result<GammaSet> {
    let out = GammaSet {
        gamma: g.gamma.map(|m| t.apply(&m)),
        gamma5: t.apply(&g.gamma5),
        rep: Representation::from_transform(t.after(&g.rep.from_spinor())),
    };
    out.check()?;
    Ok(out)
}

impl GammaSet {
    pub fn deviation(&self) -> CliffordDeviation {
        let id = CMatrix4::identity();
        let mut d = CliffordDeviation::default();
        for a in 0..4 {
            for b in a..4 {
                let target = if a == b { id.scale(c(2.0 * METRIC[a], 0.0)) } else { CMatrix4::zero() };
                let dev = self.gamma[a].anticommutator(&self.gamma[b]).max_dev(&target);
                d.anticommutator = d.anticommutator.max(dev);
            }
            d.gamma5_anticommutator = d.gamma5_anticommutator.max(self.gamma5.anticommutator(&self.gamma[a]).max_abs());
        }
        d.gamma5_square = (self.gamma5 * self.gamma5).max_dev(&id);
        d
    }

    pub fn check(&self) -> Result<()> {
        let d = self.deviation();
        if d.max() > CLIFFORD_TOL {
            return Err(Error::InvariantViolated(format!("gamma algebra deviation {:e}", d.max())));
        }
        Ok(())
    }

    /// `Σₐ qₐ γᵃ`.
    pub fn slash(&self, q: [C64; 4]) -> CMatrix4 {
        (0..4).fold(CMatrix4::zero(), |acc, a| acc + self.gamma[a].scale(q[a]))
    }

    /// `γ⁰γ³`, the matrix of the normal current.
    pub fn current_z(&self) -> CMatrix4 {
        self.gamma[0] * self.gamma[3]
    }

    /// `−iγ⁰γ¹γ²γ³`, for comparison with the transported γ⁵.
    pub fn gamma5_from_product(&self) -> CMatrix4 {
        (self.gamma[0] * self.gamma[1] * self.gamma[2] * self.gamma[3]).scale(-I)
    }
}

/// Largest deviation between `S·[src]·S⁻¹` and `[dst]`, where `[·]` are the
/// coefficient matrices (columns = solutions) of each structural part.
pub fn covariance_check(t: &RepTransform, src: &SolutionSet, dst: &SolutionSet) -> Result<f64> {
    let (ms, md) = (src.mode(), dst.mode());
    if !ms.approx_eq(md) {
        return Err(Error::Mismatch("solution sets carry different mode parameters".into()));
    }
    let parts = |set: &SolutionSet| -> Result<[CMatrix4; 2]> {
        let mut a = [crate::algebra::Spinor::zero(); 4];
        let mut b = a;
        for (j, col) in set.columns.iter().enumerate() {
            let (x, y) = match (&col.form, set.columns[0].form.kind()) {
                (SolutionForm::TransverseZ { plus, minus }, "transverse_z") => (*plus, *minus),
                (SolutionForm::RealPhase { cos_part, sin_part, .. }, "real_phase") => (*cos_part, *sin_part),
                _ => return Err(Error::Mismatch("columns use different structural forms".into())),
            };
            a[j] = x;
            b[j] = y;
        }
        Ok([CMatrix4::from_columns(a), CMatrix4::from_columns(b)])
    };
    let (p, q) = (parts(src)?, parts(dst)?);
    if src.columns[0].form.kind() != dst.columns[0].form.kind() {
        return Err(Error::Mismatch("source and destination use different structural forms".into()));
    }
    Ok((0..2).map(|i| t.apply(&p[i]).max_dev(&q[i])).fold(0.0, f64::max))
}

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::mode::{ratio, ModeParams};
use super::structured::{Event, Seed, StructuredSolution};
use crate::algebra::{c, CMatrix4, Spinor, C64, ONE};
use crate::clifford::{build_gammas, GammaSet, RepTransform, Representation};
use crate::error::{Error, Result};

/// Which construction produced a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// Momentum–helicity plane waves Φ₁..Φ₄.
    HelicityBasis,
    /// `(iγᵃ∂ₐ + M)` on `sin(kz + γ)`.
    SquaredSin,
    /// `(iγᵃ∂ₐ + M)` on `e^{+ikz}`.
    PlaneWaveUp,
    /// `(iγᵃ∂ₐ + M)` on `e^{−ikz}`.
    PlaneWaveDown,
    /// Cosine-seeded Majorana set (real family).
    MajoranaCos,
    /// `−i·sin`-seeded Majorana set (imaginary family).
    MajoranaSin,
    /// Columnwise linear combination of two sets.
    Combination,
    /// Image of another set under a change of basis.
    Transformed,
}

/// Four solutions sharing one mode and one gamma basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolutionSet {
    pub columns: [StructuredSolution; 4],
    pub generator: Generator,
    /// Seed phase γ of `sin(kz + γ)` where one applies.
    pub phase_gamma: Option<f64>,
}

impl SolutionSet {
    pub fn new(columns: [StructuredSolution; 4], generator: Generator, phase_gamma: Option<f64>) -> Result<Self> {
        let (m, r) = (columns[0].mode, columns[0].rep);
        if columns.iter().any(|s| !s.mode.approx_eq(&m) || !s.rep.same_as(&r)) {
            return Err(Error::Mismatch("columns of a set must share mode and basis".into()));
        }
        Ok(SolutionSet { columns, generator, phase_gamma })
    }

    pub fn mode(&self) -> &ModeParams {
        &self.columns[0].mode
    }

    pub fn rep(&self) -> Representation {
        self.columns[0].rep
    }

    /// Columns evaluated at a point, as a 4×4 matrix.
    pub fn evaluate(&self, e: &Event) -> CMatrix4 {
        CMatrix4::from_columns(self.columns.map(|s| s.evaluate(e)))
    }

    /// Largest structured Dirac residual over the columns.
    pub fn max_residual(&self, g: &GammaSet) -> Result<f64> {
        self.columns.iter().try_fold(0.0f64, |acc, s| Ok(acc.max(s.dirac_residual(g)?)))
    }

    /// Largest coefficient difference between corresponding columns.
    pub fn max_dev(&self, other: &SolutionSet) -> f64 {
        (0..4).map(|j| self.columns[j].max_dev(&other.columns[j])).fold(0.0, f64::max)
    }

    /// `Σⱼ coeffs[j]·columns[j]`
    pub fn linear_combination(&self, coeffs: [C64; 4]) -> StructuredSolution {
        let mut out = self.columns[0].scale(coeffs[0]);
        for j in 1..4 {
            // Columns share mode, basis and form by construction.
            out = out.add(&self.columns[j].scale(coeffs[j])).expect("columns of one set are compatible");
        }
        out
    }
}

fn squaring(seed: Seed, mode: ModeParams, g: &GammaSet) -> [StructuredSolution; 4] {
    std::array::from_fn(|j| seed.column(mode, g.rep, j).apply_operator(g, 1.0))
}

/// `(iγᵃ∂ₐ + M)` applied to an arbitrary scalar seed, one column per unit spinor.
pub fn squared_from_seed(m: &ModeParams, rep: Representation, seed: Seed, generator: Generator) -> SolutionSet {
    let g = build_gammas(rep);
    SolutionSet { columns: squaring(seed, *m, &g), generator, phase_gamma: None }
}

/// The two helicity branches at fixed momentum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Helicity {
    /// Amplitude `α = (ε − p)/M`, ratio `(k₁+ik₂)/(k₃ + p)`.
    Alpha,
    /// Amplitude `β = (ε + p)/M`, ratio `(k₁+ik₂)/(k₃ − p)`.
    Beta,
}

/// One spinor-basis plane wave `(1, r, A, A·r)·e^{i(−εt + k₁x + k₂y + k₃z)}`
/// with `k₃ = +k` (`up`) or `−k`.
pub fn helicity_wave(m: &ModeParams, branch: Helicity, up: bool) -> Result<StructuredSolution> {
    if m.mass <= 0.0 {
        return Err(Error::DegenerateMode("helicity amplitudes α, β need M > 0".into()));
    }
    let k3 = if up { m.k } else { -m.k };
    let (amp, den) = match branch {
        Helicity::Alpha => ((m.epsilon - m.p) / m.mass, k3 + m.p),
        Helicity::Beta => ((m.epsilon + m.p) / m.mass, k3 - m.p),
    };
    let r = ratio(m.f(), den, "helicity ratio (k₁+ik₂)/(k₃ ± p)")?;
    let amp = c(amp, 0.0);
    let v = Spinor::new([ONE, r, amp, amp * r]);
    let zero = Spinor::zero();
    let (plus, minus) = if up { (v, zero) } else { (zero, v) };
    Ok(StructuredSolution::transverse(*m, Representation::Spinor, plus, minus))
}

/// Momentum–helicity plane waves in the spinor basis.
///
/// Φ₁ = α-wave at +k, Φ₂ = α-wave at −k, Φ₃ = β-wave at +k, Φ₄ = β-wave at −k,
/// each normalised to a unit first component.
pub fn phi_basis(m: &ModeParams) -> Result<SolutionSet> {
    let columns = [
        helicity_wave(m, Helicity::Alpha, true)?,
        helicity_wave(m, Helicity::Alpha, false)?,
        helicity_wave(m, Helicity::Beta, true)?,
        helicity_wave(m, Helicity::Beta, false)?,
    ];
    SolutionSet::new(columns, Generator::HelicityBasis, None)
}

/// `diag(σ·k, σ·k)` with z-momentum `k3`.
pub fn helicity_operator(m: &ModeParams, k3: f64) -> CMatrix4 {
    let block = [[c(k3, 0.0), m.g()], [m.f(), c(-k3, 0.0)]];
    let zero = [[C64::default(); 2]; 2];
    CMatrix4::from_blocks(block, zero, zero, block)
}

/// Helicity eigenvalue of a single travelling wave and the eigen-equation residual.
pub fn helicity_eigenvalue(sol: &StructuredSolution) -> Result<(f64, f64)> {
    let (plus, minus) = sol.form.parts();
    let (v, k3) = match (plus.max_abs() > 0.0, minus.max_abs() > 0.0) {
        (true, false) => (plus, sol.mode.k),
        (false, true) => (minus, -sol.mode.k),
        _ => return Err(Error::InvalidInput("helicity needs a single travelling wave".into())),
    };
    let hv = helicity_operator(&sol.mode, k3) * v;
    let lambda = (v.dot(&hv) / v.dot(&v)).re;
    Ok((lambda, (hv - lambda * v).max_abs()))
}

/// `(iγᵃ∂ₐ + M) e^{−iεt + ik₁x + ik₂y} sin(kz + γ)`, columns 1..4.
pub fn squared_set(m: &ModeParams, rep: Representation, gamma: f64) -> SolutionSet {
    let g = build_gammas(rep);
    SolutionSet {
        columns: squaring(Seed::sin_shifted(gamma), *m, &g),
        generator: Generator::SquaredSin,
        phase_gamma: Some(gamma),
    }
}

/// The primed set, seeded by `−cos kz = sin(kz − π/2)`.
pub fn squared_set_primed(m: &ModeParams, rep: Representation) -> SolutionSet {
    squared_set(m, rep, -FRAC_PI_2)
}

/// Squared sets from the plane-wave seeds `e^{+ikz}` (U) and `e^{−ikz}` (U′).
pub fn u_sets(m: &ModeParams, rep: Representation) -> (SolutionSet, SolutionSet) {
    let g = build_gammas(rep);
    (
        SolutionSet {
            columns: squaring(Seed::plane_wave_up(), *m, &g),
            generator: Generator::PlaneWaveUp,
            phase_gamma: None,
        },
        SolutionSet {
            columns: squaring(Seed::plane_wave_down(), *m, &g),
            generator: Generator::PlaneWaveDown,
            phase_gamma: None,
        },
    )
}

/// Squared sets W (seed `sin kz`) and W′ (seed `−cos kz`) in the standard basis.
pub fn w_sets(m: &ModeParams) -> (SolutionSet, SolutionSet) {
    (squared_set(m, Representation::Standard, 0.0), squared_set_primed(m, Representation::Standard))
}

/// Columnwise `coeffs.0·a + coeffs.1·b`.
pub fn combine_sets(a: &SolutionSet, b: &SolutionSet, coeffs: (C64, C64)) -> Result<SolutionSet> {
    if !a.mode().approx_eq(b.mode()) || !a.rep().same_as(&b.rep()) {
        return Err(Error::Mismatch("combined sets must share mode and basis".into()));
    }
    let mut columns = a.columns;
    for (j, col) in columns.iter_mut().enumerate() {
        *col = a.columns[j].scale(coeffs.0).add(&b.columns[j].scale(coeffs.1))?;
    }
    let unchanged = coeffs.1 == C64::default() && coeffs.0 == ONE;
    Ok(SolutionSet {
        columns,
        generator: if unchanged { a.generator } else { Generator::Combination },
        phase_gamma: if unchanged { a.phase_gamma } else { None },
    })
}

/// Carries every column into another basis: `Ψ ↦ SΨ`.
pub fn transform_set(t: &RepTransform, set: &SolutionSet) -> SolutionSet {
    let rep = Representation::from_transform(t.after(&set.rep().from_spinor()));
    SolutionSet {
        columns: set.columns.map(|s| StructuredSolution { rep, ..s.map_spinors(&t.s) }),
        generator: Generator::Transformed,
        phase_gamma: set.phase_gamma,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{numerical_rank, I, ZERO};
    use crate::solutions::{make_mode, SolutionForm};
    use crate::tolerances::RANK_TAU;

    fn mode() -> ModeParams {
        make_mode(0.3, 0.4, 1.2, 1.0).unwrap()
    }

    fn max_dev(a: &SolutionSet, b: &SolutionSet) -> f64 {
        a.max_dev(b)
    }

    #[test]
    fn first_squared_column_on_axis() {
        let m = mode();
        let set = squared_set(&m, Representation::Spinor, 0.0);
        for z in [0.0, 0.37, -1.3] {
            let (s, co) = ((m.k * z).sin(), (m.k * z).cos());
            let v = set.columns[0].evaluate(&Event::on_axis(z));
            let want = Spinor::new([c(m.mass * s, 0.0), ZERO, c(m.epsilon * s, m.k * co), -m.f() * s]);
            assert!((v - want).max_abs() < 1e-14);
        }
    }

    #[test]
    fn all_generated_sets_solve_the_equation() {
        let m = mode();
        for rep in [Representation::Spinor, Representation::Standard, Representation::Majorana] {
            let g = build_gammas(rep);
            let (u, up) = u_sets(&m, rep);
            for set in [squared_set(&m, rep, 0.4), u, up] {
                assert!(set.max_residual(&g).unwrap() < 1e-12);
            }
        }
        let g = build_gammas(Representation::Spinor);
        assert!(phi_basis(&m).unwrap().max_residual(&g).unwrap() < 1e-12);
    }

    #[test]
    fn plane_wave_sets_have_rank_two() {
        let m = mode();
        let (u, up) = u_sets(&m, Representation::Spinor);
        let e = Event::on_axis(0.37);
        assert_eq!(numerical_rank(&u.evaluate(&e), RANK_TAU), 2);
        assert_eq!(numerical_rank(&up.evaluate(&e), RANK_TAU), 2);
        // U₃ = [(ε+k)U₁ + (k₁+ik₂)U₂]/M
        let u3 = u.linear_combination([c((m.epsilon + m.k) / m.mass, 0.0), m.f() / m.mass, ZERO, ZERO]);
        assert!((u3.evaluate(&e) - u.columns[2].evaluate(&e)).max_abs() < 1e-12);
        // U′₄ = [(k₁−ik₂)U′₁ + (ε+k)U′₂]/M
        let u4 = up.linear_combination([m.g() / m.mass, c((m.epsilon + m.k) / m.mass, 0.0), ZERO, ZERO]);
        assert!((u4.evaluate(&e) - up.columns[3].evaluate(&e)).max_abs() < 1e-12);
    }

    #[test]
    fn combinations_of_sin_sets() {
        let m = mode();
        let psi = squared_set(&m, Representation::Spinor, 0.0);
        let psi_p = squared_set_primed(&m, Representation::Spinor);
        let (u, up) = u_sets(&m, Representation::Spinor);
        assert!(max_dev(&combine_sets(&psi, &psi_p, (I, -ONE)).unwrap(), &u) < 1e-12);
        assert!(max_dev(&combine_sets(&psi, &psi_p, (-I, -ONE)).unwrap(), &up) < 1e-12);
        assert_eq!(combine_sets(&psi, &psi_p, (ONE, ZERO)).unwrap(), psi);
        for gamma in [0.3, 1.9, -2.4] {
            let rotated = combine_sets(&psi, &psi_p, (c(f64::cos(gamma), 0.0), c(-f64::sin(gamma), 0.0))).unwrap();
            assert!(max_dev(&rotated, &squared_set(&m, Representation::Spinor, gamma)) < 1e-12);
        }
    }

    #[test]
    fn combine_rejects_mismatch() {
        let a = squared_set(&mode(), Representation::Spinor, 0.0);
        let b = squared_set(&make_mode(0.1, 0.4, 1.2, 1.0).unwrap(), Representation::Spinor, 0.0);
        assert!(combine_sets(&a, &b, (ONE, ONE)).is_err());
        let c2 = squared_set(&mode(), Representation::Standard, 0.0);
        assert!(combine_sets(&a, &c2, (ONE, ONE)).is_err());
    }

    #[test]
    fn helicity_signs() {
        let m = mode();
        let phi = phi_basis(&m).unwrap();
        for (j, want) in [m.p, m.p, -m.p, -m.p].into_iter().enumerate() {
            let (lambda, res) = helicity_eigenvalue(&phi.columns[j]).unwrap();
            assert!((lambda - want).abs() < 1e-12 && res < 1e-12, "Φ{}", j + 1);
        }
        assert_eq!(numerical_rank(&phi.evaluate(&Event::on_axis(0.37)), RANK_TAU), 4);
        assert!(matches!(phi.columns[1].form, SolutionForm::TransverseZ { plus, .. } if plus.max_abs() == 0.0));
    }

    #[test]
    fn squared_determinant_is_k_to_the_fourth() {
        let m = mode();
        for gamma in [0.0, 0.8, -1.7] {
            for z in [0.0, 0.37, 1.9] {
                let set = squared_set(&m, Representation::Spinor, gamma);
                let d = set.evaluate(&Event::on_axis(z)).det();
                assert!((d - c(m.k.powi(4), 0.0)).norm() < 1e-12, "γ={gamma} z={z}: {d}");
            }
        }
    }
}

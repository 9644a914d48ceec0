//! Linear maps between the squared sets {Ψⱼ}, {Ψ′ⱼ} and the momentum–helicity
//! plane waves Φ₁..Φ₄, derived by solving the expansion systems.
//!
//! With `Uⱼ = xⱼΦ₁ + yⱼΦ₃` and `U′ⱼ = x′ⱼΦ₂ + y′ⱼΦ₄`, the decompositions
//! `Ψⱼ = (Uⱼ − U′ⱼ)/2i` and `Ψ′ⱼ = −(Uⱼ + U′ⱼ)/2` give the rows of `a` and `a′`
//! in `Ψ = aΦ`, `Ψ′ = a′Φ`.

use serde::Serialize;

use crate::algebra::{c, numerical_rank, CMatrix4, C64, I, ZERO};
use crate::clifford::Representation;
use crate::error::{Error, Result};
use crate::solutions::{phi_basis, squared_set, squared_set_primed, u_sets, ModeParams, SolutionForm, SolutionSet};
use crate::tolerances::{EXPANSION_TOL, RANK_TAU, SINGULAR_DET};

/// Coefficients of each column of U (or U′) on its two plane waves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Expansion {
    /// `coeffs[j] = (x, y)` with `columnⱼ = x·Φ_first + y·Φ_second`.
    pub coeffs: [[C64; 2]; 4],
    /// Indices (0-based) of the two plane waves used.
    pub targets: [usize; 2],
    /// Largest mismatch over all four rows after solving the first two.
    pub max_residual: f64,
}

/// The named coefficients of `U₁ = aΦ₁ + bΦ₃`, `U₂ = cΦ₁ + dΦ₃` and their primed analogues.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpansionCoeffs {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub a_prime: C64,
    pub b_prime: C64,
    pub c_prime: C64,
    pub d_prime: C64,
}

impl ExpansionCoeffs {
    pub fn from_expansions(u: &Expansion, u_prime: &Expansion) -> Self {
        ExpansionCoeffs {
            a: u.coeffs[0][0],
            b: u.coeffs[0][1],
            c: u.coeffs[1][0],
            d: u.coeffs[1][1],
            a_prime: u_prime.coeffs[0][0],
            b_prime: u_prime.coeffs[0][1],
            c_prime: u_prime.coeffs[1][0],
            d_prime: u_prime.coeffs[1][1],
        }
    }

    /// `a = M(k+p)/2p`, `b = −M(k−p)/2p`, `c = −d = M(k₁−ik₂)/2p`,
    /// `a′ = M(p−k)/2p`, `b′ = M(k+p)/2p`, `c′ = −d′ = c`.
    pub fn closed_form(m: &ModeParams) -> Self {
        let h = m.mass / (2.0 * m.p);
        let cc = m.g() * h;
        ExpansionCoeffs {
            a: c(h * (m.k + m.p), 0.0),
            b: c(-h * (m.k - m.p), 0.0),
            c: cc,
            d: -cc,
            a_prime: c(h * (m.p - m.k), 0.0),
            b_prime: c(h * (m.k + m.p), 0.0),
            c_prime: cc,
            d_prime: -cc,
        }
    }

    pub fn max_dev(&self, o: &ExpansionCoeffs) -> f64 {
        [
            self.a - o.a,
            self.b - o.b,
            self.c - o.c,
            self.d - o.d,
            self.a_prime - o.a_prime,
            self.b_prime - o.b_prime,
            self.c_prime - o.c_prime,
            self.d_prime - o.d_prime,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }
}

/// `(x, y)` pairs of the four columns of one set.
pub type ColumnCoeffs = [[C64; 2]; 4];

/// Closed-form expansions of all U and U′ columns:
/// U₃, U₄ carry the extra factors `1/α`, `1/β` of U₁, U₂.
pub fn closed_form_expansions(m: &ModeParams) -> Result<(ColumnCoeffs, ColumnCoeffs)> {
    let hd = crate::solutions::helicity_data(m)?;
    let h = m.mass / (2.0 * m.p);
    let (pk, pm, g) = (c(h * (m.p + m.k), 0.0), c(h * (m.p - m.k), 0.0), m.g() * h);
    let (ia, ib) = (1.0 / hd.alpha, 1.0 / hd.beta);
    let u = [[pk, pm], [g, -g], [pk * ia, pm * ib], [g * ia, -g * ib]];
    let up = [[pm, pk], [g, -g], [pm * ia, pk * ib], [g * ia, -g * ib]];
    Ok((u, up))
}

fn check_expandable(m: &ModeParams) -> Result<()> {
    if m.mass <= 0.0 {
        return Err(Error::DegenerateMode("basis maps need M > 0".into()));
    }
    if m.k == 0.0 || m.p == 0.0 {
        return Err(Error::DegenerateMode("basis maps need k ≠ 0 and p ≠ 0".into()));
    }
    Ok(())
}

/// Expands U (plus-only columns) in {Φ₁, Φ₃} or U′ (minus-only) in {Φ₂, Φ₄}.
///
/// Each column is solved from its first two rows; the remaining rows are
/// checked and the worst mismatch is reported.
pub fn expand_u_in_phi(u: &SolutionSet, phi: &SolutionSet) -> Result<Expansion> {
    if !u.mode().approx_eq(phi.mode()) || !u.rep().same_as(&phi.rep()) {
        return Err(Error::Mismatch("U and Φ must share mode and basis".into()));
    }
    let parts = |s: &crate::solutions::StructuredSolution| match s.form {
        SolutionForm::TransverseZ { plus, minus } => Ok((plus, minus)),
        SolutionForm::RealPhase { .. } => Err(Error::InvalidInput("expansion needs travelling-wave columns".into())),
    };
    let up = u.columns.iter().all(|s| parts(s).is_ok_and(|(_, mi)| mi.max_abs() == 0.0));
    let down = u.columns.iter().all(|s| parts(s).is_ok_and(|(pl, _)| pl.max_abs() == 0.0));
    let targets = match (up, down) {
        (true, false) => [0, 2],
        (false, true) => [1, 3],
        _ => return Err(Error::InvalidInput("columns must all be e^{+ikz} or all e^{−ikz} waves".into())),
    };
    let pick = |j: usize| -> Result<crate::algebra::Spinor> {
        let (pl, mi) = parts(&phi.columns[j])?;
        Ok(if up { pl } else { mi })
    };
    let (p, q) = (pick(targets[0])?, pick(targets[1])?);
    let det = p[0] * q[1] - q[0] * p[1];
    if det.norm() <= SINGULAR_DET {
        return Err(Error::Singular("leading 2×2 block of the expansion system"));
    }
    let scale = p.max_abs().max(q.max_abs()).max(1.0);
    let mut coeffs = [[ZERO; 2]; 4];
    let mut max_residual: f64 = 0.0;
    for (j, col) in u.columns.iter().enumerate() {
        let (pl, mi) = parts(col)?;
        let v = if up { pl } else { mi };
        let x = (v[0] * q[1] - q[0] * v[1]) / det;
        let y = (p[0] * v[1] - v[0] * p[1]) / det;
        let r = (v - (x * p + y * q)).max_abs() / (scale * v.max_abs().max(1.0));
        max_residual = max_residual.max(r);
        coeffs[j] = [x, y];
    }
    if max_residual > EXPANSION_TOL {
        return Err(Error::Inconsistent(format!("expansion rows 3–4 miss by {max_residual:e}")));
    }
    Ok(Expansion { coeffs, targets, max_residual })
}

/// Which matrix a [`BasisMatrix`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisTag {
    /// `Ψ = aΦ`
    A,
    /// `Ψ′ = a′Φ`
    APrime,
    /// `−a′ + ia`, the map onto the `e^{+ikz}` waves.
    S,
    /// `−a′ − ia`, the map onto the `e^{−ikz}` waves.
    SPrime,
    Composite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasisMatrix {
    pub entries: CMatrix4,
    pub tag: BasisTag,
}

impl BasisMatrix {
    pub fn rank(&self) -> usize {
        numerical_rank(&self.entries, RANK_TAU)
    }
}

/// `a`, `a′`, `S`, `S′` of one mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasisMatrices {
    pub a: BasisMatrix,
    pub a_prime: BasisMatrix,
    pub s: BasisMatrix,
    pub s_prime: BasisMatrix,
    pub coeffs: ExpansionCoeffs,
}

pub fn build_basis_matrices(m: &ModeParams) -> Result<BasisMatrices> {
    check_expandable(m)?;
    let phi = phi_basis(m)?;
    let (u, u_prime) = u_sets(m, Representation::Spinor);
    let (eu, eup) = (expand_u_in_phi(&u, &phi)?, expand_u_in_phi(&u_prime, &phi)?);
    let mut a = CMatrix4::zero();
    let mut a_prime = CMatrix4::zero();
    let inv_2i = 1.0 / c(0.0, 2.0);
    for j in 0..4 {
        let [x, y] = eu.coeffs[j];
        let [xp, yp] = eup.coeffs[j];
        let plus = [x, ZERO, y, ZERO];
        let minus = [ZERO, xp, ZERO, yp];
        for n in 0..4 {
            a[(j, n)] = (plus[n] - minus[n]) * inv_2i;
            a_prime[(j, n)] = -(plus[n] + minus[n]) * 0.5;
        }
    }
    let s = -a_prime + a.scale(I);
    let s_prime = -a_prime - a.scale(I);
    Ok(BasisMatrices {
        a: BasisMatrix { entries: a, tag: BasisTag::A },
        a_prime: BasisMatrix { entries: a_prime, tag: BasisTag::APrime },
        s: BasisMatrix { entries: s, tag: BasisTag::S },
        s_prime: BasisMatrix { entries: s_prime, tag: BasisTag::SPrime },
        coeffs: ExpansionCoeffs::from_expansions(&eu, &eup),
    })
}

/// Numeric inverse of `a` or `a′`, with `‖b·b⁻¹ − I‖` checked.
pub fn invert_basis_matrix(b: &BasisMatrix) -> Result<CMatrix4> {
    if !matches!(b.tag, BasisTag::A | BasisTag::APrime) {
        return Err(Error::InvalidInput(format!("{:?} is rank deficient and has no inverse", b.tag)));
    }
    if b.entries.det().norm() <= SINGULAR_DET {
        return Err(Error::Singular("basis-change matrix"));
    }
    let inv = b.entries.inverse()?;
    let dev = (b.entries * inv).max_dev(&CMatrix4::identity());
    if dev > EXPANSION_TOL {
        return Err(Error::InvariantViolated(format!("b·b⁻¹ deviates from I by {dev:e}")));
    }
    Ok(inv)
}

/// `(a′a⁻¹, a·a′⁻¹)`: `Ψ′ = (a′a⁻¹)Ψ` and `Ψ = (a·a′⁻¹)Ψ′` as row maps.
pub fn composite_maps(m: &ModeParams) -> Result<(CMatrix4, CMatrix4)> {
    let bm = build_basis_matrices(m)?;
    let (ai, api) = (invert_basis_matrix(&bm.a)?, invert_basis_matrix(&bm.a_prime)?);
    Ok((bm.a_prime.entries * ai, bm.a.entries * api))
}

/// `rows · set`: the solution `Σₖ rows[j][k]·setₖ` for each j.
pub fn apply_row_map(rows: &CMatrix4, set: &SolutionSet) -> [crate::solutions::StructuredSolution; 4] {
    std::array::from_fn(|j| set.linear_combination(rows.row(j)))
}

/// Reconstruction errors of `Ψ = aΦ` and `Ψ′ = a′Φ`.
pub fn reconstruction_residuals(m: &ModeParams, bm: &BasisMatrices) -> Result<(f64, f64)> {
    let phi = phi_basis(m)?;
    let psi = squared_set(m, Representation::Spinor, 0.0);
    let psi_p = squared_set_primed(m, Representation::Spinor);
    let dev = |rows: &CMatrix4, target: &SolutionSet| {
        apply_row_map(rows, &phi).iter().zip(&target.columns).map(|(a, b)| a.max_dev(b)).fold(0.0, f64::max)
    };
    Ok((dev(&bm.a.entries, &psi), dev(&bm.a_prime.entries, &psi_p)))
}

/// Tabulated closed forms of the basis-change matrices, kept for comparison
/// against the derived ones.
pub mod display {
    use super::*;

    fn rows(m: &ModeParams, signs: [[f64; 4]; 4], use_beta_cols: [bool; 4]) -> Result<CMatrix4> {
        let hd = crate::solutions::helicity_data(m)?;
        let (pk, pm, g) = (c(m.p + m.k, 0.0), c(m.p - m.k, 0.0), m.g());
        let first = [pk, pm, pm, pk];
        let mut out = CMatrix4::zero();
        for col in 0..4 {
            let inv = if use_beta_cols[col] { 1.0 / hd.beta } else { 1.0 / hd.alpha };
            let base = [first[col], g, first[col] * inv, g * inv];
            for row in 0..4 {
                out[(row, col)] = base[row] * signs[row][col];
            }
        }
        Ok(out)
    }

    /// The displayed `i·a` table divided by `i`.
    pub fn a(m: &ModeParams) -> Result<CMatrix4> {
        let signs = [[1., -1., 1., -1.], [1., -1., -1., 1.], [1., -1., 1., -1.], [1., -1., -1., 1.]];
        Ok(rows(m, signs, [false, false, true, true])?.scale(c(m.mass / (4.0 * m.p), 0.0) / I))
    }

    /// The displayed `−a′` table, negated.
    pub fn a_prime(m: &ModeParams) -> Result<CMatrix4> {
        let signs = [[1., 1., 1., 1.], [1., 1., -1., -1.], [1., 1., 1., 1.], [1., 1., -1., -1.]];
        Ok(rows(m, signs, [false, false, true, true])?.scale(c(-m.mass / (4.0 * m.p), 0.0)))
    }

    pub fn s(m: &ModeParams) -> Result<CMatrix4> {
        let signs = [[1., 0., 1., 0.], [1., 0., -1., 0.], [1., 0., 1., 0.], [1., 0., -1., 0.]];
        Ok(rows(m, signs, [false, false, true, true])?.scale(c(m.mass / (2.0 * m.p), 0.0)))
    }

    pub fn s_prime(m: &ModeParams) -> Result<CMatrix4> {
        let signs = [[0., 1., 0., 1.], [0., 1., 0., -1.], [0., 1., 0., 1.], [0., 1., 0., -1.]];
        Ok(rows(m, signs, [false, false, true, true])?.scale(c(m.mass / (2.0 * m.p), 0.0)))
    }

    /// The two tabulated determinants `(det a, det a′)`.
    pub fn determinants(m: &ModeParams) -> Result<(C64, C64)> {
        let hd = crate::solutions::helicity_data(m)?;
        let common = m.g() * m.g() * (hd.alpha * hd.alpha + hd.beta * hd.beta - 2.0) * (m.k * m.k) / (I * m.p);
        Ok((common * m.mass * hd.alpha * hd.alpha, -common * m.mass))
    }

    fn inverse_table(m: &ModeParams, signs: [[f64; 4]; 4]) -> Result<CMatrix4> {
        let hd = crate::solutions::helicity_data(m)?;
        let g = m.g();
        let (km, kp) = (c(m.k - m.p, 0.0), c(m.k + m.p, 0.0));
        let amp = [hd.alpha, hd.alpha, hd.beta, hd.beta];
        let shift = [km, kp, kp, km];
        let pref = c(0.0, 2.0 * m.p) / ((hd.alpha - hd.beta) * m.k * m.mass);
        let mut out = CMatrix4::zero();
        for r in 0..4 {
            let base = [amp[r], amp[r] * shift[r] / g, c(1.0, 0.0), shift[r] / g];
            for col in 0..4 {
                out[(r, col)] = pref * base[col] * signs[r][col];
            }
        }
        Ok(out)
    }

    /// Tabulated `a⁻¹`, prefactor taken as multiplying the matrix.
    pub fn a_inverse(m: &ModeParams) -> Result<CMatrix4> {
        inverse_table(m, [[1., 1., -1., -1.], [1., -1., -1., 1.], [1., 1., -1., -1.], [1., -1., -1., 1.]])
    }

    /// Tabulated `a′⁻¹`, same reading.
    pub fn a_prime_inverse(m: &ModeParams) -> Result<CMatrix4> {
        inverse_table(m, [[-1., -1., 1., 1.], [1., -1., -1., 1.], [-1., -1., 1., 1.], [1., -1., -1., 1.]])
    }

    /// Tabulated `a′a⁻¹`.
    pub fn composite_primed(m: &ModeParams) -> Result<CMatrix4> {
        let hd = crate::solutions::helicity_data(m)?;
        let (al, be, g) = (hd.alpha, hd.beta, m.g());
        let (p, k) = (m.p, m.k);
        let (pk, pm) = (c(p + k, 0.0), c(p - k, 0.0));
        let d = c(p * p - k * k, 0.0);
        let rows = [
            [pk * al, -(pm * pm) * al / g, -pm, d / g],
            [g * al, -pk * al, g, -pk],
            [pk * be / al, d * be / (g * al), -pm / be, -(pk * pk) / (g * be)],
            [g * be / al, pm * be / al, g / be, pm / be],
        ];
        Ok(CMatrix4(rows).scale(I / ((al - be) * (2.0 * k))))
    }

    /// Tabulated `a·a′⁻¹`.
    pub fn composite_unprimed(m: &ModeParams) -> Result<CMatrix4> {
        let hd = crate::solutions::helicity_data(m)?;
        let (al, be, g) = (hd.alpha, hd.beta, m.g());
        let (p, k) = (m.p, m.k);
        let (pk, pm) = (c(p + k, 0.0), c(p - k, 0.0));
        let d = c(p * p - k * k, 0.0);
        let rows = [
            [-pk * al, -(pm * pm) * al / g, pm, d / g],
            [g * al, pk * al, g, pk],
            [-pk * be / al, d * be / (g * al), pm / be, -(pk * pk) / (g * be)],
            [g * be / al, -pm * be / al, g / be, -pm / be],
        ];
        Ok(CMatrix4(rows).scale(1.0 / ((al - be) * k)))
    }
}

/// Derived matrices, their ranks and determinants, and deviations from the
/// tabulated closed forms.
#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub mode: ModeParams,
    pub coeffs: ExpansionCoeffs,
    pub coeff_closed_form_dev: f64,
    pub a: CMatrix4,
    pub a_prime: CMatrix4,
    pub s: CMatrix4,
    pub s_prime: CMatrix4,
    pub a_inverse: CMatrix4,
    pub a_prime_inverse: CMatrix4,
    pub composite_primed: CMatrix4,
    pub composite_unprimed: CMatrix4,
    pub ranks: [usize; 4],
    pub det_a: C64,
    pub det_a_prime: C64,
    pub reconstruction_residual: f64,
    pub reconstruction_residual_primed: f64,
    pub composite_inverse_dev: f64,
    pub display_dev: DisplayDeviations,
}

/// Max entry deviation of each derived quantity from its tabulated form.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DisplayDeviations {
    pub a: f64,
    pub a_prime: f64,
    pub s: f64,
    pub s_prime: f64,
    pub det_a: f64,
    pub det_a_prime: f64,
    pub a_inverse: f64,
    pub a_prime_inverse: f64,
    pub composite_primed: f64,
    pub composite_unprimed: f64,
}

pub fn map_report(m: &ModeParams) -> Result<MapReport> {
    let bm = build_basis_matrices(m)?;
    let (ai, api) = (invert_basis_matrix(&bm.a)?, invert_basis_matrix(&bm.a_prime)?);
    let (cp, cu) = (bm.a_prime.entries * ai, bm.a.entries * api);
    let (r, rp) = reconstruction_residuals(m, &bm)?;
    let (da, dap) = (bm.a.entries.det(), bm.a_prime.entries.det());
    let (ta, tap) = display::determinants(m)?;
    let rel = |x: C64, y: C64| (x - y).norm() / x.norm().max(f64::MIN_POSITIVE);
    Ok(MapReport {
        mode: *m,
        coeffs: bm.coeffs,
        coeff_closed_form_dev: bm.coeffs.max_dev(&ExpansionCoeffs::closed_form(m)),
        a: bm.a.entries,
        a_prime: bm.a_prime.entries,
        s: bm.s.entries,
        s_prime: bm.s_prime.entries,
        a_inverse: ai,
        a_prime_inverse: api,
        composite_primed: cp,
        composite_unprimed: cu,
        ranks: [bm.a.rank(), bm.a_prime.rank(), bm.s.rank(), bm.s_prime.rank()],
        det_a: da,
        det_a_prime: dap,
        reconstruction_residual: r,
        reconstruction_residual_primed: rp,
        composite_inverse_dev: (cp * cu).max_dev(&CMatrix4::identity()),
        display_dev: DisplayDeviations {
            a: bm.a.entries.max_dev(&display::a(m)?),
            a_prime: bm.a_prime.entries.max_dev(&display::a_prime(m)?),
            s: bm.s.entries.max_dev(&display::s(m)?),
            s_prime: bm.s_prime.entries.max_dev(&display::s_prime(m)?),
            det_a: rel(da, ta),
            det_a_prime: rel(dap, tap),
            a_inverse: ai.max_dev(&display::a_inverse(m)?),
            a_prime_inverse: api.max_dev(&display::a_prime_inverse(m)?),
            composite_primed: cp.max_dev(&display::composite_primed(m)?),
            composite_unprimed: cu.max_dev(&display::composite_unprimed(m)?),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::make_mode;

    fn mode() -> ModeParams {
        make_mode(0.3, 0.4, 1.2, 1.0).unwrap()
    }

    #[test]
    fn named_coefficients() {
        let m = mode();
        let bm = build_basis_matrices(&m).unwrap();
        assert!(bm.coeffs.max_dev(&ExpansionCoeffs::closed_form(&m)) < 1e-12);
        assert!((bm.coeffs.c - c(0.3, -0.4) / 2.6).norm() < 1e-14);
    }

    #[test]
    fn derived_matrices_match_tables() {
        let m = mode();
        let bm = build_basis_matrices(&m).unwrap();
        assert!(bm.a.entries.max_dev(&display::a(&m).unwrap()) < 1e-12);
        assert!(bm.a_prime.entries.max_dev(&display::a_prime(&m).unwrap()) < 1e-12);
        assert!(bm.s.entries.max_dev(&display::s(&m).unwrap()) < 1e-12);
        assert!(bm.s_prime.entries.max_dev(&display::s_prime(&m).unwrap()) < 1e-12);
        assert!((bm.s.entries + bm.s_prime.entries).max_dev(&bm.a_prime.entries.scale(c(-2.0, 0.0))) < 1e-12);
    }

    #[test]
    fn ranks() {
        let bm = build_basis_matrices(&mode()).unwrap();
        assert_eq!(bm.a.rank(), 4);
        assert_eq!(bm.a_prime.rank(), 4);
        assert_eq!(bm.s.rank(), 2);
        assert_eq!(bm.s_prime.rank(), 2);
        assert!(invert_basis_matrix(&bm.s).is_err());
    }

    #[test]
    fn reconstruction_and_composites() {
        let m = mode();
        let bm = build_basis_matrices(&m).unwrap();
        let (r, rp) = reconstruction_residuals(&m, &bm).unwrap();
        assert!(r < 1e-10 && rp < 1e-10);
        let (cp, cu) = composite_maps(&m).unwrap();
        assert!((cp * cu).max_dev(&CMatrix4::identity()) < 1e-10);
        let psi = squared_set(&m, Representation::Spinor, 0.0);
        let psi_p = squared_set_primed(&m, Representation::Spinor);
        for (a, b) in apply_row_map(&cp, &psi).iter().zip(&psi_p.columns) {
            assert!(a.max_dev(b) < 1e-10);
        }
        for (a, b) in apply_row_map(&cu, &psi_p).iter().zip(&psi.columns) {
            assert!(a.max_dev(b) < 1e-10);
        }
    }

    #[test]
    fn on_axis_coefficients() {
        // k₁ = k₂ = 0, k = p = M = 1: a = 1, b = 0.
        let m = make_mode(0.0, 0.0, 1.0, 1.0).unwrap();
        let cf = ExpansionCoeffs::closed_form(&m);
        assert!((cf.a - 1.0).norm() < 1e-15 && cf.b.norm() < 1e-15);
    }

    #[test]
    fn degenerate_modes_rejected() {
        assert!(build_basis_matrices(&make_mode(0.3, 0.4, 0.0, 1.0).unwrap()).is_err());
        assert!(build_basis_matrices(&make_mode(0.3, 0.4, 1.2, 0.0).unwrap()).is_err());
    }

    #[test]
    fn report_is_finite() {
        let r = map_report(&mode()).unwrap();
        assert!(r.reconstruction_residual < 1e-10);
        assert!(r.composite_inverse_dev < 1e-10);
        assert_eq!(r.ranks, [4, 4, 2, 2]);
    }
}

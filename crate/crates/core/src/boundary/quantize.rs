use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use super::matrices::{boundary_matrix, det_polynomial, BoundaryPhases, MatrixVariant, SlabGeometry};
use crate::algebra::C64;
use crate::error::{Error, Result};
use crate::solutions::make_mode;
use crate::tolerances::{
    BISECTION_MAX_ITERATIONS, DEFAULT_PHASE_STEP, GRID_PHASE_STEP, MAX_REFINEMENT_DEPTH, MAX_TRACK_ARG_STEP,
    ROOT_ACCEPT_TOL, ROOT_CLUSTER_TOL, ROOT_MERGE_TOL, TRACK_UNIT_TOL,
};

/// One quantized longitudinal momentum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuantizationRoot {
    pub k: f64,
    /// Root of the boundary determinant matched against the phase factor
    /// (`K` for the Dirac system, `K²` for the Weyl one).
    #[serde(rename = "K")]
    pub big_k: C64,
    /// `|det|` at the phase factor, relative to the largest polynomial coefficient.
    pub det_residual: f64,
    /// `||K| − 1|`
    pub unit_modulus_dev: f64,
    /// `|e^{iφk} − K|` with φ = 2a (Dirac) or 4a (Weyl).
    pub phase_mismatch: f64,
    pub branch_index: usize,
}

impl QuantizationRoot {
    pub fn satisfies(&self, tol: f64) -> bool {
        self.det_residual <= tol && self.unit_modulus_dev <= tol && self.phase_mismatch <= tol
    }
}

/// A root of the determinant that lies off the unit circle at a grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OffCircleRoot {
    pub k: f64,
    #[serde(rename = "K")]
    pub big_k: C64,
    pub modulus: f64,
}

/// Result of a quantization sweep.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Spectrum {
    /// Accepted roots, sorted by k.
    pub roots: Vec<QuantizationRoot>,
    /// Refined candidates that failed the acceptance tests.
    pub rejected: Vec<QuantizationRoot>,
    pub off_circle: Vec<OffCircleRoot>,
    /// Grid locations where root tracking could not be resolved.
    pub ambiguities: Vec<f64>,
    pub grid_points: usize,
}

impl Spectrum {
    pub fn ks(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.k).collect()
    }
}

/// Largest pairwise k difference, or `None` when the spectra differ in size.
pub fn spectrum_distance(a: &Spectrum, b: &Spectrum) -> Option<f64> {
    if a.roots.len() != b.roots.len() {
        return None;
    }
    Some(a.roots.iter().zip(&b.roots).map(|(x, y)| (x.k - y.k).abs()).fold(0.0, f64::max))
}

/// Grid and acceptance controls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridOptions {
    /// Phase advance of `e^{iφk}` per grid step; must stay below π/4.
    pub phase_step: f64,
    pub accept_tol: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { phase_step: DEFAULT_PHASE_STEP, accept_tol: ROOT_ACCEPT_TOL }
    }
}

impl GridOptions {
    fn validate(&self) -> Result<()> {
        if !(self.phase_step > 0.0 && self.phase_step < GRID_PHASE_STEP) {
            return Err(Error::InvalidInput(format!("grid phase step {} must lie in (0, π/4)", self.phase_step)));
        }
        if self.accept_tol.is_nan() || self.accept_tol <= 0.0 {
            return Err(Error::InvalidInput("acceptance tolerance must be positive".into()));
        }
        Ok(())
    }
}

pub(super) fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

fn arg_dist(a: C64, b: C64) -> f64 {
    wrap(a.arg() - b.arg()).abs()
}

/// Root candidates at one k.
#[derive(Clone, Debug)]
struct Sample {
    k: f64,
    raw: Vec<C64>,
    /// Indices into `raw` of the unit-modulus roots, ordered by argument.
    unit: Vec<usize>,
    /// Branch id of each entry of `unit`.
    ids: Vec<usize>,
}

type CandidateFn<'a> = dyn Fn(f64) -> Result<Vec<C64>> + Sync + 'a;
type ResidualFn<'a> = dyn Fn(f64, C64) -> Result<f64> + Sync + 'a;

/// Continuation of `h(k) = wrap(φk − arg K(k))` along a k grid, with
/// bisection on every sign change of a tracked branch.
pub(super) struct Tracker<'a> {
    pub phase_rate: f64,
    pub candidates: &'a CandidateFn<'a>,
    /// Normalised determinant at `(k, e^{iφk})`; the second argument is the root found.
    pub residual: &'a ResidualFn<'a>,
    pub options: GridOptions,
}

struct Sweep {
    found: Vec<QuantizationRoot>,
    rejected: Vec<QuantizationRoot>,
    ambiguities: Vec<f64>,
    next_id: usize,
}

impl Tracker<'_> {
    fn sample(&self, k: f64) -> Result<Sample> {
        let raw = (self.candidates)(k)?;
        let mut unit: Vec<usize> = (0..raw.len()).filter(|&i| (raw[i].norm() - 1.0).abs() <= TRACK_UNIT_TOL).collect();
        unit.sort_by(|&a, &b| raw[a].arg().total_cmp(&raw[b].arg()));
        // Degenerate roots would otherwise tie in every matching.
        let mut merged: Vec<usize> = Vec::with_capacity(unit.len());
        for i in unit {
            if merged.iter().all(|&j| (raw[i] - raw[j]).norm() > ROOT_CLUSTER_TOL) {
                merged.push(i);
            }
        }
        let unit = merged;
        Ok(Sample { k, raw, unit, ids: Vec::new() })
    }

    fn h(&self, k: f64, r: C64) -> f64 {
        wrap(self.phase_rate * k - r.arg())
    }

    /// Pairs (position in a.unit, position in b.unit) and whether the step is clean.
    fn matching(a: &Sample, b: &Sample) -> (Vec<(usize, usize)>, bool) {
        let mut clean = a.unit.len() == b.unit.len();
        let mut used = vec![false; b.unit.len()];
        let mut pairs = Vec::new();
        for (pa, &ia) in a.unit.iter().enumerate() {
            let ra = a.raw[ia];
            let mut best: Option<(usize, f64)> = None;
            let mut tie = false;
            for (pb, &ib) in b.unit.iter().enumerate() {
                let d = arg_dist(ra, b.raw[ib]);
                match best {
                    Some((_, bd)) if (d - bd).abs() <= 1e-12 => tie = true,
                    Some((_, bd)) if d < bd => {
                        best = Some((pb, d));
                        tie = false;
                    }
                    None => best = Some((pb, d)),
                    _ => {}
                }
            }
            let Some((pb, d)) = best else {
                clean = false;
                continue;
            };
            if tie || d > MAX_TRACK_ARG_STEP || used[pb] {
                clean = false;
            }
            if !used[pb] {
                used[pb] = true;
                pairs.push((pa, pb));
            }
        }
        (pairs, clean)
    }

    /// Advances from `a` to `b`, returning branch ids for `b`.
    fn step(&self, a: &Sample, b: &Sample, depth: u32, sw: &mut Sweep) -> Result<Vec<usize>> {
        let (pairs, clean) = Self::matching(a, b);
        if !clean && depth < MAX_REFINEMENT_DEPTH {
            let mut mid = self.sample(0.5 * (a.k + b.k))?;
            mid.ids = self.step(a, &mid, depth + 1, sw)?;
            return self.step(&mid, b, depth + 1, sw);
        }
        if !clean {
            sw.ambiguities.push(0.5 * (a.k + b.k));
        }
        let mut ids: Vec<Option<usize>> = vec![None; b.unit.len()];
        for &(pa, pb) in &pairs {
            let id = a.ids[pa];
            ids[pb] = Some(id);
            let (ra, rb) = (a.raw[a.unit[pa]], b.raw[b.unit[pb]]);
            let (ha, hb) = (self.h(a.k, ra), self.h(b.k, rb));
            if ha == 0.0 {
                self.record(a.k, ra, id, sw)?;
            } else if ha * hb < 0.0 && (hb - ha).abs() < PI {
                self.bisect(a.k, b.k, ra, ha, id, sw)?;
            }
        }
        Ok(ids
            .into_iter()
            .map(|id| {
                id.unwrap_or_else(|| {
                    sw.next_id += 1;
                    sw.next_id - 1
                })
            })
            .collect())
    }

    fn nearest(raw: &[C64], target: C64) -> Option<C64> {
        raw.iter().copied().min_by(|x, y| (x - target).norm().total_cmp(&(y - target).norm()))
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut r: C64, mut h_lo: f64, id: usize, sw: &mut Sweep) -> Result<()> {
        for _ in 0..BISECTION_MAX_ITERATIONS {
            if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let Some(rm) = Self::nearest(&(self.candidates)(mid)?, r) else { break };
            let hm = self.h(mid, rm);
            r = rm;
            if hm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (hm < 0.0) == (h_lo < 0.0) {
                lo = mid;
                h_lo = hm;
            } else {
                hi = mid;
            }
        }
        self.record(0.5 * (lo + hi), r, id, sw)
    }

    fn record(&self, k: f64, near: C64, id: usize, sw: &mut Sweep) -> Result<()> {
        let Some(big_k) = Self::nearest(&(self.candidates)(k)?, near) else { return Ok(()) };
        let root = QuantizationRoot {
            k,
            big_k,
            det_residual: (self.residual)(k, big_k)?,
            unit_modulus_dev: (big_k.norm() - 1.0).abs(),
            phase_mismatch: (C64::from_polar(1.0, self.phase_rate * k) - big_k).norm(),
            branch_index: id,
        };
        if root.satisfies(self.options.accept_tol) {
            sw.found.push(root);
        } else {
            sw.rejected.push(root);
        }
        Ok(())
    }

    /// Sweeps `(0, k_max]`.
    pub fn run(&self, k_max: f64) -> Result<Spectrum> {
        self.options.validate()?;
        if !(k_max.is_finite() && k_max > 0.0) {
            return Err(Error::InvalidInput(format!("k_max must be positive and finite, got {k_max}")));
        }
        let dk = self.options.phase_step / self.phase_rate;
        let n = (k_max / dk - 0.5).floor().max(0.0) as usize + 1;
        let mut grid: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dk).collect();
        if grid.last().is_some_and(|&k| k < k_max) {
            grid.push(k_max);
        }
        let mut samples = grid.par_iter().map(|&k| self.sample(k)).collect::<Result<Vec<_>>>()?;

        let mut sw = Sweep { found: Vec::new(), rejected: Vec::new(), ambiguities: Vec::new(), next_id: 0 };
        let mut off_circle = Vec::new();
        for s in &samples {
            for &r in &s.raw {
                if (r.norm() - 1.0).abs() > TRACK_UNIT_TOL {
                    off_circle.push(OffCircleRoot { k: s.k, big_k: r, modulus: r.norm() });
                }
            }
        }
        if let Some(first) = samples.first_mut() {
            first.ids = (0..first.unit.len()).collect();
            sw.next_id = first.unit.len();
        }
        for i in 1..samples.len() {
            let ids = self.step(&samples[i - 1], &samples[i], 0, &mut sw)?;
            samples[i].ids = ids;
        }
        // Exact zero at the last grid point.
        if let Some(last) = samples.last() {
            for (p, &i) in last.unit.iter().enumerate() {
                if self.h(last.k, last.raw[i]) == 0.0 {
                    self.record(last.k, last.raw[i], last.ids[p], &mut sw)?;
                }
            }
        }

        let mut roots = sw.found;
        roots.sort_by(|a, b| a.k.total_cmp(&b.k).then(a.branch_index.cmp(&b.branch_index)));
        // A double root of the determinant is found once per branch, split by O(√ε).
        roots.dedup_by(|b, a| {
            let same = (b.k - a.k).abs() <= ROOT_MERGE_TOL * a.k.abs().max(1.0);
            if same && b.det_residual < a.det_residual {
                std::mem::swap(a, b);
            }
            same
        });
        let mut ids: Vec<usize> = roots.iter().chain(&sw.rejected).map(|r| r.branch_index).collect();
        ids.sort_unstable();
        ids.dedup();
        for r in roots.iter_mut().chain(sw.rejected.iter_mut()) {
            r.branch_index = ids.binary_search(&r.branch_index).unwrap_or(0);
        }
        sw.rejected.sort_by(|a, b| a.k.total_cmp(&b.k));
        sw.ambiguities.sort_by(f64::total_cmp);
        Ok(Spectrum { roots, rejected: sw.rejected, off_circle, ambiguities: sw.ambiguities, grid_points: grid.len() })
    }
}

/// Allowed `k ∈ (0, k_max]` for the Dirac particle between the planes.
pub fn quantize_dirac(
    k1: f64,
    k2: f64,
    mass: f64,
    geom: SlabGeometry,
    ph: &BoundaryPhases,
    k_max: f64,
    which: MatrixVariant,
) -> Result<Spectrum> {
    quantize_dirac_with(k1, k2, mass, geom, ph, k_max, which, GridOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn quantize_dirac_with(
    k1: f64,
    k2: f64,
    mass: f64,
    geom: SlabGeometry,
    ph: &BoundaryPhases,
    k_max: f64,
    which: MatrixVariant,
    options: GridOptions,
) -> Result<Spectrum> {
    if mass <= 0.0 {
        return Err(Error::InvalidInput("Dirac quantization needs M > 0".into()));
    }
    let candidates = |k: f64| -> Result<Vec<C64>> {
        let m = make_mode(k1, k2, k, mass)?;
        let p = det_polynomial(which, &m, ph)?.trimmed(1e-14);
        if p.degree() == 0 {
            return Ok(Vec::new());
        }
        p.roots()
    };
    let residual = |k: f64, _root: C64| -> Result<f64> {
        let m = make_mode(k1, k2, k, mass)?;
        let scale = det_polynomial(which, &m, ph)?.max_abs_coeff();
        let det = boundary_matrix(which, &m, ph, C64::from_polar(1.0, 2.0 * geom.a * k))?.det().norm();
        Ok(if scale == 0.0 { det } else { det / scale })
    };
    Tracker { phase_rate: 2.0 * geom.a, candidates: &candidates, residual: &residual, options }.run(k_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_range() {
        assert_eq!(wrap(0.0), 0.0);
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap(-0.1) + 0.1).abs() < 1e-15);
        assert!((wrap(TAU + 0.2) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn fixed_candidate_gives_ladder() {
        // K ≡ 1 everywhere: roots at 2ak = 2πn.
        let cand = |_k: f64| -> Result<Vec<C64>> { Ok(vec![C64::new(1.0, 0.0)]) };
        let res = |k: f64, _r: C64| -> Result<f64> { Ok((C64::from_polar(1.0, 2.0 * k) - 1.0).norm()) };
        let t = Tracker { phase_rate: 2.0, candidates: &cand, residual: &res, options: GridOptions::default() };
        let s = t.run(7.0).unwrap();
        let ks = s.ks();
        assert_eq!(ks.len(), 2, "{ks:?}");
        assert!((ks[0] - PI).abs() < 1e-9 && (ks[1] - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn accepted_roots_satisfy_invariants() {
        let ph = BoundaryPhases::new(0.4, -1.1, 2.3, 0.9).unwrap();
        let geom = SlabGeometry::new(1.0).unwrap();
        let s = quantize_dirac(0.3, 0.4, 1.0, geom, &ph, 6.0, MatrixVariant::PlaneWave).unwrap();
        assert!(!s.roots.is_empty());
        for r in &s.roots {
            assert!(r.satisfies(1e-8), "{r:?}");
        }
        assert!(s.roots.windows(2).all(|w| w[0].k < w[1].k));
    }

    #[test]
    fn both_bases_agree() {
        let ph = BoundaryPhases::new(0.4, -1.1, 2.3, 0.9).unwrap();
        let geom = SlabGeometry::new(0.8).unwrap();
        let a = quantize_dirac(0.3, 0.4, 1.0, geom, &ph, 6.0, MatrixVariant::PlaneWave).unwrap();
        let b = quantize_dirac(0.3, 0.4, 1.0, geom, &ph, 6.0, MatrixVariant::Squared).unwrap();
        let d = spectrum_distance(&a, &b).expect("same number of roots");
        assert!(d < 1e-6, "{:?} vs {:?}", a.ks(), b.ks());
    }

    #[test]
    fn rejects_coarse_grid() {
        let ph = BoundaryPhases::uniform(0.0).unwrap();
        let geom = SlabGeometry::new(1.0).unwrap();
        let opts = GridOptions { phase_step: 1.0, ..GridOptions::default() };
        assert!(quantize_dirac_with(0.3, 0.4, 1.0, geom, &ph, 3.0, MatrixVariant::PlaneWave, opts).is_err());
    }
}

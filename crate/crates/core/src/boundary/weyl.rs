use super::matrices::SlabGeometry;
use super::quantize::{GridOptions, Spectrum, Tracker};
use crate::algebra::C64;
use crate::error::{Error, Result};
use crate::solutions::{make_mode, weyl_ratios};

/// The two products of `(x + f)(y + g) − K²(x + g)(y + f) = 0`, with
/// `x = e^{iρ}`, `y = e^{iσ}`, `f = (k₁+ik₂)/(ε−k)`, `g = (k₁+ik₂)/(ε+k)`.
fn weyl_products(k1: f64, k2: f64, k: f64, rho: f64, sigma: f64) -> Result<(C64, C64)> {
    if k1 == 0.0 && k2 == 0.0 {
        return Err(Error::DegenerateMode("Weyl boundary system needs k₁ + ik₂ ≠ 0".into()));
    }
    let m = make_mode(k1, k2, k, 0.0)?;
    let (f, g) = weyl_ratios(&m)?;
    let (x, y) = (C64::from_polar(1.0, rho), C64::from_polar(1.0, sigma));
    Ok(((x + f) * (y + g), (x + g) * (y + f)))
}

/// `K² = (x + f)(y + g) / ((x + g)(y + f))`
pub fn weyl_k2(k1: f64, k2: f64, k: f64, rho: f64, sigma: f64) -> Result<C64> {
    let (num, den) = weyl_products(k1, k2, k, rho, sigma)?;
    if den.norm() <= 1e-300 {
        return Err(Error::Singular("(e^{iρ} + g)(e^{iσ} + f) vanishes"));
    }
    Ok(num / den)
}

/// Determinant of the two-component system at `K² = e^{4iak}`, relative to its terms.
pub fn weyl_determinant(k1: f64, k2: f64, k: f64, rho: f64, sigma: f64, a: f64) -> Result<f64> {
    let (num, den) = weyl_products(k1, k2, k, rho, sigma)?;
    let scale = num.norm().max(den.norm());
    let det = (num - C64::from_polar(1.0, 4.0 * a * k) * den).norm();
    Ok(if scale == 0.0 { det } else { det / scale })
}

/// Solutions of `e^{4iak} = K²(k)` on `(0, k_max]`.
pub fn weyl_quantize(k1: f64, k2: f64, geom: SlabGeometry, rho: f64, sigma: f64, k_max: f64) -> Result<Spectrum> {
    weyl_quantize_with(k1, k2, geom, rho, sigma, k_max, GridOptions::default())
}

pub fn weyl_quantize_with(
    k1: f64,
    k2: f64,
    geom: SlabGeometry,
    rho: f64,
    sigma: f64,
    k_max: f64,
    options: GridOptions,
) -> Result<Spectrum> {
    if !(rho.is_finite() && sigma.is_finite()) {
        return Err(Error::NonFinite("boundary phases"));
    }
    // Surface the degenerate-input error before sweeping.
    weyl_k2(k1, k2, k_max, rho, sigma)?;
    let candidates = |k: f64| -> Result<Vec<C64>> { Ok(vec![weyl_k2(k1, k2, k, rho, sigma)?]) };
    let residual = |k: f64, _root: C64| weyl_determinant(k1, k2, k, rho, sigma, geom.a);
    Tracker { phase_rate: 4.0 * geom.a, candidates: &candidates, residual: &residual, options }.run(k_max)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn equal_phases_give_unity() {
        let k2 = weyl_k2(0.3, 0.4, 1.2, 0.7, 0.7).unwrap();
        assert!((k2 - 1.0).norm() < 1e-14);
    }

    #[test]
    fn unit_modulus() {
        for (rho, sigma) in [(0.1, 2.0), (-1.3, 0.4), (3.0, -3.0)] {
            let k2 = weyl_k2(0.3, -0.4, 0.8, rho, sigma).unwrap();
            assert!((k2.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_ladder() {
        let geom = SlabGeometry::new(1.0).unwrap();
        let s = weyl_quantize(0.3, 0.4, geom, 0.5, 0.5, 5.0).unwrap();
        let ks = s.ks();
        assert_eq!(ks.len(), 3, "{ks:?}");
        for (n, k) in ks.iter().enumerate() {
            assert!((k - (n + 1) as f64 * PI / 2.0).abs() < 1e-8);
        }
    }

    #[test]
    fn generic_phases_satisfy_residual() {
        let geom = SlabGeometry::new(0.7).unwrap();
        let s = weyl_quantize(0.3, 0.4, geom, 0.5, -1.9, 8.0).unwrap();
        assert!(!s.roots.is_empty());
        for r in &s.roots {
            let k2 = weyl_k2(0.3, 0.4, r.k, 0.5, -1.9).unwrap();
            assert!((C64::from_polar(1.0, 4.0 * 0.7 * r.k) - k2).norm() <= 1e-8);
        }
    }

    #[test]
    fn on_axis_rejected() {
        let geom = SlabGeometry::new(1.0).unwrap();
        assert!(weyl_k2(0.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(weyl_quantize(0.0, 0.0, geom, 0.0, 0.0, 5.0).is_err());
    }
}

//! Complex polynomials, Durand–Kerner root finding and interpolation.

use std::f64::consts::PI;

use super::matrix::{c, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::tolerances::{DK_MAX_ITERATIONS, NEWTON_POLISH_STEPS, ROOT_RESIDUAL_REL};

/// Polynomial with complex coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CPolynomial {
    coeffs: Vec<C64>,
}

impl CPolynomial {
    /// Builds a polynomial, trimming leading zeros.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let mut p = CPolynomial { coeffs };
        p.trim(0.0);
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// Monic polynomial ∏(K − rᵢ).
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            coeffs = next;
        }
        CPolynomial { coeffs }
    }

    /// Drops leading coefficients with magnitude ≤ `rel` × max|coeff|.
    pub fn trim(&mut self, rel: f64) {
        let cutoff = rel * self.max_abs_coeff();
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|z| z.norm() <= cutoff) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(ZERO);
        }
    }

    pub fn trimmed(&self, rel: f64) -> Self {
        let mut p = self.clone();
        p.trim(rel);
        p
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * x + a)
    }

    pub fn derivative(&self) -> CPolynomial {
        if self.coeffs.len() <= 1 {
            return CPolynomial { coeffs: vec![ZERO] };
        }
        CPolynomial { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect() }
    }

    /// Relative residual of a root: |p(r)| / (max|coeff| · max(1, |r|)^deg).
    pub fn relative_residual(&self, r: C64) -> f64 {
        let scale = self.max_abs_coeff() * r.norm().max(1.0).powi(self.degree() as i32);
        if scale == 0.0 {
            return 0.0;
        }
        self.eval(r).norm() / scale
    }

    pub fn roots(&self) -> Result<Vec<C64>> {
        poly_roots(self)
    }
}

/// All complex roots with multiplicity.
///
/// Durand–Kerner iteration from `r·e^{i(2πj/n + θ₀)}` with the Cauchy bound
/// `r = 1 + max|aᵢ/aₙ|`, followed by Newton polishing against the original
/// coefficients.
pub fn poly_roots(p: &CPolynomial) -> Result<Vec<C64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidInput("polynomial degree must be at least 1".into()));
    }
    let lead = p.coeffs[n];
    let monic: Vec<C64> = p.coeffs.iter().map(|&a| a / lead).collect();
    let monic_poly = CPolynomial { coeffs: monic.clone() };

    if n == 1 {
        return Ok(vec![-monic[0]]);
    }

    let bound = 1.0 + monic[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    // Offset keeps the start set off the symmetry axes of even polynomials.
    let theta0 = PI / (2.0 * n as f64) + 0.1;
    let mut z: Vec<C64> = (0..n).map(|j| C64::from_polar(bound, 2.0 * PI * j as f64 / n as f64 + theta0)).collect();

    for _ in 0..DK_MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let num = monic_poly.eval(z[i]);
            let den: C64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let step = if den.norm() == 0.0 { c(1e-8, 1e-8) } else { num / den };
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step <= 1e-15 {
            break;
        }
    }

    let dp = p.derivative();
    for r in z.iter_mut() {
        for _ in 0..NEWTON_POLISH_STEPS {
            let d = dp.eval(*r);
            if d.norm() == 0.0 {
                break;
            }
            let step = p.eval(*r) / d;
            let candidate = *r - step;
            if p.eval(candidate).norm() < p.eval(*r).norm() {
                *r = candidate;
            } else {
                break;
            }
        }
    }

    let residuals: Vec<f64> = z.iter().map(|&r| p.relative_residual(r)).collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    // Non-convergence of the raw iteration is tolerated when polishing recovers the residual.
    if worst > ROOT_RESIDUAL_REL {
        return Err(Error::NoConvergence { residuals });
    }
    Ok(z)
}

/// Keeps roots within `tol` of the unit circle, projected onto it. Order is kept.
pub fn unit_circle_filter(roots: &[C64], tol: f64) -> Vec<C64> {
    roots.iter().filter(|r| (r.norm() - 1.0).abs() <= tol).map(|r| r / r.norm()).collect()
}

/// Interpolation nodes for the boundary determinant: 0, 1, −1, i, −i.
pub const DET_NODES: [C64; 5] = [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];

/// Unique polynomial of degree < nodes.len() through `(nodes, values)`,
/// via Newton divided differences.
pub fn interpolate(nodes: &[C64], values: &[C64]) -> Result<CPolynomial> {
    if nodes.len() != values.len() || nodes.is_empty() {
        return Err(Error::InvalidInput("node/value count mismatch".into()));
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::InvalidInput(format!("duplicate interpolation node {}", nodes[i])));
            }
        }
    }
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut coeffs = vec![ZERO; n];
    let mut basis = vec![ONE];
    for (i, &d) in dd.iter().enumerate() {
        for (k, &b) in basis.iter().enumerate() {
            coeffs[k] += d * b;
        }
        if i + 1 < n {
            let mut next = vec![ZERO; basis.len() + 1];
            for (k, &b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * nodes[i];
            }
            basis = next;
        }
    }
    Ok(CPolynomial::new(coeffs))
}

/// Recovers a degree-≤4 polynomial in K from samples at [`DET_NODES`].
pub fn interpolate_det_poly<F: Fn(C64) -> C64>(eval: F) -> CPolynomial {
    let values: Vec<C64> = DET_NODES.iter().map(|&k| eval(k)).collect();
    // Nodes are fixed and distinct.
    interpolate(&DET_NODES, &values).expect("fixed distinct nodes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(roots: &[C64], target: C64, tol: f64) -> bool {
        roots.iter().any(|r| (r - target).norm() < tol)
    }

    #[test]
    fn fourth_roots_of_unity() {
        let p = CPolynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]);
        let roots = poly_roots(&p).unwrap();
        assert_eq!(roots.len(), 4);
        for t in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
            assert!(contains(&roots, t, 1e-12), "{t} missing from {roots:?}");
        }
    }

    #[test]
    fn linear_root() {
        let target = c(0.3, -2.0);
        let p = CPolynomial::new(vec![-target, ONE]);
        let roots = poly_roots(&p).unwrap();
        assert!((roots[0] - target).norm() < 1e-15);
    }

    #[test]
    fn weyl_degenerate_quadratic() {
        // K² − (x+f)(y+g)/((x+g)(y+f)) with x = y, f = g: right side is 1.
        let (x, f) = (c(0.6, 0.8), c(0.25, 0.0));
        let rhs = (x + f) * (x + f) / ((x + f) * (x + f));
        let p = CPolynomial::new(vec![-rhs, ZERO, ONE]);
        let roots = poly_roots(&p).unwrap();
        assert!(contains(&roots, ONE, 1e-12) && contains(&roots, -ONE, 1e-12));
    }

    #[test]
    fn constant_polynomial_rejected() {
        assert!(poly_roots(&CPolynomial::from_real(&[3.0])).is_err());
    }

    #[test]
    fn double_root_found() {
        let p = CPolynomial::from_roots(&[c(0.5, 0.5), c(0.5, 0.5), c(-1.0, 0.0)]);
        let roots = poly_roots(&p).unwrap();
        assert!(roots.iter().filter(|r| (*r - c(0.5, 0.5)).norm() < 1e-6).count() == 2);
    }

    #[test]
    fn unit_filter_examples() {
        let out = unit_circle_filter(&[ONE, c(2.0, 0.0), c(0.0, 1.0)], 1e-9);
        assert_eq!(out, vec![ONE, c(0.0, 1.0)]);
        assert!(unit_circle_filter(&[], 1e-9).is_empty());
        let near = unit_circle_filter(&[c(0.0, 1.0 + 1e-12)], 1e-9);
        assert!((near[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn interpolation_examples() {
        let sq = interpolate_det_poly(|k| k * k);
        let expected = [ZERO, ZERO, ONE];
        assert_eq!(sq.degree(), 2);
        for (a, b) in sq.coeffs().iter().zip(expected) {
            assert!((a - b).norm() < 1e-14);
        }
        let seven = interpolate_det_poly(|_| c(7.0, 0.0));
        assert_eq!(seven.degree(), 0);
        assert!((seven.coeffs()[0] - c(7.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert!(interpolate(&[ONE, ONE], &[ZERO, ZERO]).is_err());
    }
}

//! Dense 4×4 complex matrices and 4-component spinors.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Shorthand constructor.
#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A 4-component complex column.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Spinor(pub [C64; 4]);

impl Spinor {
    pub const fn new(entries: [C64; 4]) -> Self {
        Spinor(entries)
    }

    pub fn zero() -> Self {
        Spinor([ZERO; 4])
    }

    pub fn from_real(entries: [f64; 4]) -> Self {
        Spinor(entries.map(|x| c(x, 0.0)))
    }

    pub fn basis(j: usize) -> Self {
        let mut s = Self::zero();
        s.0[j] = ONE;
        s
    }

    pub fn scale(&self, z: C64) -> Self {
        Spinor(self.0.map(|x| x * z))
    }

    pub fn conj(&self) -> Self {
        Spinor(self.0.map(|x| x.conj()))
    }

    /// Hermitian inner product ⟨self, other⟩ = Σ self*ᵢ otherᵢ.
    pub fn dot(&self, other: &Spinor) -> C64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_re(&self) -> f64 {
        self.0.iter().map(|z| z.re.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_im(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for Spinor {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Spinor {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Spinor {
    fn add_assign(&mut self, rhs: Spinor) {
        for i in 0..4 {
            self.0[i] += rhs.0[i];
        }
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        Spinor(self.0.map(|x| -x))
    }
}

impl Mul<Spinor> for C64 {
    type Output = Spinor;
    fn mul(self, rhs: Spinor) -> Spinor {
        rhs.scale(self)
    }
}

impl Mul<Spinor> for f64 {
    type Output = Spinor;
    fn mul(self, rhs: Spinor) -> Spinor {
        rhs.scale(c(self, 0.0))
    }
}

/// Dense 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CMatrix4(pub [[C64; 4]; 4]);

impl Default for CMatrix4 {
    fn default() -> Self {
        Self::zero()
    }
}

impl CMatrix4 {
    /// Builds a matrix, rejecting NaN/Inf entries.
    pub fn new(entries: [[C64; 4]; 4]) -> Result<Self> {
        let m = CMatrix4(entries);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite("matrix entry"))
        }
    }

    pub fn zero() -> Self {
        CMatrix4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([ONE; 4])
    }

    pub fn diag(d: [C64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        CMatrix4(rows.map(|r| r.map(|x| c(x, 0.0))))
    }

    /// Assembles a matrix from 2×2 blocks `[[tl, tr], [bl, br]]`.
    pub fn from_blocks(tl: [[C64; 2]; 2], tr: [[C64; 2]; 2], bl: [[C64; 2]; 2], br: [[C64; 2]; 2]) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = tl[i][j];
                m.0[i][j + 2] = tr[i][j];
                m.0[i + 2][j] = bl[i][j];
                m.0[i + 2][j + 2] = br[i][j];
            }
        }
        m
    }

    pub fn from_columns(cols: [Spinor; 4]) -> Self {
        CMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| cols[j].0[i])))
    }

    pub fn column(&self, j: usize) -> Spinor {
        Spinor(std::array::from_fn(|i| self.0[i][j]))
    }

    pub fn columns(&self) -> [Spinor; 4] {
        std::array::from_fn(|j| self.column(j))
    }

    pub fn row(&self, i: usize) -> [C64; 4] {
        self.0[i]
    }

    pub fn transpose(&self) -> Self {
        CMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn adjoint(&self) -> Self {
        CMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].conj())))
    }

    pub fn conj(&self) -> Self {
        CMatrix4(self.0.map(|r| r.map(|z| z.conj())))
    }

    pub fn scale(&self, z: C64) -> Self {
        CMatrix4(self.0.map(|r| r.map(|x| x * z)))
    }

    pub fn mul_vec(&self, v: &Spinor) -> Spinor {
        Spinor(std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v.0[j]).sum()))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise deviation from `other`.
    pub fn max_dev(&self, other: &CMatrix4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Anticommutator AB + BA.
    pub fn anticommutator(&self, other: &CMatrix4) -> CMatrix4 {
        *self * *other + *other * *self
    }

    /// Similarity transform S·self·S⁻¹.
    pub fn conjugate_by(&self, s: &CMatrix4, s_inv: &CMatrix4) -> CMatrix4 {
        *s * *self * *s_inv
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> C64 {
        det4(self)
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix4> {
        let mut a = self.0;
        let mut inv = Self::identity().0;
        let scale = self.max_abs();
        if scale == 0.0 {
            return Err(Error::Singular("zero matrix"));
        }
        for col in 0..4 {
            let pivot = (col..4).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap_or(col);
            if a[pivot][col].norm() <= scale * 1e-15 {
                return Err(Error::Singular("pivot vanished during inversion"));
            }
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col];
            for j in 0..4 {
                a[col][j] /= p;
                inv[col][j] /= p;
            }
            for i in 0..4 {
                if i != col {
                    let f = a[i][col];
                    if f != ZERO {
                        for j in 0..4 {
                            a[i][j] -= f * a[col][j];
                            inv[i][j] -= f * inv[col][j];
                        }
                    }
                }
            }
        }
        Ok(CMatrix4(inv))
    }

    pub fn rank(&self, tau: f64) -> usize {
        numerical_rank(self, tau)
    }
}

impl Index<(usize, usize)> for CMatrix4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Add for CMatrix4 {
    type Output = CMatrix4;
    fn add(self, rhs: CMatrix4) -> CMatrix4 {
        CMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] + rhs.0[i][j])))
    }
}

impl Sub for CMatrix4 {
    type Output = CMatrix4;
    fn sub(self, rhs: CMatrix4) -> CMatrix4 {
        CMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] - rhs.0[i][j])))
    }
}

impl Neg for CMatrix4 {
    type Output = CMatrix4;
    fn neg(self) -> CMatrix4 {
        self.scale(-ONE)
    }
}

impl Mul for CMatrix4 {
    type Output = CMatrix4;
    fn mul(self, rhs: CMatrix4) -> CMatrix4 {
        CMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())))
    }
}

impl Mul<Spinor> for CMatrix4 {
    type Output = Spinor;
    fn mul(self, rhs: Spinor) -> Spinor {
        self.mul_vec(&rhs)
    }
}

impl Mul<CMatrix4> for C64 {
    type Output = CMatrix4;
    fn mul(self, rhs: CMatrix4) -> CMatrix4 {
        rhs.scale(self)
    }
}

impl Mul<CMatrix4> for f64 {
    type Output = CMatrix4;
    fn mul(self, rhs: CMatrix4) -> CMatrix4 {
        rhs.scale(c(self, 0.0))
    }
}

fn det3(m: &[[C64; 4]; 4], rows: [usize; 3], cols: [usize; 3]) -> C64 {
    let e = |i: usize, j: usize| m[rows[i]][cols[j]];
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

/// Exact cofactor-expansion determinant.
pub fn det4(m: &CMatrix4) -> C64 {
    const MINOR_COLS: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    (0..4)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            m.0[0][j] * det3(&m.0, [1, 2, 3], MINOR_COLS[j]) * sign
        })
        .sum()
}

/// Rank by complete-pivoting Gaussian elimination: counts pivots whose
/// magnitude exceeds `tau` times the largest entry magnitude of `m`.
pub fn numerical_rank(m: &CMatrix4, tau: f64) -> usize {
    let scale = m.max_abs();
    if scale == 0.0 {
        return 0;
    }
    let threshold = tau * scale;
    let mut a = m.0;
    let mut rank = 0;
    for step in 0..4 {
        // Ties resolve to the first (row, col) in scan order.
        let mut best = (step, step, -1.0);
        for (i, row) in a.iter().enumerate().skip(step) {
            for (j, z) in row.iter().enumerate().skip(step) {
                if z.norm() > best.2 {
                    best = (i, j, z.norm());
                }
            }
        }
        let (pi, pj, mag) = best;
        if mag <= threshold {
            break;
        }
        rank += 1;
        a.swap(step, pi);
        for row in a.iter_mut() {
            row.swap(step, pj);
        }
        let p = a[step][step];
        for i in step + 1..4 {
            let f = a[i][step] / p;
            for j in step..4 {
                let delta = f * a[step][j];
                a[i][j] -= delta;
            }
        }
    }
    rank
}

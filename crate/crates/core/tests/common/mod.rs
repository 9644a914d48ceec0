//! Finite-difference oracle and random inputs shared by the integration tests.
#![allow(dead_code)]

use dirac_squaring::algebra::{Spinor, C64, I};
use dirac_squaring::clifford::GammaSet;
use dirac_squaring::solutions::{make_mode, Event, ModeParams, StructuredSolution, WeylSpinor};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FD_STEP: f64 = 1e-5;
pub const FD_AGREEMENT: f64 = 1e-6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Momentum components in [−2, 2] and mass in (0, 2].
pub fn random_mode(rng: &mut impl Rng) -> ModeParams {
    loop {
        let [k1, k2, k] = [(); 3].map(|_| rng.gen_range(-2.0..=2.0f64));
        let mass = 2.0 - rng.gen_range(0.0..2.0f64);
        if (k1 * k1 + k2 * k2) > 1e-4 && k.abs() > 1e-3 {
            return make_mode(k1, k2, k, mass).expect("finite kinematics");
        }
    }
}

pub fn random_event(rng: &mut impl Rng) -> Event {
    Event::from_coords([(); 4].map(|_| rng.gen_range(-3.0..3.0)))
}

pub fn random_phase(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
}

fn shifted(e: &Event, axis: usize, h: f64) -> Event {
    let mut v = e.coords();
    v[axis] += h;
    Event::from_coords(v)
}

/// Central differences of a field along each coordinate.
pub fn gradient<const N: usize>(field: impl Fn(&Event) -> [C64; N], e: &Event) -> [[C64; N]; 4] {
    std::array::from_fn(|a| {
        let (p, m) = (field(&shifted(e, a, FD_STEP)), field(&shifted(e, a, -FD_STEP)));
        std::array::from_fn(|i| (p[i] - m[i]) / (2.0 * FD_STEP))
    })
}

/// `max|(iγᵃ∂ₐ − M)Ψ|` by finite differences, relative to `max|Ψ|·(ε + M)`.
pub fn dirac_fd_residual(sol: &StructuredSolution, g: &GammaSet, e: &Event) -> f64 {
    let field = |x: &Event| sol.evaluate(x).0;
    let d = gradient(field, e);
    let psi = sol.evaluate(e);
    let mut out = psi.scale(C64::new(-sol.mode.mass, 0.0));
    for (a, da) in d.iter().enumerate() {
        out += (g.gamma[a] * Spinor::new(*da)).scale(I);
    }
    let scale = psi.max_abs().max(1e-300) * (sol.mode.epsilon + sol.mode.mass).max(1.0);
    out.max_abs() / scale
}

/// `max|(i∂ₜ − iσʲ∂ⱼ)η|` by finite differences, relative to `max|η|·ε`.
pub fn weyl_fd_residual(w: &WeylSpinor, e: &Event) -> f64 {
    let d = gradient(|x| w.evaluate(x), e);
    let [dt, dx, dy, dz] = d;
    // σ¹∂ₓ + σ²∂ᵧ + σ³∂_z
    let sd = [dx[1] - I * dy[1] + dz[0], dx[0] + I * dy[0] - dz[1]];
    let eta = w.evaluate(e);
    let scale = eta.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300) * w.mode.epsilon.max(1.0);
    (0..2).map(|i| (I * dt[i] - I * sd[i]).norm()).fold(0.0, f64::max) / scale
}

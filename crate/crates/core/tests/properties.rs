mod common;

use std::f64::consts::PI;

use dirac_squaring::algebra::{c, numerical_rank, C64};
use dirac_squaring::basis_maps::map_report;
use dirac_squaring::boundary::{
    build_covariant_g, check_g_implies_zero_current, degree_consistency, g_agreement, phase_locked, weyl_k2,
    BoundaryPhases, MatrixVariant,
};
use dirac_squaring::clifford::{build_gammas, covariance_check, standard_transform, Representation};
use dirac_squaring::majorana::{constant_map, squared_majorana_sets};
use dirac_squaring::solutions::{make_mode, phi_basis, squared_set, u_sets, weyl_waves, Event, ModeParams};
use dirac_squaring::tolerances::RANK_TAU;
use proptest::prelude::*;

use common::{dirac_fd_residual, weyl_fd_residual, FD_AGREEMENT};

fn component() -> impl Strategy<Value = f64> {
    -2.0..=2.0f64
}

prop_compose! {
    fn massive_mode()(k1 in component(), k2 in component(), k in component(), mass in 0.05..=2.0f64)
        (m in Just(make_mode(k1, k2, k, mass).unwrap())) -> ModeParams { m }
}

prop_compose! {
    fn event()(t in -3.0..3.0f64, x in -3.0..3.0f64, y in -3.0..3.0f64, z in -3.0..3.0f64) -> Event {
        Event::new(t, x, y, z)
    }
}

fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn generic(m: &ModeParams) -> bool {
    m.k.abs() > 1e-2 && m.k1.hypot(m.k2) > 1e-2 && (m.p - m.k.abs()) > 1e-3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dispersion_holds(m in massive_mode()) {
        prop_assert!(m.dispersion_residual() <= 1e-12 * m.epsilon.powi(2).max(1.0));
    }

    #[test]
    fn squared_sets_solve_the_equation(m in massive_mode(), gamma in angle(), e in event()) {
        for rep in [Representation::Spinor, Representation::Standard, Representation::Majorana] {
            let g = build_gammas(rep);
            let set = squared_set(&m, rep, gamma);
            prop_assert!(set.max_residual(&g).unwrap() <= 1e-10);
            for col in &set.columns {
                if col.evaluate(&e).max_abs() > 1e-6 {
                    prop_assert!(dirac_fd_residual(col, &g, &e) <= FD_AGREEMENT);
                }
            }
        }
    }

    #[test]
    fn squared_determinant_is_k_to_the_fourth(m in massive_mode(), gamma in angle(), z in -3.0..3.0f64) {
        let d = squared_set(&m, Representation::Spinor, gamma).evaluate(&Event::on_axis(z)).det();
        let k4 = m.k.powi(4);
        prop_assert!((d - k4).norm() <= 1e-9 * m.epsilon.powi(4).max(1.0));
    }

    #[test]
    fn helicity_waves_pass_the_oracle(m in massive_mode(), e in event()) {
        prop_assume!(generic(&m));
        let g = build_gammas(Representation::Spinor);
        for col in phi_basis(&m).unwrap().columns {
            prop_assert!(col.dirac_residual(&g).unwrap() <= 1e-10);
            prop_assert!(dirac_fd_residual(&col, &g, &e) <= FD_AGREEMENT);
        }
    }

    #[test]
    fn plane_wave_sets_have_rank_two(m in massive_mode(), e in event()) {
        prop_assume!(generic(&m));
        let (u, u_prime) = u_sets(&m, Representation::Spinor);
        prop_assert_eq!(numerical_rank(&u.evaluate(&e), RANK_TAU), 2);
        prop_assert_eq!(numerical_rank(&u_prime.evaluate(&e), RANK_TAU), 2);
    }

    #[test]
    fn basis_maps_round_trip(m in massive_mode()) {
        prop_assume!(generic(&m) && m.p > 0.2);
        let r = map_report(&m).unwrap();
        let scale = m.epsilon.max(1.0).powi(2);
        prop_assert!(r.reconstruction_residual <= 1e-10 * scale);
        prop_assert!(r.reconstruction_residual_primed <= 1e-10 * scale);
        prop_assert!(r.composite_inverse_dev <= 1e-10 * scale);
        prop_assert_eq!(r.ranks, [4, 4, 2, 2]);
    }

    #[test]
    fn majorana_map_is_constant(m in massive_mode(), e1 in event(), e2 in event()) {
        let (r, i) = squared_majorana_sets(&m).unwrap();
        prop_assert!(r.reality_violation() == 0.0 && i.reality_violation() == 0.0);
        let k = constant_map(&m);
        for e in [e1, e2] {
            let s = i.evaluate(&e) * r.evaluate(&e).inverse().unwrap();
            prop_assert!(s.max_dev(&k) <= 1e-9 * m.epsilon / m.mass);
        }
    }

    #[test]
    fn majorana_families_are_constant_determinant(m in massive_mode(), e in event()) {
        let (r, i) = squared_majorana_sets(&m).unwrap();
        let m4 = m.mass.powi(4);
        let tol = 1e-9 * m.epsilon.powi(4).max(1.0);
        prop_assert!((r.evaluate(&e).det() - m4).norm() <= tol);
        prop_assert!((i.evaluate(&e).det() - m4).norm() <= tol);
    }

    #[test]
    fn weyl_reflection_has_unit_modulus(k1 in component(), k2 in component(), k in 0.01..=2.0f64,
                                        rho in angle(), sigma in angle(), e in event()) {
        prop_assume!(k1.hypot(k2) > 1e-3);
        prop_assert!((weyl_k2(k1, k2, k, rho, sigma).unwrap().norm() - 1.0).abs() <= 1e-12);
        let (eta, eta_p) = weyl_waves(k1, k2, k).unwrap();
        for w in [eta, eta_p] {
            prop_assert!(w.equation_residual() <= 1e-10 * w.mode.epsilon.max(1.0));
            prop_assert!(weyl_fd_residual(&w, &e) <= FD_AGREEMENT);
        }
    }

    #[test]
    fn boundary_determinant_is_at_most_quartic(m in massive_mode(), rho in angle(), sigma in angle(),
                                               mu in angle(), nu in angle(), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        prop_assume!(generic(&m));
        let ph = BoundaryPhases::new(rho, sigma, mu, nu).unwrap();
        for v in [MatrixVariant::PlaneWave, MatrixVariant::Squared] {
            prop_assert!(degree_consistency(v, &m, &ph, c(re, im)).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn covariant_g_is_an_involution(rho in angle(), sigma in angle()) {
        let a = g_agreement(rho, sigma);
        prop_assert!(a.explicit_vs_coefficients <= 1e-12 && a.explicit_vs_projectors <= 1e-12);
        prop_assert!(a.square <= 1e-12);
        prop_assert!(a.covariance.iter().all(|&d| d <= 1e-12));
    }

    #[test]
    fn locked_spinors_carry_no_current(rho in angle(), sigma in angle(),
                                       a in (-2.0..2.0f64, -2.0..2.0f64), b in (-2.0..2.0f64, -2.0..2.0f64)) {
        let g = build_gammas(Representation::Spinor);
        let op = build_covariant_g(rho, sigma, &g);
        let psi = phase_locked(c(a.0, a.1), c(b.0, b.1), rho, sigma);
        let r = check_g_implies_zero_current(&op, &psi, &g);
        prop_assert!(r.is_fixed && r.sufficiency_holds);
        prop_assert!(r.jz.abs() <= 1e-10);
    }

    #[test]
    fn representation_change_is_covariant(m in massive_mode(), gamma in angle(), e in event()) {
        let (s, d) = (squared_set(&m, Representation::Spinor, gamma), squared_set(&m, Representation::Standard, gamma));
        prop_assert!(covariance_check(&standard_transform(), &s, &d).unwrap() <= 1e-10 * m.epsilon.max(1.0));
        let rank = |set: &dirac_squaring::solutions::SolutionSet| numerical_rank(&set.evaluate(&e), RANK_TAU);
        let mj = squared_set(&m, Representation::Majorana, gamma);
        prop_assert_eq!(rank(&s), rank(&d));
        prop_assert_eq!(rank(&s), rank(&mj));
    }
}

#[test]
fn squared_determinant_vanishes_only_at_zero_k() {
    let m = make_mode(0.3, 0.4, 0.0, 1.0).unwrap();
    let d: C64 = squared_set(&m, Representation::Spinor, 0.3).evaluate(&Event::on_axis(0.7)).det();
    assert!(d.norm() < 1e-14);
}

//! Randomized invariants: analytic derivatives against finite differences,
//! limits, signs, symmetries, and the bit-level recombination guarantees.

use casimir::classical::{force_n0, free_energy_n0, gradient_n0};
use casimir::constants::{K_B, ZETA3};
use casimir::lifshitz::{
    pp_free_energy_mode, pp_pressure_mode, pp_pressure_npos, xi_matsubara,
};
use casimir::material::{eps_drude, eps_tabulated_with, OpticalDataTable};
use casimir::pfa::{force_approx, force_pfa_npos, gradient_approx, gradient_pfa_npos};
use casimir::run::evaluate_point;
use casimir::scattering::{
    block_log_det, fd_first_derivative, round_trip_block,
};
use casimir::{MaterialModel, MatsubaraGrid, ThetaTable};
use proptest::prelude::*;

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn drude_params() -> impl Strategy<Value = (f64, f64)> {
    ((5.0f64..15.0), (0.01f64..0.1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn force_n0_is_minus_denergy((r_um, x) in (1.0f64..50.0, 0.05f64..2.0)) {
        let r = r_um * 1e-6;
        let a = x * r;
        let force = force_n0(r, a, 300.0).unwrap();
        let fd = -fd_first_derivative(|t| free_energy_n0(r, t, 300.0), a, 1e-4 * a).unwrap();
        prop_assert!(rel(force, fd) < 1e-6, "force {force} vs fd {fd}");
    }

    #[test]
    fn gradient_n0_is_dforce((r_um, x) in (1.0f64..50.0, 0.05f64..2.0)) {
        let r = r_um * 1e-6;
        let a = x * r;
        let grad = gradient_n0(r, a, 300.0).unwrap();
        let fd = fd_first_derivative(|t| force_n0(r, t, 300.0), a, 1e-4 * a).unwrap();
        prop_assert!(rel(grad, fd) < 1e-6, "gradient {grad} vs fd {fd}");
    }

    #[test]
    fn pressure_mode_is_denergy_mode(
        (a_um, n, (wp, gamma)) in (0.2f64..2.0, 1usize..20, drude_params())
    ) {
        let au = MaterialModel::drude(wp, gamma).unwrap();
        let a = a_um * 1e-6;
        let p = pp_pressure_mode(&au, a, 300.0, n).unwrap();
        let fd = fd_first_derivative(
            |t| pp_free_energy_mode(&au, t, 300.0, n),
            a,
            1e-4 * a,
        )
        .unwrap();
        prop_assert!(rel(p, fd) < 1e-6, "pressure {p} vs fd {fd}");
    }

    #[test]
    fn gradient_pfa_is_dforce_pfa(
        (a_um, (wp, gamma)) in (0.15f64..2.0, drude_params())
    ) {
        let au = MaterialModel::drude(wp, gamma).unwrap();
        let a = a_um * 1e-6;
        let r = 5e-6;
        let grid = MatsubaraGrid::new(300.0, a).unwrap();
        let grad = gradient_pfa_npos(&au, r, a, &grid).unwrap();
        let fd = fd_first_derivative(
            |t| force_pfa_npos(&au, r, t, &grid),
            a,
            1e-4 * a,
        )
        .unwrap();
        prop_assert!(rel(grad, fd) < 1e-6, "gradient {grad} vs fd {fd}");
    }

    #[test]
    fn classical_energy_approaches_its_pfa_limit(x in 1e-6f64..1e-4) {
        let f = free_energy_n0(1.0, x, 300.0).unwrap();
        let scaled = x * f / (K_B * 300.0);
        let want = -ZETA3 / 8.0;
        prop_assert!(rel(scaled, want) < 0.02, "scaled {scaled} vs {want}");
    }

    #[test]
    fn headline_quantities_keep_their_signs(
        (r_um, a_um, (wp, gamma), plasma) in
            (2.0f64..100.0, 0.1f64..2.0, drude_params(), any::<bool>())
    ) {
        let mat = if plasma {
            MaterialModel::plasma(wp).unwrap()
        } else {
            MaterialModel::drude(wp, gamma).unwrap()
        };
        let r = r_um * 1e-6;
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(300.0, a).unwrap();
        let table = ThetaTable::builtin();
        let f = force_approx(&mat, r, a, &grid, &table).unwrap();
        let g = gradient_approx(&mat, r, a, &grid, &table).unwrap();
        prop_assert!(f < 0.0, "attraction, got {f}");
        prop_assert!(g > 0.0, "positive gradient, got {g}");
    }

    #[test]
    fn attraction_weakens_with_separation(
        (r_um, a1_um, step, (wp, gamma)) in
            (2.0f64..100.0, 0.1f64..1.5, 1.05f64..1.3, drude_params())
    ) {
        let mat = MaterialModel::drude(wp, gamma).unwrap();
        let r = r_um * 1e-6;
        let table = ThetaTable::builtin();
        let (a1, a2) = (a1_um * 1e-6, (a1_um * step).min(2.0) * 1e-6);
        let f1 = {
            let grid = MatsubaraGrid::new(300.0, a1).unwrap();
            force_approx(&mat, r, a1, &grid, &table).unwrap()
        };
        let f2 = {
            let grid = MatsubaraGrid::new(300.0, a2).unwrap();
            force_approx(&mat, r, a2, &grid, &table).unwrap()
        };
        prop_assert!(f1.abs() > f2.abs(), "|F({a1})| = {} vs |F({a2})| = {}", f1.abs(), f2.abs());
    }

    #[test]
    fn permittivity_monotone_above_vacuum((wp, gamma) in drude_params()) {
        let mut prev = f64::INFINITY;
        for i in 0..30 {
            let xi = 1e13 * 10f64.powf(i as f64 / 7.0);
            let eps = eps_drude(xi, casimir::constants::ev_to_rad(wp),
                                casimir::constants::ev_to_rad(gamma));
            prop_assert!(eps > 1.0 && eps < prev);
            prev = eps;
        }
    }

    #[test]
    fn matsubara_grid_is_exactly_linear((t, n) in (4.0f64..700.0, 1usize..2000)) {
        prop_assert_eq!(xi_matsubara(t, n), n as f64 * xi_matsubara(t, 1));
    }

    #[test]
    fn breakdown_recombines_bitwise(
        (r_um, a_um, (wp, gamma)) in (2.0f64..50.0, 0.1f64..2.0, drude_params())
    ) {
        let mat = MaterialModel::drude(wp, gamma).unwrap();
        let r = r_um * 1e-6;
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(300.0, a).unwrap();
        let table = ThetaTable::builtin();
        let res = evaluate_point(&mat, r, a, &grid, &table).unwrap();
        prop_assert_eq!(
            res.force.total,
            res.force.n0_exact + res.force.n_pos_pfa * res.force.de_factor
        );
        prop_assert_eq!(
            res.gradient.total,
            res.gradient.n0_exact + res.gradient.n_pos_pfa * res.gradient.de_factor
        );
        prop_assert_eq!(res.force.total, force_approx(&mat, r, a, &grid, &table).unwrap());
        prop_assert_eq!(
            res.gradient.total,
            gradient_approx(&mat, r, a, &grid, &table).unwrap()
        );
    }

    #[test]
    fn dispersion_integral_stable_under_refinement(u in 0.0f64..4.0) {
        let gold = OpticalDataTable::builtin_gold();
        let xi = 1e13 * 10f64.powf(u);
        let coarse = eps_tabulated_with(xi, &gold, 8);
        let fine = eps_tabulated_with(xi, &gold, 16);
        prop_assert!(rel(coarse, fine) < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn round_trip_block_even_in_m(
        (m, dl, n) in (1i64..6, 0usize..5, 1usize..4)
    ) {
        let au = MaterialModel::drude(9.0, 0.035).unwrap();
        let xi = xi_matsubara(300.0, n);
        let l_max = m as usize + dl;
        let bp = round_trip_block(&au, 2e-6, 1e-6, xi, m, l_max, 32).unwrap();
        let bm = round_trip_block(&au, 2e-6, 1e-6, xi, -m, l_max, 32).unwrap();
        prop_assert_eq!(bp, bm);
    }

    #[test]
    fn log_det_agrees_with_closed_form_on_2x2(
        (r_um, x, n, m) in (1.0f64..10.0, 0.3f64..3.0, 1usize..5, 0i64..2)
    ) {
        let au = MaterialModel::drude(9.0, 0.035).unwrap();
        let r = r_um * 1e-6;
        let a = x * r;
        let xi = xi_matsubara(300.0, n);
        let b = round_trip_block(&au, r, a, xi, m, 1, 32).unwrap();
        let want = ((1.0 - b[(0, 0)]) * (1.0 - b[(1, 1)]) - b[(0, 1)] * b[(1, 0)]).ln();
        let got = block_log_det(&b).unwrap();
        // both routes resolve ln(1 - small) only to absolute machine noise
        prop_assert!((got - want).abs() < 1e-14 + 1e-10 * want.abs(),
            "{got} vs {want}");
    }

    #[test]
    fn pressure_integrates_back_to_force(
        (a_um, (wp, gamma)) in (0.3f64..1.5, drude_params())
    ) {
        let au = MaterialModel::drude(wp, gamma).unwrap();
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(300.0, a).unwrap();
        let direct = force_pfa_npos(&au, 5e-6, a, &grid).unwrap();
        let via_pressure =
            casimir::pfa::force_pfa_npos_from_pressure(&au, 5e-6, a, &grid).unwrap();
        prop_assert!(rel(direct, via_pressure) < 1e-6, "{direct} vs {via_pressure}");
    }

    #[test]
    fn theta_coefficients_stay_in_their_box(a_um in 0.1f64..2.0) {
        let table = ThetaTable::builtin();
        let (th, tt) = table.theta_coeffs_um(a_um).unwrap();
        prop_assert!(th > 0.0 && th < 1.0);
        prop_assert!(tt > 0.0 && tt < 1.0);
        // the curvature correction factor must stay positive for any
        // radius at least as large as the table's separation span
        let de = 1.0 - th * a_um / 2.0;
        prop_assert!(de > 0.0);
    }
}

#[test]
fn npos_pressure_positive_and_decaying() {
    let au = MaterialModel::drude(9.0, 0.035).unwrap();
    let mut prev = f64::INFINITY;
    for a_um in [0.2, 0.4, 0.8, 1.6] {
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(300.0, a).unwrap();
        let p = pp_pressure_npos(&au, a, &grid).unwrap();
        assert!(p > 0.0 && p < prev);
        prev = p;
    }
}

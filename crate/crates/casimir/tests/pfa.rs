//! Curvature-corrected PFA: the theta coefficient table and its
//! interpolation, the PFA force/gradient routes, and the assembled
//! semi-analytic formulas.

use approx::assert_relative_eq;
use casimir::lifshitz;
use casimir::pfa::*;
use casimir::scattering::fd_first_derivative;
use casimir::{CasimirError, MaterialModel, MatsubaraGrid, ThetaTable};

fn gold() -> MaterialModel {
    MaterialModel::drude(9.0, 0.035).unwrap()
}

#[test]
fn builtin_table_shape() {
    let t = ThetaTable::builtin();
    assert_eq!(t.abscissae_um().len(), 24);
    assert_eq!(t.abscissae_um()[0], 0.10);
    assert_eq!(*t.abscissae_um().last().unwrap(), 2.00);
    assert!(t.provenance.contains("gold"));
}

#[test]
fn interpolation_is_node_exact() {
    let t = ThetaTable::builtin();
    let (abscissae, thetas, tildes) = (
        t.abscissae_um().to_vec(),
        t.theta_values().to_vec(),
        t.theta_tilde_values().to_vec(),
    );
    for ((&a_um, &th), &tt) in abscissae.iter().zip(&thetas).zip(&tildes) {
        let (got_th, got_tt) = t.theta_coeffs_um(a_um).unwrap();
        assert_eq!(got_th, th, "theta at node {a_um}");
        assert_eq!(got_tt, tt, "theta-tilde at node {a_um}");
        // the meter interface rounds through the unit conversion, so it
        // only gets within an ulp of the node
        let (th_m, _) = t.theta_coeffs(a_um * 1e-6).unwrap();
        assert_relative_eq!(th_m, th, max_relative = 1e-12);
    }
}

#[test]
fn interpolation_between_nodes_matches_reference() {
    // monotone cubic values frozen from an independent implementation
    let t = ThetaTable::builtin();
    let cases = [
        (0.22, 0.652955295433364, 0.467936235294118),
        (0.47, 0.531828703465982, 0.420975384615385),
        (1.30, 0.322338967136150, 0.293680000000000),
        (1.95, 0.241383928571429, 0.229065104166667),
    ];
    for &(a_um, th, tt) in &cases {
        let (got_th, got_tt) = t.theta_coeffs(a_um * 1e-6).unwrap();
        assert_relative_eq!(got_th, th, max_relative = 1e-12);
        assert_relative_eq!(got_tt, tt, max_relative = 1e-12);
    }
}

#[test]
fn interpolated_theta_decreases_monotonically() {
    let t = ThetaTable::builtin();
    let mut prev = f64::INFINITY;
    for i in 0..=400 {
        let a_um = 0.10 + 1.90 * i as f64 / 400.0;
        let (th, tt) = t.theta_coeffs(a_um * 1e-6).unwrap();
        assert!(th < prev, "theta must fall with separation");
        assert!(th > 0.0 && th < 1.0 && tt > 0.0 && tt < 1.0);
        prev = th;
    }
}

#[test]
fn out_of_range_separations_are_refused() {
    let t = ThetaTable::builtin();
    assert!(matches!(
        t.theta_coeffs(0.05e-6),
        Err(CasimirError::RangeError { .. })
    ));
    assert!(matches!(
        t.theta_coeffs(2.5e-6),
        Err(CasimirError::RangeError { .. })
    ));
    // roundoff slack at the edges
    assert!(t.theta_coeffs(0.10e-6 * (1.0 - 1e-13)).is_ok());
    assert!(t.theta_coeffs(2.00e-6 * (1.0 + 1e-13)).is_ok());
}

#[test]
fn handmade_tables_are_validated() {
    assert!(ThetaTable::from_rows(vec![0.1, 0.2], vec![0.7, 0.6], vec![0.5, 0.4]).is_ok());
    // theta outside (0,1)
    assert!(ThetaTable::from_rows(vec![0.1, 0.2], vec![1.2, 0.6], vec![0.5, 0.4]).is_err());
    // descending abscissae
    assert!(ThetaTable::from_rows(vec![0.2, 0.1], vec![0.7, 0.6], vec![0.5, 0.4]).is_err());
    // length mismatch
    assert!(ThetaTable::from_rows(vec![0.1, 0.2], vec![0.7], vec![0.5, 0.4]).is_err());
}

#[test]
fn pfa_force_is_linear_in_radius() {
    let au = gold();
    let a = 0.5e-6;
    let grid = MatsubaraGrid::new(300.0, a).unwrap();
    let f1 = force_pfa_npos(&au, 5e-6, a, &grid).unwrap();
    let f2 = force_pfa_npos(&au, 10e-6, a, &grid).unwrap();
    assert_relative_eq!(f2, 2.0 * f1, max_relative = 1e-15);
}

#[test]
fn pfa_force_fades_at_large_separation() {
    let au = gold();
    let near = {
        let grid = MatsubaraGrid::new(300.0, 0.5e-6).unwrap();
        force_pfa_npos(&au, 5e-6, 0.5e-6, &grid).unwrap()
    };
    let far = {
        let grid = MatsubaraGrid::new(300.0, 10e-6).unwrap();
        force_pfa_npos(&au, 5e-6, 10e-6, &grid).unwrap()
    };
    assert!(near < 0.0 && far < 0.0);
    assert!(far.abs() < 1e-4 * near.abs());
}

#[test]
fn classical_term_dominates_beyond_the_thermal_length() {
    let au = gold();
    let (r, a) = (5e-6, 5e-6);
    let grid = MatsubaraGrid::new(300.0, a).unwrap();
    let npos = force_pfa_npos(&au, r, a, &grid).unwrap();
    let n0 = casimir::classical::force_n0(r, a, 300.0).unwrap();
    assert!(npos.abs() < 0.02 * n0.abs());
}

#[test]
fn pressure_route_reproduces_the_energy_route() {
    // F = 2 pi R E_pp(a) against F = -2 pi R int_a P_pp; independent
    // derivations, independent quadratures
    let au = gold();
    let a = 0.5e-6;
    let grid = MatsubaraGrid::new(300.0, a).unwrap();
    let direct = force_pfa_npos(&au, 5e-6, a, &grid).unwrap();
    let integrated = force_pfa_npos_from_pressure(&au, 5e-6, a, &grid).unwrap();
    assert_relative_eq!(direct, integrated, max_relative = 1e-6);
}

#[test]
fn pfa_gradient_is_the_derivative_of_pfa_force() {
    let au = gold();
    let a = 0.5e-6;
    let grid = MatsubaraGrid::new(300.0, a).unwrap();
    let grad = gradient_pfa_npos(&au, 5e-6, a, &grid).unwrap();
    let fd = fd_first_derivative(
        |x| force_pfa_npos(&au, 5e-6, x, &grid),
        a,
        1e-4 * a,
    )
    .unwrap();
    assert_relative_eq!(grad, fd, max_relative = 1e-6);
}

#[test]
fn totals_add_the_zero_mode() {
    let au = gold();
    let a = 0.5e-6;
    let r = 5e-6;
    let grid = MatsubaraGrid::new(300.0, a).unwrap();
    let two_pi_r = 2.0 * std::f64::consts::PI * r;
    let want = force_pfa_npos(&au, r, a, &grid).unwrap()
        + two_pi_r * lifshitz::pp_zero_mode_drude_energy(a, 300.0);
    assert_relative_eq!(
        force_pfa_total(&au, r, a, &grid).unwrap(),
        want,
        max_relative = 1e-14
    );
    let want = gradient_pfa_npos(&au, r, a, &grid).unwrap()
        + two_pi_r * lifshitz::pp_zero_mode_drude_pressure(a, 300.0);
    assert_relative_eq!(
        gradient_pfa_total(&au, r, a, &grid).unwrap(),
        want,
        max_relative = 1e-14
    );
}

#[test]
fn corrected_formulas_assemble_their_pieces() {
    // exact classical term plus the curvature-scaled n >= 1 PFA part;
    // guards against swapping theta for theta-tilde between the channels
    let au = gold();
    let r = 5e-6;
    let table = ThetaTable::builtin();
    for a_um in [0.2, 0.5, 1.0, 2.0] {
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(300.0, a).unwrap();
        let f = force_approx(&au, r, a, &grid, &table).unwrap();
        let g = gradient_approx(&au, r, a, &grid, &table).unwrap();
        assert!(f < 0.0 && g > 0.0, "a = {a_um} um");

        let (theta, theta_tilde) = table.theta_coeffs(a).unwrap();
        let n0 = casimir::classical::force_n0(r, a, 300.0).unwrap();
        let npos = force_pfa_npos(&au, r, a, &grid).unwrap();
        assert_eq!(f, n0 + npos * (1.0 - theta * a / r));
        let n0 = casimir::classical::gradient_n0(r, a, 300.0).unwrap();
        let npos = gradient_pfa_npos(&au, r, a, &grid).unwrap();
        assert_eq!(g, n0 + npos * (1.0 - theta_tilde * a / r));
    }
}

#[test]
fn ideal_mirror_normalizer() {
    // -pi^3 hbar c R / (360 a^3) at R = 5 um, a = 0.5 um
    let f = ideal_pfa_force(5e-6, 0.5e-6);
    assert_relative_eq!(f, -1.0891908201238980e-13, max_relative = 1e-12);
    // R / a^3 scaling
    assert_relative_eq!(
        ideal_pfa_force(10e-6, 1e-6),
        0.25 * f,
        max_relative = 1e-14
    );
}

#[test]
fn theta_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.txt");
    std::fs::write(&path, "# toy coefficients\n0.1 0.7 0.5\n0.5 0.6 0.4\n1.0 0.5 0.3\n").unwrap();
    let t = ThetaTable::load(&path).unwrap();
    assert_eq!(t.provenance, "toy coefficients");
    assert_eq!(t.theta_coeffs(0.5e-6).unwrap(), (0.6, 0.4));

    std::fs::write(&path, "0.1 0.7\n").unwrap();
    assert!(ThetaTable::load(&path).is_err());
    assert!(ThetaTable::load("/nonexistent/theta.txt").is_err());
}

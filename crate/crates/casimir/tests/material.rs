//! Permittivity models and the tabulated-data pipeline: closed forms,
//! dispersion-integral accuracy, file parsing and its failure modes.

use casimir::constants::ev_to_rad;
use casimir::lifshitz::xi_matsubara;
use casimir::material::*;
use casimir::{CasimirError, MaterialModel};
use std::io::Write;

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

#[test]
fn drude_at_first_matsubara_frequency() {
    let xi1 = xi_matsubara(300.0, 1);
    let eps = eps_drude(xi1, ev_to_rad(9.0), ev_to_rad(0.035));
    assert!(rel(eps, 2526.7564496755138) < 1e-13, "got {eps}");
}

#[test]
fn plasma_is_drude_without_dissipation() {
    let wp = ev_to_rad(9.0);
    for xi in [1e13, 1e14, 1e15, 1e16] {
        assert_eq!(eps_plasma(xi, wp), eps_drude(xi, wp, 0.0));
    }
    assert!(rel(eps_plasma(wp, wp), 2.0) < 1e-15);
}

#[test]
fn model_eps_exceeds_vacuum_and_decays() {
    let au = MaterialModel::drude(9.0, 0.035).unwrap();
    let mut prev = f64::INFINITY;
    for i in 0..40 {
        let xi = 1e13 * 10f64.powf(i as f64 * 0.1);
        let eps = au.eps(xi);
        assert!(eps > 1.0);
        assert!(eps < prev, "eps must fall with frequency");
        prev = eps;
    }
}

#[test]
fn model_constructors_reject_nonsense() {
    assert!(MaterialModel::drude(-1.0, 0.01).is_err());
    assert!(MaterialModel::drude(9.0, -0.1).is_err());
    assert!(MaterialModel::plasma(0.0).is_err());
}

#[test]
fn zero_mode_kinds() {
    assert!(matches!(
        MaterialModel::drude(9.0, 0.035).unwrap().zero_mode(),
        ZeroModeKind::Drude
    ));
    let p = MaterialModel::plasma(9.0).unwrap();
    match p.zero_mode() {
        ZeroModeKind::Plasma { wp } => assert!(rel(wp, ev_to_rad(9.0)) < 1e-15),
        _ => panic!("plasma model must keep its TE zero mode"),
    }
}

/// Sample the exact Drude loss function on a log grid, run it back through
/// the dispersion integral, and compare against the closed form.
#[test]
fn dispersion_integral_closes_on_drude() {
    let (wp_ev, gamma_ev) = (9.0, 0.035);
    let n = 220;
    let (lo, hi) = (0.1f64, 1e4f64);
    let mut w = Vec::with_capacity(n);
    let mut e2 = Vec::with_capacity(n);
    for i in 0..n {
        let wi = lo * (hi / lo).powf(i as f64 / (n - 1) as f64);
        w.push(wi);
        e2.push(wp_ev * wp_ev * gamma_ev / (wi * (wi * wi + gamma_ev * gamma_ev)));
    }
    let table =
        OpticalDataTable::from_rows(w, e2, Some((wp_ev, gamma_ev)), "synthetic drude").unwrap();
    let (wp, gamma) = (ev_to_rad(wp_ev), ev_to_rad(gamma_ev));
    for i in 0..30 {
        let xi = 1e13 * 10f64.powf(i as f64 * 4.0 / 29.0);
        let got = eps_tabulated(xi, &table);
        let want = eps_drude(xi, wp, gamma);
        assert!(rel(got, want) < 1e-3, "xi={xi:.3e}: {got} vs {want}");
    }
}

#[test]
fn dispersion_integral_is_quadrature_converged() {
    let gold = OpticalDataTable::builtin_gold();
    for xi in [1e14, 1e15, 1e16] {
        let coarse = eps_tabulated_with(xi, &gold, 8);
        let fine = eps_tabulated_with(xi, &gold, 16);
        assert!(rel(coarse, fine) < 1e-6);
    }
}

#[test]
fn lossless_table_gives_vacuum() {
    let t = OpticalDataTable::from_rows(vec![1.0, 10.0], vec![0.0, 0.0], None, "empty").unwrap();
    assert_eq!(eps_tabulated(1e15, &t), 1.0);
}

#[test]
fn builtin_gold_table_shape() {
    let gold = OpticalDataTable::builtin_gold();
    let (lo, hi) = gold.omega_range_ev();
    assert_eq!(lo, 0.1);
    assert_eq!(hi, 1e4);
    assert_eq!(gold.rows().count(), 220);
    let (wp, gamma) = gold.drude_tail().expect("gold declares a Drude tail");
    assert_eq!(wp, 9.0);
    assert_eq!(gamma, 0.035);
    assert!(gold.provenance.contains("gold"));
}

#[test]
fn tabulated_gold_tracks_drude_at_low_frequency() {
    // at the first Matsubara frequency the Drude pole dominates; the
    // interband oscillators can only add polarizability on top of it
    let gold = MaterialModel::Tabulated(OpticalDataTable::builtin_gold());
    let drude = MaterialModel::drude(9.0, 0.035).unwrap();
    let xi1 = xi_matsubara(300.0, 1);
    assert!(rel(gold.eps(xi1), drude.eps(xi1)) < 1e-2);
    for n in 1..=10usize {
        let xi = xi_matsubara(300.0, n);
        assert!(gold.eps(xi) > drude.eps(xi), "n = {n}");
    }
}

#[test]
fn table_loading_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eps.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# test data set").unwrap();
    writeln!(f, "# tail-drude: wp_eV=8.5 gamma_eV=0.04").unwrap();
    writeln!(f, "0.5 12.25").unwrap();
    writeln!(f, "2.0  0.75").unwrap();
    drop(f);
    let t = load_optical_data(&path).unwrap();
    assert_eq!(t.rows().count(), 2);
    assert_eq!(t.drude_tail(), Some((8.5, 0.04)));
    assert_eq!(t.provenance, "test data set");
    assert!(eps_tabulated(1e15, &t) > 1.0);
}

#[test]
fn table_errors_name_the_offending_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "1.0 0.5\n0.9 0.4\n").unwrap();
    match load_optical_data(&path) {
        Err(CasimirError::DataError { message, .. }) => {
            assert!(message.contains("row 2"), "message was: {message}")
        }
        other => panic!("expected a data error, got {other:?}"),
    }

    std::fs::write(&path, "1.0 0.5\n2.0 -0.1\n").unwrap();
    match load_optical_data(&path) {
        Err(CasimirError::DataError { message, .. }) => {
            assert!(message.contains("row 2"), "message was: {message}")
        }
        other => panic!("expected a data error, got {other:?}"),
    }

    std::fs::write(&path, "1.0 0.5 9.9\n2.0 0.4\n").unwrap();
    assert!(load_optical_data(&path).is_err());

    std::fs::write(&path, "1.0 0.5\n").unwrap();
    assert!(load_optical_data(&path).is_err());
}

#[test]
fn missing_table_file_is_an_io_error() {
    assert!(matches!(
        load_optical_data("/nonexistent/eps.txt"),
        Err(CasimirError::Io(_))
    ));
}

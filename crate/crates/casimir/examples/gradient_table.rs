//! Force gradient for a large sphere (R = 150 um) over the separations
//! probed in torsion-balance experiments, printed as F'/(2 pi R) in mPa.
//! At this aspect ratio the curvature correction barely moves the PFA
//! value, which is why experiments at R/a > 200 quote PFA numbers.

use casimir::material::OpticalDataTable;
use casimir::pfa::{gradient_approx, gradient_pfa_total};
use casimir::{MaterialModel, MatsubaraGrid, ThetaTable};
use std::f64::consts::PI;

fn main() -> casimir::Result<()> {
    let radius = 150e-6;
    let temperature = 300.0;
    let gold = MaterialModel::Tabulated(OpticalDataTable::builtin_gold());
    let table = ThetaTable::builtin();
    let to_mpa = |grad: f64| grad / (2.0 * PI * radius) * 1e3;

    println!("R = 150 um, T = 300 K, {}", gold.provenance());
    println!(
        "{:>8} {:>14} {:>14} {:>12}",
        "a [um]", "approx [mPa]", "PFA [mPa]", "diff [%]"
    );
    for a_um in [0.2, 0.3, 0.4, 0.5, 0.6, 0.7] {
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(temperature, a)?;
        let g = to_mpa(gradient_approx(&gold, radius, a, &grid, &table)?);
        let g_pfa = to_mpa(gradient_pfa_total(&gold, radius, a, &grid)?);
        println!(
            "{a_um:>8.1} {g:>14.4} {g_pfa:>14.4} {:>12.4}",
            (g / g_pfa - 1.0) * 100.0
        );
    }
    Ok(())
}

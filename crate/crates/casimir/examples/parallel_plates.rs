//! Parallel-plate Lifshitz pressure checks. Two limits frame the
//! physics: a huge plasma frequency at low temperature recovers the
//! ideal-mirror pressure pi^2 hbar c / (240 a^4), and at separations
//! past the thermal wavelength the Drude result collapses onto its
//! classical zero-mode term alone.

use casimir::constants::{C, HBAR};
use casimir::lifshitz::{
    pp_pressure_total, pp_zero_mode_drude_pressure, thermal_length,
};
use casimir::{MaterialModel, MatsubaraGrid};
use std::f64::consts::PI;

fn main() -> casimir::Result<()> {
    let a = 1e-6;
    let near_ideal = MaterialModel::plasma(2000.0)?;
    let grid = MatsubaraGrid::new(10.0, a)?;
    let p = pp_pressure_total(&near_ideal, a, &grid)?;
    let ideal = PI * PI * HBAR * C / (240.0 * a.powi(4));
    println!("ideal-mirror limit at a = 1 um, T = 10 K, plasma wp = 2000 eV");
    println!("  lifshitz  {p:.6e} Pa");
    println!("  ideal     {ideal:.6e} Pa");
    println!("  deviation {:+.4} %", (p / ideal - 1.0) * 100.0);

    let gold = MaterialModel::drude(9.0, 0.035)?;
    println!();
    println!("thermal crossover for Drude gold at 300 K (lambda_T = {:.3} um)", thermal_length(300.0) * 1e6);
    println!("{:>8} {:>14} {:>14} {:>8}", "a [um]", "total [Pa]", "n=0 term [Pa]", "n0/total");
    for a_um in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(300.0, a)?;
        let total = pp_pressure_total(&gold, a, &grid)?;
        let n0 = pp_zero_mode_drude_pressure(a, 300.0);
        println!("{a_um:>8} {total:>14.4e} {n0:>14.4e} {:>8.4}", n0 / total);
    }
    Ok(())
}

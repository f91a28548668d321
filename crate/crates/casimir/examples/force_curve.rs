//! Sphere-plate force across separations, split into the pieces the
//! semi-analytic formula is built from: the exact classical n = 0 term,
//! the PFA resummation of the n >= 1 modes, and the curvature factor
//! (1 - theta a/R) that corrects the latter. The last column normalizes
//! by the ideal-mirror PFA force to show how far a real metal at finite
//! temperature sits below the textbook value.

use casimir::run::{evaluate_point, GridKind, RunConfig, SeparationGrid};

fn main() -> casimir::Result<()> {
    let mut config = RunConfig::default();
    config.radius_um = 5.0;
    config.grid = SeparationGrid {
        min_um: 0.2,
        max_um: 2.0,
        points: 10,
        kind: GridKind::Log,
    };

    let material = config.build_material()?;
    let table = config.build_theta()?;
    let radius = config.radius_m();

    println!(
        "R = {} um, T = {} K, {}",
        config.radius_um,
        config.temperature_k,
        material.provenance()
    );
    println!(
        "{:>8} {:>13} {:>13} {:>13} {:>8} {:>9}",
        "a [um]", "F [N]", "F_n0 [N]", "F_npos [N]", "DE fac", "F/F_ideal"
    );
    for a in config.separations_m() {
        let grid = config.matsubara_grid(a)?;
        let point = evaluate_point(&material, radius, a, &grid, &table)?;
        println!(
            "{:>8.3} {:>13.4e} {:>13.4e} {:>13.4e} {:>8.4} {:>9.4}",
            a * 1e6,
            point.force.total,
            point.force.n0_exact,
            point.force.n_pos_pfa,
            point.force.de_factor,
            point.force.total / point.force_ideal_pfa
        );
    }
    Ok(())
}

//! Check the semi-analytic force formula against the exact multipole
//! scattering computation at a deliberately small sphere, where the
//! matrices stay tiny and the whole comparison runs in seconds. The
//! formula's error grows as R/a drops toward 1, and the bare PFA does
//! far worse; both trends are visible already on this little grid.

use casimir::pfa::{force_approx, force_pfa_total};
use casimir::scattering::force_scattering;
use casimir::{MaterialModel, MatsubaraGrid, MultipoleTruncation, ThetaTable};
use std::time::Instant;

fn main() -> casimir::Result<()> {
    let radius = 2e-6;
    let temperature = 300.0;
    let material = MaterialModel::drude(9.0, 0.035)?;
    let table = ThetaTable::builtin();

    println!("R = 2 um, T = 300 K, Drude gold");
    println!(
        "{:>8} {:>6} {:>13} {:>13} {:>10} {:>10} {:>8}",
        "a [um]", "l_max", "oracle [N]", "approx [N]", "approx err", "PFA err", "time [s]"
    );
    for a_um in [0.4, 0.7, 1.0] {
        let a = a_um * 1e-6;
        let grid = MatsubaraGrid::new(temperature, a)?;
        let trunc = MultipoleTruncation::default_for(radius, a, temperature)?;

        let t0 = Instant::now();
        let oracle = force_scattering(&material, radius, a, temperature, &trunc)?;
        let dt = t0.elapsed().as_secs_f64();

        let approx = force_approx(&material, radius, a, &grid, &table)?;
        let pfa = force_pfa_total(&material, radius, a, &grid)?;
        println!(
            "{a_um:>8.1} {:>6} {oracle:>13.5e} {approx:>13.5e} {:>9.3}% {:>9.2}% {dt:>8.2}",
            trunc.l_max,
            (approx / oracle - 1.0) * 100.0,
            (pfa / oracle - 1.0) * 100.0
        );
    }
    Ok(())
}

//! The n = 0 Matsubara term for a Drude sphere and plate has an exact
//! solution in bispherical coordinates. This prints the dimensionless
//! combination x F_0 / (k_B T) across aspect ratios: it must climb to
//! the proximity-force value -zeta(3)/8 as the sphere approaches the
//! plate, and the series needs more terms the closer the gap.

use casimir::classical::{free_energy_n0_detailed, gradient_n0};
use casimir::constants::{K_B, ZETA3};

fn main() -> casimir::Result<()> {
    let radius = 10e-6;
    let temperature = 300.0;

    println!("pfa limit: -zeta(3)/8 = {:.10}", -ZETA3 / 8.0);
    println!(
        "{:>10} {:>16} {:>10} {:>7} {:>14}",
        "x = a/R", "x*F0/kT", "vs limit", "terms", "F0'' [N/m]"
    );
    for exp in [-6.0f64, -5.0, -4.0, -3.0, -2.0, -1.0, 0.0] {
        let x = 10.0f64.powf(exp);
        let a = x * radius;
        let (f0, terms) = free_energy_n0_detailed(radius, a, temperature, 1e-12)?;
        let scaled = x * f0 / (K_B * temperature);
        let grad = gradient_n0(radius, a, temperature)?;
        println!(
            "{x:>10.0e} {scaled:>16.10} {:>9.4}% {terms:>7} {grad:>14.4e}",
            (scaled / (-ZETA3 / 8.0) - 1.0) * 100.0
        );
    }
    Ok(())
}

//! Compare the metal models along the imaginary-frequency axis: pure
//! Drude, lossless plasma, and the tabulated gold data (dispersion
//! integral over measured absorption). The tabulated curve sits above
//! Drude everywhere because interband absorption only adds.

use casimir::lifshitz::xi_matsubara;
use casimir::material::OpticalDataTable;
use casimir::MaterialModel;

fn main() -> casimir::Result<()> {
    let drude = MaterialModel::drude(9.0, 0.035)?;
    let plasma = MaterialModel::plasma(9.0)?;
    let gold = MaterialModel::Tabulated(OpticalDataTable::builtin_gold());

    println!("eps(i xi_n) at T = 300 K");
    println!("{:>3} {:>12} {:>14} {:>14} {:>14} {:>9}", "n", "xi [rad/s]", "drude", "plasma", "tabulated Au", "Au/drude");
    for n in [1, 2, 3, 5, 10, 20, 50, 100] {
        let xi = xi_matsubara(300.0, n);
        let ed = drude.eps(xi);
        let ep = plasma.eps(xi);
        let eg = gold.eps(xi);
        println!(
            "{n:>3} {xi:>12.4e} {ed:>14.4} {ep:>14.4} {eg:>14.4} {:>9.4}",
            eg / ed
        );
    }

    println!();
    println!("zero-mode kinds: drude = {:?}, plasma = {:?}", drude.zero_mode(), plasma.zero_mode());
    println!("gold data: {}", gold.provenance());
    Ok(())
}

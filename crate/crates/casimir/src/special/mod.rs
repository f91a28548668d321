//! Scaled special functions for the multipole machinery.
//!
//! Everything here works in log space: at the orders and arguments the
//! round-trip matrices need (l of a few hundred, arguments from 1e-6 to
//! several hundred, angular arguments up to 1e8) the bare functions overflow
//! f64 by hundreds of decades, while their balanced combinations are tame.

mod bessel_mod;
mod legendre;

pub use bessel_mod::BesselLn;
pub use legendre::AngularLn;

/// ln(n!) for n = 0..=nmax as a lookup table.
pub fn ln_factorials(nmax: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(nmax + 1);
    let mut acc = 0.0;
    v.push(0.0);
    for k in 1..=nmax {
        acc += (k as f64).ln();
        v.push(acc);
    }
    v
}

/// ln(n!!) for odd n >= -1.
pub fn ln_double_factorial_odd(n: i64) -> f64 {
    debug_assert!(n >= -1 && n % 2 != 0);
    let mut acc = 0.0;
    let mut k = 3;
    while k <= n {
        acc += (k as f64).ln();
        k += 2;
    }
    acc
}

//! Physical constants (SI). CODATA 2018; `HBAR` is the rounded value.

pub const HBAR: f64 = 1.054571817e-34;
pub const C: f64 = 299792458.0;
pub const K_B: f64 = 1.380649e-23;
pub const EV: f64 = 1.602176634e-19;

/// Riemann zeta(3), the Apery constant.
pub const ZETA3: f64 = 1.2020569031595943;

/// Converts a photon energy in eV to an angular frequency in rad/s.
pub fn ev_to_rad(e: f64) -> f64 {
    e * EV / HBAR
}

/// Converts an angular frequency in rad/s to a photon energy in eV.
pub fn rad_to_ev(w: f64) -> f64 {
    w * HBAR / EV
}

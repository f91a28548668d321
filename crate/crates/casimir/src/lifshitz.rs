//! Lifshitz theory for two parallel half-spaces at temperature T.
//!
//! Per-mode free energies and pressures are written in the damped variable
//! u = 2 q a, where q is the imaginary-axis longitudinal wavenumber:
//!
//!   F_n = kT/(8 pi a^2) int_{u_0}^inf du u sum_pol ln(1 - r^2 e^{-u}),
//!   P_n = kT/(8 pi a^3) int_{u_0}^inf du u^2 sum_pol r^2 e^{-u}/(1 - r^2 e^{-u}),
//!
//! with u_0 = 2 a xi_n / c. Signs: F_n < 0, and P_n = +dF_n/da > 0 is the
//! magnitude of the attractive pressure between the plates.

use crate::constants::{C, HBAR, K_B, ZETA3};
use crate::error::{CasimirError, Result};
use crate::material::{MaterialModel, ZeroModeKind};
use crate::quadrature::integrate_tail;

/// n-th Matsubara angular frequency at temperature T (rad/s). Exactly
/// linear in n: xi_n = n * xi_1 without rounding drift.
pub fn xi_matsubara(temperature: f64, n: usize) -> f64 {
    n as f64 * (2.0 * std::f64::consts::PI * K_B * temperature / HBAR)
}

/// hbar c / (2 pi k T): the separation scale beyond which thermal effects
/// dominate. About 1.2 um at room temperature.
pub fn thermal_length(temperature: f64) -> f64 {
    HBAR * C / (2.0 * std::f64::consts::PI * K_B * temperature)
}

/// The set of imaginary frequencies summed over at temperature T.
#[derive(Debug, Clone)]
pub struct MatsubaraGrid {
    pub temperature: f64,
    pub n_max: usize,
}

impl MatsubaraGrid {
    /// Grid long enough for separation `a`: n_max = ceil(10 lambda_T / a),
    /// which puts the first omitted mode ~e^{-20} below the leading one.
    pub fn new(temperature: f64, a: f64) -> Result<Self> {
        if temperature <= 0.0 || a <= 0.0 {
            return Err(CasimirError::InvalidInput(
                "temperature and separation must be positive".into(),
            ));
        }
        let n_max = (10.0 * thermal_length(temperature) / a).ceil() as usize;
        Ok(MatsubaraGrid {
            temperature,
            n_max: n_max.max(1),
        })
    }

    pub fn with_n_max(temperature: f64, n_max: usize) -> Result<Self> {
        if temperature <= 0.0 || n_max == 0 {
            return Err(CasimirError::InvalidInput(
                "need positive temperature and at least one mode".into(),
            ));
        }
        Ok(MatsubaraGrid { temperature, n_max })
    }

    pub fn xi(&self, n: usize) -> f64 {
        xi_matsubara(self.temperature, n)
    }
}

/// Fresnel reflection coefficients (TE, TM) at imaginary frequency xi for
/// transverse wavenumber kperp, both in SI units.
pub fn fresnel(eps: f64, xi: f64, kperp: f64) -> (f64, f64) {
    let q = (xi * xi / (C * C) + kperp * kperp).sqrt();
    let qp = (eps * xi * xi / (C * C) + kperp * kperp).sqrt();
    ((q - qp) / (q + qp), (eps * q - qp) / (eps * q + qp))
}

fn mode_checks(a: f64, temperature: f64, n: usize) -> Result<()> {
    if a <= 0.0 || temperature <= 0.0 {
        return Err(CasimirError::InvalidInput(
            "separation and temperature must be positive".into(),
        ));
    }
    if n == 0 {
        return Err(CasimirError::InvalidInput(
            "n = 0 has its own closed forms; mode integrals need n >= 1".into(),
        ));
    }
    Ok(())
}

/// Free energy per unit area of Matsubara mode n >= 1 (J/m^2, negative).
pub fn pp_free_energy_mode(
    material: &MaterialModel,
    a: f64,
    temperature: f64,
    n: usize,
) -> Result<f64> {
    mode_checks(a, temperature, n)?;
    let xi = xi_matsubara(temperature, n);
    let eps = material.eps(xi);
    let u0 = 2.0 * a * xi / C;
    let f = |u: f64| {
        let q = u / (2.0 * a);
        let kperp = (q * q - (xi / C).powi(2)).max(0.0).sqrt();
        let (rte, rtm) = fresnel(eps, xi, kperp);
        let ex = (-u).exp();
        u * ((-rte * rte * ex).ln_1p() + (-rtm * rtm * ex).ln_1p())
    };
    let val = integrate_tail(f, u0, 4.0, 48, 1e-13, 400);
    Ok(K_B * temperature / (8.0 * std::f64::consts::PI * a * a) * val)
}

/// Pressure magnitude of Matsubara mode n >= 1 (Pa, positive).
pub fn pp_pressure_mode(
    material: &MaterialModel,
    a: f64,
    temperature: f64,
    n: usize,
) -> Result<f64> {
    mode_checks(a, temperature, n)?;
    let xi = xi_matsubara(temperature, n);
    let eps = material.eps(xi);
    let u0 = 2.0 * a * xi / C;
    let f = |u: f64| {
        let q = u / (2.0 * a);
        let kperp = (q * q - (xi / C).powi(2)).max(0.0).sqrt();
        let (rte, rtm) = fresnel(eps, xi, kperp);
        let ex = (-u).exp();
        let mut s = 0.0;
        for r2 in [rte * rte, rtm * rtm] {
            let x = r2 * ex;
            s += x / (1.0 - x);
        }
        u * u * s
    };
    let val = integrate_tail(f, u0, 4.0, 48, 1e-13, 400);
    Ok(K_B * temperature / (8.0 * std::f64::consts::PI * a.powi(3)) * val)
}

/// n = 0 free energy per unit area for finite DC conductivity (TM only):
/// -kT zeta(3) / (16 pi a^2).
pub fn pp_zero_mode_drude_energy(a: f64, temperature: f64) -> f64 {
    -K_B * temperature * ZETA3 / (16.0 * std::f64::consts::PI * a * a)
}

/// n = 0 pressure magnitude for finite DC conductivity:
/// kT zeta(3) / (8 pi a^3).
pub fn pp_zero_mode_drude_pressure(a: f64, temperature: f64) -> f64 {
    K_B * temperature * ZETA3 / (8.0 * std::f64::consts::PI * a.powi(3))
}

/// n = 0 free energy per unit area for the plasma model (J/m^2, negative).
/// The TM channel reflects perfectly; TE keeps r = (k - sqrt(k^2 + wp^2/c^2))
/// / (k + sqrt(...)). wp in rad/s.
pub fn pp_zero_mode_plasma_energy(a: f64, temperature: f64, wp: f64) -> f64 {
    let kp2 = (wp / C).powi(2);
    let f = |k: f64| {
        let kp = (k * k + kp2).sqrt();
        let rte = (k - kp) / (k + kp);
        let ex = (-2.0 * k * a).exp();
        k * ((-rte * rte * ex).ln_1p() + (-ex).ln_1p())
    };
    let val = integrate_tail(f, 0.0, 1.0 / a, 64, 1e-13, 400);
    0.25 * K_B * temperature / std::f64::consts::PI * val
}

/// n = 0 pressure magnitude for the plasma model (Pa). wp in rad/s.
pub fn pp_zero_mode_plasma_pressure(a: f64, temperature: f64, wp: f64) -> f64 {
    let kp2 = (wp / C).powi(2);
    let f = |k: f64| {
        let kp = (k * k + kp2).sqrt();
        let rte = (k - kp) / (k + kp);
        let ex = (-2.0 * k * a).exp();
        let xte = rte * rte * ex;
        k * k * (xte / (1.0 - xte) + ex / (1.0 - ex))
    };
    let val = integrate_tail(f, 0.0, 1.0 / a, 64, 1e-13, 400);
    0.5 * K_B * temperature / std::f64::consts::PI * val
}

fn zero_mode_energy(material: &MaterialModel, a: f64, temperature: f64) -> f64 {
    match material.zero_mode() {
        ZeroModeKind::Drude => pp_zero_mode_drude_energy(a, temperature),
        ZeroModeKind::Plasma { wp } => pp_zero_mode_plasma_energy(a, temperature, wp),
    }
}

fn zero_mode_pressure(material: &MaterialModel, a: f64, temperature: f64) -> f64 {
    match material.zero_mode() {
        ZeroModeKind::Drude => pp_zero_mode_drude_pressure(a, temperature),
        ZeroModeKind::Plasma { wp } => pp_zero_mode_plasma_pressure(a, temperature, wp),
    }
}

/// Total free energy per unit area over the grid, zero mode included
/// (J/m^2, negative).
pub fn pp_free_energy_total(
    material: &MaterialModel,
    a: f64,
    grid: &MatsubaraGrid,
) -> Result<f64> {
    let t = grid.temperature;
    let mut total = zero_mode_energy(material, a, t);
    for n in 1..=grid.n_max {
        total += pp_free_energy_mode(material, a, t, n)?;
    }
    Ok(total)
}

/// Total pressure magnitude over the grid, zero mode included (Pa, positive).
pub fn pp_pressure_total(material: &MaterialModel, a: f64, grid: &MatsubaraGrid) -> Result<f64> {
    let t = grid.temperature;
    let mut total = zero_mode_pressure(material, a, t);
    for n in 1..=grid.n_max {
        total += pp_pressure_mode(material, a, t, n)?;
    }
    Ok(total)
}

/// Like [`pp_free_energy_total`] but for the n >= 1 modes only.
pub fn pp_free_energy_npos(
    material: &MaterialModel,
    a: f64,
    grid: &MatsubaraGrid,
) -> Result<f64> {
    let mut total = 0.0;
    for n in 1..=grid.n_max {
        total += pp_free_energy_mode(material, a, grid.temperature, n)?;
    }
    Ok(total)
}

/// Like [`pp_pressure_total`] but for the n >= 1 modes only.
pub fn pp_pressure_npos(material: &MaterialModel, a: f64, grid: &MatsubaraGrid) -> Result<f64> {
    let mut total = 0.0;
    for n in 1..=grid.n_max {
        total += pp_pressure_mode(material, a, grid.temperature, n)?;
    }
    Ok(total)
}

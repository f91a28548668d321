//! Proximity-force treatment of the sphere-plate geometry and the
//! curvature-corrected semi-analytic combination.
//!
//! The proximity force approximation maps the sphere onto flat patches:
//!
//!   F_pfa(a)  = 2 pi R F_pp(a)          (force; F_pp = plate free energy/area)
//!   F'_pfa(a) = 2 pi R P_pp(a)          (gradient; P_pp = plate pressure)
//!
//! Curvature corrections beyond this enter the n >= 1 part as a factor
//! (1 - theta a/R) for the force and (1 - theta_tilde a/R) for the
//! gradient, with tabulated, temperature- and material-specific
//! coefficients. The n = 0 term needs no correction factor because its
//! exact closed form is available and cheap.

use crate::classical;
use crate::constants::{C, HBAR};
use crate::error::{CasimirError, Result};
use crate::interp::Pchip;
use crate::lifshitz::{self, MatsubaraGrid};
use crate::material::MaterialModel;
use crate::quadrature::gauss_legendre_on;
use std::path::Path;

/// Tabulated curvature-correction coefficients theta(a), theta_tilde(a),
/// interpolated with a monotone cubic. Queries outside the tabulated
/// separation range are refused rather than extrapolated.
#[derive(Debug, Clone)]
pub struct ThetaTable {
    a_um: Vec<f64>,
    theta: Vec<f64>,
    theta_tilde: Vec<f64>,
    interp_theta: Pchip,
    interp_tilde: Pchip,
    /// material and temperature the coefficients were computed for, from
    /// the data file's first comment line
    pub provenance: String,
}

impl ThetaTable {
    pub fn from_rows(a_um: Vec<f64>, theta: Vec<f64>, theta_tilde: Vec<f64>) -> Result<Self> {
        if a_um.len() != theta.len() || a_um.len() != theta_tilde.len() {
            return Err(CasimirError::InvalidInput(
                "theta table columns differ in length".into(),
            ));
        }
        if theta
            .iter()
            .chain(&theta_tilde)
            .any(|&v| !(v > 0.0 && v < 1.0))
        {
            return Err(CasimirError::InvalidInput(
                "theta coefficients must lie strictly between 0 and 1".into(),
            ));
        }
        let interp_theta = Pchip::new(a_um.clone(), theta.clone())?;
        let interp_tilde = Pchip::new(a_um.clone(), theta_tilde.clone())?;
        Ok(ThetaTable {
            a_um,
            theta,
            theta_tilde,
            interp_theta,
            interp_tilde,
            provenance: "in-memory table".into(),
        })
    }

    /// The coefficients shipped with the crate: gold at 300 K, separations
    /// 0.10 um to 2.0 um.
    pub fn builtin() -> Self {
        static TEXT: &str = include_str!("../data/theta_au_300K.txt");
        Self::parse(TEXT, "builtin theta table").expect("builtin table parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut a = Vec::new();
        let mut th = Vec::new();
        let mut tt = Vec::new();
        let mut provenance = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                if let Some(c) = line.strip_prefix('#') {
                    if provenance.is_empty() && !c.trim().is_empty() {
                        provenance = c.trim().to_string();
                    }
                }
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(CasimirError::DataError {
                    path: origin.to_string(),
                    message: format!("line {}: expected 3 columns", idx + 1),
                });
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse().map_err(|e| CasimirError::DataError {
                    path: origin.to_string(),
                    message: format!("line {}: {e}", idx + 1),
                })
            };
            a.push(parse(fields[0])?);
            th.push(parse(fields[1])?);
            tt.push(parse(fields[2])?);
        }
        let mut table = Self::from_rows(a, th, tt)?;
        table.provenance = if provenance.is_empty() {
            origin.to_string()
        } else {
            provenance
        };
        Ok(table)
    }

    /// (theta, theta_tilde) at separation `a` in meters.
    pub fn theta_coeffs(&self, a: f64) -> Result<(f64, f64)> {
        self.theta_coeffs_um(a * 1e6)
    }

    /// [`theta_coeffs`] taking micrometers directly. Queries landing on a
    /// table abscissa return the tabulated pair without interpolation
    /// noise, which the meter interface cannot promise (the unit
    /// conversion itself rounds).
    pub fn theta_coeffs_um(&self, a_um: f64) -> Result<(f64, f64)> {
        let (lo, hi) = self.interp_theta.x_range();
        // tolerate representation noise right at the table edges
        let slack = 1e-9 * (hi - lo);
        if a_um < lo - slack || a_um > hi + slack {
            return Err(CasimirError::RangeError {
                what: "separation (um)",
                value: a_um,
                lo,
                hi,
            });
        }
        let q = a_um.clamp(lo, hi);
        Ok((self.interp_theta.eval(q), self.interp_tilde.eval(q)))
    }

    pub fn abscissae_um(&self) -> &[f64] {
        &self.a_um
    }

    pub fn theta_values(&self) -> &[f64] {
        &self.theta
    }

    pub fn theta_tilde_values(&self) -> &[f64] {
        &self.theta_tilde
    }
}

/// PFA force from the n >= 1 modes only (N, negative).
pub fn force_pfa_npos(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
) -> Result<f64> {
    check_rg(radius)?;
    Ok(2.0 * std::f64::consts::PI * radius * lifshitz::pp_free_energy_npos(material, a, grid)?)
}

/// PFA force gradient from the n >= 1 modes only (N/m, positive).
pub fn gradient_pfa_npos(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
) -> Result<f64> {
    check_rg(radius)?;
    Ok(2.0 * std::f64::consts::PI * radius * lifshitz::pp_pressure_npos(material, a, grid)?)
}

/// Full PFA force, zero mode included (N, negative).
pub fn force_pfa_total(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
) -> Result<f64> {
    check_rg(radius)?;
    Ok(2.0 * std::f64::consts::PI * radius * lifshitz::pp_free_energy_total(material, a, grid)?)
}

/// Full PFA force gradient, zero mode included (N/m, positive).
pub fn gradient_pfa_total(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
) -> Result<f64> {
    check_rg(radius)?;
    Ok(2.0 * std::f64::consts::PI * radius * lifshitz::pp_pressure_total(material, a, grid)?)
}

/// Independent route to [`force_pfa_npos`]: integrate the plate pressure
/// over separations, F = -2 pi R int_a^inf P_pp(a') da'. Much slower;
/// exists so the two derivations can be checked against each other.
pub fn force_pfa_npos_from_pressure(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
) -> Result<f64> {
    check_rg(radius)?;
    // substitute a' = a e^s; the integrand decays at least like e^{-2s}
    let mut total = 0.0;
    for panel in [(0.0, 1.0), (1.0, 2.5), (2.5, 5.0), (5.0, 9.0), (9.0, 14.0)] {
        let (s, w) = gauss_legendre_on(20, panel.0, panel.1);
        for (&si, &wi) in s.iter().zip(&w) {
            let ap = a * si.exp();
            total += wi * lifshitz::pp_pressure_npos(material, ap, grid)? * ap;
        }
    }
    Ok(-2.0 * std::f64::consts::PI * radius * total)
}

/// Semi-analytic sphere-plate force (N, negative): exact classical term
/// plus curvature-corrected PFA for the propagating modes.
pub fn force_approx(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
    table: &ThetaTable,
) -> Result<f64> {
    let (theta, _) = table.theta_coeffs(a)?;
    let n0 = classical::force_n0(radius, a, grid.temperature)?;
    let npos = force_pfa_npos(material, radius, a, grid)?;
    Ok(n0 + npos * (1.0 - theta * a / radius))
}

/// Semi-analytic sphere-plate force gradient (N/m, positive).
pub fn gradient_approx(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
    table: &ThetaTable,
) -> Result<f64> {
    let (_, theta_tilde) = table.theta_coeffs(a)?;
    let n0 = classical::gradient_n0(radius, a, grid.temperature)?;
    let npos = gradient_pfa_npos(material, radius, a, grid)?;
    Ok(n0 + npos * (1.0 - theta_tilde * a / radius))
}

/// Ideal-mirror zero-temperature PFA force, -pi^3 hbar c R / (360 a^3).
/// The standard sanity scale for everything else.
pub fn ideal_pfa_force(radius: f64, a: f64) -> f64 {
    -std::f64::consts::PI.powi(3) * HBAR * C * radius / (360.0 * a.powi(3))
}

fn check_rg(radius: f64) -> Result<()> {
    if !(radius > 0.0) {
        return Err(CasimirError::InvalidInput("radius must be positive".into()));
    }
    Ok(())
}

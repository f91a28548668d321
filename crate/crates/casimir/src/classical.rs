//! The exact classical (n = 0) term for a metallic sphere and plate.
//!
//! For finite DC conductivity only the TM channel survives the static
//! limit, and the mode sum collapses to a closed form in bispherical
//! coordinates. With x = a/R and
//!
//!   Z = 1 / (1 + x + sqrt(x (2 + x))),
//!
//! the free energy is
//!
//!   F_0 = (kT/2) [ sum_{l>=1} (2l+1) ln(1 - Z^{2l+1})
//!                  + ln(1 - (1 - Z^2) sum_{l>=1} (Z^{2l+1} - Z^{4l+1})/(1 - Z^{2l+1}) ) ].
//!
//! Force and gradient come from differentiating the series through Z(a),
//! which this module does analytically; no finite differences anywhere.

use crate::constants::K_B;
use crate::error::{CasimirError, Result};

/// Sphere-plate configuration. `separation` is the closest surface-surface
/// gap a, not the center height.
#[derive(Debug, Clone, Copy)]
pub struct Geometry {
    pub radius: f64,
    pub separation: f64,
}

impl Geometry {
    pub fn new(radius: f64, separation: f64) -> Result<Self> {
        if !(radius > 0.0) || !(separation > 0.0) {
            return Err(CasimirError::InvalidInput(
                "radius and separation must be positive".into(),
            ));
        }
        Ok(Geometry { radius, separation })
    }

    /// Aspect ratio x = a/R.
    pub fn aspect(&self) -> f64 {
        self.separation / self.radius
    }

    pub fn z_parameter(&self) -> f64 {
        z_parameter(self.aspect())
    }
}

/// Z(x) = 1/(1 + x + sqrt(x(2+x))), the bispherical expansion parameter.
/// Z -> 1 as the bodies touch, Z -> 0 at large separation.
pub fn z_parameter(x: f64) -> f64 {
    1.0 / (1.0 + x + (x * (2.0 + x)).sqrt())
}

const Z_GUARD: f64 = 1.0 - 1e-8;

fn check_geometry(radius: f64, a: f64, temperature: f64) -> Result<f64> {
    if !(radius > 0.0) || !(a > 0.0) || !(temperature > 0.0) {
        return Err(CasimirError::InvalidInput(
            "radius, separation and temperature must be positive".into(),
        ));
    }
    let z = z_parameter(a / radius);
    if z >= Z_GUARD {
        return Err(CasimirError::InvalidInput(format!(
            "separation too small: Z = {z} is beyond the {Z_GUARD} guard"
        )));
    }
    Ok(z)
}

fn series_cap(z: f64, tol: f64) -> usize {
    // terms decay like Z^{2l}, so l ~ ln(1/tol)/(2 ln(1/Z)) suffices;
    // 3 ln(1/tol)/(1-Z) is a generous envelope of that for all Z < 1
    ((3.0 * (1.0 / tol).ln() / (1.0 - z)).ceil() as usize).max(16)
}

/// Classical free energy with the default truncation tolerance of 1e-12.
pub fn free_energy_n0(radius: f64, a: f64, temperature: f64) -> Result<f64> {
    free_energy_n0_detailed(radius, a, temperature, 1e-12).map(|(f, _)| f)
}

/// Classical free energy plus the number of series terms it took.
pub fn free_energy_n0_detailed(
    radius: f64,
    a: f64,
    temperature: f64,
    tol: f64,
) -> Result<(f64, usize)> {
    let z = check_geometry(radius, a, temperature)?;
    let cap = series_cap(z, tol);
    let mut sum_a = 0.0;
    let mut sum_g = 0.0;
    let mut terms = 0;
    let mut converged = false;
    for l in 1..=cap {
        let zp = z.powi(2 * l as i32 + 1);
        let ta = (2.0 * l as f64 + 1.0) * (-zp).ln_1p();
        let tg = zp * (1.0 - z.powi(2 * l as i32)) / (1.0 - zp);
        sum_a += ta;
        sum_g += tg;
        terms = l;
        if l > 1 && ta.abs() < tol * sum_a.abs() && tg < tol * sum_g.max(1e-300) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(CasimirError::NumericalError(format!(
            "classical series failed to converge within {cap} terms (Z = {z})"
        )));
    }
    let val = 0.5 * K_B * temperature * (sum_a + (-(1.0 - z * z) * sum_g).ln_1p());
    Ok((val, terms))
}

struct N0Derivs {
    d1: f64,
    d2: f64,
}

/// dF/dZ and d2F/dZ2 of the dimensionless series (without kT/2).
fn n0_z_derivatives(z: f64, tol: f64) -> Result<N0Derivs> {
    let cap = series_cap(z, tol);
    let mut a1 = 0.0;
    let mut a2 = 0.0;
    let (mut g, mut g1, mut g2) = (0.0, 0.0, 0.0);
    for l in 1..=cap {
        let p = 2 * l as i32 + 1;
        let pf = p as f64;
        let q = 4 * l as i32 + 1;
        let qf = q as f64;
        let zp = z.powi(p);
        let zq = z.powi(q);
        let om = 1.0 - zp;
        // A = sum (2l+1) ln(1 - Z^p)
        let ta1 = -pf * pf * zp / z / om;
        let ta2 = -pf * pf * ((pf - 1.0) * zp / (z * z) * om + pf * zp * zp / (z * z))
            / (om * om);
        // g_l = (Z^p - Z^q)/(1 - Z^p), differentiated by quotient rule
        let num = zp - zq;
        let dnum = pf * zp / z - qf * zq / z;
        let d2num = pf * (pf - 1.0) * zp / (z * z) - qf * (qf - 1.0) * zq / (z * z);
        let dom = -pf * zp / z;
        let d2om = -pf * (pf - 1.0) * zp / (z * z);
        let tg = num / om;
        let tg1 = (dnum * om - num * dom) / (om * om);
        let tg2 = (d2num * om * om - 2.0 * dnum * dom * om - num * d2om * om
            + 2.0 * num * dom * dom)
            / (om * om * om);
        a1 += ta1;
        a2 += ta2;
        g += tg;
        g1 += tg1;
        g2 += tg2;
        if ta1.abs() < tol * a1.abs() && tg < tol * g.max(1e-300) {
            break;
        }
    }
    let h = 1.0 - (1.0 - z * z) * g;
    let dh = 2.0 * z * g - (1.0 - z * z) * g1;
    let d2h = 2.0 * g + 4.0 * z * g1 - (1.0 - z * z) * g2;
    Ok(N0Derivs {
        d1: a1 + dh / h,
        d2: a2 + (d2h * h - dh * dh) / (h * h),
    })
}

/// Classical contribution to the force F = -dF_0/da (N, negative:
/// attraction).
pub fn force_n0(radius: f64, a: f64, temperature: f64) -> Result<f64> {
    let (dz, _, d) = n0_chain(radius, a, temperature)?;
    Ok(-0.5 * K_B * temperature * d.d1 * dz)
}

/// Classical contribution to the force gradient F' = dF/da = -d2F_0/da^2
/// (N/m, positive for attraction steepening at contact).
pub fn gradient_n0(radius: f64, a: f64, temperature: f64) -> Result<f64> {
    let (dz, d2z, d) = n0_chain(radius, a, temperature)?;
    Ok(-0.5 * K_B * temperature * (d.d2 * dz * dz + d.d1 * d2z))
}

/// Chain-rule factors dZ/da, d2Z/da2 and the Z-derivatives of the series.
fn n0_chain(radius: f64, a: f64, temperature: f64) -> Result<(f64, f64, N0Derivs)> {
    let z = check_geometry(radius, a, temperature)?;
    let x = a / radius;
    let s = (x * (2.0 + x)).sqrt();
    let w = 1.0 + (1.0 + x) / s;
    let dz = -(z * z / radius) * w;
    let d2z = (2.0 * z.powi(3) * w * w + z * z / s.powi(3)) / (radius * radius);
    let d = n0_z_derivatives(z, 1e-14)?;
    Ok((dz, d2z, d))
}

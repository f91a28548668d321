//! Multipole scattering route to the sphere-plate interaction.
//!
//! The free energy of the n >= 1 Matsubara modes is
//!
//!   F = kT sum_{n>=1} sum_m w_m ln det(1 - B^{(n,m)}),   w_0 = 1, w_m = 2,
//!
//! where B is one round trip of a fluctuation between sphere and plate:
//! scatter off the sphere (Mie coefficients), propagate to the plate,
//! reflect (Fresnel), and return. Azimuthal symmetry makes the trip block
//! diagonal in m.
//!
//! The block here is not the textbook non-symmetric operator but a
//! similarity transform of it with the same determinant: phase factors are
//! removed exactly and a square root of each Mie modulus is split between
//! row and column. That balancing matters numerically: the bare kernel
//! entries diverge as the frequency goes to zero while the balanced ones
//! stay of order (R/2L)^(l+1/2). Entries are assembled in log space and
//! exponentiated, so orders of several hundred are routine.
//!
//! Propagation enters through integrals over the angular parameter
//! t = kappa_z/K of e^{-2KLt} against products of normalized angular
//! functions, evaluated on a fixed composite Gauss-Legendre grid in
//! u = 2KL(t-1); L = R + a is the center-plate distance. The block is a
//! Gram-type sum of outer products of node matrices, which keeps every
//! intermediate representable and makes it manifestly symmetric.

use crate::classical;
use crate::constants::C;
use crate::error::{CasimirError, Result};
use crate::lifshitz::{thermal_length, xi_matsubara};
use crate::material::MaterialModel;
use crate::quadrature::u_rule;
use crate::special::{ln_double_factorial_odd, ln_factorials, AngularLn, BesselLn};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

const LN_HALF_PI: f64 = 0.451582705289455; // ln(pi/2)

/// Multipole and frequency cutoffs for the scattering sums.
#[derive(Debug, Clone, Copy)]
pub struct MultipoleTruncation {
    pub l_max: usize,
    pub m_max: usize,
    pub n_max: usize,
    pub nodes_per_panel: usize,
    /// Permit l_max below the convergence floor. Exists for convergence
    /// scans and truncation studies; leave off for production numbers.
    pub allow_below_floor: bool,
}

impl MultipoleTruncation {
    /// Cutoffs adequate for ~1e-6 relative convergence of the energy:
    /// l_max ~ 6 R/a, m_max ~ 6 sqrt(R/a), n_max ~ 10 lambda_T/a.
    pub fn default_for(radius: f64, a: f64, temperature: f64) -> Result<Self> {
        if !(radius > 0.0) || !(a > 0.0) || !(temperature > 0.0) {
            return Err(CasimirError::InvalidInput(
                "radius, separation and temperature must be positive".into(),
            ));
        }
        let l_max = Self::l_floor(radius, a);
        let m_max = ((6.0 * (radius / a).sqrt()).ceil() as usize).min(l_max);
        let n_max = ((10.0 * thermal_length(temperature) / a).ceil() as usize).max(1);
        Ok(MultipoleTruncation {
            l_max,
            m_max,
            n_max,
            nodes_per_panel: 32,
            allow_below_floor: false,
        })
    }

    /// Smallest l_max this module will accept without the explicit
    /// override: max(5, ceil(6 R/a)).
    pub fn l_floor(radius: f64, a: f64) -> usize {
        ((6.0 * radius / a).ceil() as usize).max(5)
    }

    fn validate(&self, radius: f64, a: f64) -> Result<()> {
        if self.l_max == 0 || self.n_max == 0 || self.nodes_per_panel == 0 {
            return Err(CasimirError::InvalidInput(
                "truncation orders must be positive".into(),
            ));
        }
        let floor = Self::l_floor(radius, a);
        if self.l_max < floor && !self.allow_below_floor {
            return Err(CasimirError::InvalidInput(format!(
                "l_max = {} is below the convergence floor {} for R/a = {:.3}; \
                 set allow_below_floor to probe anyway",
                self.l_max,
                floor,
                radius / a
            )));
        }
        Ok(())
    }
}

/// Logarithms of the Mie coefficient moduli at one imaginary frequency,
/// index l-1 for l = 1..=l_max. `ln_n` is the electric (TM) family, which
/// is positive for a metal sphere; `ln_m` the magnetic (TE) family,
/// negative. The signs themselves are fixed and live in the block assembly.
pub struct MieLn {
    pub ln_n: Vec<f64>,
    pub ln_m: Vec<f64>,
}

/// Mie coefficients of a sphere with the given response at imaginary
/// frequency xi (rad/s). Computed from ratio recurrences, so large orders
/// and extreme size parameters are safe.
pub fn mie_coefficients(
    material: &MaterialModel,
    xi: f64,
    radius: f64,
    l_max: usize,
) -> Result<MieLn> {
    mie_coefficients_eps(material.eps(xi), xi, radius, l_max)
}

/// [`mie_coefficients`] with the permittivity supplied directly.
/// eps = 1 is a legitimate degenerate case: no scatterer, all
/// coefficients zero.
pub fn mie_coefficients_eps(eps: f64, xi: f64, radius: f64, l_max: usize) -> Result<MieLn> {
    if !(xi > 0.0) || !(radius > 0.0) {
        return Err(CasimirError::InvalidInput(
            "frequency and radius must be positive".into(),
        ));
    }
    if !(eps >= 1.0) {
        return Err(CasimirError::NumericalError(format!(
            "got eps(i xi) = {eps} < 1 at xi = {xi:.3e}"
        )));
    }
    if eps == 1.0 {
        return Ok(MieLn {
            ln_n: vec![f64::NEG_INFINITY; l_max],
            ln_m: vec![f64::NEG_INFINITY; l_max],
        });
    }
    let x = xi * radius / C;
    let u = eps.sqrt() * x;
    let bx = BesselLn::new(l_max, x);
    let bu = BesselLn::new(l_max, u);
    let mut ln_n = Vec::with_capacity(l_max);
    let mut ln_m = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let ln_ik = bx.ln_i[l] - bx.ln_k[l];
        let du = bu.di[l];
        let dx = bx.di[l];
        let ex = bx.dk[l];
        let rn = (du - eps * dx) / (eps * ex - du);
        let rm = (du - dx) / (ex - du);
        debug_assert!(rn > 0.0 && rm < 0.0, "Mie sign pattern violated");
        ln_n.push(ln_ik + rn.abs().ln());
        ln_m.push(ln_ik + rm.abs().ln());
    }
    Ok(MieLn { ln_n, ln_m })
}

/// Mie coefficients of a perfectly conducting sphere.
pub fn mie_coefficients_pc(xi: f64, radius: f64, l_max: usize) -> MieLn {
    let x = xi * radius / C;
    let b = BesselLn::new(l_max, x);
    let mut ln_n = Vec::with_capacity(l_max);
    let mut ln_m = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let ln_ik = b.ln_i[l] - b.ln_k[l];
        ln_n.push(ln_ik + b.di[l].ln() - (-b.dk[l]).ln());
        ln_m.push(ln_ik);
    }
    MieLn { ln_n, ln_m }
}

/// Static limit for a metal: the electric family survives as
/// m_l = (2/pi) (l+1)/l x^{2l+1} / ((2l+1)!!(2l-1)!!), the magnetic one
/// vanishes. `ln_x` is ln(KR) for imaginary wavenumber K.
pub fn mie_static_metal(ln_x: f64, l_max: usize) -> MieLn {
    let mut ln_n = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let lf = l as f64;
        ln_n.push(
            (2.0 / std::f64::consts::PI).ln() + ((lf + 1.0) / lf).ln()
                + (2.0 * lf + 1.0) * ln_x
                - ln_double_factorial_odd(2 * l as i64 + 1)
                - ln_double_factorial_odd(2 * l as i64 - 1),
        );
    }
    MieLn {
        ln_n,
        ln_m: vec![f64::NEG_INFINITY; l_max],
    }
}

enum PlateResponse {
    /// eps(i xi) of the half-space
    Dielectric(f64),
    Perfect,
    /// metal static limit: TM reflects perfectly, TE not at all
    StaticMetal,
}

impl PlateResponse {
    /// (ln rho_TE, ln rho_TM) at angular parameter t.
    fn ln_rho(&self, t: f64) -> (f64, f64) {
        match *self {
            PlateResponse::Dielectric(eps) => {
                let s = (eps - 1.0 + t * t).sqrt();
                // r_TE = (t-s)/(t+s), r_TM = (eps t - s)/(eps t + s),
                // with the differences expanded to dodge cancellation
                let ln_te = (eps - 1.0).ln() - 2.0 * (s + t).ln();
                let ln_tm = (eps - 1.0).ln() + (t * t * (eps + 1.0) - 1.0).ln()
                    - (eps * t + s).ln()
                    - (eps * t + s).ln();
                (ln_te, ln_tm)
            }
            PlateResponse::Perfect => (0.0, 0.0),
            PlateResponse::StaticMetal => (f64::NEG_INFINITY, 0.0),
        }
    }
}

/// One round trip between sphere and plate in log-balanced form.
/// `y = 2 K L` with K the imaginary wavenumber and L = R + a.
fn assemble_block(
    mie: &MieLn,
    m: usize,
    l_max: usize,
    y: f64,
    plate: &PlateResponse,
    nodes_per_panel: usize,
) -> DMatrix<f64> {
    let l_min = m.max(1);
    if l_max < l_min {
        return DMatrix::zeros(0, 0);
    }
    let nl = l_max - l_min + 1;
    let (u, w) = u_rule(nodes_per_panel);
    let nt = u.len();
    let ln_y = y.ln();
    let t: Vec<f64> = u.iter().map(|&ui| 1.0 + ui / y).collect();
    let lam: Vec<f64> = u
        .iter()
        .zip(&w)
        .map(|(&ui, &wi)| wi.ln() - ui - y - ln_y)
        .collect();
    let mut ln_te = vec![0.0; nt];
    let mut ln_tm = vec![0.0; nt];
    for (i, &ti) in t.iter().enumerate() {
        let (te, tm) = plate.ln_rho(ti);
        ln_te[i] = te;
        ln_tm[i] = tm;
    }

    let ang = AngularLn::new(m, l_max, &t);
    let lnfact = ln_factorials(l_max + m + 1);
    // ln Lambda_lm of the normalized angular functions, plus the row's
    // half share of (pi/2) |mie|
    let row_n: Vec<f64> = (l_min..=l_max)
        .map(|l| {
            let lf = l as f64;
            let ln_lam = 0.5
                * ((2.0 * lf + 1.0).ln() + lnfact[l - m] - lnfact[l + m]
                    - (lf * (lf + 1.0)).ln());
            ln_lam + 0.5 * (LN_HALF_PI + mie.ln_n[l - 1])
        })
        .collect();
    let row_m: Vec<f64> = (l_min..=l_max)
        .map(|l| {
            let lf = l as f64;
            let ln_lam = 0.5
                * ((2.0 * lf + 1.0).ln() + lnfact[l - m] - lnfact[l + m]
                    - (lf * (lf + 1.0)).ln());
            ln_lam + 0.5 * (LN_HALF_PI + mie.ln_m[l - 1])
        })
        .collect();

    enum Gfun {
        Pi,
        Tau,
    }
    let build = |row: &[f64], which: Gfun, rho: &[f64]| -> DMatrix<f64> {
        DMatrix::from_fn(nl, nt, |r, i| {
            let g = match which {
                Gfun::Pi => ang.pi_row(l_min + r),
                Gfun::Tau => ang.tau_row(l_min + r),
            };
            (row[r] + g[i] + 0.5 * (lam[i] + rho[i])).exp()
        })
    };
    let u_ntau_tm = build(&row_n, Gfun::Tau, &ln_tm);
    let u_npi_te = build(&row_n, Gfun::Pi, &ln_te);
    let u_mtau_te = build(&row_m, Gfun::Tau, &ln_te);
    let u_mpi_tm = build(&row_m, Gfun::Pi, &ln_tm);

    let bnn = &u_npi_te * u_npi_te.transpose() + &u_ntau_tm * u_ntau_tm.transpose();
    let bmm = &u_mpi_tm * u_mpi_tm.transpose() + &u_mtau_te * u_mtau_te.transpose();
    let bnm = -(&u_ntau_tm * u_mpi_tm.transpose() + &u_npi_te * u_mtau_te.transpose());

    let mut b = DMatrix::zeros(2 * nl, 2 * nl);
    b.view_mut((0, 0), (nl, nl)).copy_from(&bnn);
    b.view_mut((0, nl), (nl, nl)).copy_from(&bnm);
    b.view_mut((nl, 0), (nl, nl)).copy_from(&bnm.transpose());
    b.view_mut((nl, nl), (nl, nl)).copy_from(&bmm);
    b
}

/// Round-trip block B^{(n,m)} for a material sphere above a plate of the
/// same material. The sign of m is immaterial and canonicalized away.
pub fn round_trip_block(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    xi: f64,
    m: i64,
    l_max: usize,
    nodes_per_panel: usize,
) -> Result<DMatrix<f64>> {
    let mie = mie_coefficients(material, xi, radius, l_max)?;
    let y = 2.0 * (xi / C) * (radius + a);
    let plate = PlateResponse::Dielectric(material.eps(xi));
    Ok(assemble_block(
        &mie,
        m.unsigned_abs() as usize,
        l_max,
        y,
        &plate,
        nodes_per_panel,
    ))
}

/// Round-trip block for perfect conductors on both sides.
pub fn round_trip_block_pc(
    radius: f64,
    a: f64,
    xi: f64,
    m: i64,
    l_max: usize,
    nodes_per_panel: usize,
) -> Result<DMatrix<f64>> {
    if !(xi > 0.0) || !(radius > 0.0) || !(a > 0.0) {
        return Err(CasimirError::InvalidInput(
            "frequency, radius and separation must be positive".into(),
        ));
    }
    let mie = mie_coefficients_pc(xi, radius, l_max);
    let y = 2.0 * (xi / C) * (radius + a);
    Ok(assemble_block(
        &mie,
        m.unsigned_abs() as usize,
        l_max,
        y,
        &PlateResponse::Perfect,
        nodes_per_panel,
    ))
}

/// Round-trip block in the metal static limit at imaginary wavenumber
/// `k = xi/c` (1/m). Used to validate the machinery against the exact
/// classical closed form, which it reproduces as k -> 0.
pub fn round_trip_block_static(
    radius: f64,
    a: f64,
    k: f64,
    m: i64,
    l_max: usize,
    nodes_per_panel: usize,
) -> Result<DMatrix<f64>> {
    if !(k > 0.0) || !(radius > 0.0) || !(a > 0.0) {
        return Err(CasimirError::InvalidInput(
            "wavenumber, radius and separation must be positive".into(),
        ));
    }
    let mie = mie_static_metal((k * radius).ln(), l_max);
    let y = 2.0 * k * (radius + a);
    Ok(assemble_block(
        &mie,
        m.unsigned_abs() as usize,
        l_max,
        y,
        &PlateResponse::StaticMetal,
        nodes_per_panel,
    ))
}

/// ln det(1 - B) through a Cholesky factorization of 1 - B, which exists
/// exactly when the round trip is a contraction. Failure means the
/// physical stability condition (spectral radius below one) was lost.
pub fn block_log_det(b: &DMatrix<f64>) -> Result<f64> {
    let n = b.nrows();
    if n == 0 {
        return Ok(0.0);
    }
    let mut a = DMatrix::identity(n, n);
    a -= b;
    let chol = a.cholesky().ok_or_else(|| {
        CasimirError::NumericalError(
            "1 - B is not positive definite; round trip is not a contraction".into(),
        )
    })?;
    let l = chol.l();
    Ok(2.0 * (0..n).map(|i| l[(i, i)].ln()).sum::<f64>())
}

/// Largest eigenvalue magnitude of a (symmetric) round-trip block.
pub fn spectral_radius(b: &DMatrix<f64>) -> f64 {
    b.clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()))
}

fn common_checks(radius: f64, a: f64, temperature: f64) -> Result<()> {
    if !(radius > 0.0) || !(a > 0.0) || !(temperature > 0.0) {
        return Err(CasimirError::InvalidInput(
            "radius, separation and temperature must be positive".into(),
        ));
    }
    Ok(())
}

/// Free energy of the n >= 1 Matsubara modes from the multipole sums (J,
/// negative). Blocks are evaluated in parallel; the reduction order is
/// fixed, so results are reproducible bit for bit.
pub fn free_energy_npos_scattering(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    temperature: f64,
    trunc: &MultipoleTruncation,
) -> Result<f64> {
    common_checks(radius, a, temperature)?;
    trunc.validate(radius, a)?;
    if radius / a > 20.0 {
        log::warn!(
            "R/a = {:.1}: multipole sums this deep in the proximity regime \
             converge slowly; results may carry truncation bias",
            radius / a
        );
    }
    let m_eff = trunc.m_max.min(trunc.l_max);
    let mut jobs = Vec::with_capacity(trunc.n_max * (m_eff + 1));
    for n in 1..=trunc.n_max {
        for m in 0..=m_eff {
            jobs.push((n, m));
        }
    }
    let terms: Result<Vec<f64>> = jobs
        .par_iter()
        .map(|&(n, m)| {
            let xi = xi_matsubara(temperature, n);
            let block = round_trip_block(
                material,
                radius,
                a,
                xi,
                m as i64,
                trunc.l_max,
                trunc.nodes_per_panel,
            )?;
            let weight = if m == 0 { 1.0 } else { 2.0 };
            Ok(weight * block_log_det(&block)?)
        })
        .collect();
    let sum: f64 = terms?.iter().sum();
    Ok(crate::constants::K_B * temperature * sum)
}

/// First derivative of f at a by central differences with one Richardson
/// level: (4 D(h/2) - D(h)) / 3, D(h) = (f(a+h) - f(a-h)) / 2h.
pub fn fd_first_derivative<F>(f: F, a: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let d_h = (f(a + h)? - f(a - h)?) / (2.0 * h);
    let d_h2 = (f(a + 0.5 * h)? - f(a - 0.5 * h)?) / h;
    Ok((4.0 * d_h2 - d_h) / 3.0)
}

/// Second derivative by Richardson-extrapolated second differences.
pub fn fd_second_derivative<F>(f: F, a: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let f0 = f(a)?;
    let s_h = (f(a + h)? - 2.0 * f0 + f(a - h)?) / (h * h);
    let s_h2 = (f(a + 0.5 * h)? - 2.0 * f0 + f(a - 0.5 * h)?) / (0.25 * h * h);
    Ok((4.0 * s_h2 - s_h) / 3.0)
}

/// Sphere-plate force from the scattering sums (N, negative). The exact
/// classical term is added analytically; the n >= 1 part is a two-level
/// Richardson central difference of the free energy with h = 1e-4 a.
pub fn force_scattering(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    temperature: f64,
    trunc: &MultipoleTruncation,
) -> Result<f64> {
    common_checks(radius, a, temperature)?;
    trunc.validate(radius, a)?;
    // The floor check already ran at the nominal separation; the displaced
    // evaluations must not re-trip it when 6 R/a sits on an integer.
    let inner = MultipoleTruncation {
        allow_below_floor: true,
        ..*trunc
    };
    let force_npos = -fd_first_derivative(
        |ap| free_energy_npos_scattering(material, radius, ap, temperature, &inner),
        a,
        1e-4 * a,
    )?;
    Ok(classical::force_n0(radius, a, temperature)? + force_npos)
}

/// Sphere-plate force gradient from the scattering sums (N/m, positive).
/// Second differences with h = 5e-3 a, Richardson-extrapolated once.
pub fn gradient_scattering(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    temperature: f64,
    trunc: &MultipoleTruncation,
) -> Result<f64> {
    common_checks(radius, a, temperature)?;
    trunc.validate(radius, a)?;
    let inner = MultipoleTruncation {
        allow_below_floor: true,
        ..*trunc
    };
    let grad_npos = -fd_second_derivative(
        |ap| free_energy_npos_scattering(material, radius, ap, temperature, &inner),
        a,
        5e-3 * a,
    )?;
    Ok(classical::gradient_n0(radius, a, temperature)? + grad_npos)
}

/// One row of an l_max convergence scan.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub l_max: usize,
    /// n >= 1 free energy in J (negative)
    pub free_energy: f64,
    /// |change| relative to the previous row; None on the first
    pub rel_delta: Option<f64>,
}

/// Result of stepping l_max through an ascending schedule.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub target_delta: f64,
    /// first schedule entry whose step from the previous one fell below
    /// the target
    pub converged_at: Option<usize>,
}

/// Evaluates the n >= 1 scattering free energy along an ascending l_max
/// schedule and reports successive relative changes. The other cutoffs are
/// taken from `base`; the floor check is suspended, since probing beneath
/// it is the point.
pub fn convergence_scan(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    temperature: f64,
    base: &MultipoleTruncation,
    schedule: &[usize],
    target_delta: f64,
) -> Result<ConvergenceReport> {
    if schedule.is_empty() {
        return Err(CasimirError::InvalidInput(
            "convergence schedule is empty".into(),
        ));
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CasimirError::InvalidInput(
            "convergence schedule must ascend strictly".into(),
        ));
    }
    if !(target_delta > 0.0) {
        return Err(CasimirError::InvalidInput(
            "target delta must be positive".into(),
        ));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(schedule.len());
    let mut converged_at = None;
    for &l_max in schedule {
        let trunc = MultipoleTruncation {
            l_max,
            m_max: base.m_max.min(l_max),
            allow_below_floor: true,
            ..*base
        };
        let e = free_energy_npos_scattering(material, radius, a, temperature, &trunc)?;
        let rel_delta = rows
            .last()
            .map(|prev: &ConvergenceRow| ((e - prev.free_energy) / e).abs());
        if converged_at.is_none() {
            if let Some(d) = rel_delta {
                if d < target_delta {
                    converged_at = Some(l_max);
                }
            }
        }
        rows.push(ConvergenceRow {
            l_max,
            free_energy: e,
            rel_delta,
        });
    }
    Ok(ConvergenceReport {
        rows,
        target_delta,
        converged_at,
    })
}

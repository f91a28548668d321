//! Dielectric response along the imaginary frequency axis.
//!
//! Three routes to eps(i xi): the Drude and plasma closed forms, and a
//! Kramers-Kronig dispersion integral over tabulated Im eps(omega),
//!
//!   eps(i xi) = 1 + (2/pi) int_0^inf d omega  omega Im eps(omega) / (omega^2 + xi^2).
//!
//! The tabulated route models Im eps as a power law on each (log-spaced)
//! interval and integrates with a fixed Gauss-Legendre rule per interval in
//! ln omega. Below the first table point a Drude tail is integrated in
//! closed form; above the last point Im eps is taken as zero.

use crate::constants::{ev_to_rad, rad_to_ev};
use crate::error::{CasimirError, Result};
use crate::quadrature::gauss_legendre;
use std::fs;
use std::path::Path;

/// Drude permittivity at imaginary frequency. All arguments in rad/s.
pub fn eps_drude(xi: f64, wp: f64, gamma: f64) -> f64 {
    1.0 + wp * wp / (xi * (xi + gamma))
}

/// Plasma-model permittivity at imaginary frequency. Arguments in rad/s.
pub fn eps_plasma(xi: f64, wp: f64) -> f64 {
    1.0 + wp * wp / (xi * xi)
}

/// Tabulated Im eps(omega) on an ascending frequency grid, with tail
/// prescriptions for the uncovered ends of the spectrum.
#[derive(Debug, Clone)]
pub struct OpticalDataTable {
    omega_ev: Vec<f64>,
    eps2: Vec<f64>,
    /// (wp_eV, gamma_eV) for the low-frequency Drude tail, if declared.
    drude_tail: Option<(f64, f64)>,
    pub provenance: String,
}

impl OpticalDataTable {
    pub fn from_rows(
        omega_ev: Vec<f64>,
        eps2: Vec<f64>,
        drude_tail: Option<(f64, f64)>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if omega_ev.len() != eps2.len() {
            return Err(CasimirError::InvalidInput(
                "frequency and eps2 columns differ in length".into(),
            ));
        }
        if omega_ev.len() < 2 {
            return Err(CasimirError::InvalidInput(
                "optical table needs at least 2 rows".into(),
            ));
        }
        for (i, w) in omega_ev.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(CasimirError::InvalidInput(format!(
                    "optical table row {}: frequency {} does not ascend past {}",
                    i + 2,
                    w[1],
                    w[0]
                )));
            }
        }
        if omega_ev[0] <= 0.0 {
            return Err(CasimirError::InvalidInput(
                "optical table row 1: frequency must be positive".into(),
            ));
        }
        if let Some(i) = eps2.iter().position(|&v| v < 0.0) {
            return Err(CasimirError::InvalidInput(format!(
                "optical table row {}: Im eps must be non-negative",
                i + 1
            )));
        }
        Ok(OpticalDataTable {
            omega_ev,
            eps2,
            drude_tail,
            provenance: provenance.into(),
        })
    }

    /// The gold table shipped with the crate (Im eps over 0.1 to 1e4 eV
    /// with a declared Drude tail below, see data/au_eps_imag.txt).
    pub fn builtin_gold() -> Self {
        parse_optical_data(
            include_str!("../data/au_eps_imag.txt"),
            "builtin:au_eps_imag",
        )
        .expect("shipped gold data must parse")
    }

    pub fn omega_range_ev(&self) -> (f64, f64) {
        (self.omega_ev[0], *self.omega_ev.last().unwrap())
    }

    pub fn rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.omega_ev.iter().copied().zip(self.eps2.iter().copied())
    }

    pub fn drude_tail(&self) -> Option<(f64, f64)> {
        self.drude_tail
    }
}

/// Parses a whitespace-separated two-column table of omega (eV) and
/// Im eps(omega). Lines starting with '#' are comments; a line of the form
/// `# tail-drude: wp_eV=9.0 gamma_eV=0.035` declares the low-frequency
/// Drude tail. The first comment line is kept as the table's provenance.
pub fn load_optical_data(path: impl AsRef<Path>) -> Result<OpticalDataTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_optical_data(&text, &path.display().to_string())
}

pub(crate) fn parse_optical_data(text: &str, origin: &str) -> Result<OpticalDataTable> {
    let mut omega = Vec::new();
    let mut eps2 = Vec::new();
    let mut tail = None;
    let mut provenance = String::new();
    let data_err = |line_no: usize, message: String| CasimirError::DataError {
        path: origin.to_string(),
        message: format!("line {line_no}: {message}"),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(spec) = comment.strip_prefix("tail-drude:") {
                let mut wp = None;
                let mut gamma = None;
                for tok in spec.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("wp_eV=") {
                        wp = v.parse::<f64>().ok();
                    } else if let Some(v) = tok.strip_prefix("gamma_eV=") {
                        gamma = v.parse::<f64>().ok();
                    }
                }
                match (wp, gamma) {
                    (Some(w), Some(g)) if w > 0.0 && g > 0.0 => tail = Some((w, g)),
                    _ => {
                        return Err(data_err(idx + 1, "malformed tail-drude directive".into()))
                    }
                }
            } else if provenance.is_empty() && !comment.is_empty() {
                provenance = comment.to_string();
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let w: f64 = parts
            .next()
            .ok_or_else(|| data_err(idx + 1, "missing frequency".into()))?
            .parse()
            .map_err(|e| data_err(idx + 1, format!("bad frequency: {e}")))?;
        let v: f64 = parts
            .next()
            .ok_or_else(|| data_err(idx + 1, "missing eps2 value".into()))?
            .parse()
            .map_err(|e| data_err(idx + 1, format!("bad eps2 value: {e}")))?;
        if parts.next().is_some() {
            return Err(data_err(idx + 1, "expected exactly two columns".into()));
        }
        omega.push(w);
        eps2.push(v);
    }
    if provenance.is_empty() {
        provenance = origin.to_string();
    }
    OpticalDataTable::from_rows(omega, eps2, tail, provenance).map_err(|e| match e {
        CasimirError::InvalidInput(message) => CasimirError::DataError {
            path: origin.to_string(),
            message,
        },
        other => other,
    })
}

/// eps(i xi) from tabulated data via the dispersion integral; xi in rad/s.
pub fn eps_tabulated(xi: f64, table: &OpticalDataTable) -> f64 {
    eps_tabulated_with(xi, table, 8)
}

/// Same as [`eps_tabulated`] with an explicit per-interval node count, so
/// callers can verify stability under quadrature refinement.
pub fn eps_tabulated_with(xi: f64, table: &OpticalDataTable, gl_nodes: usize) -> f64 {
    let xi_ev = rad_to_ev(xi);
    let (x, gw) = gauss_legendre(gl_nodes);
    let w = &table.omega_ev;
    let e2 = &table.eps2;
    let mut total = 0.0;
    for i in 0..w.len() - 1 {
        if e2[i] == 0.0 && e2[i + 1] == 0.0 {
            continue;
        }
        let s0 = w[i].ln();
        let s1 = w[i + 1].ln();
        let mid = 0.5 * (s0 + s1);
        let half = 0.5 * (s1 - s0);
        // power law between the endpoints; if one of them vanishes fall
        // back to a straight line in omega
        let power = if e2[i] > 0.0 && e2[i + 1] > 0.0 {
            Some((e2[i + 1] / e2[i]).ln() / (s1 - s0))
        } else {
            None
        };
        let mut acc = 0.0;
        for (&xj, &wj) in x.iter().zip(&gw) {
            let s = mid + half * xj;
            let om = s.exp();
            let val = match power {
                Some(p) => e2[i] * (om / w[i]).powf(p),
                None => e2[i] + (e2[i + 1] - e2[i]) * (om - w[i]) / (w[i + 1] - w[i]),
            };
            acc += wj * val * om * om / (om * om + xi_ev * xi_ev);
        }
        total += half * acc;
    }
    // Im eps is taken as zero above the last tabulated point
    total += low_tail(xi_ev, table);
    1.0 + 2.0 / std::f64::consts::PI * total
}

fn low_tail(xi_ev: f64, table: &OpticalDataTable) -> f64 {
    let w1 = table.omega_ev[0];
    match table.drude_tail {
        Some((wp, g)) => {
            // int_0^w1 of the Drude Im eps against the dispersion kernel,
            // in closed form; the xi ~ gamma branch is the finite limit.
            let xi = xi_ev;
            if (xi - g).abs() > 1e-6 * g {
                wp * wp * g / (xi * xi - g * g)
                    * ((w1 / g).atan() / g - (w1 / xi).atan() / xi)
            } else {
                wp * wp * g * 0.5
                    * ((w1 / g).atan() / (g * g) - w1 / (g * (g * g + w1 * w1)))
            }
        }
        None => {
            // extend the first interval's power law downward on a geometric
            // refinement; integrable for eps2 ~ omega^p with p > -2
            if table.eps2[0] == 0.0 {
                return 0.0;
            }
            let p = if table.eps2[1] > 0.0 {
                (table.eps2[1] / table.eps2[0]).ln()
                    / (table.omega_ev[1] / table.omega_ev[0]).ln()
            } else {
                0.0
            };
            let (x, gw) = gauss_legendre(8);
            let mut total = 0.0;
            let mut hi = w1;
            for _ in 0..40 {
                let lo = hi / 4.0;
                let (s0, s1) = (lo.ln(), hi.ln());
                let mid = 0.5 * (s0 + s1);
                let half = 0.5 * (s1 - s0);
                let mut acc = 0.0;
                for (&xj, &wj) in x.iter().zip(&gw) {
                    let om = (mid + half * xj).exp();
                    acc += wj * table.eps2[0] * (om / w1).powf(p) * om * om
                        / (om * om + xi_ev * xi_ev);
                }
                let contrib = half * acc;
                total += contrib;
                if contrib.abs() < 1e-14 * total.abs() {
                    break;
                }
                hi = lo;
            }
            total
        }
    }
}

/// A dielectric model for the two bodies, evaluated on the imaginary axis.
#[derive(Debug, Clone)]
pub enum MaterialModel {
    Drude { wp_ev: f64, gamma_ev: f64 },
    Plasma { wp_ev: f64 },
    Tabulated(OpticalDataTable),
}

/// How the material behaves in the static (n = 0) Matsubara term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroModeKind {
    /// Finite DC conductivity: only the TM channel survives.
    Drude,
    /// Lossless plasma: the TE channel keeps a finite penetration depth
    /// set by the plasma frequency (rad/s).
    Plasma { wp: f64 },
}

impl MaterialModel {
    pub fn drude(wp_ev: f64, gamma_ev: f64) -> Result<Self> {
        if wp_ev <= 0.0 || gamma_ev <= 0.0 {
            return Err(CasimirError::InvalidInput(
                "Drude parameters must be positive".into(),
            ));
        }
        Ok(MaterialModel::Drude { wp_ev, gamma_ev })
    }

    pub fn plasma(wp_ev: f64) -> Result<Self> {
        if wp_ev <= 0.0 {
            return Err(CasimirError::InvalidInput(
                "plasma frequency must be positive".into(),
            ));
        }
        Ok(MaterialModel::Plasma { wp_ev })
    }

    /// eps(i xi), xi in rad/s.
    pub fn eps(&self, xi: f64) -> f64 {
        match self {
            MaterialModel::Drude { wp_ev, gamma_ev } => {
                eps_drude(xi, ev_to_rad(*wp_ev), ev_to_rad(*gamma_ev))
            }
            MaterialModel::Plasma { wp_ev } => eps_plasma(xi, ev_to_rad(*wp_ev)),
            MaterialModel::Tabulated(t) => eps_tabulated(xi, t),
        }
    }

    pub fn zero_mode(&self) -> ZeroModeKind {
        match self {
            MaterialModel::Plasma { wp_ev } => ZeroModeKind::Plasma {
                wp: ev_to_rad(*wp_ev),
            },
            _ => ZeroModeKind::Drude,
        }
    }

    /// One-line description for output preambles.
    pub fn provenance(&self) -> String {
        match self {
            MaterialModel::Drude { wp_ev, gamma_ev } => {
                format!("drude wp={wp_ev} eV gamma={gamma_ev} eV")
            }
            MaterialModel::Plasma { wp_ev } => format!("plasma wp={wp_ev} eV"),
            MaterialModel::Tabulated(t) => format!("tabulated: {}", t.provenance),
        }
    }
}

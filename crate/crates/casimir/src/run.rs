//! Run configuration, result records and table rendering shared by the CLI
//! and the examples.
//!
//! A [`RunConfig`] is the complete, serializable description of a batch
//! run: geometry, separation grid, temperature, material, data files and
//! truncation overrides. Its SHA-256 digest is stamped into every output
//! table so results can be traced back to the exact settings that produced
//! them. All fields are in the boundary units (micrometers, eV, kelvin);
//! conversion to SI happens in the builder methods.

use crate::classical;
use crate::error::{CasimirError, Result};
use crate::lifshitz::MatsubaraGrid;
use crate::material::{self, MaterialModel};
use crate::pfa::{self, ThetaTable};
use crate::scattering::MultipoleTruncation;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Log,
    Linear,
}

/// Separation grid in micrometers. A single point is a grid with
/// `points = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationGrid {
    pub min_um: f64,
    pub max_um: f64,
    pub points: usize,
    pub kind: GridKind,
}

impl SeparationGrid {
    pub fn single(a_um: f64) -> Self {
        SeparationGrid {
            min_um: a_um,
            max_um: a_um,
            points: 1,
            kind: GridKind::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_um > 0.0) || !(self.max_um >= self.min_um) {
            return Err(CasimirError::InvalidInput(
                "separation grid needs 0 < min <= max".into(),
            ));
        }
        if self.points == 0 || (self.points > 1 && self.max_um == self.min_um) {
            return Err(CasimirError::InvalidInput(
                "separation grid needs at least one point, and a span for more".into(),
            ));
        }
        Ok(())
    }

    pub fn values_um(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min_um];
        }
        let n = self.points;
        (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                match self.kind {
                    GridKind::Log => (self.min_um.ln() * (1.0 - s) + self.max_um.ln() * s).exp(),
                    GridKind::Linear => self.min_um * (1.0 - s) + self.max_um * s,
                }
            })
            .collect()
    }
}

/// Everything a batch run depends on, in boundary units.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub radius_um: f64,
    pub temperature_k: f64,
    pub grid: SeparationGrid,
    /// one of "drude", "plasma", "tabulated"
    pub material: String,
    pub wp_ev: f64,
    pub gamma_ev: f64,
    /// optical data file for "tabulated"; the shipped gold table if unset
    pub optical_data: Option<String>,
    /// theta coefficient file; the shipped gold/300 K table if unset
    pub theta_table: Option<String>,
    pub n_max: Option<usize>,
    pub l_max: Option<usize>,
    pub m_max: Option<usize>,
    pub nodes_per_panel: Option<usize>,
    pub allow_below_floor: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            radius_um: 5.0,
            temperature_k: 300.0,
            grid: SeparationGrid::single(0.5),
            material: "drude".into(),
            wp_ev: 9.0,
            gamma_ev: 0.035,
            optical_data: None,
            theta_table: None,
            n_max: None,
            l_max: None,
            m_max: None,
            nodes_per_panel: None,
            allow_below_floor: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius_um > 0.0) {
            return Err(CasimirError::InvalidInput("radius must be positive".into()));
        }
        if !(self.temperature_k > 0.0) {
            return Err(CasimirError::InvalidInput(
                "temperature must be positive".into(),
            ));
        }
        self.grid.validate()?;
        match self.material.as_str() {
            "drude" | "plasma" | "tabulated" => {}
            other => {
                return Err(CasimirError::InvalidInput(format!(
                    "unknown material '{other}' (expected drude, plasma or tabulated)"
                )))
            }
        }
        Ok(())
    }

    pub fn radius_m(&self) -> f64 {
        self.radius_um * 1e-6
    }

    pub fn separations_m(&self) -> Vec<f64> {
        self.grid.values_um().iter().map(|a| a * 1e-6).collect()
    }

    pub fn build_material(&self) -> Result<MaterialModel> {
        match self.material.as_str() {
            "drude" => MaterialModel::drude(self.wp_ev, self.gamma_ev),
            "plasma" => MaterialModel::plasma(self.wp_ev),
            "tabulated" => {
                let table = match &self.optical_data {
                    Some(path) => material::load_optical_data(path)?,
                    None => material::OpticalDataTable::builtin_gold(),
                };
                Ok(MaterialModel::Tabulated(table))
            }
            other => Err(CasimirError::InvalidInput(format!(
                "unknown material '{other}'"
            ))),
        }
    }

    pub fn build_theta(&self) -> Result<ThetaTable> {
        match &self.theta_table {
            Some(path) => ThetaTable::load(path),
            None => Ok(ThetaTable::builtin()),
        }
    }

    /// Matsubara grid for separation `a` (m), honoring the n_max override.
    pub fn matsubara_grid(&self, a: f64) -> Result<MatsubaraGrid> {
        match self.n_max {
            Some(n) => MatsubaraGrid::with_n_max(self.temperature_k, n),
            None => MatsubaraGrid::new(self.temperature_k, a),
        }
    }

    /// Multipole truncation for separation `a` (m): geometry-derived
    /// defaults with any overrides applied on top.
    pub fn truncation(&self, a: f64) -> Result<MultipoleTruncation> {
        let mut t = MultipoleTruncation::default_for(self.radius_m(), a, self.temperature_k)?;
        if let Some(l) = self.l_max {
            t.l_max = l;
        }
        if let Some(m) = self.m_max {
            t.m_max = m;
        }
        if let Some(n) = self.n_max {
            t.n_max = n;
        }
        if let Some(k) = self.nodes_per_panel {
            t.nodes_per_panel = k;
        }
        t.allow_below_floor = self.allow_below_floor;
        Ok(t)
    }

    /// First 12 hex digits of the SHA-256 over the canonical JSON form.
    pub fn hash_hex(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        let mut out = String::with_capacity(12);
        for byte in digest.iter().take(6) {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    /// Metadata lines for output preambles: version, config hash, the
    /// settings that matter for reproduction, material provenance.
    pub fn preamble(&self, material: &MaterialModel) -> Vec<String> {
        let g = &self.grid;
        vec![
            format!("casimir v{VERSION}"),
            format!("config {}", self.hash_hex()),
            format!(
                "radius_um={} temperature_k={} grid={}..{} points={} ({:?})",
                self.radius_um, self.temperature_k, g.min_um, g.max_um, g.points, g.kind
            ),
            format!("material: {}", material.provenance()),
        ]
    }
}

/// One additive channel of a headline quantity:
/// `total = n0_exact + n_pos_pfa * de_factor`, exactly.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Channel {
    pub n0_exact: f64,
    pub n_pos_pfa: f64,
    pub de_factor: f64,
    pub total: f64,
}

/// Force and gradient at one separation, with the per-channel breakdown
/// and enough metadata to stand alone.
#[derive(Debug, Clone, Serialize)]
pub struct ForceResult {
    /// m
    pub radius: f64,
    /// m
    pub separation: f64,
    /// K
    pub temperature: f64,
    /// exact classical free energy, J
    pub free_energy_n0: f64,
    pub theta: f64,
    pub theta_tilde: f64,
    /// N
    pub force: Channel,
    /// N/m
    pub gradient: Channel,
    /// ideal-mirror PFA force, N (normalizer)
    pub force_ideal_pfa: f64,
    pub n_max: usize,
}

/// Both headline quantities at one separation via the semi-analytic
/// formulas, breakdown included.
pub fn evaluate_point(
    material: &MaterialModel,
    radius: f64,
    a: f64,
    grid: &MatsubaraGrid,
    table: &ThetaTable,
) -> Result<ForceResult> {
    let temperature = grid.temperature;
    let (theta, theta_tilde) = table.theta_coeffs(a)?;
    let f_n0 = classical::force_n0(radius, a, temperature)?;
    let g_n0 = classical::gradient_n0(radius, a, temperature)?;
    let f_npos = pfa::force_pfa_npos(material, radius, a, grid)?;
    let g_npos = pfa::gradient_pfa_npos(material, radius, a, grid)?;
    let de_f = 1.0 - theta * a / radius;
    let de_g = 1.0 - theta_tilde * a / radius;
    Ok(ForceResult {
        radius,
        separation: a,
        temperature,
        free_energy_n0: classical::free_energy_n0(radius, a, temperature)?,
        theta,
        theta_tilde,
        force: Channel {
            n0_exact: f_n0,
            n_pos_pfa: f_npos,
            de_factor: de_f,
            total: f_n0 + f_npos * de_f,
        },
        gradient: Channel {
            n0_exact: g_n0,
            n_pos_pfa: g_npos,
            de_factor: de_g,
            total: g_n0 + g_npos * de_g,
        },
        force_ideal_pfa: pfa::ideal_pfa_force(radius, a),
        n_max: grid.n_max,
    })
}

/// A rendered output table: '#'-prefixed metadata, a header row, data rows.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub preamble: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.preamble {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&csv_line(&self.header));
        for row in &self.rows {
            out.push_str(&csv_line(row));
        }
        out
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = String::new();
    for (i, f) in fields.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&csv_field(f));
    }
    line.push('\n');
    line
}

fn csv_field(f: &str) -> String {
    if f.contains(',') || f.contains('"') || f.contains('\n') {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

/// Shortest round-trip decimal form; node values from data files print
/// exactly as they were written.
pub fn fmt_exact(v: f64) -> String {
    format!("{v}")
}

/// Fixed scientific form for computed physical quantities.
pub fn fmt_sci(v: f64) -> String {
    format!("{v:.9e}")
}

/// Key=value lines, '#' comments and blanks skipped, order preserved.
/// Duplicate keys are an error, as they are always a config mistake.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CasimirError::InvalidInput(format!(
                "config line {}: expected key=value, got '{line}'",
                idx + 1
            ))
        })?;
        let k = k.trim().to_string();
        let v = v.trim().to_string();
        if out.iter().any(|(seen, _)| *seen == k) {
            return Err(CasimirError::InvalidInput(format!(
                "config line {}: duplicate key '{k}'",
                idx + 1
            )));
        }
        out.push((k, v));
    }
    Ok(out)
}

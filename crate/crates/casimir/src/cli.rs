//! Batch command-line front end.
//!
//! Five subcommands: `force` and `gradient` evaluate the semi-analytic
//! formulas over a separation grid, `compare` pits them against the
//! multipole oracle, `converge` scans l_max, and `theta` dumps or
//! interpolates the curvature-coefficient table. Output is CSV with a
//! '#'-prefixed metadata preamble, or JSON with `--format json`.
//!
//! Settings come from defaults, then an optional `--config` key=value
//! file, then flags, each layer overriding the previous. Exit codes:
//! 0 success, 1 invalid usage or input, 2 numerical failure.
//!
//! The Matsubara and multipole sums run on the rayon thread pool, sized
//! by `CASIMIR_THREADS` (default: all cores). Reductions are ordered, so
//! the byte-exact output is independent of the thread count.

use crate::error::{CasimirError, Result};
use crate::material::MaterialModel;
use crate::pfa;
use crate::run::{
    self, fmt_exact, fmt_sci, ForceResult, GridKind, RunConfig, SeparationGrid, Table,
};
use crate::scattering::{self, ConvergenceReport, MultipoleTruncation};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Sphere-plate Casimir force and force gradient at finite temperature"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Force F(a) over a separation grid via the semi-analytic formula
    Force(CommonArgs),
    /// Force gradient F'(a), including the F'/(2 pi R) column in mPa
    Gradient(CommonArgs),
    /// Semi-analytic formula and plain PFA against the multipole oracle
    Compare(CommonArgs),
    /// Convergence of the scattering free energy along an l_max schedule
    Converge(ConvergeArgs),
    /// Dump the theta coefficient table, or interpolate it at one point
    Theta(CommonArgs),
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Key=value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sphere radius in micrometers
    #[arg(long)]
    radius_um: Option<f64>,
    /// Single separation in micrometers (conflicts with the grid flags)
    #[arg(long)]
    separation_um: Option<f64>,
    /// Separation grid start in micrometers
    #[arg(long)]
    a_min_um: Option<f64>,
    /// Separation grid end in micrometers
    #[arg(long)]
    a_max_um: Option<f64>,
    /// Number of grid points (default 20)
    #[arg(long)]
    points: Option<usize>,
    /// Grid spacing: log (default) or linear
    #[arg(long)]
    grid: Option<String>,
    /// Temperature in kelvin
    #[arg(long)]
    temperature_k: Option<f64>,
    /// Material model: drude, plasma or tabulated
    #[arg(long)]
    material: Option<String>,
    /// Plasma frequency in eV
    #[arg(long)]
    wp_ev: Option<f64>,
    /// Drude relaxation rate in eV
    #[arg(long)]
    gamma_ev: Option<f64>,
    /// Optical data file for --material tabulated (default: shipped gold)
    #[arg(long)]
    optical_data: Option<PathBuf>,
    /// Theta coefficient file (default: shipped gold at 300 K)
    #[arg(long)]
    theta_table: Option<PathBuf>,
    /// Matsubara cutoff override
    #[arg(long)]
    n_max: Option<usize>,
    /// Multipole cutoff override (oracle)
    #[arg(long)]
    l_max: Option<usize>,
    /// Azimuthal cutoff override (oracle)
    #[arg(long)]
    m_max: Option<usize>,
    /// Quadrature nodes per panel (oracle)
    #[arg(long)]
    nodes_per_panel: Option<usize>,
    /// Accept l_max beneath the geometric convergence floor
    #[arg(long)]
    allow_below_floor: bool,
    /// Output format: csv (default) or json
    #[arg(long)]
    format: Option<String>,
    /// Output file; stdout if omitted
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated ascending l_max schedule, e.g. 30,60,90
    #[arg(long)]
    schedule: Option<String>,
    /// Relative step size counted as converged (default 1e-4)
    #[arg(long)]
    target_delta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

struct Resolved {
    cfg: RunConfig,
    format: Format,
    output: Option<PathBuf>,
    /// user pinned a single separation (distinguishes "theta at a point"
    /// from "dump the table")
    explicit_separation: bool,
}

/// The merge layer: every RunConfig field as an optional override, fed
/// from the config file and from flags.
#[derive(Default)]
struct Overrides {
    radius_um: Option<f64>,
    separation_um: Option<f64>,
    a_min_um: Option<f64>,
    a_max_um: Option<f64>,
    points: Option<usize>,
    grid: Option<String>,
    temperature_k: Option<f64>,
    material: Option<String>,
    wp_ev: Option<f64>,
    gamma_ev: Option<f64>,
    optical_data: Option<String>,
    theta_table: Option<String>,
    n_max: Option<usize>,
    l_max: Option<usize>,
    m_max: Option<usize>,
    nodes_per_panel: Option<usize>,
    allow_below_floor: Option<bool>,
    format: Option<String>,
}

impl Overrides {
    fn from_file(text: &str) -> Result<Self> {
        let mut o = Overrides::default();
        for (key, value) in run::parse_key_values(text)? {
            let bad = |e: String| {
                CasimirError::InvalidInput(format!("config key '{key}': bad value ({e})"))
            };
            macro_rules! set {
                ($field:ident, $ty:ty) => {
                    o.$field = Some(value.parse::<$ty>().map_err(|e| bad(e.to_string()))?)
                };
            }
            match key.as_str() {
                "radius_um" => set!(radius_um, f64),
                "separation_um" => set!(separation_um, f64),
                "a_min_um" => set!(a_min_um, f64),
                "a_max_um" => set!(a_max_um, f64),
                "points" => set!(points, usize),
                "grid" => o.grid = Some(value),
                "temperature_k" => set!(temperature_k, f64),
                "material" => o.material = Some(value),
                "wp_ev" => set!(wp_ev, f64),
                "gamma_ev" => set!(gamma_ev, f64),
                "optical_data" => o.optical_data = Some(value),
                "theta_table" => o.theta_table = Some(value),
                "n_max" => set!(n_max, usize),
                "l_max" => set!(l_max, usize),
                "m_max" => set!(m_max, usize),
                "nodes_per_panel" => set!(nodes_per_panel, usize),
                "allow_below_floor" => set!(allow_below_floor, bool),
                "format" => o.format = Some(value),
                other => {
                    return Err(CasimirError::InvalidInput(format!(
                        "unknown config key '{other}'"
                    )))
                }
            }
        }
        Ok(o)
    }

    fn layered_under(self, top: Overrides) -> Overrides {
        macro_rules! pick {
            ($field:ident) => {
                top.$field.or(self.$field)
            };
        }
        Overrides {
            radius_um: pick!(radius_um),
            separation_um: pick!(separation_um),
            a_min_um: pick!(a_min_um),
            a_max_um: pick!(a_max_um),
            points: pick!(points),
            grid: pick!(grid),
            temperature_k: pick!(temperature_k),
            material: pick!(material),
            wp_ev: pick!(wp_ev),
            gamma_ev: pick!(gamma_ev),
            optical_data: pick!(optical_data),
            theta_table: pick!(theta_table),
            n_max: pick!(n_max),
            l_max: pick!(l_max),
            m_max: pick!(m_max),
            nodes_per_panel: pick!(nodes_per_panel),
            allow_below_floor: pick!(allow_below_floor),
            format: pick!(format),
        }
    }
}

impl CommonArgs {
    fn to_overrides(&self) -> Overrides {
        Overrides {
            radius_um: self.radius_um,
            separation_um: self.separation_um,
            a_min_um: self.a_min_um,
            a_max_um: self.a_max_um,
            points: self.points,
            grid: self.grid.clone(),
            temperature_k: self.temperature_k,
            material: self.material.clone(),
            wp_ev: self.wp_ev,
            gamma_ev: self.gamma_ev,
            optical_data: self.optical_data.as_ref().map(|p| p.display().to_string()),
            theta_table: self.theta_table.as_ref().map(|p| p.display().to_string()),
            n_max: self.n_max,
            l_max: self.l_max,
            m_max: self.m_max,
            nodes_per_panel: self.nodes_per_panel,
            allow_below_floor: if self.allow_below_floor {
                Some(true)
            } else {
                None
            },
            format: self.format.clone(),
        }
    }

    fn resolve(&self) -> Result<Resolved> {
        let from_file = match &self.config {
            Some(path) => Overrides::from_file(&std::fs::read_to_string(path)?)?,
            None => Overrides::default(),
        };
        let o = from_file.layered_under(self.to_overrides());

        let explicit_separation = o.separation_um.is_some();
        let has_range = o.a_min_um.is_some() || o.a_max_um.is_some();
        if explicit_separation && has_range {
            return Err(CasimirError::InvalidInput(
                "give either separation_um or the a_min_um/a_max_um range, not both".into(),
            ));
        }
        if o.a_min_um.is_some() != o.a_max_um.is_some() {
            return Err(CasimirError::InvalidInput(
                "a_min_um and a_max_um must be given together".into(),
            ));
        }
        if (o.points.is_some() || o.grid.is_some()) && !has_range {
            return Err(CasimirError::InvalidInput(
                "points/grid only make sense with a_min_um and a_max_um".into(),
            ));
        }

        let mut cfg = RunConfig::default();
        let grid = if let (Some(lo), Some(hi)) = (o.a_min_um, o.a_max_um) {
            let kind = match o.grid.as_deref().unwrap_or("log") {
                "log" => GridKind::Log,
                "linear" => GridKind::Linear,
                other => {
                    return Err(CasimirError::InvalidInput(format!(
                        "unknown grid kind '{other}' (expected log or linear)"
                    )))
                }
            };
            SeparationGrid {
                min_um: lo,
                max_um: hi,
                points: o.points.unwrap_or(20),
                kind,
            }
        } else if let Some(a) = o.separation_um {
            SeparationGrid::single(a)
        } else {
            cfg.grid.clone()
        };

        cfg = RunConfig {
            radius_um: o.radius_um.unwrap_or(cfg.radius_um),
            temperature_k: o.temperature_k.unwrap_or(cfg.temperature_k),
            grid,
            material: o.material.unwrap_or(cfg.material),
            wp_ev: o.wp_ev.unwrap_or(cfg.wp_ev),
            gamma_ev: o.gamma_ev.unwrap_or(cfg.gamma_ev),
            optical_data: o.optical_data,
            theta_table: o.theta_table,
            n_max: o.n_max,
            l_max: o.l_max,
            m_max: o.m_max,
            nodes_per_panel: o.nodes_per_panel,
            allow_below_floor: o.allow_below_floor.unwrap_or(false),
        };
        cfg.validate()?;

        let format = match o.format.as_deref().unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => {
                return Err(CasimirError::InvalidInput(format!(
                    "unknown format '{other}' (expected csv or json)"
                )))
            }
        };
        Ok(Resolved {
            cfg,
            format,
            output: self.output.clone(),
            explicit_separation,
        })
    }
}

/// Entry point for the binary. Returns the process exit code.
pub fn run_cli() -> i32 {
    apply_thread_env();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn apply_thread_env() {
    if let Ok(v) = std::env::var("CASIMIR_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => log::warn!("ignoring CASIMIR_THREADS='{v}' (want a positive integer)"),
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Force(args) => {
            let r = args.resolve()?;
            let material = r.cfg.build_material()?;
            let (table, results) = cmd_force(&r.cfg, &material)?;
            emit(&r, &material.provenance(), table, &results)
        }
        Command::Gradient(args) => {
            let r = args.resolve()?;
            let material = r.cfg.build_material()?;
            let (table, results) = cmd_gradient(&r.cfg, &material)?;
            emit(&r, &material.provenance(), table, &results)
        }
        Command::Compare(args) => {
            let r = args.resolve()?;
            let material = r.cfg.build_material()?;
            let (table, results) = cmd_compare(&r.cfg, &material)?;
            emit(&r, &material.provenance(), table, &results)
        }
        Command::Converge(args) => {
            let r = args.common.resolve()?;
            let material = r.cfg.build_material()?;
            let schedule = match &args.schedule {
                Some(text) => parse_schedule(text)?,
                None => default_schedule(&r.cfg),
            };
            let target = args.target_delta.unwrap_or(1e-4);
            let (table, report) = cmd_converge(&r.cfg, &material, &schedule, target)?;
            emit(&r, &material.provenance(), table, &report)
        }
        Command::Theta(args) => {
            let r = args.resolve()?;
            let (table, rows) = cmd_theta(&r.cfg, r.explicit_separation)?;
            let provenance = r.cfg.build_theta()?.provenance;
            emit(&r, &provenance, table, &rows)
        }
    }
}

fn emit<T: Serialize>(r: &Resolved, provenance: &str, table: Table, results: &T) -> Result<()> {
    let text = match r.format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let doc = serde_json::json!({
                "version": run::VERSION,
                "config_hash": r.cfg.hash_hex(),
                "config": r.cfg,
                "provenance": provenance,
                "columns": table.header,
                "results": results,
            });
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| CasimirError::InvalidInput(format!("JSON encoding: {e}")))?;
            s.push('\n');
            s
        }
    };
    match &r.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_force(cfg: &RunConfig, material: &MaterialModel) -> Result<(Table, Vec<ForceResult>)> {
    let theta_table = cfg.build_theta()?;
    let radius = cfg.radius_m();
    let a_ums = cfg.grid.values_um();
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for (a_um, a) in a_ums.iter().zip(cfg.separations_m()) {
        let grid = cfg.matsubara_grid(a)?;
        let res = run::evaluate_point(material, radius, a, &grid, &theta_table)?;
        rows.push(vec![
            fmt_exact(*a_um),
            fmt_sci(res.force.total),
            fmt_sci(res.force.n0_exact),
            fmt_sci(res.force.n_pos_pfa),
            fmt_exact(res.theta),
            fmt_sci(res.force.total / res.force_ideal_pfa),
        ]);
        results.push(res);
    }
    let table = Table {
        preamble: cfg.preamble(material),
        header: str_row(&[
            "a_um",
            "force_N",
            "force_n0_N",
            "force_npos_pfa_N",
            "theta",
            "force_over_ideal_pfa",
        ]),
        rows,
    };
    Ok((table, results))
}

fn cmd_gradient(cfg: &RunConfig, material: &MaterialModel) -> Result<(Table, Vec<ForceResult>)> {
    let theta_table = cfg.build_theta()?;
    let radius = cfg.radius_m();
    let two_pi_r = 2.0 * std::f64::consts::PI * radius;
    let a_ums = cfg.grid.values_um();
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for (a_um, a) in a_ums.iter().zip(cfg.separations_m()) {
        let grid = cfg.matsubara_grid(a)?;
        let res = run::evaluate_point(material, radius, a, &grid, &theta_table)?;
        let pfa = pfa::gradient_pfa_total(material, radius, a, &grid)?;
        rows.push(vec![
            fmt_exact(*a_um),
            fmt_sci(res.gradient.total),
            fmt_exact(res.theta_tilde),
            fmt_sci(res.gradient.total / two_pi_r * 1e3),
            fmt_sci(pfa / two_pi_r * 1e3),
            fmt_sci((res.gradient.total - pfa) / pfa),
        ]);
        results.push(res);
    }
    let table = Table {
        preamble: cfg.preamble(material),
        header: str_row(&[
            "a_um",
            "gradient_N_per_m",
            "theta_tilde",
            "grad_over_2piR_mPa",
            "pfa_over_2piR_mPa",
            "rel_diff_vs_pfa",
        ]),
        rows,
    };
    Ok((table, results))
}

#[derive(Debug, Clone, Serialize)]
struct CompareRow {
    a_um: f64,
    force_approx: f64,
    force_oracle: f64,
    approx_err_pct: f64,
    force_pfa: f64,
    pfa_err_pct: f64,
    l_max: usize,
    m_max: usize,
    n_max: usize,
}

fn cmd_compare(cfg: &RunConfig, material: &MaterialModel) -> Result<(Table, Vec<CompareRow>)> {
    let theta_table = cfg.build_theta()?;
    let radius = cfg.radius_m();
    let temperature = cfg.temperature_k;
    let mut preamble = cfg.preamble(material);
    let a_ums = cfg.grid.values_um();
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for (a_um, a) in a_ums.iter().zip(cfg.separations_m()) {
        let grid = cfg.matsubara_grid(a)?;
        let trunc = cfg.truncation(a)?;
        let approx = run::evaluate_point(material, radius, a, &grid, &theta_table)?
            .force
            .total;
        let oracle = scattering::force_scattering(material, radius, a, temperature, &trunc)?;
        let pfa_force = pfa::force_pfa_total(material, radius, a, &grid)?;
        preamble.push(format!(
            "truncation a_um={a_um}: l_max={} m_max={} n_max={} nodes_per_panel={}",
            trunc.l_max, trunc.m_max, trunc.n_max, trunc.nodes_per_panel
        ));
        let row = CompareRow {
            a_um: *a_um,
            force_approx: approx,
            force_oracle: oracle,
            approx_err_pct: 100.0 * (approx - oracle) / oracle.abs(),
            force_pfa: pfa_force,
            pfa_err_pct: 100.0 * (pfa_force - oracle) / oracle.abs(),
            l_max: trunc.l_max,
            m_max: trunc.m_max,
            n_max: trunc.n_max,
        };
        rows.push(vec![
            fmt_exact(row.a_um),
            fmt_sci(row.force_approx),
            fmt_sci(row.force_oracle),
            format!("{:.5}", row.approx_err_pct),
            fmt_sci(row.force_pfa),
            format!("{:.5}", row.pfa_err_pct),
        ]);
        results.push(row);
    }
    let table = Table {
        preamble,
        header: str_row(&[
            "a_um",
            "force_approx_N",
            "force_oracle_N",
            "approx_err_pct",
            "force_pfa_N",
            "pfa_err_pct",
        ]),
        rows,
    };
    Ok((table, results))
}

fn cmd_converge(
    cfg: &RunConfig,
    material: &MaterialModel,
    schedule: &[usize],
    target: f64,
) -> Result<(Table, ConvergenceReport)> {
    let radius = cfg.radius_m();
    let a = cfg.separations_m()[0];
    let base = cfg.truncation(a)?;
    let report = scattering::convergence_scan(
        material,
        radius,
        a,
        cfg.temperature_k,
        &base,
        schedule,
        target,
    )?;
    let mut preamble = cfg.preamble(material);
    preamble.push(format!(
        "scan at a_um={}: m_max={} n_max={} nodes_per_panel={} target_delta={target:e}",
        cfg.grid.values_um()[0],
        base.m_max,
        base.n_max,
        base.nodes_per_panel
    ));
    preamble.push(match report.converged_at {
        Some(l) => format!("converged_at l_max={l}"),
        None => "converged_at none".into(),
    });
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.l_max.to_string(),
                fmt_sci(r.free_energy),
                r.rel_delta.map(|d| format!("{d:.3e}")).unwrap_or_default(),
            ]
        })
        .collect();
    let table = Table {
        preamble,
        header: str_row(&["l_max", "free_energy_npos_J", "rel_delta"]),
        rows,
    };
    Ok((table, report))
}

#[derive(Debug, Clone, Serialize)]
struct ThetaRow {
    a_um: f64,
    theta: f64,
    theta_tilde: f64,
}

fn cmd_theta(cfg: &RunConfig, at_point: bool) -> Result<(Table, Vec<ThetaRow>)> {
    let table = cfg.build_theta()?;
    let mut preamble = vec![
        format!("casimir v{}", run::VERSION),
        format!("config {}", cfg.hash_hex()),
        format!("theta table: {}", table.provenance),
    ];
    let rows: Vec<ThetaRow> = if at_point {
        let a_um = cfg.grid.values_um()[0];
        let (theta, theta_tilde) = table.theta_coeffs_um(a_um)?;
        preamble.push(format!("interpolated at a_um={a_um}"));
        vec![ThetaRow {
            a_um,
            theta,
            theta_tilde,
        }]
    } else {
        table
            .abscissae_um()
            .iter()
            .zip(table.theta_values())
            .zip(table.theta_tilde_values())
            .map(|((&a_um, &theta), &theta_tilde)| ThetaRow {
                a_um,
                theta,
                theta_tilde,
            })
            .collect()
    };
    let text_rows = rows
        .iter()
        .map(|r| {
            vec![
                fmt_exact(r.a_um),
                fmt_exact(r.theta),
                fmt_exact(r.theta_tilde),
            ]
        })
        .collect();
    let out = Table {
        preamble,
        header: str_row(&["a_um", "theta", "theta_tilde"]),
        rows: text_rows,
    };
    Ok((out, rows))
}

fn parse_schedule(text: &str) -> Result<Vec<usize>> {
    let vals: Result<Vec<usize>> = text
        .split(',')
        .map(|tok| {
            tok.trim().parse::<usize>().map_err(|e| {
                CasimirError::InvalidInput(format!("bad schedule entry '{tok}': {e}"))
            })
        })
        .collect();
    vals
}

/// Half the floor, the floor, twice the floor.
fn default_schedule(cfg: &RunConfig) -> Vec<usize> {
    let a = cfg.separations_m()[0];
    let floor = MultipoleTruncation::l_floor(cfg.radius_m(), a);
    let mut s = vec![(floor / 2).max(5), floor, 2 * floor];
    s.dedup();
    s
}

fn str_row(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

//! Batch command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 3 model domain error.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::actuation::{simulate_sweep, ActuationState, PressureSweep};
use crate::geometry::{design_from_a_band, myosin_height_bounds, LengthClass, MyofibrilSpec};
use crate::material::YeohMaterial;
use crate::validation::{compare, CompareOptions, Curve};

pub use config::{Format, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, config or data files.
    #[error("{0}")]
    Input(String),
    /// The model cannot be evaluated for the given design.
    #[error("{0}")]
    Model(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Model(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "myofibril", version, about = "Artificial pneumatic myofibril design and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout (or the config's [output] path).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive sarcomere dimensions from an A-band length.
    Design {
        /// A-band length, mm.
        #[arg(long, allow_hyphen_values = true)]
        a_band: f64,
        /// Chamber wall thickness, mm.
        #[arg(long, allow_hyphen_values = true)]
        t_w: f64,
        /// Chamber height, mm.
        #[arg(long, allow_hyphen_values = true)]
        h_ch: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the actuation pipeline over the configured pressure sweep.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare a model curve with a reference curve (two-column `x,y` CSVs).
    Validate {
        model: PathBuf,
        reference: PathBuf,
        /// Number of Q-Q quantile pairs to compute.
        #[arg(long)]
        qq: Option<usize>,
        /// Write the Q-Q pairs as CSV to this file.
        #[arg(long, requires = "qq")]
        qq_out: Option<PathBuf>,
        /// Resample the model onto the reference x grid first.
        #[arg(long)]
        resample: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep materials and wall ratios over a design.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Built-in material names; defaults to the config's material.
        #[arg(long, value_delimiter = ',')]
        materials: Vec<String>,
        /// Wall ratios t_w/h_ch as decimals or fractions (e.g. 1/5); defaults to the config's wall.
        #[arg(long, value_delimiter = ',')]
        ratios: Vec<WallRatio>,
        /// Use each material's reference pressure grid instead of the config sweep.
        #[arg(long)]
        reference_grids: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// A wall ratio kept as numerator and denominator so that `t_w = h_ch·num/den`.
#[derive(Debug, Clone, PartialEq)]
pub struct WallRatio {
    pub text: String,
    pub num: f64,
    pub den: f64,
}

impl WallRatio {
    pub fn value(&self) -> f64 {
        self.num / self.den
    }

    pub fn wall_thickness(&self, h_ch: f64) -> f64 {
        h_ch * self.num / self.den
    }
}

impl FromStr for WallRatio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim().parse::<f64>(), b.trim().parse::<f64>()),
            None => (s.parse::<f64>(), Ok(1.0)),
        };
        match (num, den) {
            (Ok(num), Ok(den)) if num > 0.0 && den > 0.0 && num.is_finite() && den.is_finite() => {
                Ok(Self {
                    text: s.to_string(),
                    num,
                    den,
                })
            }
            _ => Err(format!("`{s}` is not a positive ratio")),
        }
    }
}

/// Parses arguments, runs the command, and maps failures to exit codes.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Design {
            a_band,
            t_w,
            h_ch,
            output,
        } => {
            let text = cmd_design(a_band, t_w, h_ch, output.format.unwrap_or_default())?;
            emit(&text, output.out.as_deref())
        }
        Command::Simulate { config, output } => {
            let cfg = RunConfig::load(&config)?;
            let format = output.format.or(cfg.format).unwrap_or_default();
            let text = cmd_simulate(&cfg, format)?;
            emit(&text, output.out.as_deref().or(cfg.output_path.as_deref()))
        }
        Command::Validate {
            model,
            reference,
            qq,
            qq_out,
            resample,
            output,
        } => {
            let (report_text, qq_text) = cmd_validate(
                &model,
                &reference,
                CompareOptions { qq, resample },
                output.format.unwrap_or_default(),
            )?;
            if let Some(path) = qq_out {
                emit(&qq_text, Some(&path))?;
            }
            emit(&report_text, output.out.as_deref())
        }
        Command::Sweep {
            config,
            materials,
            ratios,
            reference_grids,
            output,
        } => {
            let cfg = RunConfig::load(&config)?;
            let format = output.format.or(cfg.format).unwrap_or_default();
            let text = cmd_sweep(&cfg, &materials, &ratios, reference_grids, format)?;
            emit(&text, output.out.as_deref().or(cfg.output_path.as_deref()))
        }
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Design rules for an A-band: band lengths, rest actin, myosin height range.
pub fn cmd_design(a_band: f64, t_w: f64, h_ch: f64, format: Format) -> Result<String, CliError> {
    let design = design_from_a_band(a_band).map_err(|e| CliError::Input(e.to_string()))?;
    let bounds = myosin_height_bounds(a_band, t_w, h_ch).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(output::design(&design, bounds, format))
}

/// Builds the simulatable design described by a config.
pub fn build_spec(cfg: &RunConfig) -> Result<MyofibrilSpec, CliError> {
    let spa = cfg.spa.resolve(cfg.assumed_h_ch)?;
    let sarcomere = cfg.sarcomere.resolve(&spa)?;
    MyofibrilSpec::new(cfg.sarcomere.n, sarcomere, spa, cfg.material.clone())
        .map_err(|e| CliError::Input(e.to_string()))
}

fn run_sweep(spec: &MyofibrilSpec, sweep: &PressureSweep) -> Result<Vec<ActuationState>, CliError> {
    let states = simulate_sweep(spec, sweep).map_err(|e| CliError::Model(e.to_string()))?;
    for s in states.iter().filter(|s| s.ratio_flag != LengthClass::Valid) {
        eprintln!(
            "warning: length ratio {:.6} at {:.6} MPa is {}",
            s.length_ratio, s.pressure, s.ratio_flag
        );
    }
    Ok(states)
}

pub fn cmd_simulate(cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let spec = build_spec(cfg)?;
    let warnings = spec.design_warnings();
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if cfg.spa.uses_assumed_height() {
        eprintln!("note: chamber height not given, assuming h_ch = {} mm", cfg.assumed_h_ch);
    }
    let states = run_sweep(&spec, &cfg.sweep)?;
    let assumed = cfg.spa.uses_assumed_height().then_some(cfg.assumed_h_ch);
    Ok(output::simulation(&spec, &states, assumed, &warnings, format))
}

pub fn cmd_validate(
    model: &Path,
    reference: &Path,
    options: CompareOptions,
    format: Format,
) -> Result<(String, String), CliError> {
    let load = |p: &Path| -> Result<Curve, CliError> {
        let file = std::fs::File::open(p)
            .map_err(|e| CliError::Input(format!("cannot open {}: {e}", p.display())))?;
        Curve::from_csv(p.display().to_string(), file).map_err(|e| CliError::Input(e.to_string()))
    };
    let model = load(model)?;
    let reference = load(reference)?;
    let report = compare(&model, &reference, options).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((output::report(&report, format), output::qq_csv(&report.qq_pairs)))
}

/// One (material, wall ratio) cell of a design sweep.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub material: String,
    pub wall_ratio: f64,
    pub spec: MyofibrilSpec,
    pub states: Vec<ActuationState>,
    pub max_spa_force: f64,
}

pub fn sweep_cells(
    cfg: &RunConfig,
    materials: &[String],
    ratios: &[WallRatio],
    reference_grids: bool,
) -> Result<Vec<SweepCell>, CliError> {
    let materials: Vec<YeohMaterial> = if materials.is_empty() {
        vec![cfg.material.clone()]
    } else {
        materials
            .iter()
            .map(|name| {
                YeohMaterial::builtin(name).ok_or_else(|| {
                    CliError::Input(format!(
                        "unknown material `{name}` (built-in: {})",
                        crate::material::BUILTIN_NAMES.join(", ")
                    ))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let h_ch = cfg.spa.chamber_height(cfg.assumed_h_ch);
    if cfg.spa.uses_assumed_height() {
        eprintln!("note: chamber height not given, assuming h_ch = {h_ch} mm");
    }

    let mut cells = Vec::new();
    for material in &materials {
        let sweep = if reference_grids {
            PressureSweep::reference_grid(&material.name).ok_or_else(|| {
                CliError::Input(format!("material `{}` has no reference pressure grid", material.name))
            })?
        } else {
            cfg.sweep
        };
        let walls: Vec<_> = if ratios.is_empty() {
            vec![cfg.spa.resolve(cfg.assumed_h_ch)?]
        } else {
            ratios
                .iter()
                .map(|r| cfg.spa.with_wall(r.wall_thickness(h_ch), h_ch))
                .collect::<Result<_, _>>()?
        };
        for spa in walls {
            let sarcomere = cfg.sarcomere.resolve(&spa)?;
            let spec = MyofibrilSpec::new(cfg.sarcomere.n, sarcomere, spa, material.clone())
                .map_err(|e| CliError::Input(e.to_string()))?;
            let states = run_sweep(&spec, &sweep).map_err(|e| match e {
                CliError::Model(m) => CliError::Model(format!(
                    "{} with t_w/h_ch = {}: {m}",
                    material.name,
                    spa.wall_ratio()
                )),
                other => other,
            })?;
            let max_spa_force = states
                .iter()
                .map(|s| s.spa_force)
                .fold(f64::NEG_INFINITY, f64::max);
            cells.push(SweepCell {
                material: material.name.clone(),
                wall_ratio: spa.wall_ratio(),
                spec,
                states,
                max_spa_force,
            });
        }
    }
    Ok(cells)
}

/// Mean over wall ratios of the per-cell maximum SPA force, per material in input order.
pub fn mean_of_maxima(cells: &[SweepCell]) -> Vec<(String, f64)> {
    let mut out: Vec<(String, f64, usize)> = Vec::new();
    for c in cells {
        match out.iter_mut().find(|(m, _, _)| *m == c.material) {
            Some(entry) => {
                entry.1 += c.max_spa_force;
                entry.2 += 1;
            }
            None => out.push((c.material.clone(), c.max_spa_force, 1)),
        }
    }
    out.into_iter().map(|(m, s, n)| (m, s / n as f64)).collect()
}

pub fn cmd_sweep(
    cfg: &RunConfig,
    materials: &[String],
    ratios: &[WallRatio],
    reference_grids: bool,
    format: Format,
) -> Result<String, CliError> {
    let cells = sweep_cells(cfg, materials, ratios, reference_grids)?;
    let means = mean_of_maxima(&cells);
    let assumed = cfg.spa.uses_assumed_height().then_some(cfg.assumed_h_ch);
    Ok(output::sweep(&cells, &means, assumed, format))
}

//! Command-line surface, config-file merging and the canonical argument line.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::{fmt_f64, Grid};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "ionring",
    version,
    about = "Rotation levels, normal modes and thermal averages of a flux-threaded ring of trapped ions",
    after_help = "Options may also come from --config FILE, a TOML table whose keys are the long flag names.\n\
                  Command-line flags override the file."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalized normal-mode frequencies of the ring crystal.
    #[command(args_override_self = true)]
    Modes(ModesArgs),
    /// Rotation levels near the ground state at one flux.
    #[command(args_override_self = true)]
    Spectrum(SpectrumArgs),
    /// Level parabolas and ground-state frequency over a flux grid.
    #[command(args_override_self = true)]
    FluxSweep(FluxArgs),
    /// Ground-state rotation versus normalized diameter at fixed field.
    #[command(args_override_self = true)]
    DiameterSweep(DiameterArgs),
    /// Thermal-average rotation frequency over flux and temperature grids.
    #[command(args_override_self = true)]
    Thermal(ThermalArgs),
    /// Feasibility report for preparing and observing a rotating ring.
    #[command(args_override_self = true)]
    Plan(PlanArgs),
    /// Frequency ratio of two concentric rings and its commensurability.
    #[command(args_override_self = true)]
    Quasicrystal(QuasiArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dense,
    Circulant,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Built-in or file-defined species label (Be9+, Mg24+, electron).
    #[arg(long, conflicts_with = "custom")]
    pub species: Option<String>,
    /// Custom species as MASS_U,CHARGE_E,STATISTICS.
    #[arg(long, value_name = "MASS_U,CHARGE_E,STATS", allow_hyphen_values = true)]
    pub custom: Option<String>,
    /// TOML file of extra [[species]] tables.
    #[arg(long, value_name = "FILE")]
    pub species_file: Option<PathBuf>,
    /// Override the species' exchange statistics.
    #[arg(long)]
    pub statistics: Option<String>,
    /// Number of ions.
    #[arg(long)]
    pub n: Option<usize>,
    /// Ring diameter, m. Selects SI units unless --reduced is given.
    #[arg(long, value_name = "METRES", allow_hyphen_values = true)]
    pub d: Option<f64>,
    /// Magnetic field along the ring axis, T.
    #[arg(long, value_name = "TESLA", allow_hyphen_values = true, conflicts_with = "alpha")]
    pub b: Option<f64>,
    /// Normalized flux α, a single value or a grid.
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    pub alpha: Option<Grid>,
    /// Work in E*, ω*, T* units even when a diameter is given.
    #[arg(long)]
    pub reduced: bool,
}

impl RingArgs {
    pub fn si(&self) -> bool {
        self.d.is_some() && !self.reduced
    }

    fn canonical(&self, out: &mut Vec<String>) {
        let mut put = |flag: &str, v: String| {
            out.push(format!("--{flag}"));
            out.push(v);
        };
        if let Some(s) = &self.species {
            put("species", s.clone());
        }
        if let Some(s) = &self.custom {
            put("custom", s.clone());
        }
        if let Some(p) = &self.species_file {
            put("species-file", p.display().to_string());
        }
        if let Some(s) = &self.statistics {
            put("statistics", s.clone());
        }
        if let Some(n) = self.n {
            put("n", n.to_string());
        }
        if let Some(d) = self.d {
            put("d", fmt_f64(d));
        }
        if let Some(b) = self.b {
            put("b", fmt_f64(b));
        }
        if let Some(a) = &self.alpha {
            put("alpha", a.to_string());
        }
        if self.reduced {
            out.push("--reduced".into());
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ModesArgs {
    /// Number of ions (≥ 2).
    #[arg(long)]
    pub n: usize,
    /// Append the mode vectors as columns v_1..v_N (dense method only).
    #[arg(long)]
    pub vectors: bool,
    #[arg(long, value_enum, default_value_t = Method::Dense)]
    pub method: Method,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Levels listed within this many steps of round(α).
    #[arg(long, default_value_t = 3)]
    pub window: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FluxArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Level columns for quantum numbers in [−window, window].
    #[arg(long, default_value_t = 2)]
    pub window: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct DiameterArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Grid of d/d0 values (positive).
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    pub x: Grid,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ThermalArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Temperature grid: T/T* in reduced units, kelvin in SI units.
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    pub t: Grid,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct PlanArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Marker beam waist, m.
    #[arg(long, value_name = "METRES", allow_hyphen_values = true)]
    pub waist: f64,
    /// Revival order.
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Interval between marking and readout, s.
    #[arg(long, value_name = "SECONDS", default_value_t = 0.0, allow_hyphen_values = true)]
    pub delta_t: f64,
    /// Pass threshold for T*/T_c.
    #[arg(long, default_value_t = 0.1)]
    pub crystal_threshold: f64,
    /// Pass threshold for the marker kick ratio.
    #[arg(long, default_value_t = 1.0)]
    pub kick_threshold: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct QuasiArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Diameter of the second ring, m.
    #[arg(long, value_name = "METRES", allow_hyphen_values = true)]
    pub d2: f64,
    /// Ion number of the second ring (defaults to --n).
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long, default_value_t = ionring::planner::DEFAULT_Q_MAX)]
    pub q_max: u64,
    #[arg(long, default_value_t = ionring::planner::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Modes(_) => "modes",
            Command::Spectrum(_) => "spectrum",
            Command::FluxSweep(_) => "flux-sweep",
            Command::DiameterSweep(_) => "diameter-sweep",
            Command::Thermal(_) => "thermal",
            Command::Plan(_) => "plan",
            Command::Quasicrystal(_) => "quasicrystal",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Modes(a) => &a.out,
            Command::Spectrum(a) => &a.out,
            Command::FluxSweep(a) => &a.out,
            Command::DiameterSweep(a) => &a.out,
            Command::Thermal(a) => &a.out,
            Command::Plan(a) => &a.out,
            Command::Quasicrystal(a) => &a.out,
        }
    }

    pub fn format(&self) -> Format {
        self.output().format.unwrap_or(match self {
            Command::Plan(_) | Command::Quasicrystal(_) => Format::Json,
            _ => Format::Csv,
        })
    }

    /// Fully resolved arguments in a fixed order, without --output or --config.
    /// Feeding these back to the binary reproduces the same bytes.
    pub fn canonical(&self) -> Vec<String> {
        let mut out = vec![self.name().to_string()];
        let put = |out: &mut Vec<String>, flag: &str, v: String| {
            out.push(format!("--{flag}"));
            out.push(v);
        };
        match self {
            Command::Modes(a) => {
                put(&mut out, "n", a.n.to_string());
                put(&mut out, "method", value_name(a.method));
                if a.vectors {
                    out.push("--vectors".into());
                }
            }
            Command::Spectrum(a) => {
                a.ring.canonical(&mut out);
                put(&mut out, "window", a.window.to_string());
            }
            Command::FluxSweep(a) => {
                a.ring.canonical(&mut out);
                put(&mut out, "window", a.window.to_string());
            }
            Command::DiameterSweep(a) => {
                a.ring.canonical(&mut out);
                put(&mut out, "x", a.x.to_string());
            }
            Command::Thermal(a) => {
                a.ring.canonical(&mut out);
                put(&mut out, "t", a.t.to_string());
            }
            Command::Plan(a) => {
                a.ring.canonical(&mut out);
                put(&mut out, "waist", fmt_f64(a.waist));
                put(&mut out, "l", a.l.to_string());
                put(&mut out, "delta-t", fmt_f64(a.delta_t));
                put(&mut out, "crystal-threshold", fmt_f64(a.crystal_threshold));
                put(&mut out, "kick-threshold", fmt_f64(a.kick_threshold));
            }
            Command::Quasicrystal(a) => {
                a.ring.canonical(&mut out);
                put(&mut out, "d2", fmt_f64(a.d2));
                if let Some(n2) = a.n2 {
                    put(&mut out, "n2", n2.to_string());
                }
                put(&mut out, "q-max", a.q_max.to_string());
                put(&mut out, "tolerance", fmt_f64(a.tolerance));
            }
        }
        out.push("--format".into());
        out.push(value_name(self.format()));
        out
    }
}

/// Expands `--config FILE` into flags placed before the user's own, so that
/// explicit flags win. A `command` key supplies the subcommand when the
/// command line has none.
pub fn merge_config(raw: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut rest = Vec::with_capacity(raw.len());
    let mut config = None;
    let mut it = raw.into_iter();
    let program = it.next().unwrap_or_else(|| "ionring".into());
    while let Some(a) = it.next() {
        if a == "--config" {
            let path = it.next().ok_or_else(|| CliError::Usage("--config needs a file".into()))?;
            config = Some(path);
        } else if let Some(path) = a.strip_prefix("--config=") {
            config = Some(path.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else {
        return Ok(std::iter::once(program).chain(rest).collect());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        CliError::Usage(format!("config {path}: {}", e.message()))
    })?;

    let mut command = None;
    let mut flags = Vec::new();
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        if key == "command" {
            command = Some(value.as_str().ok_or_else(|| CliError::Usage("config: command must be a string".into()))?.to_string());
            continue;
        }
        match value {
            toml::Value::Boolean(true) => flags.push(flag),
            toml::Value::Boolean(false) => {}
            toml::Value::String(s) => flags.extend([flag, s]),
            toml::Value::Integer(i) => flags.extend([flag, i.to_string()]),
            toml::Value::Float(x) => flags.extend([flag, fmt_f64(x)]),
            toml::Value::Array(items) => {
                let parts = items
                    .iter()
                    .map(|v| match v {
                        toml::Value::Integer(i) => Ok(i.to_string()),
                        toml::Value::Float(x) => Ok(fmt_f64(*x)),
                        toml::Value::String(s) => Ok(s.clone()),
                        _ => Err(CliError::Usage(format!("config: {key} must hold numbers"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                flags.extend([flag, parts.join(",")]);
            }
            _ => return Err(CliError::Usage(format!("config: unsupported value for {key}"))),
        }
    }

    let has_subcommand = rest.first().is_some_and(|a| !a.starts_with('-'));
    let (sub, user) = if has_subcommand {
        let mut rest = rest.into_iter();
        (rest.next().expect("checked"), rest.collect::<Vec<_>>())
    } else {
        let sub = command.ok_or_else(|| CliError::Usage("no subcommand given (on the command line or as `command` in the config)".into()))?;
        (sub, rest)
    };
    Ok(std::iter::once(program).chain(std::iter::once(sub)).chain(flags).chain(user).collect())
}

pub fn parse(raw: Vec<String>) -> Result<Cli, CliError> {
    let argv = merge_config(raw)?;
    Cli::try_parse_from(argv).map_err(CliError::Clap)
}

//! Run configuration: TOML file, command-line overrides and validation.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use clifft::{GridSpec, KernelSign};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Transform,
    Heat,
    Hardy,
    Miyachi,
    Corollary,
    VerifyAll,
    Bench,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Transform => "transform",
            Command::Heat => "heat",
            Command::Hardy => "hardy",
            Command::Miyachi => "miyachi",
            Command::Corollary => "corollary",
            Command::VerifyAll => "verify-all",
            Command::Bench => "bench",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config file {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub m: usize,
    pub half_width: f64,
    pub points: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            m: 2,
            half_width: 10.0,
            points: 256,
        }
    }
}

/// Everything a run needs. Unset family parameters select the default
/// families of the acceptance suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub command: Command,
    pub grid: GridConfig,
    pub sign: KernelSign,
    /// Gaussian rate for `hardy`; unset runs `{1/4, 1/2, 1, 2}`.
    pub p: Option<f64>,
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    /// Rate of the `P N_c(·, δ)` family; unset runs `{1/4, 1/2, 1}` for the
    /// polynomial-Gaussian fits and `1/2` for the uncertainty witnesses.
    pub delta: Option<f64>,
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub j: Option<usize>,
    pub k: Option<u32>,
    pub l: Option<usize>,
    #[serde(skip_serializing)]
    pub output: PathBuf,
    pub seed: u64,
    pub bench_points: Vec<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::VerifyAll,
            grid: GridConfig::default(),
            sign: KernelSign::Minus,
            p: None,
            a: 0.25,
            b: 0.125,
            lambda: 1.0,
            delta: None,
            r: 2.0,
            s: 1.0,
            t: 1.0,
            j: None,
            k: None,
            l: None,
            output: PathBuf::from("clifft-out"),
            seed: 20_240_601,
            bench_points: vec![64, 128, 256],
        }
    }
}

pub const WITNESS_DELTA: f64 = 0.5;
pub const POLYGAUSS_DELTAS: [f64; 3] = [0.25, 0.5, 1.0];
pub const HARDY_RATES: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

impl RunConfig {
    pub fn from_toml_str(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text, path)
    }

    pub fn grid_spec(&self) -> Result<GridSpec, ConfigError> {
        GridSpec::new(self.grid.m, self.grid.half_width, self.grid.points)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn witness_delta(&self) -> f64 {
        self.delta.unwrap_or(WITNESS_DELTA)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        self.grid_spec()?;
        if self.grid.m != 2 {
            return bad(format!(
                "grid dimension {} is not supported; use m = 2",
                self.grid.m
            ));
        }
        let positive = [
            ("a", Some(self.a)),
            ("b", Some(self.b)),
            ("lambda", Some(self.lambda)),
            ("r", Some(self.r)),
            ("s", Some(self.s)),
            ("t", Some(self.t)),
            ("p", self.p),
            ("delta", self.delta),
        ];
        for (name, value) in positive {
            if let Some(v) = value {
                if !(v > 0.0 && v.is_finite()) {
                    return bad(format!("{name} must be positive and finite, got {v}"));
                }
            }
        }
        if let Some(d) = self.delta {
            if !(0.125..=2.0).contains(&d) {
                return bad(format!("delta must lie in [1/8, 2], got {d}"));
            }
        }
        let uses_witness = matches!(
            self.command,
            Command::Miyachi | Command::Corollary | Command::VerifyAll
        );
        let d = self.witness_delta();
        if uses_witness && !(self.b < d && d < 1.0 / (4.0 * self.a)) {
            return bad(format!(
                "the counterexample family needs b < delta < 1/(4a); got b = {}, delta = {d}, 1/(4a) = {}",
                self.b,
                1.0 / (4.0 * self.a)
            ));
        }
        if self.j.is_some_and(|j| j > 8) || self.k.is_some_and(|k| k > 4) {
            return bad("psi indices are limited to j <= 8 and k <= 4".into());
        }
        if self.command == Command::Bench {
            if self.bench_points.is_empty() {
                return bad("bench needs at least one grid size".into());
            }
            for &n in &self.bench_points {
                GridSpec::new(2, self.grid.half_width, n)
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?;
            }
        }
        Ok(())
    }
}

/// Command-line interface. Flags override values from `--config`.
#[derive(Debug, Parser)]
#[command(
    name = "clifft",
    version,
    about = "Clifford-Fourier transform verifier suite",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Experiment to run.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// TOML config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Grid half-width.
    #[arg(long = "R")]
    pub half_width: Option<f64>,
    /// Points per axis; a comma-separated list for `bench`.
    #[arg(long = "N", value_delimiter = ',')]
    pub points: Option<Vec<usize>>,
    /// Kernel sign: plus or minus.
    #[arg(long)]
    pub sign: Option<KernelSign>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Output directory for reports.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Cli {
    /// Load the config file (if any), apply flag overrides and validate.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(c) = self.command {
            cfg.command = c;
        }
        if let Some(m) = self.m {
            cfg.grid.m = m;
        }
        if let Some(r) = self.half_width {
            cfg.grid.half_width = r;
        }
        if let Some(points) = &self.points {
            if cfg.command == Command::Bench {
                cfg.bench_points = points.clone();
            } else if let [n] = points.as_slice() {
                cfg.grid.points = *n;
            } else {
                return Err(ConfigError::Invalid(format!(
                    "--N takes a single value for `{}`",
                    cfg.command.as_str()
                )));
            }
        }
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field {
                    cfg.$field = v;
                }
            )*};
        }
        set!(sign, a, b, lambda, r, s, t, seed);
        macro_rules! set_opt {
            ($($field:ident),*) => {$(
                if self.$field.is_some() {
                    cfg.$field = self.$field;
                }
            )*};
        }
        set_opt!(p, delta, j, k, l);
        if let Some(out) = &self.output {
            cfg.output = out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

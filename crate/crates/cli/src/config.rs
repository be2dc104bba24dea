//! Effective run configuration: defaults, then a `key = value` file, then flags.
//!
//! Config files hold one `key = value` pair per line; `#` starts a comment.
//! Keys are the long flag names without the leading dashes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use dirac_decoherence::experiments::{uniform_times, Engine, FigureId, ScenarioConfig};
use dirac_decoherence::field::make_gaussian_packet;
use dirac_decoherence::{EnergySign, Grid1D, InitialSpec};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Evolve,
    EntropyCurve,
    Distributions,
    Figure,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialKind {
    Gaussian,
    PlaneWave,
    PositiveEnergy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Spectral,
    Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

/// Every key accepted in config files and as `--key value` flags.
pub const KEYS: &[&str] = &[
    "mass",
    "kind",
    "spinor-a",
    "spinor-b",
    "center",
    "width",
    "mode",
    "energy-sign",
    "grid-l",
    "grid-n",
    "t-start",
    "t-end",
    "t-step",
    "times",
    "engine",
    "kernel-step",
    "id",
    "output",
    "format",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub mass: f64,
    pub kind: InitialKind,
    pub spinor: [Complex64; 2],
    pub center: f64,
    pub width: f64,
    pub mode: i64,
    pub energy_sign: EnergySign,
    pub grid_l: f64,
    pub grid_n: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub t_step: f64,
    /// Explicit sample times; overrides the range when present.
    pub times: Option<Vec<f64>>,
    pub engine: EngineKind,
    pub kernel_step: f64,
    pub figure: FigureId,
    /// `-` writes to standard output.
    pub output: PathBuf,
    pub format: Format,
}

impl CliConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            mass: 1.0,
            kind: InitialKind::Gaussian,
            spinor: [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            center: 0.0,
            width: 1.0,
            mode: 0,
            energy_sign: EnergySign::Positive,
            grid_l: 20.0,
            grid_n: 1024,
            t_start: 0.0,
            t_end: 1.0,
            t_step: 0.01,
            times: None,
            engine: EngineKind::Spectral,
            kernel_step: 0.1,
            figure: FigureId::Fig1,
            output: PathBuf::from("-"),
            format: Format::Csv,
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "mass" => self.mass = parse_f64(key, value)?,
            "kind" => {
                self.kind = match value {
                    "gaussian" => InitialKind::Gaussian,
                    "plane-wave" => InitialKind::PlaneWave,
                    "positive-energy" => InitialKind::PositiveEnergy,
                    _ => return Err(CliError::config(key, "expected gaussian, plane-wave or positive-energy")),
                }
            }
            "spinor-a" => self.spinor[0] = parse_complex(key, value)?,
            "spinor-b" => self.spinor[1] = parse_complex(key, value)?,
            "center" => self.center = parse_f64(key, value)?,
            "width" => self.width = parse_f64(key, value)?,
            "mode" => {
                self.mode = value
                    .parse()
                    .map_err(|_| CliError::config(key, format!("'{value}' is not an integer")))?
            }
            "energy-sign" => {
                self.energy_sign = match value {
                    "+1" | "1" | "positive" => EnergySign::Positive,
                    "-1" | "negative" => EnergySign::Negative,
                    _ => return Err(CliError::config(key, "expected +1 or -1")),
                }
            }
            "grid-l" => self.grid_l = parse_f64(key, value)?,
            "grid-n" => {
                self.grid_n = value
                    .parse()
                    .map_err(|_| CliError::config(key, format!("'{value}' is not a positive integer")))?
            }
            "t-start" => self.t_start = parse_f64(key, value)?,
            "t-end" => self.t_end = parse_f64(key, value)?,
            "t-step" => self.t_step = parse_f64(key, value)?,
            "times" => {
                self.times = if value.is_empty() {
                    None
                } else {
                    Some(
                        value
                            .split(',')
                            .map(|v| parse_f64(key, v.trim()))
                            .collect::<Result<_>>()?,
                    )
                }
            }
            "engine" => {
                self.engine = match value {
                    "spectral" => EngineKind::Spectral,
                    "kernel" => EngineKind::Kernel,
                    _ => return Err(CliError::config(key, "expected spectral or kernel")),
                }
            }
            "kernel-step" => self.kernel_step = parse_f64(key, value)?,
            "id" => {
                self.figure = value
                    .parse()
                    .map_err(|e: dirac_decoherence::Error| CliError::config(key, e.to_string()))?
            }
            "output" => self.output = PathBuf::from(value),
            "format" => {
                self.format = match value {
                    "csv" => Format::Csv,
                    "svg" => Format::Svg,
                    _ => return Err(CliError::config(key, "expected csv or svg")),
                }
            }
            _ => return Err(CliError::config(key, "unknown key")),
        }
        Ok(())
    }

    /// Reads `key = value` lines from `path` into `self`.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigFile {
            path: path.to_path_buf(),
            source,
        })?;
        self.apply_text(&text, path)
    }

    pub fn apply_text(&mut self, text: &str, origin: &Path) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::ConfigSyntax {
                path: origin.to_path_buf(),
                line: n + 1,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    /// The configuration as a config file; reading it back reproduces `self`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let complex = |z: Complex64| format!("{:?},{:?}", z.re, z.im);
        let kind = match self.kind {
            InitialKind::Gaussian => "gaussian",
            InitialKind::PlaneWave => "plane-wave",
            InitialKind::PositiveEnergy => "positive-energy",
        };
        let sign = match self.energy_sign {
            EnergySign::Positive => "+1",
            EnergySign::Negative => "-1",
        };
        let engine = match self.engine {
            EngineKind::Spectral => "spectral",
            EngineKind::Kernel => "kernel",
        };
        let format = match self.format {
            Format::Csv => "csv",
            Format::Svg => "svg",
        };
        let times = self
            .times
            .as_ref()
            .map(|t| t.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(","))
            .unwrap_or_default();
        let pairs: [(&str, String); 19] = [
            ("mass", format!("{:?}", self.mass)),
            ("kind", kind.into()),
            ("spinor-a", complex(self.spinor[0])),
            ("spinor-b", complex(self.spinor[1])),
            ("center", format!("{:?}", self.center)),
            ("width", format!("{:?}", self.width)),
            ("mode", self.mode.to_string()),
            ("energy-sign", sign.into()),
            ("grid-l", format!("{:?}", self.grid_l)),
            ("grid-n", self.grid_n.to_string()),
            ("t-start", format!("{:?}", self.t_start)),
            ("t-end", format!("{:?}", self.t_end)),
            ("t-step", format!("{:?}", self.t_step)),
            ("times", times),
            ("engine", engine.into()),
            ("kernel-step", format!("{:?}", self.kernel_step)),
            ("id", self.figure.name().into()),
            ("output", self.output.display().to_string()),
            ("format", format.into()),
        ];
        for (k, v) in pairs {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn grid(&self) -> Result<Grid1D> {
        if self.grid_n % 2 != 0 || self.grid_n < 2 {
            return Err(CliError::config(
                "grid-n",
                format!("{} is not supported: the transform needs an even point count >= 2", self.grid_n),
            ));
        }
        Grid1D::new(self.grid_l, self.grid_n).map_err(|e| CliError::config("grid-l", e.to_string()))
    }

    pub fn initial(&self) -> InitialSpec {
        match self.kind {
            InitialKind::Gaussian => InitialSpec::GaussianPacket {
                center: self.center,
                width: self.width,
                spinor: self.spinor,
            },
            InitialKind::PlaneWave => InitialSpec::PlaneWave {
                mode: self.mode,
                sign: self.energy_sign,
            },
            InitialKind::PositiveEnergy => InitialSpec::PositiveEnergyPacket {
                center: self.center,
                width: self.width,
                spinor: self.spinor,
            },
        }
    }

    pub fn sample_times(&self) -> Vec<f64> {
        match &self.times {
            Some(t) => t.clone(),
            None => uniform_times(self.t_start, self.t_end, self.t_step),
        }
    }

    /// Checks every invariant, naming the key at fault.
    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(CliError::config("mass", "must be finite and nonnegative"));
        }
        match self.kind {
            InitialKind::Gaussian | InitialKind::PositiveEnergy => {
                if self.spinor.iter().all(|z| z.norm() == 0.0) {
                    return Err(CliError::config("spinor-a", "spinor (a, b) must be nonzero"));
                }
                if !(self.width > 0.0) {
                    return Err(CliError::config("width", "must be positive"));
                }
                make_gaussian_packet(grid, self.center, self.width, self.spinor)
                    .map_err(|e| CliError::config("width", e.to_string()))?;
            }
            InitialKind::PlaneWave => {
                grid.slot(self.mode)
                    .map_err(|e| CliError::config("mode", e.to_string()))?;
            }
        }
        if self.times.is_none() {
            if !(self.t_step > 0.0) {
                return Err(CliError::config("t-step", "must be positive"));
            }
            if self.t_start < 0.0 {
                return Err(CliError::config("t-start", "must be nonnegative"));
            }
            if self.t_end < self.t_start {
                return Err(CliError::config("t-end", "must not precede t-start"));
            }
        }
        let times = self.sample_times();
        if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(CliError::config("times", "sample times must be nonnegative"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::config("times", "sample times must be strictly increasing"));
        }
        if self.engine == EngineKind::Kernel {
            if !(self.kernel_step > 0.0) {
                return Err(CliError::config("kernel-step", "must be positive"));
            }
            let key = if self.times.is_some() { "times" } else { "t-step" };
            for &t in &times {
                grid.cells(t).map_err(|e| CliError::config(key, e.to_string()))?;
            }
        }
        Ok(())
    }

    pub fn scenario(&self) -> Result<ScenarioConfig> {
        Ok(ScenarioConfig {
            mass: self.mass,
            initial: self.initial(),
            grid: self.grid()?,
            times: self.sample_times(),
            engine: match self.engine {
                EngineKind::Spectral => Engine::Spectral,
                EngineKind::Kernel => Engine::Kernel {
                    max_step: self.kernel_step,
                },
            },
            record_distributions: false,
        })
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| CliError::config(key, format!("'{value}' is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::config(key, format!("'{value}' is not finite")));
    }
    Ok(v)
}

/// `"re,im"` or a bare real part.
fn parse_complex(key: &str, value: &str) -> Result<Complex64> {
    match value.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(key, re.trim())?, parse_f64(key, im.trim())?)),
        None => Ok(Complex64::new(parse_f64(key, value)?, 0.0)),
    }
}

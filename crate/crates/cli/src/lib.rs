//! Command-line front end: flags and config files in, CSV or SVG out.

pub mod config;
pub mod csv;
pub mod error;
pub mod svg;
pub mod validate;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use dirac_decoherence::experiments::{self, DistributionSnapshot, Panel, Series};
use dirac_decoherence::spectral::MassCoupling;

pub use config::{CliConfig, Command, Format};
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "dirac1d",
    version,
    about = "Chirality decoherence of a free 1+1D Dirac particle",
    after_help = "Every option can also be set in a config file as `key = value` \
                  (key = option name without dashes, `#` starts a comment). \
                  Options given on the command line override the file."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Write the spinor field at the last sample time
    Evolve(Opts),
    /// Write S(t) and the reduced density matrix at every sample time
    EntropyCurve(Opts),
    /// Write chirality distributions (t-end, or each entry of --times)
    Distributions(Opts),
    /// Regenerate the dataset behind one figure (--id fig1..fig6)
    Figure(Opts),
    /// Run the fast self-checks; exit 1 if any fails
    Validate(Opts),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// Read `key = value` settings from this file first
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Print the effective configuration as a config file and exit
    #[arg(long)]
    pub dump_config: bool,
    /// Particle mass m >= 0 [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub mass: Option<String>,
    /// Initial state: gaussian | plane-wave | positive-energy [default: gaussian]
    #[arg(long, allow_hyphen_values = true)]
    pub kind: Option<String>,
    /// Negative-chirality spinor component as "re,im" [default: 1,0]
    #[arg(long, allow_hyphen_values = true)]
    pub spinor_a: Option<String>,
    /// Positive-chirality spinor component as "re,im" [default: 1,0]
    #[arg(long, allow_hyphen_values = true)]
    pub spinor_b: Option<String>,
    /// Packet center x0 [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    /// Packet width sigma [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub width: Option<String>,
    /// Plane-wave mode index j, k = pi j / L [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub mode: Option<String>,
    /// Plane-wave energy sign: +1 | -1 [default: +1]
    #[arg(long, allow_hyphen_values = true)]
    pub energy_sign: Option<String>,
    /// Grid half extent L; the domain is [-L, L) [default: 20]
    #[arg(long, allow_hyphen_values = true)]
    pub grid_l: Option<String>,
    /// Grid point count N, even [default: 1024]
    #[arg(long, allow_hyphen_values = true)]
    pub grid_n: Option<String>,
    /// First sample time [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub t_start: Option<String>,
    /// Last sample time [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub t_end: Option<String>,
    /// Sample spacing [default: 0.01]
    #[arg(long, allow_hyphen_values = true)]
    pub t_step: Option<String>,
    /// Comma-separated sample times; replaces the t-start/t-end/t-step range
    #[arg(long, allow_hyphen_values = true)]
    pub times: Option<String>,
    /// Evolution engine: spectral | kernel [default: spectral]
    #[arg(long, allow_hyphen_values = true)]
    pub engine: Option<String>,
    /// Longest single kernel step [default: 0.1]
    #[arg(long, allow_hyphen_values = true)]
    pub kernel_step: Option<String>,
    /// Figure id for `figure`: fig1..fig6 [default: fig1]
    #[arg(long, allow_hyphen_values = true)]
    pub id: Option<String>,
    /// Output file, or - for standard output [default: -]
    #[arg(long, short, allow_hyphen_values = true)]
    pub output: Option<String>,
    /// Output format: csv | svg [default: csv]
    #[arg(long, allow_hyphen_values = true)]
    pub format: Option<String>,
    /// Test hook: flip the sign of the mass coupling in the spectral engine
    #[arg(long, hide = true)]
    pub flip_mass_coupling: bool,
}

impl Opts {
    fn pairs(&self) -> [(&'static str, &Option<String>); 19] {
        [
            ("mass", &self.mass),
            ("kind", &self.kind),
            ("spinor-a", &self.spinor_a),
            ("spinor-b", &self.spinor_b),
            ("center", &self.center),
            ("width", &self.width),
            ("mode", &self.mode),
            ("energy-sign", &self.energy_sign),
            ("grid-l", &self.grid_l),
            ("grid-n", &self.grid_n),
            ("t-start", &self.t_start),
            ("t-end", &self.t_end),
            ("t-step", &self.t_step),
            ("times", &self.times),
            ("engine", &self.engine),
            ("kernel-step", &self.kernel_step),
            ("id", &self.id),
            ("output", &self.output),
            ("format", &self.format),
        ]
    }
}

impl CliCommand {
    fn parts(&self) -> (Command, &Opts) {
        match self {
            CliCommand::Evolve(o) => (Command::Evolve, o),
            CliCommand::EntropyCurve(o) => (Command::EntropyCurve, o),
            CliCommand::Distributions(o) => (Command::Distributions, o),
            CliCommand::Figure(o) => (Command::Figure, o),
            CliCommand::Validate(o) => (Command::Validate, o),
        }
    }
}

/// Defaults, then the config file, then flags; validated.
pub fn resolve(cli: &Cli) -> Result<CliConfig> {
    let (command, opts) = cli.command.parts();
    let mut cfg = CliConfig::new(command);
    if let Some(path) = &opts.config {
        cfg.apply_file(path)?;
    }
    for (key, value) in opts.pairs() {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_to(path: &Path, content: &str) -> Result<()> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut out = std::io::stdout().lock();
        out.write_all(content.as_bytes()).map_err(io)?;
        out.flush().map_err(io)
    } else {
        std::fs::write(path, content).map_err(io)
    }
}

/// `dir/stem.ext` -> `dir/stem_<suffix>.ext`, keeping only filename-safe characters of `suffix`.
pub fn sibling_path(path: &Path, suffix: &str) -> PathBuf {
    let clean: String = suffix
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_'))
        .collect();
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{clean}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{clean}"),
    };
    path.with_file_name(name)
}

fn render_panel(cfg: &CliConfig, title: &str, panel: &Panel, as_csv: impl FnOnce() -> String) -> String {
    match cfg.format {
        Format::Csv => as_csv(),
        Format::Svg => svg::render(panel, &svg::PlotStyle::for_panel(title, panel)),
    }
}

fn distribution_panel(snapshot: &DistributionSnapshot) -> Panel {
    Panel {
        name: format!("t={}", snapshot.t),
        abscissa_label: "x".into(),
        abscissa: snapshot.x.clone(),
        series: vec![
            Series {
                label: "prob_minus".into(),
                values: snapshot.minus.clone(),
            },
            Series {
                label: "prob_plus".into(),
                values: snapshot.plus.clone(),
            },
        ],
    }
}

fn evolve(cfg: &CliConfig) -> Result<()> {
    let scenario = cfg.scenario()?;
    let t = *scenario.times.last().expect("validated nonempty");
    let field = experiments::evolve_initial(&scenario, t)?;
    let snapshot = DistributionSnapshot::of(&field, t);
    let text = render_panel(cfg, &format!("chirality densities, t = {t}"), &distribution_panel(&snapshot), || {
        csv::field_csv(&field)
    });
    write_to(&cfg.output, &text)
}

fn entropy_curve(cfg: &CliConfig) -> Result<()> {
    let result = experiments::run_scenario(&cfg.scenario()?)?;
    let panel = Panel {
        name: "entropy".into(),
        abscissa_label: "t".into(),
        abscissa: result.trace.times(),
        series: vec![Series {
            label: "S_bits".into(),
            values: result.trace.entropies(),
        }],
    };
    let title = format!("entropy, m = {}", cfg.mass);
    let text = render_panel(cfg, &title, &panel, || csv::entropy_csv(&result.trace));
    write_to(&cfg.output, &text)
}

fn distributions(cfg: &CliConfig) -> Result<()> {
    let mut scenario = cfg.scenario()?;
    if cfg.times.is_none() {
        scenario.times = vec![cfg.t_end];
    }
    if scenario.times.len() > 1 && cfg.output == Path::new("-") {
        return Err(CliError::config(
            "output",
            "several sample times need a file path; one file per time is written",
        ));
    }
    scenario.record_distributions = true;
    let result = experiments::run_scenario(&scenario)?;
    let several = result.distributions.len() > 1;
    for snap in &result.distributions {
        let panel = distribution_panel(snap);
        let title = format!("chirality densities, m = {}, t = {}", cfg.mass, snap.t);
        let text = render_panel(cfg, &title, &panel, || csv::distribution_csv(snap));
        let path = if several {
            sibling_path(&cfg.output, &panel.name)
        } else {
            cfg.output.clone()
        };
        write_to(&path, &text)?;
    }
    Ok(())
}

fn figure(cfg: &CliConfig) -> Result<()> {
    let dataset = experiments::figure(cfg.figure)?;
    for (i, panel) in dataset.panels.iter().enumerate() {
        let title = format!("{}: {}", cfg.figure.name(), panel.name);
        let text = render_panel(cfg, &title, panel, || csv::panel_csv(panel));
        if i == 0 {
            write_to(&cfg.output, &text)?;
        } else if cfg.output != Path::new("-") {
            write_to(&sibling_path(&cfg.output, &panel.name), &text)?;
        } else {
            eprintln!("note: panel '{}' skipped; pass --output to write every panel", panel.name);
        }
    }
    Ok(())
}

fn validate(flip: bool) -> Result<()> {
    let coupling = if flip {
        MassCoupling::Flipped
    } else {
        MassCoupling::Standard
    };
    let checks = validate::run_checks(coupling)?;
    for c in &checks {
        println!("{}", c.line());
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.to_string())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ValidationFailed(failed))
    }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    let cfg = resolve(cli)?;
    let (_, opts) = cli.command.parts();
    if opts.dump_config {
        return write_to(Path::new("-"), &cfg.dump());
    }
    match cfg.command {
        Command::Evolve => evolve(&cfg),
        Command::EntropyCurve => entropy_curve(&cfg),
        Command::Distributions => distributions(&cfg),
        Command::Figure => figure(&cfg),
        Command::Validate => validate(opts.flip_mass_coupling),
    }
}

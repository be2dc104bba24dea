//! Scenario runs and the datasets behind the entropy and distribution figures.

use rayon::prelude::*;

use crate::density::{reduce, reduce_unchecked, EntropySample, EntropyTrace};
use crate::error::{Error, Result};
use crate::field::{InitialSpec, SpinorField};
use crate::grid::Grid1D;
use crate::kernel;
use crate::spectral::SpectralEngine;

/// Default sampling step for entropy traces.
pub const DEFAULT_TIME_STEP: f64 = 0.01;

/// Which evolver produces the state at each sample time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Engine {
    /// Exact phase evolution straight to each sample time.
    Spectral,
    /// Composed propagator steps no longer than `max_step`.
    Kernel { max_step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub mass: f64,
    pub initial: InitialSpec,
    pub grid: Grid1D,
    pub times: Vec<f64>,
    pub engine: Engine,
    /// Also keep `|psi_-|^2` and `|psi_+|^2` at every sample time.
    pub record_distributions: bool,
}

impl ScenarioConfig {
    /// Spectral run on the desk grid with no distributions recorded.
    pub fn new(mass: f64, initial: InitialSpec, times: Vec<f64>) -> Self {
        Self {
            mass,
            initial,
            grid: Grid1D::desk(),
            times,
            engine: Engine::Spectral,
            record_distributions: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(Error::InvalidMass(self.mass));
        }
        if self.times.is_empty() {
            return Err(Error::InvalidArgument("no sample times".into()));
        }
        if self.times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(Error::InvalidArgument("sample times must be nonnegative".into()));
        }
        if self.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "sample times must be strictly increasing".into(),
            ));
        }
        if let Engine::Kernel { max_step } = self.engine {
            if !(max_step > 0.0) {
                return Err(Error::InvalidArgument("kernel step must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Chirality densities on the grid at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSnapshot {
    pub t: f64,
    pub x: Vec<f64>,
    pub minus: Vec<f64>,
    pub plus: Vec<f64>,
}

impl DistributionSnapshot {
    pub fn of(field: &SpinorField, t: f64) -> Self {
        let (minus, plus) = field.chirality_distributions();
        Self {
            t,
            x: field.grid().coordinates(),
            minus,
            plus,
        }
    }

    /// Trapezoidal `(integral |psi_-|^2, integral |psi_+|^2)`.
    pub fn weights(&self) -> (f64, f64) {
        let dx = if self.x.len() > 1 { self.x[1] - self.x[0] } else { 0.0 };
        (
            self.minus.iter().sum::<f64>() * dx,
            self.plus.iter().sum::<f64>() * dx,
        )
    }

    /// Mean position of each normalized distribution.
    pub fn means(&self) -> (f64, f64) {
        let mean = |p: &[f64]| {
            let total: f64 = p.iter().sum();
            p.iter().zip(&self.x).map(|(p, x)| p * x).sum::<f64>() / total
        };
        (mean(&self.minus), mean(&self.plus))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub trace: EntropyTrace,
    pub distributions: Vec<DistributionSnapshot>,
}

/// `start, start + step, ...` up to `end` inclusive (within rounding).
pub fn uniform_times(start: f64, end: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0, "time step must be positive");
    let count = ((end - start) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| start + i as f64 * step).collect()
}

/// Splits `t` into equal commensurate steps no longer than `max_step`.
fn kernel_schedule(grid: &Grid1D, t: f64, max_step: f64) -> Result<(usize, usize)> {
    let cells = grid.cells(t)?;
    if cells == 0 {
        return Ok((0, 0));
    }
    let mut n_steps = ((t / max_step).ceil() as usize).max(1);
    while cells % n_steps != 0 {
        n_steps += 1;
    }
    Ok((n_steps, cells / n_steps))
}

fn evolve_sample(
    cfg: &ScenarioConfig,
    engine: &SpectralEngine,
    initial: &SpinorField,
    t: f64,
) -> Result<SpinorField> {
    match cfg.engine {
        Engine::Spectral => engine.evolve(initial, t),
        Engine::Kernel { max_step } => {
            let (n_steps, _) = kernel_schedule(&cfg.grid, t, max_step)?;
            if n_steps == 0 {
                return Ok(initial.clone());
            }
            // The convolution is not exactly unitary; renormalize before tracing.
            kernel::evolve_to(initial, cfg.mass, t, n_steps)?.normalized()
        }
    }
}

/// The scenario's state at time `t`, through the configured engine.
pub fn evolve_initial(cfg: &ScenarioConfig, t: f64) -> Result<SpinorField> {
    cfg.validate()?;
    let engine = SpectralEngine::new(cfg.grid, cfg.mass)?;
    let initial = cfg.initial.build(cfg.grid, cfg.mass)?;
    evolve_sample(cfg, &engine, &initial, t)
}

/// Evolves the initial state from `t = 0` to every sample time independently.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    cfg.validate()?;
    let engine = SpectralEngine::new(cfg.grid, cfg.mass)?;
    let initial = cfg.initial.build(cfg.grid, cfg.mass)?;
    if let Engine::Kernel { max_step } = cfg.engine {
        for &t in &cfg.times {
            kernel_schedule(&cfg.grid, t, max_step)?;
        }
    }

    let samples: Vec<(EntropySample, Option<DistributionSnapshot>)> = cfg
        .times
        .par_iter()
        .map(|&t| {
            let field = evolve_sample(cfg, &engine, &initial, t)?;
            let rho = match cfg.engine {
                Engine::Spectral => reduce(&field)?,
                Engine::Kernel { .. } => reduce_unchecked(&field),
            };
            let dist = cfg
                .record_distributions
                .then(|| DistributionSnapshot::of(&field, t));
            Ok((EntropySample::new(t, rho), dist))
        })
        .collect::<Result<_>>()?;

    let mut trace = EntropyTrace::default();
    let mut distributions = Vec::new();
    for (sample, dist) in samples {
        trace.samples.push(sample);
        distributions.extend(dist);
    }
    Ok(ScenarioResult {
        trace,
        distributions,
    })
}

/// First interior sample strictly above both neighbours.
pub fn local_max_locator(trace: &EntropyTrace) -> Option<(f64, f64)> {
    trace.samples.windows(3).find_map(|w| {
        (w[1].entropy > w[0].entropy && w[1].entropy > w[2].entropy)
            .then_some((w[1].t, w[1].entropy))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown figure id '{s}' (expected fig1..fig6)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub values: Vec<f64>,
}

/// One plot: a shared abscissa and any number of labelled series.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: String,
    pub abscissa_label: String,
    pub abscissa: Vec<f64>,
    pub series: Vec<Series>,
}

impl Panel {
    pub fn series(&self, label: &str) -> Option<&[f64]> {
        self.series
            .iter()
            .find(|s| s.label == label)
            .map(|s| s.values.as_slice())
    }

    fn entropy(name: &str, trace: &EntropyTrace, label: &str) -> Self {
        Panel {
            name: name.into(),
            abscissa_label: "t".into(),
            abscissa: trace.times(),
            series: vec![Series {
                label: label.into(),
                values: trace.entropies(),
            }],
        }
    }

    fn distributions(name: &str, snapshot: &DistributionSnapshot) -> Self {
        Panel {
            name: name.into(),
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
}

/// Data behind one figure: the main panel first, insets after.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureDataset {
    pub id: FigureId,
    pub panels: Vec<Panel>,
    pub metadata: Vec<(String, String)>,
}

impl FigureDataset {
    pub fn panel(&self, name: &str) -> Option<&Panel> {
        self.panels.iter().find(|p| p.name == name)
    }

    pub fn main(&self) -> &Panel {
        &self.panels[0]
    }
}

fn mass_label(m: f64) -> String {
    format!("m={m}")
}

fn metadata(cfg: &ScenarioConfig) -> Vec<(String, String)> {
    vec![
        ("mass".into(), cfg.mass.to_string()),
        ("grid_l".into(), cfg.grid.half_extent().to_string()),
        ("grid_n".into(), cfg.grid.len().to_string()),
        ("initial".into(), format!("{:?}", cfg.initial)),
        ("engine".into(), format!("{:?}", cfg.engine)),
    ]
}

/// Entropy over `t in [0, 1]` for the equal-superposition Gaussian, one series per mass.
pub fn figure1(masses: &[f64]) -> Result<FigureDataset> {
    let times = uniform_times(0.0, 1.0, DEFAULT_TIME_STEP);
    let mut panel = Panel {
        name: "entropy".into(),
        abscissa_label: "t".into(),
        abscissa: times.clone(),
        series: Vec::new(),
    };
    let mut meta = Vec::new();
    for &m in masses {
        let cfg = ScenarioConfig::new(m, InitialSpec::equal_superposition(), times.clone());
        if meta.is_empty() {
            meta = metadata(&cfg);
            meta.retain(|(k, _)| k != "mass");
            meta.push((
                "masses".into(),
                masses.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
            ));
        }
        let result = run_scenario(&cfg)?;
        panel.series.push(Series {
            label: mass_label(m),
            values: result.trace.entropies(),
        });
    }
    Ok(FigureDataset {
        id: FigureId::Fig1,
        panels: vec![panel],
        metadata: meta,
    })
}

/// Chirality distributions at `t = 1` for the equal-superposition Gaussian.
pub fn figure2_3(mass: f64) -> Result<FigureDataset> {
    let mut cfg = ScenarioConfig::new(mass, InitialSpec::equal_superposition(), vec![1.0]);
    cfg.record_distributions = true;
    let result = run_scenario(&cfg)?;
    Ok(FigureDataset {
        id: if mass == 0.0 { FigureId::Fig2 } else { FigureId::Fig3 },
        panels: vec![Panel::distributions("distributions", &result.distributions[0])],
        metadata: metadata(&cfg),
    })
}

/// Inset times shown alongside the `m = 1` long-time entropy trace.
pub const FIGURE4_INSETS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

/// Entropy over `t in [0, 2]` for `m = 1` plus distribution insets.
pub fn figure4() -> Result<FigureDataset> {
    let times = uniform_times(0.0, 2.0, DEFAULT_TIME_STEP);
    let cfg = ScenarioConfig::new(1.0, InitialSpec::equal_superposition(), times);
    let trace = run_scenario(&cfg)?.trace;
    let mut inset_cfg = cfg.clone();
    inset_cfg.times = FIGURE4_INSETS.to_vec();
    inset_cfg.record_distributions = true;
    let insets = run_scenario(&inset_cfg)?.distributions;

    let mut panels = vec![Panel::entropy("entropy", &trace, "S_bits")];
    panels.extend(
        insets
            .iter()
            .map(|d| Panel::distributions(&format!("t={}", d.t), d)),
    );
    Ok(FigureDataset {
        id: FigureId::Fig4,
        panels,
        metadata: metadata(&cfg),
    })
}

/// Entropy over `t in [0, 1]` and distributions at `t = 0.5` for the positive-chirality Gaussian, `m = 1`.
pub fn figure5_6() -> Result<FigureDataset> {
    let times = uniform_times(0.0, 1.0, DEFAULT_TIME_STEP);
    let cfg = ScenarioConfig::new(1.0, InitialSpec::positive_chirality(), times);
    let trace = run_scenario(&cfg)?.trace;
    let mut snap_cfg = cfg.clone();
    snap_cfg.times = vec![0.5];
    snap_cfg.record_distributions = true;
    let snapshot = run_scenario(&snap_cfg)?.distributions.remove(0);
    Ok(FigureDataset {
        id: FigureId::Fig5,
        panels: vec![
            Panel::entropy("entropy", &trace, "S_bits"),
            Panel::distributions("t=0.5", &snapshot),
        ],
        metadata: metadata(&cfg),
    })
}

/// Dataset for any figure id; Fig6 is the Fig5 dataset with the distribution panel first.
pub fn figure(id: FigureId) -> Result<FigureDataset> {
    match id {
        FigureId::Fig1 => figure1(&[0.0, 1.0, 2.0]),
        FigureId::Fig2 => figure2_3(0.0),
        FigureId::Fig3 => figure2_3(1.0),
        FigureId::Fig4 => figure4(),
        FigureId::Fig5 => figure5_6(),
        FigureId::Fig6 => {
            let mut d = figure5_6()?;
            d.panels.reverse();
            d.id = FigureId::Fig6;
            Ok(d)
        }
    }
}

//! Fast self-check: the closed-form massless coherence, a stationary state,
//! and one spectral-vs-kernel step.

use num_complex::Complex64;

use dirac_decoherence::kernel::evolve_step;
use dirac_decoherence::spectral::{dispersion, MassCoupling};
use dirac_decoherence::{
    make_plane_wave, reduce, EnergySign, Grid1D, InitialSpec, SpectralEngine,
};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation < self.tolerance
    }

    pub fn line(&self) -> String {
        format!(
            "{:<24} deviation {:.3e}  tolerance {:.0e}  {}",
            self.name,
            self.deviation,
            self.tolerance,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Massless coherence: `rho01(t) = exp(-t^2)/2` and `rho00 = 1/2` for the equal-superposition Gaussian.
fn massless_coherence(grid: Grid1D) -> Result<Check> {
    let f = InitialSpec::equal_superposition().build(grid, 0.0)?;
    let engine = SpectralEngine::new(grid, 0.0)?;
    let mut worst: f64 = 0.0;
    for t in [0.25, 0.5, 1.0, 1.5] {
        let rho = reduce(&engine.evolve(&f, t)?)?;
        let expected = Complex64::new((-t * t).exp() / 2.0, 0.0);
        worst = worst
            .max((rho.rho01() - expected).norm())
            .max((rho.rho00() - 0.5).abs());
    }
    Ok(Check {
        name: "massless-coherence",
        deviation: worst,
        tolerance: 1e-6,
    })
}

/// A plane-wave eigenstate only picks up the phase `exp(-i omega t)`.
fn stationary_state(grid: Grid1D) -> Result<Check> {
    let (mass, mode, t) = (1.0, 5, 1.0);
    let f = make_plane_wave(grid, mode, EnergySign::Positive, mass)?;
    let evolved = SpectralEngine::new(grid, mass)?.evolve(&f, t)?;
    let omega = dispersion(grid.momentum(mode), mass);
    let expected = f.scaled(Complex64::from_polar(1.0, -omega * t));
    let rho_drift = reduce(&evolved)?.max_abs_diff(&reduce(&f)?);
    Ok(Check {
        name: "stationary-state",
        deviation: evolved.relative_l2(&expected).max(rho_drift),
        tolerance: 1e-9,
    })
}

/// One commensurate step near `dt = 0.1` through both engines at `m = 1`.
fn engine_cross_check(grid: Grid1D, coupling: MassCoupling) -> Result<Check> {
    let mass = 1.0;
    let f = InitialSpec::equal_superposition().build(grid, mass)?;
    let dt = (0.1 / grid.spacing()).round().max(1.0) * grid.spacing();
    let kernel = evolve_step(&f, mass, dt)?;
    let spectral = SpectralEngine::with_coupling(grid, mass, coupling)?.evolve(&f, dt)?;
    Ok(Check {
        name: "engine-cross-check",
        deviation: kernel.relative_l2(&spectral),
        tolerance: 1e-3,
    })
}

/// Runs every check on the desk grid. `coupling` is a test hook; anything but
/// `Standard` should make the cross-check fail.
pub fn run_checks(coupling: MassCoupling) -> Result<Vec<Check>> {
    let grid = Grid1D::desk();
    Ok(vec![
        massless_coherence(grid)?,
        stationary_state(grid)?,
        engine_cross_check(grid, coupling)?,
    ])
}

//! Two-component chirality spinor fields, initial conditions and diagnostics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::spectral::{EnergySign, SpectralEngine};

/// Minimum number of grid cells per packet width.
pub const MIN_CELLS_PER_WIDTH: f64 = 3.0;
/// Minimum ratio of half extent to packet width.
pub const MIN_EXTENT_PER_WIDTH: f64 = 6.0;

/// Chirality label of a spinor component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    Minus,
    Plus,
}

impl Chirality {
    pub const BOTH: [Chirality; 2] = [Chirality::Minus, Chirality::Plus];

    pub fn sign(self) -> f64 {
        match self {
            Chirality::Minus => -1.0,
            Chirality::Plus => 1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Chirality::Minus => Chirality::Plus,
            Chirality::Plus => Chirality::Minus,
        }
    }

    /// Position in the fixed `(psi_-, psi_+)` ordering.
    pub fn index(self) -> usize {
        match self {
            Chirality::Minus => 0,
            Chirality::Plus => 1,
        }
    }
}

/// The state `psi(x_i) = (psi_-(x_i), psi_+(x_i))` sampled on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    grid: Grid1D,
    minus: Vec<Complex64>,
    plus: Vec<Complex64>,
}

impl SpinorField {
    pub fn new(grid: Grid1D, minus: Vec<Complex64>, plus: Vec<Complex64>) -> Result<Self> {
        if minus.len() != grid.len() || plus.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "component lengths ({}, {}) do not match grid size {}",
                minus.len(),
                plus.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, minus, plus })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); grid.len()];
        Self {
            grid,
            minus: zero.clone(),
            plus: zero,
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn minus(&self) -> &[Complex64] {
        &self.minus
    }

    pub fn plus(&self) -> &[Complex64] {
        &self.plus
    }

    pub fn component(&self, c: Chirality) -> &[Complex64] {
        match c {
            Chirality::Minus => &self.minus,
            Chirality::Plus => &self.plus,
        }
    }

    pub(crate) fn into_components(self) -> (Vec<Complex64>, Vec<Complex64>) {
        (self.minus, self.plus)
    }

    /// Trapezoidal `sum_i (|psi_-|^2 + |psi_+|^2) dx`.
    pub fn norm(&self) -> f64 {
        let sum: f64 = self
            .minus
            .iter()
            .zip(&self.plus)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .sum();
        sum * self.grid.spacing()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            grid: self.grid,
            minus: self.minus.iter().map(|z| z * factor).collect(),
            plus: self.plus.iter().map(|z| z * factor).collect(),
        }
    }

    /// Rescaled copy with unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex64::new(1.0 / n.sqrt(), 0.0)))
    }

    /// Per-site chirality densities `(|psi_-(x_i)|^2, |psi_+(x_i)|^2)`.
    pub fn chirality_distributions(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.minus.iter().map(|z| z.norm_sqr()).collect(),
            self.plus.iter().map(|z| z.norm_sqr()).collect(),
        )
    }

    /// Mean and variance of position under the normalized density `psi^dagger psi`.
    pub fn position_moments(&self) -> Result<(f64, f64)> {
        let dx = self.grid.spacing();
        let density: Vec<f64> = self
            .minus
            .iter()
            .zip(&self.plus)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect();
        let total: f64 = density.iter().sum::<f64>() * dx;
        if total <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let mean = density
            .iter()
            .enumerate()
            .map(|(i, p)| self.grid.x(i) * p)
            .sum::<f64>()
            * dx
            / total;
        let var = density
            .iter()
            .enumerate()
            .map(|(i, p)| (self.grid.x(i) - mean).powi(2) * p)
            .sum::<f64>()
            * dx
            / total;
        Ok((mean, var))
    }

    /// Parity image: `x -> -x` with the two chirality components exchanged.
    pub fn reflected(&self) -> Self {
        let n = self.grid.len();
        let mut minus = Vec::with_capacity(n);
        let mut plus = Vec::with_capacity(n);
        for i in 0..n {
            let r = self.grid.reflect_index(i);
            minus.push(self.plus[r]);
            plus.push(self.minus[r]);
        }
        Self {
            grid: self.grid,
            minus,
            plus,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.minus
            .iter()
            .zip(&other.minus)
            .chain(self.plus.iter().zip(&other.plus))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `||self - other||_2 / ||other||_2` over both components.
    pub fn relative_l2(&self, reference: &Self) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for (a, b) in self
            .minus
            .iter()
            .zip(&reference.minus)
            .chain(self.plus.iter().zip(&reference.plus))
        {
            num += (a - b).norm_sqr();
            den += b.norm_sqr();
        }
        (num / den).sqrt()
    }
}

/// Gaussian packet `c s_alpha exp(-(x - x0)^2 / (2 sigma^2))` with unit norm.
pub fn make_gaussian_packet(
    grid: Grid1D,
    center: f64,
    width: f64,
    spinor: [Complex64; 2],
) -> Result<SpinorField> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidInitial(format!(
            "width must be positive, got {width}"
        )));
    }
    let spinor_norm = (spinor[0].norm_sqr() + spinor[1].norm_sqr()).sqrt();
    if spinor_norm == 0.0 || !spinor_norm.is_finite() {
        return Err(Error::InvalidInitial("spinor must be nonzero".into()));
    }
    let dx = grid.spacing();
    if width < MIN_CELLS_PER_WIDTH * dx {
        return Err(Error::Resolution(format!(
            "width/spacing = {:.3} is below {MIN_CELLS_PER_WIDTH}",
            width / dx
        )));
    }
    if grid.half_extent() < MIN_EXTENT_PER_WIDTH * width {
        return Err(Error::Resolution(format!(
            "half_extent/width = {:.3} is below {MIN_EXTENT_PER_WIDTH}",
            grid.half_extent() / width
        )));
    }

    let s = [spinor[0] / spinor_norm, spinor[1] / spinor_norm];
    let profile: Vec<f64> = (0..grid.len())
        .map(|i| {
            let u = (grid.x(i) - center) / width;
            (-0.5 * u * u).exp()
        })
        .collect();
    let raw = SpinorField {
        grid,
        minus: profile.iter().map(|&f| s[0] * f).collect(),
        plus: profile.iter().map(|&f| s[1] * f).collect(),
    };
    raw.normalized()
}

/// Box-normalized plane wave `e^{i k_j x} u(k_j, eps) / sqrt(2L)`.
pub fn make_plane_wave(grid: Grid1D, mode: i64, sign: EnergySign, mass: f64) -> Result<SpinorField> {
    grid.slot(mode)?;
    let engine = SpectralEngine::new(grid, mass)?;
    let k = grid.momentum(mode);
    let u = engine.basis().spinor_for_mode(mode, sign)?;
    let amp = 1.0 / (2.0 * grid.half_extent()).sqrt();
    let phases: Vec<Complex64> = (0..grid.len())
        .map(|i| Complex64::from_polar(amp, k * grid.x(i)))
        .collect();
    Ok(SpinorField {
        grid,
        minus: phases.iter().map(|p| p * u[0]).collect(),
        plus: phases.iter().map(|p| p * u[1]).collect(),
    })
}

/// Recipe for an initial state at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialSpec {
    /// Gaussian of width `width` centered at `center`, tensored with `spinor`.
    GaussianPacket {
        center: f64,
        width: f64,
        spinor: [Complex64; 2],
    },
    /// Energy eigenmode with momentum index `mode`.
    PlaneWave { mode: i64, sign: EnergySign },
    /// Gaussian packet projected onto positive energies and renormalized.
    PositiveEnergyPacket {
        center: f64,
        width: f64,
        spinor: [Complex64; 2],
    },
}

impl InitialSpec {
    /// Unit Gaussian at the origin in an equal superposition of chiralities.
    pub fn equal_superposition() -> Self {
        let s = Complex64::new(1.0, 0.0);
        InitialSpec::GaussianPacket {
            center: 0.0,
            width: 1.0,
            spinor: [s, s],
        }
    }

    /// Unit Gaussian at the origin with purely positive chirality.
    pub fn positive_chirality() -> Self {
        InitialSpec::GaussianPacket {
            center: 0.0,
            width: 1.0,
            spinor: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    pub fn build(&self, grid: Grid1D, mass: f64) -> Result<SpinorField> {
        match *self {
            InitialSpec::GaussianPacket {
                center,
                width,
                spinor,
            } => make_gaussian_packet(grid, center, width, spinor),
            InitialSpec::PlaneWave { mode, sign } => make_plane_wave(grid, mode, sign, mass),
            InitialSpec::PositiveEnergyPacket {
                center,
                width,
                spinor,
            } => {
                let packet = make_gaussian_packet(grid, center, width, spinor)?;
                let engine = SpectralEngine::new(grid, mass)?;
                engine
                    .project_energy(&packet, EnergySign::Positive)?
                    .normalized()
            }
        }
    }
}

//! Uniform periodic grid on `[-L, L)` and its discrete momentum set.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative slack used when deciding whether a time is a whole number of cells.
const COMMENSURATE_TOL: f64 = 1e-9;

/// Uniform periodic grid covering `[-L, L)` with `N` points.
///
/// Point `i` sits at `x_i = -L + i dx` with `dx = 2L / N`. `N` is even so that
/// every momentum `k_j = pi j / L`, `-N/2 <= j < N/2`, pairs with `-k_j`
/// except for the Nyquist mode, which is assigned to negative momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    half_extent: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(half_extent: f64, n_points: usize) -> Result<Self> {
        if !(half_extent.is_finite() && half_extent > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half extent must be positive and finite, got {half_extent}"
            )));
        }
        if n_points < 2 || n_points % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "point count must be even and at least 2, got {n_points}"
            )));
        }
        Ok(Self {
            half_extent,
            n_points,
        })
    }

    /// The default desk-scale grid: `L = 20`, `N = 1024`.
    pub fn desk() -> Self {
        Self {
            half_extent: 20.0,
            n_points: 1024,
        }
    }

    pub fn half_extent(&self) -> f64 {
        self.half_extent
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_extent / self.n_points as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_extent + i as f64 * self.spacing()
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Signed momentum index `j` stored in FFT slot `slot`.
    pub fn mode_index(&self, slot: usize) -> i64 {
        let n = self.n_points as i64;
        let s = slot as i64;
        if s < n / 2 {
            s
        } else {
            s - n
        }
    }

    /// FFT slot holding momentum index `j`, if `j` is on the grid.
    pub fn slot(&self, j: i64) -> Result<usize> {
        let half = self.n_points as i64 / 2;
        if j < -half || j >= half {
            return Err(Error::ModeOutOfRange {
                index: j,
                min: -half,
                max: half,
            });
        }
        Ok(j.rem_euclid(self.n_points as i64) as usize)
    }

    pub fn momentum(&self, j: i64) -> f64 {
        PI * j as f64 / self.half_extent
    }

    pub fn slot_momentum(&self, slot: usize) -> f64 {
        self.momentum(self.mode_index(slot))
    }

    /// Index of the grid point at `-x_i` (periodically).
    pub fn reflect_index(&self, i: usize) -> usize {
        (self.n_points - i) % self.n_points
    }

    /// Number of whole cells spanned by `t`, or the nearest commensurate time.
    pub fn cells(&self, t: f64) -> Result<usize> {
        let dx = self.spacing();
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "time must be finite and nonnegative, got {t}"
            )));
        }
        let ratio = t / dx;
        let nearest = ratio.round();
        if (ratio - nearest).abs() > COMMENSURATE_TOL * ratio.max(1.0) {
            return Err(Error::NonCommensurate {
                dt: t,
                spacing: dx,
                suggested: nearest.max(1.0) * dx,
            });
        }
        Ok(nearest as usize)
    }
}

impl Default for Grid1D {
    fn default() -> Self {
        Self::desk()
    }
}

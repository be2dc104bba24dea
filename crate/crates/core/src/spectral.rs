//! Exact-in-time evolution by expansion in plane-wave energy eigenstates.
//!
//! In the chiral basis `(psi_-, psi_+)` the momentum-space Hamiltonian is
//!
//! ```text
//! H(k) = [[ -k, -m ],
//!         [ -m,  k ]]
//! ```
//!
//! so a massless component of chirality `alpha` moves with velocity `alpha`
//! and the mass couples the two chiralities. Its eigenvalues are `eps * omega`
//! with `omega = sqrt(k^2 + m^2)`.
//!
//! Amplitudes are scaled so that a box-normalized plane wave has amplitude 1:
//! the forward DFT carries `1/N` and the projection onto `u(k, eps)` carries
//! `sqrt(2L)`, which makes `sum |psi_hat|^2` equal to the field norm.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::field::SpinorField;
use crate::grid::Grid1D;

type Spinor = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Sign of the energy `eps * omega` of a plane-wave eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergySign {
    Negative,
    Positive,
}

impl EnergySign {
    pub const BOTH: [EnergySign; 2] = [EnergySign::Negative, EnergySign::Positive];

    pub fn value(self) -> f64 {
        match self {
            EnergySign::Negative => -1.0,
            EnergySign::Positive => 1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            EnergySign::Negative => EnergySign::Positive,
            EnergySign::Positive => EnergySign::Negative,
        }
    }
}

/// Sign of the off-diagonal mass term of `H(k)`.
///
/// `Standard` is the physical `-m` coupling consistent with the real-space
/// propagator. `Flipped` exists so validation can demonstrate that the
/// cross-engine check is sensitive to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MassCoupling {
    #[default]
    Standard,
    Flipped,
}

impl MassCoupling {
    fn off_diagonal(self, mass: f64) -> f64 {
        match self {
            MassCoupling::Standard => -mass,
            MassCoupling::Flipped => mass,
        }
    }
}

/// `omega(k) = sqrt(k^2 + m^2)`.
pub fn dispersion(k: f64, mass: f64) -> f64 {
    k.hypot(mass)
}

/// The 2x2 chiral-basis Hamiltonian at momentum `k`.
pub fn hamiltonian(k: f64, mass: f64, coupling: MassCoupling) -> [[f64; 2]; 2] {
    let off = coupling.off_diagonal(mass);
    [[-k, off], [off, k]]
}

/// Normalized eigenvector of `H(k)` with eigenvalue `eps * omega`.
///
/// The first nonvanishing component is real and nonnegative. For `m = 0`
/// the vectors are pure chiralities; at the degenerate point `k = m = 0`
/// the `k -> 0+` limit is used, so positive energy is positive chirality.
pub fn eigenspinor(k: f64, mass: f64, sign: EnergySign, coupling: MassCoupling) -> Spinor {
    let off = coupling.off_diagonal(mass);
    let lambda = sign.value() * dispersion(k, mass);
    // Two parallel null vectors of H - lambda; take the better conditioned one.
    let from_first_row = [off, k + lambda];
    let from_second_row = [k - lambda, -off];
    let n1 = from_first_row[0].hypot(from_first_row[1]);
    let n2 = from_second_row[0].hypot(from_second_row[1]);
    let (v, n) = if n1 >= n2 {
        (from_first_row, n1)
    } else {
        (from_second_row, n2)
    };
    if n == 0.0 {
        return match sign {
            EnergySign::Positive => [ZERO, Complex64::new(1.0, 0.0)],
            EnergySign::Negative => [Complex64::new(1.0, 0.0), ZERO],
        };
    }
    let mut v = [v[0] / n, v[1] / n];
    let lead = if v[0] != 0.0 { v[0] } else { v[1] };
    if lead < 0.0 {
        v = [-v[0], -v[1]];
    }
    // Normalizing can leave a signed zero in a vanishing slot.
    v = v.map(|c| if c == 0.0 { 0.0 } else { c });
    [Complex64::new(v[0], 0.0), Complex64::new(v[1], 0.0)]
}

/// Energies and eigenspinors for every momentum of a grid, indexed by FFT slot.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyEigenbasis {
    grid: Grid1D,
    mass: f64,
    coupling: MassCoupling,
    omega: Vec<f64>,
    positive: Vec<Spinor>,
    negative: Vec<Spinor>,
}

impl EnergyEigenbasis {
    pub fn new(grid: Grid1D, mass: f64, coupling: MassCoupling) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        let n = grid.len();
        let mut omega = Vec::with_capacity(n);
        let mut positive = Vec::with_capacity(n);
        let mut negative = Vec::with_capacity(n);
        for slot in 0..n {
            let k = grid.slot_momentum(slot);
            omega.push(dispersion(k, mass));
            positive.push(eigenspinor(k, mass, EnergySign::Positive, coupling));
            negative.push(eigenspinor(k, mass, EnergySign::Negative, coupling));
        }
        Ok(Self {
            grid,
            mass,
            coupling,
            omega,
            positive,
            negative,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn coupling(&self) -> MassCoupling {
        self.coupling
    }

    pub fn omega(&self, slot: usize) -> f64 {
        self.omega[slot]
    }

    pub fn spinor(&self, slot: usize, sign: EnergySign) -> Spinor {
        match sign {
            EnergySign::Positive => self.positive[slot],
            EnergySign::Negative => self.negative[slot],
        }
    }

    pub fn spinor_for_mode(&self, mode: i64, sign: EnergySign) -> Result<Spinor> {
        Ok(self.spinor(self.grid.slot(mode)?, sign))
    }
}

/// Convenience constructor for the standard-coupling eigenbasis.
pub fn eigenbasis(grid: Grid1D, mass: f64) -> Result<EnergyEigenbasis> {
    EnergyEigenbasis::new(grid, mass, MassCoupling::Standard)
}

/// Amplitudes `psi_hat(k_j, eps)` of a field in the energy eigenbasis.
#[derive(Debug, Clone)]
pub struct ModeDecomposition {
    basis: Arc<EnergyEigenbasis>,
    positive: Vec<Complex64>,
    negative: Vec<Complex64>,
}

impl ModeDecomposition {
    /// Builds a decomposition from explicit slot-indexed amplitudes.
    pub fn from_amplitudes(
        basis: Arc<EnergyEigenbasis>,
        negative: Vec<Complex64>,
        positive: Vec<Complex64>,
    ) -> Result<Self> {
        let n = basis.grid().len();
        if negative.len() != n || positive.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} amplitudes per energy sign"
            )));
        }
        Ok(Self {
            basis,
            positive,
            negative,
        })
    }

    /// Decomposition with the listed `(mode index, sign, amplitude)` entries and zeros elsewhere.
    pub fn sparse(
        grid: Grid1D,
        mass: f64,
        entries: &[(i64, EnergySign, Complex64)],
    ) -> Result<Self> {
        let basis = Arc::new(eigenbasis(grid, mass)?);
        let mut positive = vec![ZERO; grid.len()];
        let mut negative = vec![ZERO; grid.len()];
        for &(mode, sign, amp) in entries {
            let slot = grid.slot(mode)?;
            match sign {
                EnergySign::Positive => positive[slot] += amp,
                EnergySign::Negative => negative[slot] += amp,
            }
        }
        Ok(Self {
            basis,
            positive,
            negative,
        })
    }

    pub fn basis(&self) -> &EnergyEigenbasis {
        &self.basis
    }

    pub fn grid(&self) -> &Grid1D {
        self.basis.grid()
    }

    pub fn mass(&self) -> f64 {
        self.basis.mass()
    }

    pub fn amplitudes(&self, sign: EnergySign) -> &[Complex64] {
        match sign {
            EnergySign::Positive => &self.positive,
            EnergySign::Negative => &self.negative,
        }
    }

    pub fn amplitude(&self, mode: i64, sign: EnergySign) -> Result<Complex64> {
        Ok(self.amplitudes(sign)[self.grid().slot(mode)?])
    }

    /// `sum_j sum_eps |psi_hat(k_j, eps)|^2`; equals the field norm.
    pub fn total_weight(&self) -> f64 {
        self.positive
            .iter()
            .chain(&self.negative)
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Amplitudes after evolution by `t`: each picks up `exp(-i eps omega t)`.
    pub fn evolved(&self, t: f64) -> Self {
        let phase = |slot: usize, sign: EnergySign| {
            Complex64::from_polar(1.0, -sign.value() * self.basis.omega(slot) * t)
        };
        Self {
            basis: Arc::clone(&self.basis),
            positive: self
                .positive
                .iter()
                .enumerate()
                .map(|(s, a)| a * phase(s, EnergySign::Positive))
                .collect(),
            negative: self
                .negative
                .iter()
                .enumerate()
                .map(|(s, a)| a * phase(s, EnergySign::Negative))
                .collect(),
        }
    }

    /// Copy with every amplitude of the other energy sign set to zero.
    pub fn keep_only(&self, sign: EnergySign) -> Self {
        let zeros = vec![ZERO; self.positive.len()];
        let (positive, negative) = match sign {
            EnergySign::Positive => (self.positive.clone(), zeros),
            EnergySign::Negative => (zeros, self.negative.clone()),
        };
        Self {
            basis: Arc::clone(&self.basis),
            positive,
            negative,
        }
    }

    /// Chirality spinor `sum_eps psi_hat(k, eps) e^{-i eps omega t} u(k, eps)` at one slot.
    pub fn mode_spinor(&self, slot: usize, t: f64) -> Spinor {
        let mut out = [ZERO; 2];
        for sign in EnergySign::BOTH {
            let phase = Complex64::from_polar(1.0, -sign.value() * self.basis.omega(slot) * t);
            let a = self.amplitudes(sign)[slot] * phase;
            let u = self.basis.spinor(slot, sign);
            out[0] += a * u[0];
            out[1] += a * u[1];
        }
        out
    }
}

/// Spectral evolver for one `(grid, mass)` pair with cached FFT plans.
#[derive(Clone)]
pub struct SpectralEngine {
    basis: Arc<EnergyEigenbasis>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralEngine")
            .field("grid", self.basis.grid())
            .field("mass", &self.basis.mass())
            .field("coupling", &self.basis.coupling())
            .finish()
    }
}

impl SpectralEngine {
    pub fn new(grid: Grid1D, mass: f64) -> Result<Self> {
        Self::with_coupling(grid, mass, MassCoupling::Standard)
    }

    pub fn with_coupling(grid: Grid1D, mass: f64, coupling: MassCoupling) -> Result<Self> {
        let basis = Arc::new(EnergyEigenbasis::new(grid, mass, coupling)?);
        let mut planner = FftPlanner::new();
        Ok(Self {
            forward: planner.plan_fft_forward(grid.len()),
            inverse: planner.plan_fft_inverse(grid.len()),
            basis,
        })
    }

    pub fn basis(&self) -> &EnergyEigenbasis {
        &self.basis
    }

    pub fn grid(&self) -> &Grid1D {
        self.basis.grid()
    }

    pub fn mass(&self) -> f64 {
        self.basis.mass()
    }

    fn check_grid(&self, field: &SpinorField) -> Result<()> {
        if field.grid() != self.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn decompose(&self, field: &SpinorField) -> Result<ModeDecomposition> {
        self.check_grid(field)?;
        let grid = *self.grid();
        let n = grid.len();
        let (mut minus, mut plus) = field.clone().into_components();
        self.forward.process(&mut minus);
        self.forward.process(&mut plus);

        // c_hat(k_j) = (1/N) sum_i psi(x_i) e^{-i k_j x_i}; x_0 = -L adds (-1)^j.
        let scale = (2.0 * grid.half_extent()).sqrt() / n as f64;
        let mut positive = Vec::with_capacity(n);
        let mut negative = Vec::with_capacity(n);
        for slot in 0..n {
            let shift = if slot % 2 == 0 { scale } else { -scale };
            let c = [minus[slot] * shift, plus[slot] * shift];
            for (sign, out) in [
                (EnergySign::Positive, &mut positive),
                (EnergySign::Negative, &mut negative),
            ] {
                let u = self.basis.spinor(slot, sign);
                out.push(u[0].conj() * c[0] + u[1].conj() * c[1]);
            }
        }
        Ok(ModeDecomposition {
            basis: Arc::clone(&self.basis),
            positive,
            negative,
        })
    }

    pub fn reconstruct(&self, modes: &ModeDecomposition) -> Result<SpinorField> {
        self.reconstruct_at(modes, 0.0)
    }

    /// Field of `modes` evolved by `t`, synthesized in one pass.
    pub fn reconstruct_at(&self, modes: &ModeDecomposition, t: f64) -> Result<SpinorField> {
        if modes.grid() != self.grid() {
            return Err(Error::GridMismatch);
        }
        let grid = *self.grid();
        let n = grid.len();
        let scale = 1.0 / (2.0 * grid.half_extent()).sqrt();
        let mut minus = Vec::with_capacity(n);
        let mut plus = Vec::with_capacity(n);
        for slot in 0..n {
            let shift = if slot % 2 == 0 { scale } else { -scale };
            let s = modes.mode_spinor(slot, t);
            minus.push(s[0] * shift);
            plus.push(s[1] * shift);
        }
        self.inverse.process(&mut minus);
        self.inverse.process(&mut plus);
        SpinorField::new(grid, minus, plus)
    }

    /// `psi(t)`: decompose, attach `exp(-i eps omega t)`, reconstruct.
    pub fn evolve(&self, field: &SpinorField, t: f64) -> Result<SpinorField> {
        let modes = self.decompose(field)?;
        self.reconstruct_at(&modes, t)
    }

    /// Component of `field` built from energy-sign-`sign` modes only.
    pub fn project_energy(&self, field: &SpinorField, sign: EnergySign) -> Result<SpinorField> {
        let modes = self.decompose(field)?;
        self.reconstruct(&modes.keep_only(sign))
    }
}

pub fn decompose(field: &SpinorField, mass: f64) -> Result<ModeDecomposition> {
    SpectralEngine::new(*field.grid(), mass)?.decompose(field)
}

pub fn evolve(field: &SpinorField, mass: f64, t: f64) -> Result<SpinorField> {
    SpectralEngine::new(*field.grid(), mass)?.evolve(field, t)
}

pub fn project_energy(field: &SpinorField, mass: f64, sign: EnergySign) -> Result<SpinorField> {
    SpectralEngine::new(*field.grid(), mass)?.project_energy(field, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_gaussian_packet, make_plane_wave};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn inner(a: &Spinor, b: &Spinor) -> Complex64 {
        a[0].conj() * b[0] + a[1].conj() * b[1]
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion(0.0, 1.7), 1.7);
        assert_eq!(dispersion(3.0, 4.0), 5.0);
        assert_eq!(dispersion(-2.5, 0.0), 2.5);
    }

    #[test]
    fn massless_eigenspinors_are_chiralities() {
        let s = MassCoupling::Standard;
        for k in [0.3, 2.0, 50.0] {
            assert_eq!(eigenspinor(k, 0.0, EnergySign::Positive, s), [c(0.0), c(1.0)]);
            assert_eq!(eigenspinor(k, 0.0, EnergySign::Negative, s), [c(1.0), c(0.0)]);
            assert_eq!(eigenspinor(-k, 0.0, EnergySign::Positive, s), [c(1.0), c(0.0)]);
            assert_eq!(eigenspinor(-k, 0.0, EnergySign::Negative, s), [c(0.0), c(1.0)]);
        }
    }

    #[test]
    fn rest_frame_eigenspinors() {
        // H(0) = [[0, -1], [-1, 0]]: (1, -1)/sqrt2 has energy +1, (1, 1)/sqrt2 has -1.
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let up = eigenspinor(0.0, 1.0, EnergySign::Positive, MassCoupling::Standard);
        let down = eigenspinor(0.0, 1.0, EnergySign::Negative, MassCoupling::Standard);
        assert!((up[0] - c(r)).norm() < 1e-15 && (up[1] - c(-r)).norm() < 1e-15);
        assert!((down[0] - c(r)).norm() < 1e-15 && (down[1] - c(r)).norm() < 1e-15);
    }

    #[test]
    fn basis_is_orthonormal_eigenbasis() {
        let grid = Grid1D::desk();
        for (mass, coupling) in [
            (0.0, MassCoupling::Standard),
            (0.5, MassCoupling::Standard),
            (2.0, MassCoupling::Flipped),
        ] {
            let basis = EnergyEigenbasis::new(grid, mass, coupling).unwrap();
            for slot in 0..grid.len() {
                let k = grid.slot_momentum(slot);
                let h = hamiltonian(k, mass, coupling);
                let up = basis.spinor(slot, EnergySign::Positive);
                let down = basis.spinor(slot, EnergySign::Negative);
                assert!((inner(&up, &up) - c(1.0)).norm() < 1e-14);
                assert!((inner(&down, &down) - c(1.0)).norm() < 1e-14);
                assert!(inner(&up, &down).norm() < 1e-14);
                for sign in EnergySign::BOTH {
                    let u = basis.spinor(slot, sign);
                    let e = sign.value() * basis.omega(slot);
                    for row in 0..2 {
                        let hu = u[0] * h[row][0] + u[1] * h[row][1];
                        assert!((hu - u[row] * e).norm() < 1e-12);
                    }
                    let lead = if u[0].norm() != 0.0 { u[0] } else { u[1] };
                    assert!(lead.im == 0.0 && lead.re >= 0.0);
                }
            }
        }
        assert!(eigenbasis(grid, -1.0).is_err());
    }

    #[test]
    fn plane_wave_decomposes_to_single_mode() {
        let grid = Grid1D::new(10.0, 64).unwrap();
        let engine = SpectralEngine::new(grid, 1.0).unwrap();
        let w = make_plane_wave(grid, 5, EnergySign::Negative, 1.0).unwrap();
        let modes = engine.decompose(&w).unwrap();
        let target = grid.slot(5).unwrap();
        for sign in EnergySign::BOTH {
            for (slot, a) in modes.amplitudes(sign).iter().enumerate() {
                if slot == target && sign == EnergySign::Negative {
                    assert!((a.norm() - 1.0).abs() < 1e-12);
                } else {
                    assert!(a.norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn parseval_and_roundtrip() {
        let grid = Grid1D::desk();
        let engine = SpectralEngine::new(grid, 1.3).unwrap();
        let f = make_gaussian_packet(grid, 0.4, 1.1, [c(0.2), Complex64::new(0.1, 0.9)]).unwrap();
        let modes = engine.decompose(&f).unwrap();
        assert!((modes.total_weight() - f.norm()).abs() < 1e-10);
        assert!(engine.reconstruct(&modes).unwrap().max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn zero_field_has_zero_amplitudes() {
        let grid = Grid1D::new(4.0, 32).unwrap();
        let modes = decompose(&SpinorField::zeros(grid), 1.0).unwrap();
        assert_eq!(modes.total_weight(), 0.0);
    }

    #[test]
    fn mismatched_grid_is_rejected() {
        let engine = SpectralEngine::new(Grid1D::new(4.0, 32).unwrap(), 1.0).unwrap();
        let f = SpinorField::zeros(Grid1D::new(4.0, 64).unwrap());
        assert!(matches!(engine.decompose(&f), Err(Error::GridMismatch)));
    }
}

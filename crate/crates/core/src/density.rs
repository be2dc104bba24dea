//! Reduced chirality density matrices and their von Neumann entropy.
//!
//! Tracing the position out of `|psi><psi|` leaves the 2x2 matrix
//! `rho_ab = integral psi_a(x) conj(psi_b(x)) dx`. It can be formed either from
//! the field on the grid ([`reduce`]) or directly from the energy-mode
//! amplitudes ([`reduce_from_modes`]); on the discrete grid the two agree to
//! rounding because the sum over sites of `e^{i(k - k')x}` vanishes unless
//! `k = k'`.
//!
//! Entropies are reported in bits, so a maximally mixed chirality has `S = 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpinorField;
use crate::spectral::{EnergySign, ModeDecomposition};

/// Allowed deviation of the field norm from 1 in [`reduce`].
pub const NORM_TOLERANCE: f64 = 1e-6;

type Matrix2 = [[Complex64; 2]; 2];

/// 2x2 chirality density matrix in the `(-1, +1)` ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensityMatrix {
    entries: Matrix2,
}

impl ReducedDensityMatrix {
    pub fn from_entries(entries: Matrix2) -> Self {
        Self { entries }
    }

    /// Rank-one projector `v v^dagger` for a unit spinor.
    pub fn pure(v: [Complex64; 2]) -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                entries[a][b] = v[a] * v[b].conj();
            }
        }
        Self { entries }
    }

    pub fn entries(&self) -> &Matrix2 {
        &self.entries
    }

    pub fn rho00(&self) -> f64 {
        self.entries[0][0].re
    }

    pub fn rho11(&self) -> f64 {
        self.entries[1][1].re
    }

    pub fn rho01(&self) -> Complex64 {
        self.entries[0][1]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Largest entry of `|rho - rho^dagger|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                worst = worst.max((self.entries[a][b] - self.entries[b][a].conj()).norm());
            }
        }
        worst
    }

    /// Unclamped eigenvalues `tr/2 +- sqrt(((rho00 - rho11)/2)^2 + |rho01|^2)`.
    pub fn raw_eigenvalues(&self) -> (f64, f64) {
        let half_trace = 0.5 * self.trace().re;
        let r = self.radius();
        (half_trace + r, half_trace - r)
    }

    fn radius(&self) -> f64 {
        (0.5 * (self.rho00() - self.rho11())).hypot(self.rho01().norm())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                worst = worst.max((self.entries[a][b] - other.entries[a][b]).norm());
            }
        }
        worst
    }

    /// `U rho U^dagger`.
    pub fn conjugated(&self, u: &Matrix2) -> Self {
        let mut tmp = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut out = tmp;
        for a in 0..2 {
            for b in 0..2 {
                tmp[a][b] = u[a][0] * self.entries[0][b] + u[a][1] * self.entries[1][b];
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                out[a][b] = tmp[a][0] * u[b][0].conj() + tmp[a][1] * u[b][1].conj();
            }
        }
        Self { entries: out }
    }

    /// Chirality labels exchanged.
    pub fn swapped(&self) -> Self {
        let e = &self.entries;
        Self {
            entries: [[e[1][1], e[1][0]], [e[0][1], e[0][0]]],
        }
    }
}

/// Position trace `rho_ab = sum_i psi_a(x_i) conj(psi_b(x_i)) dx` of a unit-norm field.
pub fn reduce(field: &SpinorField) -> Result<ReducedDensityMatrix> {
    let norm = field.norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    Ok(reduce_unchecked(field))
}

pub(crate) fn reduce_unchecked(field: &SpinorField) -> ReducedDensityMatrix {
    let dx = field.grid().spacing();
    let (mut p00, mut p11) = (0.0, 0.0);
    let mut p01 = Complex64::new(0.0, 0.0);
    for (a, b) in field.minus().iter().zip(field.plus()) {
        p00 += a.norm_sqr();
        p11 += b.norm_sqr();
        p01 += a * b.conj();
    }
    let (p00, p11, p01) = (p00 * dx, p11 * dx, p01 * dx);
    ReducedDensityMatrix {
        entries: [
            [Complex64::new(p00, 0.0), p01],
            [p01.conj(), Complex64::new(p11, 0.0)],
        ],
    }
}

/// `rho(t) = sum_k v_k(t) v_k(t)^dagger` with `v_k(t) = sum_eps psi_hat(k, eps) e^{-i eps omega t} u(k, eps)`.
pub fn reduce_from_modes(modes: &ModeDecomposition, t: f64) -> ReducedDensityMatrix {
    let (mut p00, mut p11) = (0.0, 0.0);
    let mut p01 = Complex64::new(0.0, 0.0);
    for slot in 0..modes.grid().len() {
        let v = modes.mode_spinor(slot, t);
        p00 += v[0].norm_sqr();
        p11 += v[1].norm_sqr();
        p01 += v[0] * v[1].conj();
    }
    ReducedDensityMatrix {
        entries: [
            [Complex64::new(p00, 0.0), p01],
            [p01.conj(), Complex64::new(p11, 0.0)],
        ],
    }
}

/// Eigenvalues `(lambda_plus, lambda_minus)` of a unit-trace matrix, clamped to `[0, 1]`.
///
/// `lambda_plus + lambda_minus == 1` exactly and `lambda_plus >= lambda_minus`.
pub fn eigenvalues2(rho: &ReducedDensityMatrix) -> (f64, f64) {
    let upper = (0.5 + rho.radius()).min(1.0);
    (upper, 1.0 - upper)
}

/// `-p log2 p - (1 - p) log2 (1 - p)` with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Von Neumann entropy `-Tr rho log2 rho`, in bits.
pub fn entropy_bits(rho: &ReducedDensityMatrix) -> f64 {
    let (hi, lo) = eigenvalues2(rho);
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(hi) + term(lo)
}

/// True when some momentum carries both energy signs above `tol`.
///
/// Only such interference terms make the reduced matrix time dependent.
pub fn decoherence_predicate(modes: &ModeDecomposition, tol: f64) -> bool {
    modes
        .amplitudes(EnergySign::Positive)
        .iter()
        .zip(modes.amplitudes(EnergySign::Negative))
        .any(|(p, n)| p.norm() > tol && n.norm() > tol)
}

/// One sample of an entropy trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySample {
    pub t: f64,
    pub entropy: f64,
    pub rho: ReducedDensityMatrix,
}

impl EntropySample {
    pub fn new(t: f64, rho: ReducedDensityMatrix) -> Self {
        Self {
            t,
            entropy: entropy_bits(&rho),
            rho,
        }
    }
}

/// Time-ordered entropy samples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EntropyTrace {
    pub samples: Vec<EntropySample>,
}

impl EntropyTrace {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn entropies(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.entropy).collect()
    }

    /// Entropy at the sample closest to `t`.
    pub fn entropy_near(&self, t: f64) -> Option<f64> {
        self.samples
            .iter()
            .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
            .map(|s| s.entropy)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

//! Real-space evolution by convolution with the exact retarded propagator.
//!
//! For a time step `dt` and separation `dx = x2 - x1` inside the lightcone
//! (`|dx| <= dt`, `tau = sqrt(dt^2 - dx^2)`) the propagator is
//!
//! ```text
//! K_aa(dx, dt) = delta(dt - a dx) - (dt + a dx) m J1(m tau) / (2 tau)
//! K_ab(dx, dt) = i m J0(m tau) / 2                       (a != b)
//! ```
//!
//! The delta part is an exact cyclic shift by `a dt` when `dt` is a whole
//! number of cells; the smooth part is integrated with the trapezoidal rule
//! over the closed cone. The scheme is not exactly unitary and serves as an
//! independent check on [`crate::spectral`].

use num_complex::Complex64;

use crate::bessel;
use crate::error::{Error, Result};
use crate::field::{Chirality, SpinorField};

/// Slack allowed on `|dx| <= dt` for rounding in caller-side coordinates.
const LIGHTCONE_SLACK: f64 = 1e-12;

/// Non-delta part of the propagator from chirality `from` to chirality `to`.
pub fn kernel_smooth(to: Chirality, from: Chirality, dx: f64, dt: f64, mass: f64) -> Result<Complex64> {
    if !(dt > 0.0) || dx.abs() > dt * (1.0 + LIGHTCONE_SLACK) {
        return Err(Error::OutsideLightcone { dx, dt });
    }
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(Error::InvalidMass(mass));
    }
    let tau = ((dt - dx) * (dt + dx)).max(0.0).sqrt();
    let z = mass * tau;
    Ok(if to == from {
        let a = from.sign();
        // m J1(m tau) / tau == m^2 J1(z) / z
        Complex64::new(-(dt + a * dx) * mass * mass * bessel::j1_over_x(z) / 2.0, 0.0)
    } else {
        Complex64::new(0.0, mass * bessel::j0_nonneg(z) / 2.0)
    })
}

/// One application of the propagator over `dt`, a whole number of cells.
pub fn evolve_step(field: &SpinorField, mass: f64, dt: f64) -> Result<SpinorField> {
    let grid = *field.grid();
    let limit = grid.half_extent() / 4.0;
    if dt > limit {
        return Err(Error::StepTooLong { dt, limit });
    }
    let cells = grid.cells(dt)?;
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(Error::InvalidMass(mass));
    }
    if cells == 0 {
        return Ok(field.clone());
    }

    let n = grid.len();
    let h = grid.spacing();
    let span = cells as i64;
    let cone_dt = cells as f64 * h;

    // Offsets d = x2 - x1 in cells, with trapezoid weights folded in.
    let weighted = |to: Chirality, from: Chirality| -> Result<Vec<Complex64>> {
        (-span..=span)
            .map(|d| {
                let w = if d.abs() == span { 0.5 * h } else { h };
                Ok(kernel_smooth(to, from, d as f64 * h, cone_dt, mass)? * w)
            })
            .collect()
    };

    let mut out = Vec::with_capacity(2);
    for to in Chirality::BOTH {
        let same = weighted(to, to)?;
        let cross = weighted(to, to.flipped())?;
        let src_same = field.component(to);
        let src_cross = field.component(to.flipped());
        let shift = (to.sign() as i64) * span;
        let values: Vec<Complex64> = (0..n as i64)
            .map(|i| {
                let wrap = |j: i64| j.rem_euclid(n as i64) as usize;
                let mut acc = src_same[wrap(i - shift)];
                for (k, d) in (-span..=span).enumerate() {
                    let j = wrap(i - d);
                    acc += same[k] * src_same[j] + cross[k] * src_cross[j];
                }
                acc
            })
            .collect();
        out.push(values);
    }
    let plus = out.pop().expect("two chiralities");
    let minus = out.pop().expect("two chiralities");
    SpinorField::new(grid, minus, plus)
}

/// `n_steps` successive applications of [`evolve_step`] covering time `t`.
pub fn evolve_to(field: &SpinorField, mass: f64, t: f64, n_steps: usize) -> Result<SpinorField> {
    if n_steps == 0 {
        return Err(Error::InvalidArgument("n_steps must be at least 1".into()));
    }
    let dt = t / n_steps as f64;
    let mut current = field.clone();
    for _ in 0..n_steps {
        current = evolve_step(&current, mass, dt)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_gaussian_packet;
    use crate::grid::Grid1D;

    use Chirality::{Minus, Plus};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn massless_kernel_vanishes() {
        for (to, from) in [(Plus, Plus), (Plus, Minus), (Minus, Plus), (Minus, Minus)] {
            assert_eq!(kernel_smooth(to, from, 0.03, 0.1, 0.0).unwrap(), c(0.0));
        }
    }

    #[test]
    fn cross_kernel_at_origin_tends_to_half_mass() {
        let v = kernel_smooth(Plus, Minus, 0.0, 1e-9, 1.7).unwrap();
        assert!((v - Complex64::new(0.0, 0.85)).norm() < 1e-12);
    }

    #[test]
    fn same_kernel_vanishes_on_backward_edge() {
        assert_eq!(kernel_smooth(Plus, Plus, -0.2, 0.2, 1.0).unwrap(), c(0.0));
        assert_eq!(kernel_smooth(Minus, Minus, 0.2, 0.2, 1.0).unwrap(), c(0.0));
        // Forward edge: -(2 dt) m^2 J1(z)/z / 2 with J1(z)/z -> 1/2
        let v = kernel_smooth(Plus, Plus, 0.2, 0.2, 1.0).unwrap();
        assert!((v - c(-0.1)).norm() < 1e-15);
    }

    #[test]
    fn same_kernel_is_real_cross_is_imaginary() {
        for dx in [-0.09, -0.02, 0.0, 0.05] {
            assert_eq!(kernel_smooth(Minus, Minus, dx, 0.1, 2.0).unwrap().im, 0.0);
            assert_eq!(kernel_smooth(Minus, Plus, dx, 0.1, 2.0).unwrap().re, 0.0);
        }
    }

    #[test]
    fn outside_lightcone_is_rejected() {
        assert!(kernel_smooth(Plus, Plus, 0.11, 0.1, 1.0).is_err());
        assert!(kernel_smooth(Plus, Plus, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn zero_step_is_identity() {
        let f = make_gaussian_packet(Grid1D::desk(), 0.0, 1.0, [c(1.0), c(1.0)]).unwrap();
        assert_eq!(evolve_step(&f, 1.0, 0.0).unwrap(), f);
    }

    #[test]
    fn massless_step_translates_each_chirality() {
        let grid = Grid1D::new(8.0, 256).unwrap();
        let f = make_gaussian_packet(grid, 0.0, 0.5, [c(0.6), Complex64::new(0.0, 0.8)]).unwrap();
        let cells = 5usize;
        let g = evolve_step(&f, 0.0, cells as f64 * grid.spacing()).unwrap();
        let n = grid.len();
        for i in 0..n {
            assert_eq!(g.minus()[i], f.minus()[(i + cells) % n]);
            assert_eq!(g.plus()[i], f.plus()[(i + n - cells) % n]);
        }
    }

    #[test]
    fn non_commensurate_step_suggests_nearest() {
        let f = make_gaussian_packet(Grid1D::desk(), 0.0, 1.0, [c(1.0), c(1.0)]).unwrap();
        match evolve_step(&f, 1.0, 0.1) {
            Err(Error::NonCommensurate { suggested, .. }) => {
                assert_eq!(suggested, 3.0 * Grid1D::desk().spacing())
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(evolve_step(&f, 1.0, 6.0), Err(Error::StepTooLong { .. })));
    }

    #[test]
    fn single_step_path_equals_step() {
        let grid = Grid1D::desk();
        let f = make_gaussian_packet(grid, 0.0, 1.0, [c(1.0), c(1.0)]).unwrap();
        let dt = 3.0 * grid.spacing();
        assert_eq!(evolve_to(&f, 1.0, dt, 1).unwrap(), evolve_step(&f, 1.0, dt).unwrap());
        assert!(evolve_to(&f, 1.0, dt, 0).is_err());
    }
}

mod common;

use common::{c, random_field, rng};
use dirac_decoherence::field::make_gaussian_packet;
use dirac_decoherence::kernel::{evolve_step, evolve_to};
use dirac_decoherence::spectral::{decompose, evolve, project_energy};
use dirac_decoherence::{
    make_plane_wave, reduce, EnergySign, Grid1D, InitialSpec, SpectralEngine, SpinorField,
};
use num_complex::Complex64;

fn unit_gaussian(grid: Grid1D, spinor: [Complex64; 2]) -> SpinorField {
    make_gaussian_packet(grid, 0.0, 1.0, spinor).unwrap()
}

#[test]
fn massless_evolution_translates_along_the_lightcone() {
    let grid = Grid1D::desk();
    let f = unit_gaussian(grid, [c(1.0), c(1.0)]);
    // Analytic f(x + t) (1, 0) + f(x - t) (0, 1), normalized like the initial state.
    let amp = f.minus()[grid.len() / 2].re;
    for t in [0.3, 1.0, 2.7] {
        let g = evolve(&f, 0.0, t).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..grid.len() {
            let x = grid.x(i);
            let left = amp * (-0.5 * (x + t) * (x + t)).exp();
            let right = amp * (-0.5 * (x - t) * (x - t)).exp();
            worst = worst
                .max((g.minus()[i] - left).norm())
                .max((g.plus()[i] - right).norm());
        }
        assert!(worst < 1e-10, "t = {t}: {worst:e}");
    }
}

#[test]
fn massless_evolution_is_exact_shift_on_grid_times() {
    let grid = Grid1D::new(10.0, 256).unwrap();
    let mut r = rng(7);
    let f = random_field(grid, &mut r);
    let cells = 13;
    let g = evolve(&f, 0.0, cells as f64 * grid.spacing()).unwrap();
    let n = grid.len();
    for i in 0..n {
        assert!((g.minus()[i] - f.minus()[(i + cells) % n]).norm() < 1e-12);
        assert!((g.plus()[i] - f.plus()[(i + n - cells) % n]).norm() < 1e-12);
    }
}

#[test]
fn plane_waves_only_acquire_a_phase() {
    let grid = Grid1D::new(8.0, 128).unwrap();
    for (mode, sign, m) in [(0, EnergySign::Positive, 1.0), (5, EnergySign::Negative, 0.7), (-9, EnergySign::Positive, 2.0)] {
        let w = make_plane_wave(grid, mode, sign, m).unwrap();
        let omega = grid.momentum(mode).hypot(m);
        for t in [0.4, 3.0] {
            let expect = w.scaled(Complex64::from_polar(1.0, -sign.value() * omega * t));
            assert!(evolve(&w, m, t).unwrap().max_abs_diff(&expect) < 1e-12);
        }
    }
}

#[test]
fn rest_frame_plane_waves_are_orthogonal() {
    let grid = Grid1D::new(8.0, 64).unwrap();
    let up = make_plane_wave(grid, 0, EnergySign::Positive, 1.0).unwrap();
    let down = make_plane_wave(grid, 0, EnergySign::Negative, 1.0).unwrap();
    let overlap: Complex64 = up
        .minus()
        .iter()
        .zip(down.minus())
        .chain(up.plus().iter().zip(down.plus()))
        .map(|(a, b)| a.conj() * b)
        .sum();
    assert!(overlap.norm() < 1e-14);
}

#[test]
fn identity_and_group_property() {
    let grid = Grid1D::desk();
    let f = make_gaussian_packet(grid, 0.5, 1.2, [c(0.3), Complex64::new(0.1, -0.7)]).unwrap();
    let engine = SpectralEngine::new(grid, 1.0).unwrap();
    assert!(engine.evolve(&f, 0.0).unwrap().max_abs_diff(&f) < 1e-14);
    let composed = engine.evolve(&engine.evolve(&f, 0.8).unwrap(), 1.7).unwrap();
    let direct = engine.evolve(&f, 2.5).unwrap();
    assert!(composed.max_abs_diff(&direct) < 1e-12);
    let back = engine.evolve(&direct, -2.5).unwrap();
    assert!(back.max_abs_diff(&f) < 1e-12);
}

#[test]
fn evolution_preserves_norm() {
    let grid = Grid1D::desk();
    let f = unit_gaussian(grid, [c(1.0), c(1.0)]);
    for m in [0.0, 1.0, 2.0] {
        let engine = SpectralEngine::new(grid, m).unwrap();
        for i in 0..=20 {
            let t = 0.5 * i as f64;
            assert!((engine.evolve(&f, t).unwrap().norm() - f.norm()).abs() < 1e-12);
        }
    }
}

#[test]
fn energy_projections_are_complete_and_idempotent() {
    let grid = Grid1D::desk();
    let f = unit_gaussian(grid, [c(1.0), c(1.0)]);
    let engine = SpectralEngine::new(grid, 1.0).unwrap();
    let pos = engine.project_energy(&f, EnergySign::Positive).unwrap();
    let neg = engine.project_energy(&f, EnergySign::Negative).unwrap();
    let n = grid.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        worst = worst
            .max((pos.minus()[i] + neg.minus()[i] - f.minus()[i]).norm())
            .max((pos.plus()[i] + neg.plus()[i] - f.plus()[i]).norm());
    }
    assert!(worst < 1e-12);
    let again = engine.project_energy(&pos, EnergySign::Positive).unwrap();
    assert!(again.max_abs_diff(&pos) < 1e-12);
    let pos_norm = pos.norm();
    assert!(pos_norm > 0.0 && pos_norm < 1.0, "{pos_norm}");

    let wave = make_plane_wave(grid, 4, EnergySign::Positive, 1.0).unwrap();
    assert!(project_energy(&wave, 1.0, EnergySign::Positive).unwrap().max_abs_diff(&wave) < 1e-12);
    assert!(project_energy(&wave, 1.0, EnergySign::Negative).unwrap().norm() < 1e-24);
}

#[test]
fn equal_superposition_populates_both_signs_at_shared_momenta() {
    let grid = Grid1D::desk();
    let f = unit_gaussian(grid, [c(1.0), c(1.0)]);
    let modes = decompose(&f, 1.0).unwrap();
    // Oracle: direct overlaps <u(k, eps), g_hat(k) (1, 1)/sqrt2> from an O(N^2) DFT.
    let basis = modes.basis();
    let dx = grid.spacing();
    let mut shared = 0;
    for j in [-3i64, 0, 2, 5] {
        let k = grid.momentum(j);
        let g_hat: Complex64 = (0..grid.len())
            .map(|i| f.minus()[i] * Complex64::from_polar(1.0, -k * grid.x(i)))
            .sum::<Complex64>()
            * dx
            / (2.0 * grid.half_extent()).sqrt();
        for sign in EnergySign::BOTH {
            let u = basis.spinor_for_mode(j, sign).unwrap();
            let expect = (u[0].conj() + u[1].conj()) * g_hat;
            let got = modes.amplitude(j, sign).unwrap();
            assert!((got - expect).norm() < 1e-12, "j = {j}");
        }
        if modes.amplitude(j, EnergySign::Positive).unwrap().norm() > 1e-6
            && modes.amplitude(j, EnergySign::Negative).unwrap().norm() > 1e-6
        {
            shared += 1;
        }
    }
    assert!(shared > 0);
}

#[test]
fn stationary_states_keep_their_reduced_matrix() {
    let grid = Grid1D::new(10.0, 128).unwrap();
    for (mode, sign, m) in [(3, EnergySign::Positive, 1.0), (-7, EnergySign::Negative, 0.4)] {
        let w = make_plane_wave(grid, mode, sign, m).unwrap();
        let rho0 = reduce(&w).unwrap();
        for t in [0.5, 2.0, 7.5] {
            let rho = reduce(&evolve(&w, m, t).unwrap()).unwrap();
            assert!(rho.max_abs_diff(&rho0) < 1e-12);
        }
    }
}

#[test]
fn kernel_step_matches_spectral_step() {
    for (n, tol) in [(1024, 1e-3), (4096, 1e-4)] {
        let grid = Grid1D::new(20.0, n).unwrap();
        let f = unit_gaussian(grid, [c(1.0), c(1.0)]);
        let dt = (0.1 / grid.spacing()).round() * grid.spacing();
        for m in [0.5, 1.0, 2.0] {
            let k = evolve_step(&f, m, dt).unwrap();
            let s = evolve(&f, m, dt).unwrap();
            assert!(k.relative_l2(&s) < tol, "N = {n}, m = {m}");
            assert!((k.norm() - f.norm()).abs() < 5e-3);
        }
    }
}

#[test]
fn massless_kernel_path_is_independent_of_step_count() {
    let grid = Grid1D::new(20.0, 1600).unwrap();
    let f = unit_gaussian(grid, [c(1.0), Complex64::new(0.0, 1.0)]);
    let one = evolve_to(&f, 0.0, 1.0, 1).unwrap();
    for n in [2, 5, 10, 20] {
        assert_eq!(evolve_to(&f, 0.0, 1.0, n).unwrap(), one);
    }
}

#[test]
fn kernel_error_is_set_by_grid_not_step_count() {
    // Trapezoid error per step scales like dt dx^2, so at fixed t the
    // accumulated error barely depends on n_steps and shrinks with dx.
    let grid = Grid1D::new(20.0, 1600).unwrap();
    let f = unit_gaussian(grid, [c(1.0), c(1.0)]);
    let reference = evolve(&f, 1.0, 1.0).unwrap();
    let errors: Vec<f64> = [5, 10, 20]
        .iter()
        .map(|&n| evolve_to(&f, 1.0, 1.0, n).unwrap().relative_l2(&reference))
        .collect();
    let (lo, hi) = errors.iter().fold((f64::MAX, 0.0f64), |(a, b), &e| (a.min(e), b.max(e)));
    assert!(hi < 1e-4 && (hi - lo) / lo < 0.05, "{errors:?}");

    let mut previous = f64::MAX;
    for n in [400, 800, 1600] {
        let grid = Grid1D::new(20.0, n).unwrap();
        let f = unit_gaussian(grid, [c(1.0), c(1.0)]);
        let reference = evolve(&f, 1.0, 1.0).unwrap();
        let err = evolve_to(&f, 1.0, 1.0, 10).unwrap().relative_l2(&reference);
        assert!(err < previous, "N = {n}: {err:e} !< {previous:e}");
        previous = err;
    }
}

#[test]
fn kernel_evolution_respects_the_lightcone() {
    let grid = Grid1D::new(10.0, 512).unwrap();
    let dx = grid.spacing();
    // Compact support on [-1, 1].
    let bump: Vec<Complex64> = (0..grid.len())
        .map(|i| {
            let x = grid.x(i);
            if x.abs() <= 1.0 { c((1.0 - x * x).powi(2)) } else { c(0.0) }
        })
        .collect();
    let f = SpinorField::new(grid, bump.clone(), bump).unwrap();
    let dt = 20.0 * dx;
    let g = evolve_step(&f, 1.5, dt).unwrap();
    for i in 0..grid.len() {
        let x = grid.x(i);
        if x < -1.0 - dt - 1e-12 || x > 1.0 + dt + 1e-12 {
            assert!(g.minus()[i].norm() < 1e-14 && g.plus()[i].norm() < 1e-14, "x = {x}");
        }
    }
}

#[test]
fn positive_energy_packet_builds_unit_field() {
    let spec = InitialSpec::PositiveEnergyPacket {
        center: 0.0,
        width: 1.0,
        spinor: [c(1.0), c(1.0)],
    };
    let f = spec.build(Grid1D::desk(), 1.0).unwrap();
    assert!((f.norm() - 1.0).abs() < 1e-12);
    let modes = decompose(&f, 1.0).unwrap();
    assert!(modes.amplitudes(EnergySign::Negative).iter().all(|a| a.norm() < 1e-10));
}

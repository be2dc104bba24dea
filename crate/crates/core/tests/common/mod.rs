#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dirac_decoherence::{Grid1D, SpinorField};

/// Fractional bits carried by the fixed-point series oracle.
const FRACTION_BITS: i64 = 320;

/// `J0(x)` or `J1(x)` by summing the ascending series in 320-bit fixed point.
///
/// `x` is decoded exactly as `mantissa * 2^exponent`; every term update is an
/// integer multiply, shift and divide, so cancellation between terms as large
/// as `1e21` (at `x = 50`) costs nothing visible in double precision.
pub fn bessel_series_oracle(order: u32, x: f64) -> f64 {
    assert!(order <= 1 && x >= 0.0);
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let (mantissa, exponent, _) = x.integer_decode();
    let m2 = BigInt::from(mantissa) * BigInt::from(mantissa);
    // x^2 / 4 = m2 * 2^(2e - 2)
    let shift = 2 * exponent as i64 - 2;

    let one = BigInt::from(1) << FRACTION_BITS as usize;
    let mut term = if order == 0 {
        one
    } else {
        // x / 2 in fixed point
        let s = exponent as i64 - 1 + FRACTION_BITS;
        let m = BigInt::from(mantissa);
        if s >= 0 {
            m << s as usize
        } else {
            m >> (-s) as usize
        }
    };
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term *= &m2;
        term = if shift >= 0 {
            term << shift as usize
        } else {
            term >> (-shift) as usize
        };
        term /= BigInt::from(k * (k + order as u64));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        if term.is_zero() {
            break;
        }
        k += 1;
    }
    sum.to_f64().unwrap() * 2f64.powi(-(FRACTION_BITS as i32))
}

/// Random unit-norm field with independent complex Gaussian-ish site values.
pub fn random_field(grid: Grid1D, rng: &mut StdRng) -> SpinorField {
    let mut sample = || {
        (0..grid.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect::<Vec<_>>()
    };
    let minus = sample();
    let plus = sample();
    SpinorField::new(grid, minus, plus)
        .unwrap()
        .normalized()
        .unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `h2((1 + e^{-t^2}) / 2)`, the massless equal-superposition entropy.
pub fn massless_entropy(t: f64) -> f64 {
    let p = (1.0 + (-t * t).exp()) / 2.0;
    let q = 1.0 - p;
    let term = |v: f64| if v > 0.0 { -v * v.ln() / std::f64::consts::LN_2 } else { 0.0 };
    term(p) + term(q)
}

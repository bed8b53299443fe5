#![allow(dead_code)]

use std::f64::consts::TAU;

use qc_core::{pdf, Angle, Complex64, QCParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_params(rng: &mut StdRng, rmax: f64) -> QCParams {
    QCParams::new(
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..rmax),
        rng.gen_range(0.0..rmax),
    )
    .unwrap()
}

/// Periodic trapezoid rule with `n` nodes.
pub fn trapezoid(n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = TAU / n as f64;
    (0..n).map(|k| f(k as f64 * h)).sum::<f64>() * h
}

pub fn quad_moment(n_nodes: usize, params: &QCParams, n: i64) -> Complex64 {
    let h = TAU / n_nodes as f64;
    (0..n_nodes)
        .map(|k| {
            let t = k as f64 * h;
            Complex64::from_polar(pdf(params, Angle::new(t)), n as f64 * t)
        })
        .sum::<Complex64>()
        * h
}

/// Central-difference derivative of the density.
pub fn fd_derivative(params: &QCParams, t: f64) -> f64 {
    let h = 1e-5;
    (pdf(params, Angle::new(t + h)) - pdf(params, Angle::new(t - h))) / (2.0 * h)
}

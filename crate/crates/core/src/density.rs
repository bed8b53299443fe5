//! Density, distribution function, normalization and moments.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{QcError, Result};
use crate::params::{CardioidParams, QCParams};
use crate::trig::TrigPoly;

/// Mean direction, mean resultant length and circular variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean_direction: Angle,
    pub resultant_length: f64,
    pub circular_variance: f64,
}

/// `I(r1, r2) = 2π(1 + r1² + r2²)`.
pub fn normalization(params: &QCParams) -> f64 {
    TAU * params.energy()
}

/// Unnormalized density as a trigonometric polynomial.
pub fn unnormalized(params: &QCParams) -> TrigPoly {
    let (m1, m2) = (params.mu1.value(), params.mu2.value());
    let c1 = Complex64::from_polar(params.r1, -m1) + Complex64::from_polar(params.r2, -m2);
    let c2 = Complex64::from_polar(params.r1 * params.r2, -(m1 + m2));
    TrigPoly::new(params.energy(), c1, c2)
}

/// Density by its cosine expansion.
pub fn pdf(params: &QCParams, theta: Angle) -> f64 {
    let QCParams { mu1, mu2, r1, r2 } = *params;
    let t = theta.value();
    let (m1, m2) = (mu1.value(), mu2.value());
    let u = 1.0
        + r1 * r1
        + r2 * r2
        + 2.0 * r1 * (t - m1).cos()
        + 2.0 * r2 * (t - m2).cos()
        + 2.0 * r1 * r2 * (2.0 * t - m1 - m2).cos();
    u / normalization(params)
}

/// Density as the squared modulus `|1 + r1·e^{i(θ-μ1)} + r2·e^{-i(θ-μ2)}|² / I`.
pub fn pdf_modulus(params: &QCParams, theta: Angle) -> f64 {
    let t = theta.value();
    let w = Complex64::new(1.0, 0.0)
        + Complex64::from_polar(params.r1, t - params.mu1.value())
        + Complex64::from_polar(params.r2, -(t - params.mu2.value()));
    w.norm_sqr() / normalization(params)
}

/// Antiderivative of the density, zero at θ = 0, on the unwrapped real line.
fn antiderivative(params: &QCParams, t: f64) -> f64 {
    let QCParams { mu1, mu2, r1, r2 } = *params;
    let (m1, m2) = (mu1.value(), mu2.value());
    let at = |x: f64| {
        params.energy() * x
            + 2.0 * r1 * (x - m1).sin()
            + 2.0 * r2 * (x - m2).sin()
            + r1 * r2 * (2.0 * x - m1 - m2).sin()
    };
    (at(t) - at(0.0)) / normalization(params)
}

/// Probability of the counterclockwise arc from `origin` to `theta`.
pub fn cdf(params: &QCParams, theta: Angle, origin: Angle) -> f64 {
    let start = origin.value();
    let mut end = theta.value();
    if end < start {
        end += TAU;
    }
    let p = antiderivative(params, end) - antiderivative(params, start);
    p.clamp(0.0, 1.0)
}

/// `E[e^{inθ}]`; nonzero only for `|n| <= 2`.
///
/// The second moment has phase `e^{i(μ1+μ2)}`, which is what term-by-term
/// integration of the `cos(2θ-μ1-μ2)` component gives.
pub fn trig_moment(params: &QCParams, n: i64) -> Complex64 {
    if n < 0 {
        return trig_moment(params, -n).conj();
    }
    let QCParams { mu1, mu2, r1, r2 } = *params;
    let e = params.energy();
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => (Complex64::from_polar(r1, mu1.value()) + Complex64::from_polar(r2, mu2.value())) / e,
        2 => Complex64::from_polar(r1 * r2, mu1.value() + mu2.value()) / e,
        _ => Complex64::new(0.0, 0.0),
    }
}

pub fn summary(params: &QCParams) -> Result<SummaryStats> {
    if params.is_uniform() {
        return Err(QcError::UndefinedDirection);
    }
    let resultant = Complex64::from_polar(params.r1, params.mu1.value())
        + Complex64::from_polar(params.r2, params.mu2.value());
    if resultant.norm() == 0.0 {
        // r1 = r2 with antipodal angles
        return Err(QcError::UndefinedDirection);
    }
    let resultant_length = resultant.norm() / params.energy();
    Ok(SummaryStats {
        mean_direction: Angle::new(resultant.arg()),
        resultant_length,
        circular_variance: 1.0 - resultant_length,
    })
}

/// The ordinary cardioid with the same density, when one radius is zero.
pub fn reduce_to_cardioid(params: &QCParams) -> Result<CardioidParams> {
    let (mu, r) = match (params.r1 == 0.0, params.r2 == 0.0) {
        (true, true) => (Angle::ZERO, 0.0),
        (false, true) => (params.mu1, params.r1),
        (true, false) => (params.mu2, params.r2),
        (false, false) => return Err(QcError::NotReducible),
    };
    Ok(CardioidParams {
        mu,
        rho: r / (1.0 + r * r),
    })
}

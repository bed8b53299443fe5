use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{QcError, Result};

/// Parameters `(μ1, μ2, r1, r2)` of a quadratic cardioid distribution.
///
/// The density is proportional to `|1 + r1·e^{i(θ-μ1)} + r2·e^{-i(θ-μ2)}|²`,
/// which is invariant under swapping `(r1, μ1)` with `(r2, μ2)`. Use
/// [`QCParams::canonicalize`] to pick the unique representative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QCParams {
    pub mu1: Angle,
    pub mu2: Angle,
    pub r1: f64,
    pub r2: f64,
}

fn check_radius(name: &str, r: f64) -> Result<()> {
    if !r.is_finite() || r < 0.0 {
        return Err(QcError::InvalidParams(format!(
            "{name} must be finite and nonnegative, got {r}"
        )));
    }
    Ok(())
}

impl QCParams {
    /// Validates the radii and reduces the angles; no reordering is done.
    pub fn new(mu1: f64, mu2: f64, r1: f64, r2: f64) -> Result<Self> {
        check_radius("r1", r1)?;
        check_radius("r2", r2)?;
        if !mu1.is_finite() || !mu2.is_finite() {
            return Err(QcError::InvalidParams("angles must be finite".into()));
        }
        Ok(QCParams {
            mu1: Angle::new(mu1),
            mu2: Angle::new(mu2),
            r1,
            r2,
        })
    }

    /// `new` followed by [`canonicalize`](Self::canonicalize).
    pub fn canonical(mu1: f64, mu2: f64, r1: f64, r2: f64) -> Result<Self> {
        Ok(Self::new(mu1, mu2, r1, r2)?.canonicalize())
    }

    pub fn uniform() -> Self {
        QCParams {
            mu1: Angle::ZERO,
            mu2: Angle::ZERO,
            r1: 0.0,
            r2: 0.0,
        }
    }

    /// Unique representative of the parameter class with the same density.
    ///
    /// Rules: a lone nonzero radius is moved into `r1` and both angles take
    /// its angle; with both radii positive the pairs are ordered so that
    /// `mu1 <= mu2`, ties broken by `r1 >= r2`; the uniform case is all zeros.
    pub fn canonicalize(self) -> Self {
        let QCParams { mu1, mu2, r1, r2 } = self;
        match (r1 == 0.0, r2 == 0.0) {
            (true, true) => QCParams::uniform(),
            (true, false) => QCParams {
                mu1: mu2,
                mu2,
                r1: r2,
                r2: 0.0,
            },
            (false, true) => QCParams {
                mu1,
                mu2: mu1,
                r1,
                r2: 0.0,
            },
            (false, false) => {
                let swap = mu1.value() > mu2.value() || (mu1 == mu2 && r1 < r2);
                if swap {
                    QCParams {
                        mu1: mu2,
                        mu2: mu1,
                        r1: r2,
                        r2: r1,
                    }
                } else {
                    self
                }
            }
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.r1 == 0.0 && self.r2 == 0.0
    }

    /// `1 + r1² + r2²`, the normalizer divided by 2π.
    #[inline]
    pub(crate) fn energy(&self) -> f64 {
        1.0 + self.r1 * self.r1 + self.r2 * self.r2
    }

    /// Largest coordinate difference to `other`, measuring angles circularly.
    pub fn max_coord_diff(&self, other: &QCParams) -> f64 {
        [
            self.mu1.distance(other.mu1),
            self.mu2.distance(other.mu2),
            (self.r1 - other.r1).abs(),
            (self.r2 - other.r2).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Validating constructor wrapper around [`QCParams::canonical`] for raw tuples.
pub fn canonicalize(mu1: f64, mu2: f64, r1: f64, r2: f64) -> Result<QCParams> {
    QCParams::canonical(mu1, mu2, r1, r2)
}

/// Ordinary cardioid `C(μ, ρ)` with density `(1 + 2ρ·cos(θ-μ)) / 2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CardioidParams {
    pub mu: Angle,
    pub rho: f64,
}

impl CardioidParams {
    pub fn new(mu: f64, rho: f64) -> Result<Self> {
        if !rho.is_finite() || rho.abs() > 0.5 {
            return Err(QcError::InvalidParams(format!(
                "cardioid rho must satisfy |rho| <= 1/2, got {rho}"
            )));
        }
        Ok(CardioidParams {
            mu: Angle::new(mu),
            rho,
        })
    }

    pub fn pdf(&self, theta: Angle) -> f64 {
        (1.0 + 2.0 * self.rho * (theta.value() - self.mu.value()).cos()) / TAU
    }
}

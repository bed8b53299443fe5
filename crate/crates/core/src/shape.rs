//! Modes, antimodes, medians and symmetry.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::density::{pdf, unnormalized};
use crate::error::{QcError, Result};
use crate::params::QCParams;
use crate::trig::TrigPoly;

/// Modes and antimodes of a density, each with its density value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryReport {
    pub modes: Vec<(Angle, f64)>,
    pub antimodes: Vec<(Angle, f64)>,
    pub unimodal: bool,
    /// Extrema where the second derivative vanishes as well.
    pub flat_points: Vec<Angle>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryCase {
    EqualRadii,
    EqualAngles,
    SingleTerm,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub axis: Option<Angle>,
    pub antipodal_axis: Option<Angle>,
    pub case: Option<SymmetryCase>,
    /// Largest `|f(axis + t) - f(axis - t)|` over a 720-point grid.
    pub reflection_defect: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MedianRule {
    /// Candidate with the smaller circular mean absolute deviation.
    #[default]
    MinDeviation,
    /// Candidate with `r1·cos(φ-μ1) + r2·cos(φ-μ2) <= 0`.
    SignCondition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MedianReport {
    /// The mean direction and its antipode.
    pub candidates: [Angle; 2],
    /// Circular mean absolute deviation at each candidate.
    pub deviations: [f64; 2],
    pub selected: Angle,
    pub rule: MedianRule,
}

const SYMMETRY_TOL: f64 = 1e-12;

/// Stationary points of an arbitrary degree-2 trigonometric polynomial.
///
/// Errors with `DegenerateUniform` when the polynomial is constant.
pub fn trig_stationary_points(p: &TrigPoly) -> Result<Vec<Angle>> {
    let d = p.derivative();
    match d.real_roots() {
        None => Err(QcError::DegenerateUniform),
        Some(r) => Ok(r.into_iter().map(Angle::new).collect()),
    }
}

/// All angles where the density derivative vanishes.
pub fn stationary_points(params: &QCParams) -> Result<Vec<Angle>> {
    if params.is_uniform() {
        return Err(QcError::DegenerateUniform);
    }
    trig_stationary_points(&unnormalized(params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Extremum {
    Max,
    Min,
    None,
}

/// First-derivative test at each root, using the derivative sign at the
/// midpoints between consecutive roots.
pub(crate) fn classify_roots(p: &TrigPoly, roots: &[Angle]) -> Vec<Extremum> {
    let d = p.derivative();
    let n = roots.len();
    if n == 0 {
        return vec![];
    }
    let mid_sign = |a: Angle, b: Angle| {
        let mut gap = (b.value() - a.value()).rem_euclid(TAU);
        if gap == 0.0 {
            gap = TAU;
        }
        d.eval(a.value() + gap / 2.0).signum()
    };
    (0..n)
        .map(|i| {
            let prev = roots[(i + n - 1) % n];
            let next = roots[(i + 1) % n];
            let before = mid_sign(prev, roots[i]);
            let after = mid_sign(roots[i], next);
            match (before > 0.0, after > 0.0) {
                (true, false) if after < 0.0 => Extremum::Max,
                (false, true) if before < 0.0 => Extremum::Min,
                _ => Extremum::None,
            }
        })
        .collect()
}

/// Splits stationary points into modes and antimodes.
///
/// On the bimodality boundary `4r1r2 = r1 + r2` (with `μ1 = μ2`) the point
/// `μ + π` is a flat antimode; it is listed in `flat_points` and the report
/// is unimodal.
pub fn classify(params: &QCParams) -> Result<StationaryReport> {
    let roots = stationary_points(params)?;
    let poly = unnormalized(params);
    let kinds = classify_roots(&poly, &roots);
    let second = poly.derivative().derivative();
    let flat_tol = 1e-9 * poly.oscillation_scale();

    let mut report = StationaryReport {
        modes: vec![],
        antimodes: vec![],
        unimodal: false,
        flat_points: vec![],
    };
    for (&theta, kind) in roots.iter().zip(kinds) {
        let value = pdf(params, theta);
        match kind {
            Extremum::Max => report.modes.push((theta, value)),
            Extremum::Min => report.antimodes.push((theta, value)),
            Extremum::None => continue,
        }
        if second.eval(theta.value()).abs() <= flat_tol {
            report.flat_points.push(theta);
        }
    }
    report.unimodal = report.modes.len() == 1;
    Ok(report)
}

fn resultant(params: &QCParams) -> Complex64 {
    Complex64::from_polar(params.r1, params.mu1.value())
        + Complex64::from_polar(params.r2, params.mu2.value())
}

/// Circular mean absolute deviation `∫ d(θ, φ) f(θ) dθ` by 256-node quadrature.
pub fn mean_deviation(params: &QCParams, phi: Angle) -> f64 {
    const N: usize = 256;
    let h = TAU / N as f64;
    (0..N)
        .map(|k| {
            let t = Angle::new(k as f64 * h);
            t.distance(phi) * pdf(params, t)
        })
        .sum::<f64>()
        * h
}

/// Both median candidates `{θ̄, θ̄ + π}` and the one selected by `rule`.
pub fn median(params: &QCParams, rule: MedianRule) -> Result<MedianReport> {
    if params.is_uniform() {
        return Err(QcError::DegenerateUniform);
    }
    let res = resultant(params);
    if res.norm() == 0.0 {
        return Err(QcError::UndefinedDirection);
    }
    let mean = Angle::new(res.arg());
    let candidates = [mean, mean.antipode()];
    let deviations = candidates.map(|c| mean_deviation(params, c));
    let selected = match rule {
        MedianRule::MinDeviation => {
            if deviations[1] < deviations[0] {
                candidates[1]
            } else {
                candidates[0]
            }
        }
        MedianRule::SignCondition => {
            let s = |phi: Angle| {
                params.r1 * (phi.value() - params.mu1.value()).cos()
                    + params.r2 * (phi.value() - params.mu2.value()).cos()
            };
            if s(candidates[0]) <= 0.0 {
                candidates[0]
            } else {
                candidates[1]
            }
        }
    };
    Ok(MedianReport {
        candidates,
        deviations,
        selected,
        rule,
    })
}

/// Largest `|f(axis + t) - f(axis - t)|` over `n` equally spaced `t`.
pub fn reflection_defect(params: &QCParams, axis: Angle, n: usize) -> f64 {
    (0..n)
        .map(|k| {
            let t = k as f64 * TAU / n as f64;
            (pdf(params, Angle::new(axis.value() + t)) - pdf(params, Angle::new(axis.value() - t)))
                .abs()
        })
        .fold(0.0, f64::max)
}

/// Reflection symmetry by the three-case characterization.
pub fn detect_symmetry(params: &QCParams) -> SymmetryReport {
    let QCParams { mu1, mu2, r1, r2 } = *params;
    let found = if r1 <= SYMMETRY_TOL && r2 <= SYMMETRY_TOL {
        Some((SymmetryCase::Uniform, Angle::ZERO))
    } else if r1.min(r2) <= SYMMETRY_TOL {
        let axis = if r1 >= r2 { mu1 } else { mu2 };
        Some((SymmetryCase::SingleTerm, axis))
    } else if mu1.distance(mu2) <= SYMMETRY_TOL {
        Some((SymmetryCase::EqualAngles, mu1))
    } else if (r1 - r2).abs() <= SYMMETRY_TOL {
        Some((
            SymmetryCase::EqualRadii,
            Angle::new((mu1.value() + mu2.value()) / 2.0),
        ))
    } else {
        None
    };
    match found {
        Some((case, axis)) => SymmetryReport {
            symmetric: true,
            axis: Some(axis),
            antipodal_axis: Some(Angle::new(axis.value() + PI)),
            case: Some(case),
            reflection_defect: Some(reflection_defect(params, axis, 720)),
        },
        None => SymmetryReport {
            symmetric: false,
            axis: None,
            antipodal_axis: None,
            case: None,
            reflection_defect: None,
        },
    }
}

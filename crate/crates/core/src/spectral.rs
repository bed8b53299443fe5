//! Fourier-side representation of degree-2 circular measures.
//!
//! A probability measure whose Fourier series stops at degree two is fixed by
//! its normalized moments `c1 = E[e^{iθ}]` and `c2 = E[e^{2iθ}]`; its density
//! is `p(θ)/2π` with `p(θ) = 1 + 2·Re(c̄1·e^{iθ}) + 2·Re(c̄2·e^{2iθ})`.
//! Membership is decided exactly by the minimum of `p`; the Toeplitz leading
//! minors are reported alongside as necessary conditions. Parameters are
//! recovered by Fejér–Riesz factorization `p ∝ |q(e^{iθ})|²` with
//! `q(z) = a0 + a1·z + a2·z²`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{QcError, Result};
use crate::params::QCParams;
use crate::roots;
use crate::shape::trig_stationary_points;
use crate::trig::TrigPoly;

type C = Complex64;

/// Membership threshold on the minimum of `p`.
pub const MEMBERSHIP_TOL: f64 = 1e-12;
/// Moments must be reproduced to this accuracy by a recovered tuple.
pub const ROUND_TRIP_TOL: f64 = 1e-8;
/// Roots with `|ln|ζ|| < BOUNDARY_TOL` are treated as lying on the circle.
const BOUNDARY_TOL: f64 = 1e-5;

/// Normalized trigonometric moments `c1`, `c2` (with `c0 = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigMoments {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl TrigMoments {
    pub fn new(c1: Complex64, c2: Complex64) -> Self {
        TrigMoments { c1, c2 }
    }

    pub fn uniform() -> Self {
        TrigMoments::new(C::new(0.0, 0.0), C::new(0.0, 0.0))
    }

    /// `E[e^{inθ}]` for any integer `n`.
    pub fn moment(&self, n: i64) -> Complex64 {
        match n {
            0 => C::new(1.0, 0.0),
            1 => self.c1,
            2 => self.c2,
            -1 => self.c1.conj(),
            -2 => self.c2.conj(),
            _ => C::new(0.0, 0.0),
        }
    }

    /// `p(θ) = 2π · density(θ)`.
    pub fn density_poly(&self) -> TrigPoly {
        TrigPoly::new(1.0, self.c1.conj(), self.c2.conj())
    }

    pub fn density(&self, theta: f64) -> f64 {
        self.density_poly().eval(theta) / TAU
    }

    pub fn is_finite(&self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }

    /// `(t·c1, t²·c2)`: convolution with a kernel whose n-th moment is `t^|n|`.
    pub fn shrink(&self, t: f64) -> Self {
        TrigMoments::new(self.c1 * t, self.c2 * (t * t))
    }

    pub fn max_diff(&self, other: &TrigMoments) -> f64 {
        (self.c1 - other.c1).norm().max((self.c2 - other.c2).norm())
    }
}

/// Coefficients of `q(z) = a0 + a1·z + a2·z²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralFactor {
    pub a0: Complex64,
    pub a1: Complex64,
    pub a2: Complex64,
}

impl SpectralFactor {
    /// `q(z) = r1·e^{-iμ1}·z² + z + r2·e^{iμ2}`, whose squared modulus on the
    /// circle is the unnormalized QC density.
    pub fn from_params(p: &QCParams) -> Self {
        SpectralFactor {
            a0: C::from_polar(p.r2, p.mu2.value()),
            a1: C::new(1.0, 0.0),
            a2: C::from_polar(p.r1, -p.mu1.value()),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.a0 + z * (self.a1 + z * self.a2)
    }

    /// `|q(e^{iθ})|²`.
    pub fn modulus_sq(&self, theta: f64) -> f64 {
        self.eval(C::from_polar(1.0, theta)).norm_sqr()
    }

    /// Reads off QC parameters from a factor with `a1 != 0`.
    pub fn to_params(&self) -> Option<QCParams> {
        let scale = self.a0.norm().max(self.a2.norm());
        if self.a1.norm() <= 1e-12 * scale || self.a1 == C::new(0.0, 0.0) {
            return None;
        }
        let w2 = self.a0 / self.a1;
        let w1 = self.a2 / self.a1;
        QCParams::new(-w1.arg(), w2.arg(), w1.norm(), w2.norm()).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub in_t2pi: bool,
    /// Leading minors of the 2×2, 3×3 and 4×4 Toeplitz sections.
    pub determinants: [f64; 3],
    /// Minimum of `p(θ) = 2π·density(θ)`; 1 for the uniform measure.
    pub min_density: f64,
    /// Angles attaining the minimum (empty for the uniform measure).
    pub argmin: Vec<Angle>,
    pub qc_representable: bool,
    pub qc_params: Option<QCParams>,
}

/// Result of inverting the moment map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    /// Selected tuple: the candidate with the smallest `r1² + r2²`.
    pub params: QCParams,
    pub factor: SpectralFactor,
    /// Every distinct canonical tuple with these moments, primary first.
    pub candidates: Vec<QCParams>,
}

pub fn moments_from_params(params: &QCParams) -> TrigMoments {
    let e = params.energy();
    let (m1, m2) = (params.mu1.value(), params.mu2.value());
    TrigMoments {
        c1: (C::from_polar(params.r1, m1) + C::from_polar(params.r2, m2)) / e,
        c2: C::from_polar(params.r1 * params.r2, m1 + m2) / e,
    }
}

/// The three leading-minor expressions as complex numbers; their imaginary
/// parts vanish up to rounding.
pub fn bochner_determinant_exprs(m: &TrigMoments) -> [Complex64; 3] {
    let (c1, c2) = (m.c1, m.c2);
    let (b1, b2) = (c1.conj(), c2.conj());
    let one = C::new(1.0, 0.0);
    let d1 = one - c1 * b1;
    let d2 = c1 * c1 * b2 - 2.0 * c1 * b1 + c2 * b1 * b1 - c2 * b2 + one;
    let d3 = c1 * c1 * b1 * b1 + 2.0 * c1 * c1 * b2 - 2.0 * c1 * c2 * b1 * b2 - 3.0 * c1 * b1
        + c2 * c2 * b2 * b2
        + 2.0 * c2 * b1 * b1
        - 2.0 * c2 * b2
        + one;
    [d1, d2, d3]
}

pub fn bochner_determinants(m: &TrigMoments) -> [f64; 3] {
    bochner_determinant_exprs(m).map(|d| d.re)
}

fn minimum(m: &TrigMoments) -> (f64, Vec<Angle>) {
    if !m.is_finite() {
        return (f64::NAN, vec![]);
    }
    let p = m.density_poly();
    let pts = match trig_stationary_points(&p) {
        Ok(pts) => pts,
        Err(_) => return (p.c0, vec![]),
    };
    let vals: Vec<f64> = pts.iter().map(|t| p.eval(t.value())).collect();
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let argmin = pts
        .into_iter()
        .zip(vals)
        .filter(|(_, v)| *v <= min + 1e-12)
        .map(|(t, _)| t)
        .collect();
    (min, argmin)
}

/// Exact membership in the class of probability measures of degree ≤ 2.
///
/// Only the membership fields are filled; see [`membership_report`].
pub fn is_member_t2pi(m: &TrigMoments) -> MembershipReport {
    let (min, argmin) = minimum(m);
    MembershipReport {
        in_t2pi: min >= -MEMBERSHIP_TOL,
        determinants: bochner_determinants(m),
        min_density: min,
        argmin,
        qc_representable: false,
        qc_params: None,
    }
}

/// Membership plus the QC representation, when one exists.
pub fn membership_report(m: &TrigMoments) -> MembershipReport {
    let mut report = is_member_t2pi(m);
    if report.in_t2pi {
        if let Ok(f) = qc_from_moments(m) {
            report.qc_representable = true;
            report.qc_params = Some(f.params);
        }
    }
    report
}

fn is_member(m: &TrigMoments) -> bool {
    minimum(m).0 >= -MEMBERSHIP_TOL
}

/// Pairs boundary roots (split double roots) by angular proximity and
/// returns one unit-modulus root per pair.
fn pair_boundary_roots(mut pts: Vec<C>) -> Option<Vec<C>> {
    if pts.len() % 2 == 1 {
        return None;
    }
    pts.sort_by(|a, b| {
        Angle::new(a.arg())
            .value()
            .total_cmp(&Angle::new(b.arg()).value())
    });
    let ang = |z: C| Angle::new(z.arg());
    let merge = |a: C, b: C| {
        let s = a / a.norm() + b / b.norm();
        if s.norm() < 1e-300 {
            a / a.norm()
        } else {
            s / s.norm()
        }
    };
    match pts.len() {
        0 => Some(vec![]),
        2 => Some(vec![merge(pts[0], pts[1])]),
        4 => {
            let spread = |i: usize, j: usize, k: usize, l: usize| {
                ang(pts[i])
                    .distance(ang(pts[j]))
                    .max(ang(pts[k]).distance(ang(pts[l])))
            };
            if spread(0, 1, 2, 3) <= spread(1, 2, 3, 0) {
                Some(vec![merge(pts[0], pts[1]), merge(pts[2], pts[3])])
            } else {
                Some(vec![merge(pts[1], pts[2]), merge(pts[3], pts[0])])
            }
        }
        _ => None,
    }
}

/// Monic `Π (z - root)` times `z^k`, padded to three ascending coefficients.
fn factor_from_roots(roots: &[C], zero_power: usize) -> Option<SpectralFactor> {
    let mut poly = vec![C::new(0.0, 0.0); zero_power];
    poly.push(C::new(1.0, 0.0));
    for &r in roots {
        let mut next = vec![C::new(0.0, 0.0); poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        poly = next;
    }
    if poly.len() > 3 {
        return None;
    }
    poly.resize(3, C::new(0.0, 0.0));
    Some(SpectralFactor {
        a0: poly[0],
        a1: poly[1],
        a2: poly[2],
    })
}

/// Recovers QC parameters from moments by Fejér–Riesz factorization.
///
/// The quartic `z²·L(z)` of the Laurent polynomial of `p` has roots in
/// reflection pairs `ζ, 1/ζ̄`; roots on the circle come with even
/// multiplicity. Each factor `q` takes one root per pair (and `z` or `1` for
/// a pair at `0`/`∞` when the degree drops). Every factor with a nonzero
/// middle coefficient gives a parameter tuple; tuples that reproduce the
/// moments to [`ROUND_TRIP_TOL`] are kept after canonicalization. Generic
/// moments admit two distinct tuples (the all-reflected choice only swaps
/// the two terms); the one with the smaller `r1² + r2²` is selected.
pub fn qc_from_moments(m: &TrigMoments) -> Result<Factorization> {
    let membership = is_member_t2pi(m);
    if !membership.in_t2pi || !membership.min_density.is_finite() {
        return Err(QcError::NotAMeasure {
            min_density: membership.min_density,
        });
    }
    let laurent = roots::stripped_laurent(&m.density_poly());
    let zero_pairs = laurent.iter().take_while(|c| c.norm() == 0.0).count();
    let found = roots::solve(&laurent[zero_pairs..5 - zero_pairs]);

    let mut inside = Vec::new();
    let mut outside = 0usize;
    let mut boundary = Vec::new();
    for z in found {
        let lr = z.norm().ln();
        if lr.abs() < BOUNDARY_TOL {
            boundary.push(z);
        } else if lr < 0.0 {
            inside.push(z);
        } else {
            outside += 1;
        }
    }
    let not_measure = QcError::NotAMeasure {
        min_density: membership.min_density,
    };
    if inside.len() != outside {
        return Err(not_measure);
    }
    let fixed = pair_boundary_roots(boundary).ok_or(not_measure)?;

    let free = inside.len();
    let mut candidates: Vec<(QCParams, SpectralFactor)> = Vec::new();
    for choice in 0..(1usize << free) {
        for zero_power in 0..=zero_pairs {
            // each zero pair contributes z or 1; only the count matters
            let mut rs = fixed.clone();
            for (k, &z) in inside.iter().enumerate() {
                rs.push(if choice >> k & 1 == 1 {
                    1.0 / z.conj()
                } else {
                    z
                });
            }
            let Some(factor) = factor_from_roots(&rs, zero_power) else {
                continue;
            };
            let Some(params) = factor.to_params() else {
                continue;
            };
            let params = params.canonicalize();
            if moments_from_params(&params).max_diff(m) > ROUND_TRIP_TOL {
                continue;
            }
            if candidates
                .iter()
                .all(|(c, _)| c.max_coord_diff(&params) > ROUND_TRIP_TOL)
            {
                candidates.push((params, SpectralFactor::from_params(&params)));
            }
        }
    }
    if candidates.is_empty() {
        return Err(QcError::NotRepresentableAsQC);
    }
    candidates.sort_by(|(a, _), (b, _)| {
        a.energy()
            .total_cmp(&b.energy())
            .then(a.mu1.value().total_cmp(&b.mu1.value()))
            .then(a.mu2.value().total_cmp(&b.mu2.value()))
    });
    let (params, factor) = candidates[0];
    Ok(Factorization {
        params,
        factor,
        candidates: candidates.into_iter().map(|(p, _)| p).collect(),
    })
}

fn require_member(m: &TrigMoments) -> Result<()> {
    let (min, _) = minimum(m);
    if min >= -MEMBERSHIP_TOL {
        Ok(())
    } else {
        Err(QcError::NotAMeasure { min_density: min })
    }
}

/// Moments of the convolution: coefficientwise product.
pub fn convolve(a: &TrigMoments, b: &TrigMoments) -> Result<TrigMoments> {
    require_member(a)?;
    require_member(b)?;
    Ok(TrigMoments::new(a.c1 * b.c1, a.c2 * b.c2))
}

/// Moments of the mixture `w·a + (1-w)·b`.
pub fn mix(a: &TrigMoments, b: &TrigMoments, w: f64) -> Result<TrigMoments> {
    if !(0.0..=1.0).contains(&w) {
        return Err(QcError::InvalidWeight(w));
    }
    require_member(a)?;
    require_member(b)?;
    Ok(TrigMoments::new(
        a.c1 * w + b.c1 * (1.0 - w),
        a.c2 * w + b.c2 * (1.0 - w),
    ))
}

/// Projected moments and the shrink factor `t` that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub moments: TrigMoments,
    pub shrink_factor: f64,
}

/// Largest `t ∈ [0, 1]` (bisection to 1e-12) such that `(t·c1, t²·c2)` is a
/// member; `t = 1` exactly when the input already is.
pub fn project_to_feasible(m: &TrigMoments) -> Projection {
    if is_member(m) {
        return Projection {
            moments: *m,
            shrink_factor: 1.0,
        };
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if is_member(&m.shrink(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Projection {
        moments: m.shrink(lo),
        shrink_factor: lo,
    }
}

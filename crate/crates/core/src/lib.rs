//! Quadratic cardioid distributions on the circle.
//!
//! The density of `QC(μ1, μ2, r1, r2)` is
//! `|1 + r1·e^{i(θ-μ1)} + r2·e^{-i(θ-μ2)}|² / (2π(1 + r1² + r2²))`,
//! a nonnegative trigonometric polynomial of degree two. This crate evaluates
//! it, analyses its shape, works with its trigonometric moments, recovers
//! parameters from moments by spectral factorization, samples from it and
//! fits it to data.

pub mod angle;
pub mod density;
pub mod error;
pub mod params;
pub mod roots;
pub mod sample_fit;
pub mod shape;
pub mod spectral;
pub mod trig;

pub use angle::Angle;
pub use density::{
    cdf, normalization, pdf, pdf_modulus, reduce_to_cardioid, summary, trig_moment, SummaryStats,
};
pub use error::{QcError, Result};
pub use num_complex::Complex64;
pub use params::{canonicalize, CardioidParams, QCParams};
pub use sample_fit::{
    empirical_moments, fit, goodness_of_fit, sample, sample_sharded, FitResult, GofReport,
    SampleBatch,
};
pub use shape::{
    classify, detect_symmetry, median, stationary_points, MedianReport, MedianRule,
    StationaryReport, SymmetryCase, SymmetryReport,
};
pub use spectral::{
    bochner_determinants, convolve, is_member_t2pi, mix, moments_from_params, project_to_feasible,
    qc_from_moments, Factorization, MembershipReport, SpectralFactor, TrigMoments,
};
pub use trig::TrigPoly;

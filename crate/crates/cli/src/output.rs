//! JSON shapes written by the subcommands.

use num_complex::Complex64;
use qc_core::{
    Factorization, FitResult, GofReport, MedianReport, MembershipReport, QCParams, QcError,
    SpectralFactor, StationaryReport, SummaryStats, SymmetryCase, SymmetryReport, TrigMoments,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub c1: Cx,
    pub c2: Cx,
}

impl From<TrigMoments> for Moments {
    fn from(m: TrigMoments) -> Self {
        Moments {
            c1: m.c1.into(),
            c2: m.c2.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PdfPoint {
    pub params: QCParams,
    pub theta: f64,
    pub pdf: f64,
}

#[derive(Debug, Serialize)]
pub struct PdfGrid {
    pub params: QCParams,
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
    pub integral: f64,
}

#[derive(Debug, Serialize)]
pub struct CdfPoint {
    pub params: QCParams,
    pub theta: f64,
    pub origin: f64,
    pub cdf: f64,
}

#[derive(Debug, Serialize)]
pub struct OrderMoment {
    pub n: i64,
    pub value: Cx,
}

#[derive(Debug, Serialize)]
pub struct MomentsOut {
    pub params: QCParams,
    pub c1: Cx,
    pub c2: Cx,
    pub moments: Vec<OrderMoment>,
}

#[derive(Debug, Serialize)]
pub struct SummaryOut {
    pub params: QCParams,
    pub mean_direction: f64,
    pub resultant_length: f64,
    pub circular_variance: f64,
}

impl SummaryOut {
    pub fn new(params: QCParams, s: SummaryStats) -> Self {
        SummaryOut {
            params,
            mean_direction: s.mean_direction.value(),
            resultant_length: s.resultant_length,
            circular_variance: s.circular_variance,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Extremum {
    pub theta: f64,
    pub density: f64,
}

#[derive(Debug, Serialize)]
pub struct ModesOut {
    pub params: QCParams,
    pub modes: Vec<Extremum>,
    pub antimodes: Vec<Extremum>,
    pub unimodal: bool,
    pub flat_points: Vec<f64>,
}

impl ModesOut {
    pub fn new(params: QCParams, r: StationaryReport) -> Self {
        let ext = |v: Vec<(qc_core::Angle, f64)>| {
            v.into_iter()
                .map(|(t, d)| Extremum {
                    theta: t.value(),
                    density: d,
                })
                .collect()
        };
        ModesOut {
            params,
            modes: ext(r.modes),
            antimodes: ext(r.antimodes),
            unimodal: r.unimodal,
            flat_points: r.flat_points.iter().map(|a| a.value()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MedianOut {
    pub params: QCParams,
    pub median: f64,
    pub candidates: [f64; 2],
    pub deviations: [f64; 2],
    pub rule: qc_core::MedianRule,
}

impl MedianOut {
    pub fn new(params: QCParams, r: MedianReport) -> Self {
        MedianOut {
            params,
            median: r.selected.value(),
            candidates: r.candidates.map(|a| a.value()),
            deviations: r.deviations,
            rule: r.rule,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SymmetryOut {
    pub params: QCParams,
    pub symmetric: bool,
    pub axis: Option<f64>,
    pub antipodal_axis: Option<f64>,
    pub case: Option<&'static str>,
    pub reflection_defect: Option<f64>,
}

impl SymmetryOut {
    pub fn new(params: QCParams, r: SymmetryReport) -> Self {
        SymmetryOut {
            params,
            symmetric: r.symmetric,
            axis: r.axis.map(|a| a.value()),
            antipodal_axis: r.antipodal_axis.map(|a| a.value()),
            case: r.case.map(|c| match c {
                SymmetryCase::EqualRadii => "equal-radii",
                SymmetryCase::EqualAngles => "equal-angles",
                SymmetryCase::SingleTerm => "single-term",
                SymmetryCase::Uniform => "uniform",
            }),
            reflection_defect: r.reflection_defect,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SampleOut {
    pub params: QCParams,
    pub n: usize,
    pub seed: u64,
    pub shards: usize,
    pub proposals: u64,
    pub acceptance_rate: f64,
    pub envelope: f64,
    pub goodness_of_fit: GofReport,
    pub angles: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct FitOut {
    pub n: usize,
    pub params: QCParams,
    pub raw_moments: Moments,
    pub fitted_moments: Moments,
    pub projected: bool,
    pub shrink_factor: f64,
    pub perturbed: bool,
    pub alternatives: Vec<QCParams>,
}

impl FitOut {
    pub fn new(n: usize, f: FitResult) -> Self {
        FitOut {
            n,
            params: f.params,
            raw_moments: f.raw_moments.into(),
            fitted_moments: f.fitted_moments.into(),
            projected: f.projected,
            shrink_factor: f.shrink_factor,
            perturbed: f.perturbed,
            alternatives: f.alternatives,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MemberOut {
    pub c1: Cx,
    pub c2: Cx,
    #[serde(rename = "in_T2pi")]
    pub in_t2pi: bool,
    pub determinants: [f64; 3],
    pub min_density: f64,
    pub argmin: Vec<f64>,
    pub qc_representable: bool,
    pub qc_params: Option<QCParams>,
}

impl MemberOut {
    pub fn new(m: TrigMoments, r: MembershipReport) -> Self {
        MemberOut {
            c1: m.c1.into(),
            c2: m.c2.into(),
            in_t2pi: r.in_t2pi,
            determinants: r.determinants,
            min_density: r.min_density,
            argmin: r.argmin.iter().map(|a| a.value()).collect(),
            qc_representable: r.qc_representable,
            qc_params: r.qc_params,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Factor {
    pub a0: Cx,
    pub a1: Cx,
    pub a2: Cx,
}

impl From<SpectralFactor> for Factor {
    fn from(f: SpectralFactor) -> Self {
        Factor {
            a0: f.a0.into(),
            a1: f.a1.into(),
            a2: f.a2.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FactorOut {
    pub c1: Cx,
    pub c2: Cx,
    pub params: QCParams,
    pub factor: Factor,
    pub candidates: Vec<QCParams>,
}

impl FactorOut {
    pub fn new(m: TrigMoments, f: Factorization) -> Self {
        FactorOut {
            c1: m.c1.into(),
            c2: m.c2.into(),
            params: f.params,
            factor: f.factor.into(),
            candidates: f.candidates,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CombineOut {
    pub operation: &'static str,
    pub left: Moments,
    pub right: Moments,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    pub c1: Cx,
    pub c2: Cx,
}

#[derive(Debug, Serialize)]
pub struct PanelOut {
    pub row: usize,
    pub col: usize,
    pub params: QCParams,
    pub modality: crate::grid::Modality,
    pub integral: f64,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_density: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ErrorOut {
    pub error: ErrorBody,
}

impl ErrorOut {
    pub fn domain(e: &QcError) -> Self {
        ErrorOut {
            error: ErrorBody {
                kind: e.kind(),
                message: e.to_string(),
                min_density: match e {
                    QcError::NotAMeasure { min_density } => Some(*min_density),
                    _ => None,
                },
            },
        }
    }

    pub fn other(kind: &'static str, message: String) -> Self {
        ErrorOut {
            error: ErrorBody {
                kind,
                message,
                min_density: None,
            },
        }
    }
}

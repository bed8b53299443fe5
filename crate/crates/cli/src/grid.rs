//! Density grids, the panel grid spec and its SVG/CSV renderings.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use qc_core::{classify, pdf, Angle, QCParams, QcError};
use serde::{Deserialize, Serialize};

/// Samples per panel curve.
pub const PANEL_SAMPLES: usize = 512;
/// Smallest accepted grid size.
pub const MIN_SAMPLES: usize = 16;

/// Equally spaced `(θ, f(θ))` samples over `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityGrid {
    pub params: QCParams,
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
}

impl DensityGrid {
    pub fn new(params: QCParams, n: usize) -> Result<Self, QcError> {
        if n < MIN_SAMPLES {
            return Err(QcError::InvalidParams(format!(
                "grid needs at least {MIN_SAMPLES} samples, got {n}"
            )));
        }
        let thetas: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
        let values = thetas
            .iter()
            .map(|&t| pdf(&params, Angle::new(t)))
            .collect();
        Ok(DensityGrid {
            params,
            thetas,
            values,
        })
    }

    /// Periodic trapezoid rule `Σ f(θ_k) · 2π/N`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * TAU / self.values.len() as f64
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("theta,density\n");
        for (t, v) in self.thetas.iter().zip(&self.values) {
            let _ = writeln!(s, "{},{}", fmt17(*t), fmt17(*v));
        }
        s
    }
}

/// Scientific notation with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub r: f64,
    pub mu: f64,
}

/// Columns carry `(r1, μ1)`, rows carry `(r2, μ2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub columns: Vec<Term>,
    pub rows: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid grid spec: {0}")]
pub struct InvalidSpec(pub String);

impl Default for GridSpec {
    fn default() -> Self {
        let t = |r, mu| Term { r, mu };
        GridSpec {
            columns: vec![t(0.5, 1.0), t(1.0, 1.5), t(1.5, 2.0)],
            rows: vec![t(0.5, 0.5), t(1.0, 1.0), t(1.5, 1.5)],
        }
    }
}

impl GridSpec {
    pub fn from_json(text: &str) -> Result<Self, InvalidSpec> {
        let spec: GridSpec = serde_json::from_str(text).map_err(|e| InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), InvalidSpec> {
        if self.columns.is_empty() || self.rows.is_empty() {
            return Err(InvalidSpec("columns and rows must be nonempty".into()));
        }
        for t in self.columns.iter().chain(&self.rows) {
            if !(t.r.is_finite() && t.r >= 0.0 && t.mu.is_finite()) {
                return Err(InvalidSpec(format!("bad term r={} mu={}", t.r, t.mu)));
            }
        }
        Ok(())
    }

    /// Panels in row-major order.
    pub fn panels(&self, samples: usize) -> Result<Vec<Panel>, QcError> {
        let mut out = Vec::with_capacity(self.rows.len() * self.columns.len());
        for (row, r) in self.rows.iter().enumerate() {
            for (col, c) in self.columns.iter().enumerate() {
                let params = QCParams::new(c.mu, r.mu, c.r, r.r)?;
                out.push(Panel {
                    row,
                    col,
                    params,
                    grid: DensityGrid::new(params, samples)?,
                    modality: Modality::of(&params),
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    Uniform,
    Unimodal,
    Bimodal,
}

impl Modality {
    pub fn of(params: &QCParams) -> Self {
        match classify(params) {
            Ok(r) if r.modes.len() >= 2 => Modality::Bimodal,
            Ok(_) => Modality::Unimodal,
            Err(_) => Modality::Uniform,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Modality::Uniform => "uniform",
            Modality::Unimodal => "unimodal",
            Modality::Bimodal => "bimodal",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub row: usize,
    pub col: usize,
    pub params: QCParams,
    pub grid: DensityGrid,
    pub modality: Modality,
}

impl Panel {
    pub fn caption(&self) -> String {
        let p = &self.params;
        format!(
            "QC({}, {}, {}, {}): {}",
            p.mu1.value(),
            p.mu2.value(),
            p.r1,
            p.r2,
            self.modality.label()
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub panels: Vec<Panel>,
    pub svg: String,
    pub csv: String,
}

pub fn plot_grid(
    spec: &GridSpec,
    width: f64,
    height: f64,
    samples: usize,
) -> Result<Plot, QcError> {
    let panels = spec.panels(samples)?;
    let svg = render_svg(spec, &panels, width, height);
    let mut csv = String::from("panel,theta,density\n");
    for (k, p) in panels.iter().enumerate() {
        for (t, v) in p.grid.thetas.iter().zip(&p.grid.values) {
            let _ = writeln!(csv, "{k},{},{}", fmt17(*t), fmt17(*v));
        }
    }
    Ok(Plot { panels, svg, csv })
}

fn render_svg(spec: &GridSpec, panels: &[Panel], width: f64, height: f64) -> String {
    let pw = width / spec.columns.len() as f64;
    let ph = height / spec.rows.len() as f64;
    let (ml, mr, mt, mb) = (48.0, 12.0, 34.0, 30.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
    for p in panels {
        let x0 = p.col as f64 * pw + ml;
        let y0 = p.row as f64 * ph + mt;
        let w = pw - ml - mr;
        let h = ph - mt - mb;
        let top = p.grid.values.iter().cloned().fold(0.0, f64::max) * 1.1;
        let top = if top > 0.0 { top } else { 1.0 };
        let _ = writeln!(s, r#"<g id="panel-{}-{}">"#, p.row, p.col);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
            x0 + w / 2.0,
            y0 - 12.0,
            p.caption()
        );
        let _ = writeln!(
            s,
            r#"<rect x="{x0:.2}" y="{y0:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="black"/>"#
        );
        let mut pts = String::new();
        let n = p.grid.thetas.len();
        for k in 0..=n {
            let (t, v) = if k == n {
                (TAU, p.grid.values[0])
            } else {
                (p.grid.thetas[k], p.grid.values[k])
            };
            let x = x0 + w * t / TAU;
            let y = y0 + h * (1.0 - v / top);
            let _ = write!(pts, "{}{x:.2},{y:.2}", if k == 0 { "" } else { " " });
        }
        let _ = writeln!(
            s,
            r#"<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#
        );
        for (frac, label) in [(0.0, "0"), (0.5, "π"), (1.0, "2π")] {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{label}</text>"#,
                x0 + w * frac,
                y0 + h + 16.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{:.3}</text>"#,
            x0 - 4.0,
            y0 + 4.0,
            top
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">0</text>"#,
            x0 - 4.0,
            y0 + h + 4.0
        );
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

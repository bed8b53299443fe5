//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qc_core::{
    cdf, classify, convolve, detect_symmetry, fit, goodness_of_fit, median, mix,
    moments_from_params, pdf, qc_from_moments, sample_fit::envelope, sample_sharded,
    spectral::membership_report, summary, trig_moment, Angle, MedianRule, QCParams, QcError,
    TrigMoments,
};
use serde::Deserialize;
use serde_json::Value;

use crate::complex::parse_complex;
use crate::grid::{plot_grid, DensityGrid, GridSpec, InvalidSpec, PANEL_SAMPLES};
use crate::output::*;

#[derive(Debug, Parser)]
#[command(
    name = "qc",
    version,
    about = "Quadratic cardioid distributions on the circle"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "params_json",
        conflicts_with = "params_json"
    )]
    pub mu1: Option<f64>,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "params_json",
        conflicts_with = "params_json"
    )]
    pub mu2: Option<f64>,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "params_json",
        conflicts_with = "params_json"
    )]
    pub r1: Option<f64>,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "params_json",
        conflicts_with = "params_json"
    )]
    pub r2: Option<f64>,
    /// JSON file with keys mu1, mu2, r1, r2
    #[arg(long, value_name = "FILE")]
    pub params_json: Option<PathBuf>,
    /// Read every input angle in degrees
    #[arg(long)]
    pub degrees: bool,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    /// First moment, as a+bi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c1: Complex64,
    /// Second moment, as a+bi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c2: Complex64,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long = "a-c1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub a_c1: Complex64,
    #[arg(long = "a-c2", value_parser = parse_complex, allow_hyphen_values = true)]
    pub a_c2: Complex64,
    #[arg(long = "b-c1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub b_c1: Complex64,
    #[arg(long = "b-c2", value_parser = parse_complex, allow_hyphen_values = true)]
    pub b_c2: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    MinDeviation,
    SignCondition,
}

impl From<RuleArg> for MedianRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::MinDeviation => MedianRule::MinDeviation,
            RuleArg::SignCondition => MedianRule::SignCondition,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density at one angle, or on an equally spaced grid
    Pdf {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(
            long,
            allow_negative_numbers = true,
            required_unless_present = "grid",
            conflicts_with = "grid"
        )]
        theta: Option<f64>,
        /// Number of equally spaced angles (at least 16)
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Probability of the counterclockwise arc from --origin to --theta
    Cdf {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        origin: f64,
    },
    /// Trigonometric moments of orders 0..=max-order
    Moments {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        max_order: i64,
    },
    /// Mean direction, resultant length and circular variance
    Summary {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Modes and antimodes
    Modes {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Circular median
    Median {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = RuleArg::MinDeviation)]
        rule: RuleArg,
    },
    /// Reflection symmetry and its axis
    Symmetry {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Rejection sampling (QC_SEED, when set, overrides --seed)
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Method-of-moments fit to angles read from a file ("-" for stdin)
    Fit {
        #[arg(long, value_name = "FILE")]
        angles_file: PathBuf,
        #[arg(long)]
        degrees: bool,
    },
    /// Membership in the degree-two moment class and QC representability
    Member {
        #[command(flatten)]
        moments: MomentArgs,
    },
    /// Spectral factorization of moments into QC parameters
    Factor {
        #[command(flatten)]
        moments: MomentArgs,
    },
    /// Moments of the convolution of two members
    Convolve {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Moments of the mixture weight·a + (1 - weight)·b
    Mix {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_negative_numbers = true)]
        weight: f64,
    },
    /// Panel grid of density curves as SVG, with a companion CSV
    PlotGrid {
        /// JSON grid spec; defaults to the 3×3 reference grid
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
        /// Write the SVG here and the CSV next to it; prints a JSON manifest
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// CSV path (defaults to --out with a .csv extension)
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1200.0)]
        width: f64,
        #[arg(long, default_value_t = 1200.0)]
        height: f64,
        #[arg(long, default_value_t = PANEL_SAMPLES)]
        samples: usize,
    },
}

/// Failure of a command, mapped to an exit status.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1, message on stderr.
    Usage(String),
    /// Exit 2, error object on stdout.
    Domain(ErrorOut),
}

impl From<QcError> for Failure {
    fn from(e: QcError) -> Self {
        Failure::Domain(ErrorOut::domain(&e))
    }
}

impl From<InvalidSpec> for Failure {
    fn from(e: InvalidSpec) -> Self {
        Failure::Domain(ErrorOut::other("InvalidSpec", e.to_string()))
    }
}

/// What a successful command writes to stdout.
pub enum Emit {
    Json(Value),
    Text(String),
}

fn json<T: serde::Serialize>(v: T) -> Emit {
    Emit::Json(serde_json::to_value(v).expect("output types serialize"))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s).map(|_| ()))
    };
    res.map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(s)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    mu1: f64,
    mu2: f64,
    r1: f64,
    r2: f64,
}

fn angle_in(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

impl ParamArgs {
    /// Parameters as given (not canonicalized).
    pub fn resolve(&self) -> Result<QCParams, Failure> {
        let (mu1, mu2, r1, r2) = match &self.params_json {
            Some(path) => {
                let f: ParamsFile = serde_json::from_str(&read_file(path)?)
                    .map_err(|e| QcError::InvalidParams(format!("params file: {e}")))?;
                (f.mu1, f.mu2, f.r1, f.r2)
            }
            None => (
                self.mu1.unwrap_or_default(),
                self.mu2.unwrap_or_default(),
                self.r1.unwrap_or_default(),
                self.r2.unwrap_or_default(),
            ),
        };
        Ok(QCParams::new(
            angle_in(mu1, self.degrees),
            angle_in(mu2, self.degrees),
            r1,
            r2,
        )?)
    }

    fn angle(&self, x: f64) -> Angle {
        Angle::new(angle_in(x, self.degrees))
    }
}

fn parse_angles(text: &str, degrees: bool) -> Result<Vec<Angle>, Failure> {
    let mut out = Vec::new();
    for (k, tok) in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
    {
        if k == 0 && tok == "theta" {
            continue;
        }
        let x: f64 = tok
            .parse()
            .ok()
            .filter(|x: &f64| x.is_finite())
            .ok_or_else(|| {
                Failure::Domain(ErrorOut::other(
                    "InvalidInput",
                    format!("not an angle: {tok:?}"),
                ))
            })?;
        out.push(Angle::new(angle_in(x, degrees)));
    }
    Ok(out)
}

/// Effective seed: `QC_SEED` when set, else `--seed`.
pub fn effective_seed(flag: u64, env: Option<&str>) -> Result<u64, Failure> {
    match env {
        Some(s) => s.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "QC_SEED must be an unsigned 64-bit integer, got {s:?}"
            ))
        }),
        None => Ok(flag),
    }
}

pub fn execute(cmd: &Command, env_seed: Option<&str>) -> Result<Emit, Failure> {
    match cmd {
        Command::Pdf {
            params,
            theta,
            grid,
            format,
        } => {
            let p = params.resolve()?;
            let g = match (theta, grid) {
                (Some(t), _) => {
                    let t = params.angle(*t);
                    let v = pdf(&p, t);
                    if *format == Format::Csv {
                        return Ok(Emit::Text(format!(
                            "theta,density\n{},{}\n",
                            crate::grid::fmt17(t.value()),
                            crate::grid::fmt17(v)
                        )));
                    }
                    return Ok(json(PdfPoint {
                        params: p,
                        theta: t.value(),
                        pdf: v,
                    }));
                }
                (None, Some(n)) => DensityGrid::new(p, *n)?,
                (None, None) => unreachable!("clap requires --theta or --grid"),
            };
            Ok(match format {
                Format::Csv => Emit::Text(g.to_csv()),
                Format::Json => json(PdfGrid {
                    params: p,
                    integral: g.integral(),
                    thetas: g.thetas,
                    values: g.values,
                }),
            })
        }
        Command::Cdf {
            params,
            theta,
            origin,
        } => {
            let p = params.resolve()?;
            let (t, o) = (params.angle(*theta), params.angle(*origin));
            Ok(json(CdfPoint {
                params: p,
                theta: t.value(),
                origin: o.value(),
                cdf: cdf(&p, t, o),
            }))
        }
        Command::Moments { params, max_order } => {
            let p = params.resolve()?;
            if *max_order < 0 {
                return Err(Failure::Usage("--max-order must be nonnegative".into()));
            }
            let m = moments_from_params(&p);
            Ok(json(MomentsOut {
                params: p,
                c1: m.c1.into(),
                c2: m.c2.into(),
                moments: (0..=*max_order)
                    .map(|n| OrderMoment {
                        n,
                        value: trig_moment(&p, n).into(),
                    })
                    .collect(),
            }))
        }
        Command::Summary { params } => {
            let p = params.resolve()?;
            Ok(json(SummaryOut::new(p, summary(&p)?)))
        }
        Command::Modes { params } => {
            let p = params.resolve()?;
            Ok(json(ModesOut::new(p, classify(&p)?)))
        }
        Command::Median { params, rule } => {
            let p = params.resolve()?;
            Ok(json(MedianOut::new(p, median(&p, (*rule).into())?)))
        }
        Command::Symmetry { params } => {
            let p = params.resolve()?;
            Ok(json(SymmetryOut::new(p, detect_symmetry(&p))))
        }
        Command::Sample {
            params,
            n,
            seed,
            shards,
            format,
        } => {
            let p = params.resolve()?;
            let seed = effective_seed(*seed, env_seed)?;
            if *shards == 0 {
                return Err(Failure::Usage("--shards must be at least 1".into()));
            }
            let batch = sample_sharded(&p, *n, seed, *shards)?;
            if *format == Format::Csv {
                let mut s = String::from("theta\n");
                for a in &batch.angles {
                    s.push_str(&crate::grid::fmt17(a.value()));
                    s.push('\n');
                }
                return Ok(Emit::Text(s));
            }
            Ok(json(SampleOut {
                params: p,
                n: *n,
                seed,
                shards: (*shards).min(*n),
                proposals: batch.proposals,
                acceptance_rate: batch.acceptance_rate(),
                envelope: envelope(&p),
                goodness_of_fit: goodness_of_fit(&p, &batch.angles)?,
                angles: batch.angles.iter().map(|a| a.value()).collect(),
            }))
        }
        Command::Fit {
            angles_file,
            degrees,
        } => {
            let angles = parse_angles(&read_file(angles_file)?, *degrees)?;
            Ok(json(FitOut::new(angles.len(), fit(&angles)?)))
        }
        Command::Member { moments } => {
            let m = TrigMoments::new(moments.c1, moments.c2);
            Ok(json(MemberOut::new(m, membership_report(&m))))
        }
        Command::Factor { moments } => {
            let m = TrigMoments::new(moments.c1, moments.c2);
            Ok(json(FactorOut::new(m, qc_from_moments(&m)?)))
        }
        Command::Convolve { pair } => combine(pair, None),
        Command::Mix { pair, weight } => combine(pair, Some(*weight)),
        Command::PlotGrid {
            spec,
            out,
            csv,
            width,
            height,
            samples,
        } => {
            let spec = match spec {
                Some(path) => GridSpec::from_json(&read_file(path)?)?,
                None => GridSpec::default(),
            };
            if !(width.is_finite() && *width > 0.0 && height.is_finite() && *height > 0.0) {
                return Err(Failure::Usage(
                    "--width and --height must be positive".into(),
                ));
            }
            let plot = plot_grid(&spec, *width, *height, *samples)?;
            let Some(svg_path) = out else {
                if let Some(csv_path) = csv {
                    write_file(csv_path, &plot.csv)?;
                }
                return Ok(Emit::Text(plot.svg));
            };
            let csv_path = csv
                .clone()
                .unwrap_or_else(|| svg_path.with_extension("csv"));
            write_file(svg_path, &plot.svg)?;
            write_file(&csv_path, &plot.csv)?;
            Ok(json(serde_json::json!({
                "svg": svg_path.display().to_string(),
                "csv": csv_path.display().to_string(),
                "panels": plot.panels.iter().map(|p| PanelOut {
                    row: p.row,
                    col: p.col,
                    params: p.params,
                    modality: p.modality,
                    integral: p.grid.integral(),
                }).collect::<Vec<_>>(),
            })))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn combine(pair: &PairArgs, weight: Option<f64>) -> Result<Emit, Failure> {
    let a = TrigMoments::new(pair.a_c1, pair.a_c2);
    let b = TrigMoments::new(pair.b_c1, pair.b_c2);
    let (operation, m) = match weight {
        Some(w) => ("mix", mix(&a, &b, w)?),
        None => ("convolve", convolve(&a, &b)?),
    };
    Ok(json(CombineOut {
        operation,
        left: a.into(),
        right: b.into(),
        weight,
        c1: m.c1.into(),
        c2: m.c2.into(),
    }))
}

/// Parses `args`, runs the command and writes its output. Returns the exit status.
pub fn run<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(&cli.command, env_seed) {
        Ok(Emit::Json(v)) => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&v).expect("json value")
            );
            0
        }
        Ok(Emit::Text(s)) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&e).expect("json value")
            );
            2
        }
    }
}

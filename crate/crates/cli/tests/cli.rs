use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qc_core::*;
use serde_json::Value;

fn qc(args: &[&str]) -> Output {
    qc_env(args, None)
}

fn qc_env(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qc"));
    cmd.args(args).env_remove("QC_SEED");
    if let Some(s) = seed {
        cmd.env("QC_SEED", s);
    }
    cmd.output().expect("run qc")
}

fn ok_json(args: &[&str]) -> Value {
    let out = qc(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/v1")
}

fn check_schema(name: &str, doc: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{name}.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{doc}");
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

const P: [&str; 8] = ["--mu1", "0.3", "--mu2", "2.0", "--r1", "1.2", "--r2", "0.4"];

fn with_p<'a>(cmd: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(P);
    v.extend(extra);
    v
}

fn params() -> QCParams {
    QCParams::new(0.3, 2.0, 1.2, 0.4).unwrap()
}

#[test]
fn every_subcommand_matches_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let angles = dir.path().join("angles.txt");
    std::fs::write(&angles, "0.1 0.5 1.0\n2.0,3.0\n4.0 5.0 6.0\n").unwrap();
    let svg = dir.path().join("grid.svg");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("pdf", with_p("pdf", &["--theta", "1.0"])),
        ("pdf", with_p("pdf", &["--grid", "32"])),
        ("cdf", with_p("cdf", &["--theta", "1.0", "--origin", "5.0"])),
        ("moments", with_p("moments", &[])),
        ("summary", with_p("summary", &[])),
        ("modes", with_p("modes", &[])),
        ("median", with_p("median", &["--rule", "sign-condition"])),
        ("symmetry", with_p("symmetry", &[])),
        (
            "symmetry",
            vec![
                "symmetry", "--mu1", "1", "--mu2", "1", "--r1", "1", "--r2", "2",
            ],
        ),
        (
            "sample",
            with_p("sample", &["--n", "200", "--seed", "3", "--shards", "2"]),
        ),
        (
            "fit",
            vec!["fit", "--angles-file", angles.to_str().unwrap()],
        ),
        (
            "member",
            vec!["member", "--c1", "0.3+0.1i", "--c2", "0.05-0.02i"],
        ),
        ("member", vec!["member", "--c1", "0+0i", "--c2", "0.5+0i"]),
        (
            "factor",
            vec!["factor", "--c1", "0.3+0.1i", "--c2", "0.05-0.02i"],
        ),
        (
            "convolve",
            vec![
                "convolve",
                "--a-c1",
                "0.3+0.1i",
                "--a-c2",
                "0.05-0.02i",
                "--b-c1",
                "0.2",
                "--b-c2",
                "0",
            ],
        ),
        (
            "mix",
            vec![
                "mix",
                "--a-c1",
                "0.3+0.1i",
                "--a-c2",
                "0.05-0.02i",
                "--b-c1",
                "0.2",
                "--b-c2",
                "0",
                "--weight",
                "0.25",
            ],
        ),
        (
            "plot-grid",
            vec!["plot-grid", "--out", svg.to_str().unwrap()],
        ),
    ];
    for (name, args) in cases {
        check_schema(name, &ok_json(&args));
    }
}

#[test]
fn domain_errors_match_error_schema() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "summary", "--mu1", "0", "--mu2", "0", "--r1", "0", "--r2", "0",
        ],
        vec![
            "modes", "--mu1", "0", "--mu2", "0", "--r1", "0", "--r2", "0",
        ],
        vec!["factor", "--c1", "0+0i", "--c2", "0.5+0i"],
        vec!["factor", "--c1", "0.9+0i", "--c2", "0+0i"],
        vec![
            "pdf", "--mu1", "0", "--mu2", "0", "--r1", "-1", "--r2", "0", "--theta", "0",
        ],
        vec![
            "sample", "--mu1", "0", "--mu2", "0", "--r1", "1", "--r2", "0", "--n", "0",
        ],
        vec![
            "mix", "--a-c1", "0", "--a-c2", "0", "--b-c1", "0", "--b-c2", "0", "--weight", "1.5",
        ],
    ];
    let mut kinds = vec![];
    for args in cases {
        let out = qc(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        check_schema("error", &doc);
        kinds.push(doc["error"]["kind"].as_str().unwrap().to_string());
    }
    assert_eq!(
        kinds,
        [
            "UndefinedDirection",
            "DegenerateUniform",
            "NotRepresentableAsQC",
            "NotAMeasure",
            "InvalidParams",
            "InvalidCount",
            "InvalidWeight"
        ]
    );
}

#[test]
fn input_files_match_input_schemas() {
    let p: Value = serde_json::json!({"mu1": 0.3, "mu2": 2.0, "r1": 1.2, "r2": 0.4});
    check_schema("params-input", &p);
    let spec = serde_json::to_value(qc_cli::grid::GridSpec::default()).unwrap();
    check_schema("grid-spec", &spec);
}

#[test]
fn usage_errors_exit_one() {
    let cases: Vec<Vec<&str>> = vec![
        with_p("pdf", &["--theta", "1", "--bogus"]),
        vec!["pdf", "--mu1", "0", "--theta", "1"],
        vec!["nonsense"],
        vec![],
        with_p("modes", &["--format", "csv"]),
        vec!["member", "--c1", "1+2j", "--c2", "0"],
        with_p("pdf", &[]),
        with_p("pdf", &["--theta", "1", "--grid", "16"]),
    ];
    for args in cases {
        let out = qc(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let missing = qc(&["fit", "--angles-file", "/nonexistent/angles.txt"]);
    assert_eq!(missing.status.code(), Some(1));
    let bad_seed = qc_env(&with_p("sample", &["--n", "5"]), Some("seven"));
    assert_eq!(bad_seed.status.code(), Some(1));
    for args in [vec!["--help"], vec!["--version"], vec!["pdf", "--help"]] {
        assert_eq!(qc(&args).status.code(), Some(0));
    }
}

#[test]
fn cli_equals_library_bit_for_bit() {
    let p = params();
    let v = ok_json(&with_p("pdf", &["--theta", "1.7"]));
    assert_eq!(f(&v["pdf"]).to_bits(), pdf(&p, Angle::new(1.7)).to_bits());

    let v = ok_json(&with_p("cdf", &["--theta", "1.7", "--origin", "4"]));
    assert_eq!(
        f(&v["cdf"]).to_bits(),
        cdf(&p, Angle::new(1.7), Angle::new(4.0)).to_bits()
    );

    let v = ok_json(&with_p("moments", &[]));
    for k in 0..=4 {
        let z = trig_moment(&p, k);
        let got = &v["moments"][k as usize]["value"];
        assert_eq!(
            (f(&got["re"]).to_bits(), f(&got["im"]).to_bits()),
            (z.re.to_bits(), z.im.to_bits())
        );
    }

    let s = summary(&p).unwrap();
    let v = ok_json(&with_p("summary", &[]));
    assert_eq!(f(&v["mean_direction"]), s.mean_direction.value());
    assert_eq!(f(&v["resultant_length"]), s.resultant_length);

    let r = classify(&p).unwrap();
    let v = ok_json(&with_p("modes", &[]));
    for (k, (t, d)) in r.modes.iter().enumerate() {
        assert_eq!(f(&v["modes"][k]["theta"]), t.value());
        assert_eq!(f(&v["modes"][k]["density"]), *d);
    }
    assert_eq!(v["unimodal"].as_bool().unwrap(), r.unimodal);

    let m = median(&p, MedianRule::MinDeviation).unwrap();
    let v = ok_json(&with_p("median", &[]));
    assert_eq!(f(&v["median"]), m.selected.value());

    let sym = detect_symmetry(&p);
    let v = ok_json(&with_p("symmetry", &[]));
    assert_eq!(v["symmetric"].as_bool().unwrap(), sym.symmetric);

    let batch = sample(&p, 300, 17).unwrap();
    let v = ok_json(&with_p("sample", &["--n", "300", "--seed", "17"]));
    let angles: Vec<f64> = v["angles"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(
        angles,
        batch.angles.iter().map(|a| a.value()).collect::<Vec<_>>()
    );
    assert_eq!(v["proposals"].as_u64().unwrap(), batch.proposals);

    let m = moments_from_params(&p);
    let fact = qc_from_moments(&m).unwrap();
    let c = |z: Complex64| format!("{:e}{:+e}i", z.re, z.im);
    let v = ok_json(&["factor", "--c1", &c(m.c1), "--c2", &c(m.c2)]);
    assert_eq!(
        serde_json::from_value::<QCParams>(v["params"].clone()).unwrap(),
        fact.params
    );

    let other = TrigMoments::new(Complex64::new(0.1, -0.2), Complex64::new(0.02, 0.03));
    let conv = convolve(&m, &other).unwrap();
    let v = ok_json(&[
        "convolve",
        "--a-c1",
        &c(m.c1),
        "--a-c2",
        &c(m.c2),
        "--b-c1",
        &c(other.c1),
        "--b-c2",
        &c(other.c2),
    ]);
    assert_eq!(f(&v["c1"]["re"]), conv.c1.re);
    assert_eq!(f(&v["c2"]["im"]), conv.c2.im);
}

#[test]
fn fit_reads_sample_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = qc(&with_p(
        "sample",
        &["--n", "4000", "--seed", "9", "--format", "csv"],
    ));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta\n"));
    let path = dir.path().join("s.csv");
    std::fs::write(&path, &text).unwrap();
    let v = ok_json(&["fit", "--angles-file", path.to_str().unwrap()]);
    let batch = sample(&params(), 4000, 9).unwrap();
    // the CSV carries 17 significant digits, which round-trips f64
    let direct = fit(&batch.angles).unwrap();
    assert_eq!(
        serde_json::from_value::<QCParams>(v["params"].clone()).unwrap(),
        direct.params
    );
    assert_eq!(v["n"].as_u64(), Some(4000));
}

#[test]
fn qc_seed_overrides_flag() {
    let a = qc_env(&with_p("sample", &["--n", "50", "--seed", "1"]), Some("77"));
    let b = qc(&with_p("sample", &["--n", "50", "--seed", "77"]));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"].as_u64(), Some(77));
}

#[test]
fn degrees_flag_converts_angles() {
    let rad = ok_json(&[
        "pdf", "--mu1", "1", "--mu2", "2", "--r1", "1", "--r2", "0.5", "--theta", "0.5",
    ]);
    let deg = ok_json(&[
        "pdf",
        "--degrees",
        "--mu1",
        &1f64.to_degrees().to_string(),
        "--mu2",
        &2f64.to_degrees().to_string(),
        "--r1",
        "1",
        "--r2",
        "0.5",
        "--theta",
        &0.5f64.to_degrees().to_string(),
    ]);
    assert!((f(&rad["pdf"]) - f(&deg["pdf"])).abs() < 1e-15);
    let neg = ok_json(&[
        "pdf", "--mu1", "-1", "--mu2", "0", "--r1", "1", "--r2", "0", "--theta", "-1",
    ]);
    assert!((f(&neg["theta"]) - (std::f64::consts::TAU - 1.0)).abs() < 1e-15);
}

#[test]
fn params_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"{"mu1": 0.3, "mu2": 2.0, "r1": 1.2, "r2": 0.4}"#).unwrap();
    let a = ok_json(&["modes", "--params-json", path.to_str().unwrap()]);
    let b = ok_json(&with_p("modes", &[]));
    assert_eq!(a, b);
    std::fs::write(&path, r#"{"mu1": 0.3}"#).unwrap();
    let out = qc(&["modes", "--params-json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let conflict = qc(&[
        "modes",
        "--params-json",
        path.to_str().unwrap(),
        "--r1",
        "1",
    ]);
    assert_eq!(conflict.status.code(), Some(1));
}

#[test]
fn pdf_csv_format() {
    let out = qc(&with_p("pdf", &["--grid", "16", "--format", "csv"]));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.split('\n').collect();
    assert_eq!(lines[0], "theta,density");
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[17], "");
    assert!(!text.contains('\r'));
    for line in &lines[1..17] {
        for field in line.split(',') {
            let mantissa = field.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17, "{field}");
        }
    }
    let g = qc_cli::grid::DensityGrid::new(params(), 16).unwrap();
    let vals: Vec<f64> = lines[1..17]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(vals, g.values);
}

#[test]
fn spec_examples() {
    let v = ok_json(&[
        "pdf", "--mu1", "0", "--mu2", "0", "--r1", "0", "--r2", "0", "--theta", "1.0",
    ]);
    assert!((f(&v["pdf"]) - 0.15915494309189535).abs() < 1e-15);

    let v = ok_json(&[
        "modes", "--mu1", "0", "--mu2", "0", "--r1", "1", "--r2", "1",
    ]);
    let thetas = |key: &str| -> Vec<f64> {
        v[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| f(&e["theta"]))
            .collect()
    };
    let (modes, anti) = (thetas("modes"), thetas("antimodes"));
    assert_eq!(modes.len(), 2);
    assert!(modes[0].abs() < 1e-12 && (modes[1] - std::f64::consts::PI).abs() < 1e-12);
    assert!(
        (anti[0] - 2.0943951023931953).abs() < 1e-9 && (anti[1] - 4.1887902047863905).abs() < 1e-9
    );
    assert_eq!(v["unimodal"], Value::Bool(false));

    let v = ok_json(&["member", "--c1", "0+0i", "--c2", "0.5+0i"]);
    assert_eq!(v["in_T2pi"], Value::Bool(true));
    assert_eq!(v["qc_representable"], Value::Bool(false));
}

#[test]
fn plot_grid_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    ok_json(&["plot-grid", "--out", a.to_str().unwrap()]);
    ok_json(&["plot-grid", "--out", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(
        std::fs::read(a.with_extension("csv")).unwrap(),
        std::fs::read(b.with_extension("csv")).unwrap()
    );
    let stdout = qc(&["plot-grid"]).stdout;
    assert_eq!(stdout, std::fs::read(&a).unwrap());
    let csv = std::fs::read_to_string(a.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("panel,theta,density"));
    assert_eq!(csv.lines().count(), 1 + 9 * 512);
}

#[test]
fn plot_grid_custom_specs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"columns":[{"r":0,"mu":0}],"rows":[{"r":0,"mu":0}]}"#,
    )
    .unwrap();
    let csv = dir.path().join("flat.csv");
    let out = qc(&[
        "plot-grid",
        "--spec",
        spec.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains("uniform"));
    let text = std::fs::read_to_string(&csv).unwrap();
    for line in text.lines().skip(1) {
        let v: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!((v - 1.0 / std::f64::consts::TAU).abs() < 1e-16);
    }

    std::fs::write(
        &spec,
        r#"{"columns":[{"r":1,"mu":1}],"rows":[{"r":1,"mu":1}]}"#,
    )
    .unwrap();
    let svg =
        String::from_utf8(qc(&["plot-grid", "--spec", spec.to_str().unwrap()]).stdout).unwrap();
    assert!(svg.contains("QC(1, 1, 1, 1): bimodal"));

    std::fs::write(&spec, r#"{"columns":[{"r":1,"mu":1}]}"#).unwrap();
    let out = qc(&["plot-grid", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "InvalidSpec");
}

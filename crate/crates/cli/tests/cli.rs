use std::path::Path;
use std::process::{Command, Output};

use optomag_core::magnetostatics::find_walker_mode;
use optomag_core::{MaterialConfig, WalkerModeIndex};
use serde_json::Value;

const MODES: [(u32, i32, u32); 4] = [(1, 1, 0), (3, -1, 1), (3, 1, 1), (4, 0, 1)];

fn optomag(args: &[&str]) -> Output {
    optomag_env(args, &[])
}

fn optomag_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_optomag"));
    cmd.args(args);
    for key in [
        "GAMMA",
        "FOUR_PI_MS",
        "SPHERE_RADIUS",
        "KITTEL_FREQUENCY",
        "REFERENCE_FREQUENCY",
        "REFERENCE_INDEX",
        "FSR",
        "GB",
        "QUALITY_FACTOR",
        "MAGNON_LINEWIDTH",
    ] {
        cmd.env_remove(format!("OPTOMAG_{key}"));
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn mode_frequencies(cfg: &MaterialConfig) -> Vec<f64> {
    MODES
        .iter()
        .map(|&(n, m, r)| find_walker_mode(WalkerModeIndex { n, m, r }, cfg).unwrap().frequency)
        .collect()
}

fn write_trace(path: &Path, dips: &[f64], kittel: f64) {
    let (lo, step, hw) = (kittel - 1.0, 0.0005, 0.0015);
    let mut text = format!("# kittel_ghz={kittel}\nfreq_ghz,s11\n");
    for i in 0..=2800 {
        let f = lo + step * i as f64;
        let s: f64 = dips
            .iter()
            .map(|c| 0.5 * hw * hw / ((f - c).powi(2) + hw * hw))
            .sum();
        text.push_str(&format!("{f},{}\n", 1.0 - s));
    }
    std::fs::write(path, text).unwrap();
}

fn labels(trace: &Value) -> Vec<(i64, i64, i64)> {
    let mut out: Vec<_> = trace["assignments"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| !a["n"].is_null())
        .map(|a| {
            (
                a["n"].as_i64().unwrap(),
                a["m"].as_i64().unwrap(),
                a["r"].as_i64().unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

#[test]
fn modes_lists_catalog_sorted() {
    let text = stdout(&optomag(&["modes"]));
    assert!(text.starts_with("n,m,r,freq_ghz,rel_ghz,oam\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 20);
    let rel: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    assert!(rel.windows(2).all(|w| w[0] <= w[1]));
    let kittel = rows.iter().find(|r| r[..3] == ["1", "1", "0"]).unwrap();
    assert_eq!(kittel[3].parse::<f64>().unwrap(), 7.1);

    let rows = csv_rows(&stdout(&optomag(&["modes", "--n-max", "1"])));
    assert_eq!(rows.len(), 1);
    assert_eq!(optomag(&["modes", "--n-max", "0"]).status.code(), Some(2));
}

#[test]
fn texture_writes_sidecar_with_winding() {
    let dir = tempfile::tempdir().unwrap();
    for ((n, m, r), want) in [((4, 0, 1), 1), ((1, 1, 0), 0), ((3, -1, 1), 2)] {
        let csv = dir.path().join(format!("tex_{n}_{m}_{r}.csv"));
        let out = optomag(&[
            "texture",
            "--n",
            &n.to_string(),
            "--m",
            &m.to_string(),
            "--r",
            &r.to_string(),
            "--grid",
            "21",
            "-o",
            csv.to_str().unwrap(),
        ]);
        stdout(&out);
        let text = std::fs::read_to_string(&csv).unwrap();
        assert!(text.starts_with("x,y,re_mplus,im_mplus,re_mminus,im_mminus\n"));
        assert!(csv_rows(&text).len() > 100);
        let summary: Value =
            serde_json::from_str(&std::fs::read_to_string(csv.with_extension("json")).unwrap())
                .unwrap();
        assert_eq!(summary["winding"].as_i64().unwrap(), want, "({n},{m},{r})");
        assert!(summary["pde_residual"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn texture_rejects_bad_index_and_grid() {
    assert_eq!(optomag(&["texture", "--n", "2", "--m", "3", "--r", "0"]).status.code(), Some(2));
    assert_eq!(
        optomag(&["texture", "--n", "1", "--m", "1", "--r", "0", "--grid", "20"]).status.code(),
        Some(2)
    );
    assert_eq!(optomag(&["texture", "--n", "x"]).status.code(), Some(2));
}

#[test]
fn channels_for_kittel_and_orbit_symmetry() {
    let cw: Value = serde_json::from_str(&stdout(&optomag(&[
        "channels", "--n", "1", "--m", "1", "--r", "0", "--orbit", "cw",
    ])))
    .unwrap();
    let anti = cw
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["process"] == "antiStokes")
        .unwrap();
    assert!(anti["detuning_ghz"].as_f64().unwrap().abs() < 1.0);

    let run = |orbit| -> Value {
        serde_json::from_str(&stdout(&optomag(&[
            "channels", "--n", "4", "--m", "0", "--r", "1", "--orbit", orbit,
        ])))
        .unwrap()
    };
    let (cw, ccw) = (run("cw"), run("ccw"));
    assert_eq!(cw.as_array().unwrap().len(), 2);
    for (a, b) in cw.as_array().unwrap().iter().zip(ccw.as_array().unwrap()) {
        assert_eq!(a["walker"], b["walker"]);
        assert_eq!(a["process"], b["process"]);
        assert_eq!(a["weight"], b["weight"]);
        assert_eq!(a["detuning_ghz"], b["detuning_ghz"]);
        assert_ne!(a["orbit"], b["orbit"]);
    }

    let out = optomag(&["channels", "--n", "1", "--m", "1", "--r", "0", "--orbit", "cw", "--m-tm", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_shows_nonreciprocity() {
    let peak = |n: &str, m: &str, r: &str| -> (f64, f64) {
        let rows = csv_rows(&stdout(&optomag(&[
            "spectrum", "--n", n, "--m", m, "--r", r, "--points", "201",
        ])));
        assert_eq!(rows.len(), 201);
        let mid = &rows[100];
        (mid[1].parse().unwrap(), mid[2].parse().unwrap())
    };
    let (cw, ccw) = peak("3", "1", "1");
    assert!(cw > 2.0 * ccw, "cw {cw} ccw {ccw}");
    let (cw, ccw) = peak("4", "0", "1");
    assert_eq!(cw, ccw);

    let out = optomag(&["spectrum", "--n", "3", "--m", "1", "--r", "1", "--points", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identify_labels_synthetic_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let cfg = MaterialConfig::default();
    write_trace(&path, &mode_frequencies(&cfg), cfg.kittel_frequency);

    let report: Value =
        serde_json::from_str(&stdout(&optomag(&["identify", path.to_str().unwrap()]))).unwrap();
    let trace = &report["traces"][0];
    assert_eq!(trace["kittel_ghz"].as_f64().unwrap(), 7.1);
    let mut want: Vec<_> = MODES.iter().map(|&(n, m, r)| (n as i64, m as i64, r as i64)).collect();
    want.sort();
    assert_eq!(labels(trace), want);
    assert!(report["fit"].is_null());
}

#[test]
fn identify_missing_or_malformed_file() {
    assert_eq!(optomag(&["identify", "/no/such/trace.csv"]).status.code(), Some(4));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "freq_ghz,s11\n1.0,0.5\n0.9,0.4\n0.8,0.3\n0.7,0.2\n0.6,0.1\n").unwrap();
    let out = optomag(&["identify", "--kittel", "7.1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn identify_fits_magnetization_across_files() {
    let dir = tempfile::tempdir().unwrap();
    let base = 1780.0;
    let truth = MaterialConfig {
        four_pi_ms: base * 1.09,
        ..MaterialConfig::default()
    };
    let mut paths = Vec::new();
    for k in [6.6, 7.1, 7.6] {
        let path = dir.path().join(format!("k{k}.csv"));
        write_trace(&path, &mode_frequencies(&truth.with_kittel_frequency(k)), k);
        paths.push(path.to_str().unwrap().to_string());
    }
    let mut args = vec!["--four-pi-ms", "1780", "identify", "--fit-ms"];
    args.extend(paths.iter().map(String::as_str));
    let report: Value = serde_json::from_str(&stdout(&optomag(&args))).unwrap();
    let scale = report["fit"]["scale"].as_f64().unwrap();
    assert!((scale - 1.09).abs() < 1e-3, "scale {scale}");
    assert_eq!(report["traces"].as_array().unwrap().len(), 3);
    for trace in report["traces"].as_array().unwrap() {
        assert_eq!(labels(trace).len(), 4);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["channels", "--n", "3", "--m", "1", "--r", "1", "--orbit", "ccw"];
    assert_eq!(stdout(&optomag(&args)), stdout(&optomag(&args)));
    assert_eq!(stdout(&optomag(&["modes"])), stdout(&optomag(&["modes"])));
}

#[test]
fn environment_and_file_layers() {
    let default = stdout(&optomag(&["modes", "--n-max", "1"]));
    let env = stdout(&optomag_env(
        &["modes", "--n-max", "1"],
        &[("OPTOMAG_KITTEL_FREQUENCY", "8.0")],
    ));
    assert_ne!(default, env);
    assert_eq!(csv_rows(&env)[0][3], "8");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"material": {"kittel_frequency": 9.0}}"#).unwrap();
    let file = stdout(&optomag_env(
        &["--config", path.to_str().unwrap(), "modes", "--n-max", "1"],
        &[("OPTOMAG_KITTEL_FREQUENCY", "8.0")],
    ));
    assert_eq!(csv_rows(&file)[0][3], "8");
    let flag = stdout(&optomag_env(
        &["--config", path.to_str().unwrap(), "modes", "--n-max", "1", "--kittel-frequency", "8.5"],
        &[("OPTOMAG_KITTEL_FREQUENCY", "8.0")],
    ));
    assert_eq!(csv_rows(&flag)[0][3], "8.5");
    let file_only = stdout(&optomag(&["--config", path.to_str().unwrap(), "modes", "--n-max", "1"]));
    assert_eq!(csv_rows(&file_only)[0][3], "9");

    let bad = optomag_env(&["modes"], &[("OPTOMAG_GAMMA", "abc")]);
    assert_eq!(bad.status.code(), Some(2));
}

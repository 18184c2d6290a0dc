use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const GOLDEN: [&str; 5] = [
    "fig2a_boson_levels.csv",
    "fig2b_fermion_levels.csv",
    "fig2c_boson_sawtooth.csv",
    "fig2d_diameter.csv",
    "fig3a_thermal.csv",
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn ionring<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_ionring"))
        .args(args)
        .env_remove("IONRING_CONSTANTS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ionring(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn header_args(csv: &str) -> Vec<String> {
    let line = csv.lines().find_map(|l| l.strip_prefix("# args: ")).expect("args header");
    line.split_whitespace().map(String::from).collect()
}

/// Data rows of a CSV as cells, after the comment header and column line.
fn body(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let columns = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (columns, rows)
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let (cols, rows) = body(csv);
    let i = cols.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.into_iter().map(|r| r[i].clone()).collect()
}

#[test]
fn golden_datasets_match_per_cell() {
    for name in GOLDEN {
        let golden = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        let fresh = String::from_utf8(ionring(header_args(&golden)).stdout).unwrap();
        let (gc, gr) = body(&golden);
        let (fc, fr) = body(&fresh);
        assert_eq!(gc, fc, "{name}: columns");
        assert_eq!(gr.len(), fr.len(), "{name}: row count");
        for (i, (g, f)) in gr.iter().zip(&fr).enumerate() {
            assert_eq!(g.len(), f.len(), "{name} row {i}");
            for (a, b) in g.iter().zip(f) {
                match (a.parse::<f64>(), b.parse::<f64>()) {
                    (Ok(x), Ok(y)) => assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0), "{name} row {i}: {a} vs {b}"),
                    _ => assert_eq!(a, b, "{name} row {i}"),
                }
            }
        }
        let comments = |s: &str| s.lines().filter(|l| l.starts_with('#')).map(String::from).collect::<Vec<_>>();
        assert_eq!(comments(&golden), comments(&fresh), "{name}: header");
    }
}

#[test]
fn golden_commands_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in GOLDEN {
        let golden = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{run}-{name}"));
            let mut args = header_args(&golden);
            args.extend(["--output".into(), path.display().to_string()]);
            assert!(ionring(&args).status.success());
            files.push(std::fs::read(path).unwrap());
        }
        assert_eq!(files[0], files[1], "{name}");
    }
}

#[test]
fn header_reproduces_the_run() {
    let runs: [&[&str]; 4] = [
        &["flux-sweep", "--species", "Be9+", "--n", "100", "--d", "100e-6", "--alpha", "0:0.01:1"],
        &["thermal", "--species", "Be9+", "--n", "100", "--d", "1e-4", "--b", "1e-7", "--t", "1e-10,2e-9", "--format", "json"],
        &["modes", "--n", "6", "--vectors"],
        &["spectrum", "--custom", "39.96,1,boson", "--n", "7", "--d", "5e-5", "--alpha", "0.3", "--format", "table"],
    ];
    for args in runs {
        let first = stdout(args);
        let replay = if first.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(&first).unwrap();
            v["args"].as_str().unwrap().split_whitespace().map(String::from).collect()
        } else {
            header_args(&first)
        };
        let second = String::from_utf8(ionring(&replay).stdout).unwrap();
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn flux_sweep_example_is_a_sawtooth() {
    let csv = stdout(&["flux-sweep", "--species", "Be9+", "--n", "100", "--d", "100e-6", "--alpha", "0:0.01:1"]);
    let alphas: Vec<f64> = column(&csv, "alpha").iter().map(|s| s.parse().unwrap()).collect();
    let omega: Vec<f64> = column(&csv, "omega_gs_over_omegastar").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(alphas.len(), 101);
    assert_eq!(omega[0], 0.0);
    assert_eq!(omega[100], 0.0);
    for (a, w) in alphas.iter().zip(&omega) {
        assert!((w - (a.round() - a)).abs() < 1e-12 || (a - 0.5).abs() < 1e-9);
    }
}

#[test]
fn thermal_example_in_reduced_units() {
    let csv = stdout(&["thermal", "--alpha", "0.25", "--t", "0.01"]);
    let w: f64 = column(&csv, "omega_bar_over_omegastar")[0].parse().unwrap();
    assert!((w + 0.25).abs() < 1e-9);
}

#[test]
fn plan_example_reports_characteristic_scales() {
    let text = stdout(&["plan", "--species", "Be9+", "--n", "100", "--d", "100e-6", "--alpha", "0.25", "--waist", "10e-6", "--l", "1"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let omega = v["report"]["omega_star"].as_f64().unwrap();
    let t_star = v["report"]["t_star"].as_f64().unwrap();
    assert!((omega / 2.8 - 1.0).abs() < 0.02, "{omega}");
    assert!((t_star / 1.1e-9 - 1.0).abs() < 0.05, "{t_star}");
    assert!(v["report"]["flags"].as_array().unwrap().iter().all(|f| f["passed"] == true));

    let table = stdout(&["plan", "--species", "Be9+", "--n", "100", "--d", "100e-6", "--alpha", "0.25", "--waist", "10e-6", "--format", "table"]);
    assert!(table.lines().any(|l| l.starts_with("omega_star ")));
}

#[test]
fn diameter_plateau() {
    let csv = stdout(&["diameter-sweep", "--x", "0.007:0.007:0.7"]);
    let omega = column(&csv, "omega_over_omegastar0");
    assert_eq!(omega.len(), 100);
    assert!(omega.iter().all(|w| w == "-1.0"));
}

#[test]
fn exit_codes_and_single_line_diagnostics() {
    let cases: [(&[&str], i32); 7] = [
        (&["flux-sweep", "--alpha", "0:0:1"], 2),
        (&["no-such-command"], 2),
        (&["thermal", "--alpha", "0.1"], 2),
        (&["flux-sweep", "--statistics", "fermion", "--alpha", "0"], 2),
        (&["modes", "--n", "1"], 1),
        (&["thermal", "--alpha", "0.1", "--t", "-1"], 1),
        (&["plan", "--species", "Be9+", "--n", "100", "--d", "1e-4", "--alpha", "0.5", "--waist", "1e-5", "--format", "csv"], 2),
    ];
    for (args, code) in cases {
        let out = ionring(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
    let unknown = ionring(["spectrum", "--species", "Xe+", "--n", "3", "--d", "1e-5", "--b", "0"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "command = \"thermal\"\nalpha = [-0.25, 0.25]\nt = \"0.5:0.5:1\"\nstatistics = \"boson\"\n").unwrap();
    let from_file = stdout(&["--config", cfg.to_str().unwrap()]);
    let direct = stdout(&["thermal", "--statistics", "boson", "--alpha=-0.25,0.25", "--t", "0.5:0.5:1"]);
    assert_eq!(from_file, direct);
    // explicit flags win over the file
    let overridden = stdout(&["thermal", "--config", cfg.to_str().unwrap(), "--t", "2"]);
    assert_eq!(column(&overridden, "T_over_Tstar"), vec!["2.0", "2.0"]);
}

#[test]
fn species_file_and_constant_override() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("species.toml");
    std::fs::write(&file, "[[species]]\nname = \"Ca40+\"\nmass_u = 39.96\ncharge_e = 1\nstatistics = \"boson\"\n").unwrap();
    let spec = ["spectrum", "--species", "Ca40+", "--species-file", file.to_str().unwrap(), "--n", "7", "--d", "5e-5", "--alpha", "0.3"];
    let a = stdout(&spec);
    let b = stdout(&["spectrum", "--custom", "39.96,1,boson", "--n", "7", "--d", "5e-5", "--alpha", "0.3"]);
    assert_eq!(column(&a, "E_J"), column(&b, "E_J"));

    let old = Command::new(env!("CARGO_BIN_EXE_ionring"))
        .args(spec)
        .env("IONRING_CONSTANTS", "CODATA2014")
        .output()
        .unwrap();
    let old = String::from_utf8(old.stdout).unwrap();
    assert!(old.contains("# constants: CODATA2014"));
    assert_ne!(column(&old, "E_J"), column(&a, "E_J"));
}

#[test]
fn json_tables_carry_the_header() {
    let text = stdout(&["modes", "--n", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["columns"][1], "omega_j");
    let w2 = v["rows"][1][1].as_f64().unwrap();
    assert!((w2 - 2.48).abs() < 0.01);
    assert_eq!(v["constants"], "CODATA2018");
}

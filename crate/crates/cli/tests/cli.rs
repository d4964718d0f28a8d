use std::path::Path;
use std::process::{Command, Output};

use iontrap_cli::RunConfig;
use serde_json::Value;

fn iontrap(args: &[&str], dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_iontrap"));
    cmd.args(args).env_remove("IONTRAP_OUTPUT_DIR");
    if let Some(d) = dir {
        cmd.env("IONTRAP_OUTPUT_DIR", d);
    }
    cmd.output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = iontrap(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Non-comment CSV lines split into fields.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn report_value(csv: &str, key: &str) -> String {
    rows(csv).into_iter().find(|r| r[0] == key).unwrap_or_else(|| panic!("no {key}"))[1].clone()
}

fn result_line(csv: &str, key: &str) -> f64 {
    let prefix = format!("# result: {key} = ");
    csv.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no {key}")).parse().unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn couplings_with_defaults() {
    let csv = stdout(&["couplings"]);
    let g: f64 = report_value(&csv, "g").parse().unwrap();
    assert!((0.9 * 1.1e4..=1.2 * 1.1e4).contains(&g), "g = {g}");
    assert_eq!(report_value(&csv, "sideband_resolved"), "false");
    let power: f64 = report_value(&csv, "required_power").parse().unwrap();
    assert!((power - 6.22).abs() < 0.01);
}

#[test]
fn zero_lamb_dicke_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[laser]\nlamb_dicke = 0.0\n");
    let out = iontrap(&["--config", &cfg, "couplings"], None);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error[config]") && err.contains("laser.lamb_dicke"), "{err}");
}

#[test]
fn unknown_keys_and_parse_errors_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["[laser]\nrabi = 1.0\n", "[gate]\nwells = \"two\"\n", "[laser\n"] {
        let cfg = write_config(dir.path(), text);
        let out = iontrap(&["--config", &cfg, "budget"], None);
        assert_eq!(out.status.code(), Some(3), "{text}");
    }
    let out = iontrap(&["--config", "/nonexistent/run.toml", "budget"], None);
    assert_eq!(out.status.code(), Some(7));
}

#[test]
fn json_output_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[laser]\nphase = 0.7\n[numerics]\ntruncation = 4\n");
    let text = stdout(&["--config", &cfg, "--format", "json", "couplings"]);
    let doc: Value = serde_json::from_str(&text).unwrap();
    let embedded = RunConfig::from_json(&doc["config"].to_string()).unwrap();
    assert_eq!(embedded, RunConfig::from_toml("[laser]\nphase = 0.7\n[numerics]\ntruncation = 4\n").unwrap());
    assert_eq!(doc["metadata"]["config_sha256"], embedded.hash());

    // The embedded config reproduces the run.
    let again_path = dir.path().join("again.json");
    std::fs::write(&again_path, doc["config"].to_string()).unwrap();
    let again = stdout(&["--config", again_path.to_str().unwrap(), "--format", "json", "couplings"]);
    let doc2: Value = serde_json::from_str(&again).unwrap();
    assert_eq!(doc["report"], doc2["report"]);
}

#[test]
fn sweep_with_two_points() {
    let csv = stdout(&["sweep", "--points", "2", "--gt-max", "3"]);
    let r = rows(&csv);
    assert_eq!(r[0][0], "gt");
    assert_eq!(r[0].len(), 9);
    assert_eq!(r.len(), 3);
    assert_eq!(r[1][0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(r[2][0].parse::<f64>().unwrap(), 3.0);
    assert!(result_line(&csv, "max_abs_difference") < 1e-6);
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = iontrap(&["sweep", "--points", "101", "--out", name], Some(dir.path()));
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let strip = |name: &str| {
        std::fs::read_to_string(dir.path().join(name))
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("# timestamp:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip("a.csv"), strip("b.csv"));
    let out = iontrap(&["budget"], Some(dir.path()));
    assert!(out.status.success());
    assert!(dir.path().join("budget.csv").exists());
}

#[test]
fn gate_verify_ideal_and_guarded() {
    for wells in ["2", "3"] {
        let csv = stdout(&["gate-verify", "--wells", wells]);
        let f: f64 = report_value(&csv, "fidelity").parse().unwrap();
        let reset: f64 = report_value(&csv, "ancilla_reset_fidelity").parse().unwrap();
        assert!(f >= 1.0 - 1e-9 && reset >= 1.0 - 1e-9);
    }
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[numerics]\ntruncation = 1\n");
    assert_eq!(iontrap(&["--config", &cfg, "gate-verify"], None).status.code(), Some(3));
    let big = iontrap(&["gate-verify", "--wells", "7"], None);
    assert_eq!(big.status.code(), Some(4));
    assert!(String::from_utf8(big.stderr).unwrap().contains("smaller truncation"));
}

#[test]
fn gate_verify_with_decoherence() {
    let csv = stdout(&["gate-verify", "--decohere", "0,1e3"]);
    let r = rows(&csv);
    assert_eq!(r[0], ["gamma_ex", "gamma_in", "mean_fidelity", "min_fidelity"]);
    let clean: f64 = r[1][2].parse().unwrap();
    let noisy: f64 = r[2][2].parse().unwrap();
    assert!(noisy < clean && noisy > 0.5);
    let csv = stdout(&["gate-verify", "--decohere"]);
    assert_eq!(rows(&csv).len(), 2);
}

#[test]
fn budget_reports() {
    let csv = stdout(&["budget", "--wells", "20", "--t-u", "45e-6"]);
    let total: f64 = report_value(&csv, "t_total").parse().unwrap();
    assert!((total - 1.776e-3).abs() < 1e-12);
    assert_eq!(report_value(&csv, "within_cm_coherence"), "false");
    assert_eq!(report_value(&csv, "within_qubit_coherence"), "true");
    assert!(csv.contains("re-cooled"));

    let csv = stdout(&["budget", "--wells", "2", "--t-u", "45e-6"]);
    let total: f64 = report_value(&csv, "t_total").parse().unwrap();
    assert!((total - 156e-6).abs() < 1e-12);
    assert_eq!(report_value(&csv, "within_cm_coherence"), "true");

    let csv = stdout(&["budget"]);
    let t_u: f64 = report_value(&csv, "t_u").parse().unwrap();
    assert!((t_u * 1e6 - 44.9).abs() < 0.05);
    assert_eq!(report_value(&csv, "t_u_source"), "g_cm");
}

#[test]
fn rwa_slope_and_grid_errors() {
    let csv = stdout(&["rwa", "--points", "21"]);
    assert_eq!(rows(&csv).len(), 9);
    assert!((result_line(&csv, "ld_gap_slope") - 3.0).abs() < 0.3);
    for bad in ["0.1,abc", "log:0.01:0.2", "lin:0:1:1"] {
        assert_eq!(iontrap(&["rwa", "--eta-grid", bad], None).status.code(), Some(2), "{bad}");
    }
    assert_eq!(iontrap(&["rwa", "--eta-grid", "0.5"], None).status.code(), Some(4));
}

#[test]
fn decohere_starts_at_unit_fidelity() {
    let csv = stdout(&["decohere", "--gamma-grid", "0,1e3"]);
    let r = rows(&csv);
    assert_eq!(r[0], ["gamma_ex", "swap_fidelity", "gamma_t"]);
    assert!((r[1][1].parse::<f64>().unwrap() - 1.0).abs() < 1e-6);
    assert!(r[2][1].parse::<f64>().unwrap() < 0.9);
    for bad in ["0,1e3,1e2", "-1,0"] {
        assert_eq!(iontrap(&["decohere", &format!("--gamma-grid={bad}")], None).status.code(), Some(4), "{bad}");
    }
}

#[test]
fn help_documents_config_keys() {
    let text = stdout(&["--help"]);
    for key in ["[trap]", "lamb_dicke", "gamma_ex", "truncation", "g_cm", "IONTRAP_OUTPUT_DIR", "rad/s"] {
        assert!(text.contains(key), "{key}");
    }
    assert_eq!(iontrap(&["frobnicate"], None).status.code(), Some(2));
}

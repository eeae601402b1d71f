//! End-to-end runs of the `fanocav` binary.

use std::path::Path;
use std::process::{Command, Output};

const SETUP: &str = r#""setup": {"zeta0": 10, "zeta_r": 10, "fsr": 1, "gamma": 0.1, "omega_d": 0, "s": -1}"#;
const FIG3: &str = r#""setup": {"zeta0": 10, "zeta_r": 10, "fsr": 1000, "gamma": 40, "omega_d": 0, "s": -1},
    "optomech": {"omega_m": 1, "gamma_m": 1e-6, "nbar": 100, "g": 0.1, "delta_d": 1}"#;

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("cfg.json");
    std::fs::write(&path, format!("{{\"version\": 1, {body}}}")).unwrap();
    path.to_str().unwrap().to_string()
}

fn fanocav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanocav"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn transmission_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(r#"{SETUP}, "sweep": {{"variable": "delta", "min": -0.01, "max": 0.01, "points": 201}}"#),
    );
    let out = dir.path().join("t.csv");
    let o = fanocav(&["transmission", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "delta,omega,t2_coupled_mode,t2_transfer_matrix,abs_diff"
    );
    let first = lines.next().unwrap();
    let delta = first.split(',').next().unwrap();
    assert_eq!(delta, "-1.0000000000000000e-2");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 202);
    assert!(text.contains("# gate,passivity,pass,"));
}

#[test]
fn json_from_extension_and_summary_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!(r#"{SETUP}, "outputs": ["summary"]"#));
    let out = dir.path().join("t.json");
    let o = fanocav(&["compare", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["command"], "compare");
    assert!(v.get("rows").is_none());
    assert!(v["summary"]["max_abs_diff_outside_intermediate"].as_f64().unwrap() <= 0.02);
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!(r#"{SETUP}, "sweeep": null"#));
    let o = fanocav(&["transmission", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sweeep"));

    let cfg = write_config(dir.path(), SETUP);
    assert_eq!(fanocav(&["cooling", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(
        fanocav(&["transmission", "--config", &cfg, "--threads", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(fanocav(&["transmission"]).status.code(), Some(2));

    std::fs::write(dir.path().join("cfg.json"), format!(r#"{{"version": 2, {SETUP}}}"#)).unwrap();
    assert_eq!(fanocav(&["transmission", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn missing_config_is_io_error() {
    let o = fanocav(&["kernels", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn cooling_marks_unstable_points() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), FIG3);
    let o = fanocav(&["cooling", "--config", &cfg, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let zero = text.lines().nth(1).unwrap();
    assert!(zero.starts_with("1.0000000000000000e2,0.0000000000000000e0,1.0000000000000000e2"), "{zero}");
    assert!(text.contains("unstable"));
    assert!(text.contains("# gate,thermal_at_zero_coupling,pass"));
}

#[test]
fn one_sided_heating_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &FIG3.replace(r#""zeta_r": 10"#, r#""zeta_r": null"#),
    );
    let o = fanocav(&["cooling", "--config", &cfg, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["s_f_minus_omega_m_per_g2"].as_f64(), Some(0.0));
}

#[test]
fn force_spectrum_and_kernels() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), FIG3);
    let o = fanocav(&["sf-spectrum", "--config", &cfg, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = &v["summary"];
    let ratio = s["sideband_ratio"].as_f64().unwrap();
    let bound = s["sideband_ratio_analytic"].as_f64().unwrap();
    assert!(ratio <= 1.1 * bound, "{ratio} vs {bound}");

    let cfg = write_config(dir.path(), &FIG3.replace(r#""g": 0.1"#, r#""g": 0"#));
    let o = fanocav(&["sf-spectrum", "--config", &cfg, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r[1] == 0.0));

    let o = fanocav(&["kernels", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# gate,wide_mirror_limit,pass"));
}

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-average"))
        .args(args)
        .env_remove("LATTICE_POINT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_csv() {
    let out = run(&["count", "--tmin", "0", "--tmax", "40", "--steps", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,N,D");
    assert_eq!(lines.len(), 3);
    let last: Vec<f64> = lines[2].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(last[..2], [40.0, 5.0]);
    assert!((last[2] - (5.0 - 10.0 / std::f64::consts::PI)).abs() < 1e-13);
}

#[test]
fn output_is_deterministic() {
    let args = ["surfaces", "--tmin", "0", "--tmax", "2000", "--steps", "57"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn json_format_and_out_file() {
    let dir = std::env::temp_dir().join(format!("lattice-average-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.json");
    let out = run(&[
        "count", "--tmin", "0", "--tmax", "40", "--steps", "2", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["columns"], serde_json::json!(["t", "N", "D"]));
    assert_eq!(json["rows"][1][1], 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("lattice-average-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"form": {"a1": 2.0, "a2": 0.5, "theta": 0.0}, "t_min": 0.0, "t_max": 10.0, "steps": 3}"#).unwrap();
    let out = run(&["count", "--config", path.to_str().unwrap(), "--tmax", "10.27"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // n₁²/4 + 4n₂² ≤ 0.26 holds for the origin and (±1, 0).
    let last = text.lines().last().unwrap();
    assert_eq!(last.split(',').nth(1), Some("3"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["count", "--tmin", "5", "--tmax", "1"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--steps", "0"]).status.code(), Some(2));
    assert_eq!(run(&["figures", "--figure", "13"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--a1", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--config", "/nonexistent/run.json"]).status.code(), Some(2));
}

#[test]
fn budget_override_exits_with_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_lattice-average"))
        .args(["average", "--tmin", "100", "--tmax", "200", "--steps", "2"])
        .env("LATTICE_POINT_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let bad = Command::new(env!("CARGO_BIN_EXE_lattice-average"))
        .args(["count"])
        .env("LATTICE_POINT_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn nonpositive_tolerance_is_a_usage_error() {
    let out = run(&["figures", "--figure", "5", "--tmin", "100", "--tmax", "200", "--steps", "2", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surface_residuals_stay_in_window() {
    let out = run(&["surfaces", "--tmin", "0", "--tmax", "5000", "--steps", "400"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(f[3].abs() <= 0.5 && f[6].abs() <= 0.5, "{line}");
    }
}

#[test]
fn average_cross_paths_agree() {
    let out = run(&["average", "--tmin", "100", "--tmax", "1000", "--steps", "3", "--tol", "1e-6"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("R,A_exact,A_series,A_asym1,A_asym2,A_tilde,rescaling_gap"));
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!((f[1] - f[2]).abs() < 1e-5, "{line}");
    }
}

#[test]
fn figure_two_leaves_origin_empty() {
    let out = run(&["figures", "--figure", "2", "--tmin", "0", "--tmax", "10", "--steps", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1), Some("0.0000000000000000e0,"));
}

//! End-to-end checks of the binary: exact outputs, exit codes, byte
//! determinism, and config-file precedence.

use std::path::Path;
use std::process::{Command, Output};

fn dendrite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dendrite"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn iterate_prints_exact_orbit() {
    let out = dendrite(&["iterate", "(3,7/10)", "-n", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "(3,7/10)\n(2,7/10)\n(1,7/10)\n(0,7/10)\n(0)\n"
    );

    let out = dendrite(&["iterate", "(0)", "-n", "2"]);
    assert_eq!(stdout(&out), "(0)\n(0)\n(0)\n");

    let out = dendrite(&["iterate", "(0,3/8,2,1/2)", "-n", "1"]);
    assert_eq!(stdout(&out), "(0,3/8,2,1/2)\n(5,1/2)\n");
}

#[test]
fn iterate_reports_parse_position() {
    let out = dendrite(&["iterate", "(1,1/3,2,1/2)", "-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("token 1"), "stderr: {err}");
}

#[test]
fn verify_omega_exit_codes() {
    // A healthy small run passes within tolerance.
    let out = dendrite(&[
        "verify-omega",
        "--r",
        "1/2",
        "--skip",
        "200",
        "--length",
        "4000",
        "--eps",
        "1/32",
        "--branch-cutoff",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("\"verified\": true"));

    // A degenerate run cannot cover the star.
    let out = dendrite(&[
        "verify-omega",
        "--r",
        "1",
        "--skip",
        "0",
        "--length",
        "1",
        "--eps",
        "1/32",
        "--branch-cutoff",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // r = 0 is a usage error.
    let out = dendrite(&["verify-omega", "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn randomized_commands_require_a_seed() {
    let out = dendrite(&["lemmas", "--trials", "5"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "missing seed must be usage error"
    );
    let out = dendrite(&["tent-separation"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lemmas_report_is_clean_and_deterministic() {
    let a = dendrite(&["lemmas", "--trials", "10", "--seed", "7"]);
    let b = dendrite(&["lemmas", "--trials", "10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b), "byte determinism");
    assert!(stdout(&a).contains("\"failures\": []"));
}

#[test]
fn arc_profile_csv_shape() {
    let out = dendrite(&[
        "arc-profile",
        "--grid",
        "0,1/2,1",
        "--eps",
        "1/32",
        "--branch-cutoff",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("r,0,1/2,1\r\n"));
    assert!(text.contains("1,1,1/2,0\r\n"));
}

#[test]
fn transitivity_produces_verified_witnesses() {
    let out = dendrite(&[
        "transitivity",
        "(1|1/4,3/4)",
        "(3|1/8,7/8)",
        "--window",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verified"], serde_json::Value::Bool(true));
    assert_eq!(report["witness_list"].as_array().unwrap().len(), 5);
}

#[test]
fn mixing_reports_unreachable_times_honestly() {
    let out = dendrite(&[
        "mixing",
        "(0,1/2,2|1/4,3/4)",
        "(0|1/4,3/4)",
        "--n-min",
        "1",
        "--window",
        "9",
    ]);
    // Below-threshold times are reports, not failures.
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let unreachable = report["unreachable_count"].as_u64().unwrap();
    let verified = report["verified_count"].as_u64().unwrap();
    assert_eq!(unreachable + verified, 9);
    assert!(verified >= 1);
}

#[test]
fn tent_separation_is_deterministic_and_classifies() {
    let a = dendrite(&["tent-separation", "--seed", "42", "--samples", "12"]);
    let b = dendrite(&["tent-separation", "--seed", "42", "--samples", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b), "byte determinism");
    let report: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report["p"], "2/3");
    assert_eq!(report["classification"].as_array().unwrap().len(), 12);
}

#[test]
fn render_marks_fifty_orbit_points() {
    let out = dendrite(&["render", "--orbit", "(0,*gamma[1,1]):50"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    let after_orbit = svg.split("orbit0").nth(1).expect("orbit group present");
    assert_eq!(after_orbit.matches("<circle").count(), 50);

    let a = dendrite(&["render", "--net-dr", "1/2,1"]);
    let b = dendrite(&["render", "--net-dr", "1/2,1"]);
    assert_eq!(stdout(&a), stdout(&b), "byte determinism");
}

#[test]
fn config_file_fills_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("dendrite-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(
        &cfg,
        "# demo config\nr = 1/2\nskip = 200\nlength = 4000\neps = 1/32\nbranch-cutoff = 10\n",
    )
    .unwrap();
    let cfg_str = cfg.to_str().unwrap();

    let from_cfg = dendrite(&["verify-omega", "--config", cfg_str]);
    assert_eq!(from_cfg.status.code(), Some(0), "{}", stdout(&from_cfg));
    assert!(stdout(&from_cfg).contains("\"r\": \"1/2\""));
    assert!(stdout(&from_cfg).contains("\"length\": 4000"));

    // The flag overrides the config value.
    let flag_wins = dendrite(&["verify-omega", "--config", cfg_str, "--r", "3/4"]);
    assert!(stdout(&flag_wins).contains("\"r\": \"3/4\""));

    // Output file writing.
    let out_path = dir.join("report.json");
    let to_file = dendrite(&[
        "verify-omega",
        "--config",
        cfg_str,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(Path::new(&out_path).exists());
    let body = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(body, stdout(&from_cfg), "file equals stdout byte for byte");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("dendrite-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.conf");
    std::fs::write(&cfg, "this line has no equals sign\n").unwrap();
    let out = dendrite(&["verify-omega", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn suite_passes_end_to_end() {
    let out = dendrite(&["suite"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 10);
    assert_eq!(text.matches("FAIL").count(), 0);
}

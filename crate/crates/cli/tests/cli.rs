use std::process::{Command, Output};

use lncert_core::{Certificate, Verdict};
use serde_json::Value;

fn lncert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lncert"))
        .args(args)
        .env_remove("LNCERT_MAX_BISECTIONS")
        .output()
        .expect("run lncert")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn one_line_error(o: &Output, code: &str) {
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("{code}: ")), "{err}");
}

#[test]
fn fixed_partition_e_exit_zero() {
    let o = lncert(&["certify-e", "--paper"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lower_sum = 1\n"));
    assert!(out.contains("upper_sum = 629/630"));
}

#[test]
fn power_below_e_is_refuted_precondition() {
    let o = lncert(&["power", "2", "3"]);
    assert_eq!(o.status.code(), Some(1));
    one_line_error(&o, "PreconditionRefuted");
}

#[test]
fn ln_bound_of_one() {
    let o = lncert(&["ln-bound", "1", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["enclosure"]["lo"], "0/1");
    assert_eq!(v["enclosure"]["hi"], "0/1");
}

#[test]
fn decimal_input_round_trips() {
    let o = lncert(&["ln-bound", "2.7", "2.7", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["quantity"], "ln(27/10) - ln(27/10)");
    assert_eq!(v["x"], "1/1");
    let o = lncert(&["geom", "2.5", "2", "--json"]);
    let c = Certificate::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(c.parameter("r").unwrap().canonical(), "5/2");
}

#[test]
fn json_certificates_replay() {
    for args in [
        vec!["power", "3", "4", "--eps", "1/1000", "--json"],
        vec!["power", "e", "3", "--eps", "0.001", "--json"],
        vec!["pi-e", "--json", "--eps", "1/1000"],
        vec!["geom", "3/2", "4", "--json"],
        vec!["certify-e", "--eps", "1/10000", "--json"],
    ] {
        let o = lncert(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        for line in stdout(&o).lines() {
            let c = Certificate::from_json(line).unwrap();
            c.replay().unwrap();
            assert_eq!(c.verdict, Verdict::Certified);
            for key in [
                "cli_eps",
                "cli_refinement_floor",
                "cli_pi_lo",
                "cli_pi_hi",
                "cli_max_bisections",
            ] {
                assert!(c.config.contains_key(key), "{key} missing for {args:?}");
            }
        }
    }
}

#[test]
fn wide_pi_is_undecided() {
    let o = lncert(&["pi-e", "--pi-lo", "3", "--pi-hi", "4", "--eps", "1/1000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lncert(&["pi-e", "--pi-lo", "4", "--pi-hi", "3"]);
    assert_eq!(o.status.code(), Some(3));
    one_line_error(&o, "UsageError");
}

#[test]
fn usage_and_domain_errors_exit_three() {
    for args in [
        vec!["bogus"],
        vec!["ln-bound", "1"],
        vec!["ln-bound", "x", "2"],
        vec!["power", "4", "3"],
        vec!["ln-bound", "0", "2"],
    ] {
        let o = lncert(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert_eq!(stderr(&o).lines().count(), 1, "{args:?}: {}", stderr(&o));
    }
    let o = lncert(&["--eps", "1e-40", "ln-bound", "1", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = lncert(&["geom", "1", "3"]);
    one_line_error(&o, "DomainError");
}

#[test]
fn bisection_cap_from_env_is_recorded() {
    let o = Command::new(env!("CARGO_BIN_EXE_lncert"))
        .args(["power", "3", "4", "--eps", "1/1000", "--json"])
        .env("LNCERT_MAX_BISECTIONS", "5000")
        .output()
        .unwrap();
    let c = Certificate::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(c.config["cli_max_bisections"], "5000");
    assert_eq!(c.config["cli_max_bisections_source"], "env");
    assert_eq!(c.config["max_bisections"], "5000");

    let o = Command::new(env!("CARGO_BIN_EXE_lncert"))
        .args(["ln-bound", "1", "1000", "--eps", "1e-12"])
        .env("LNCERT_MAX_BISECTIONS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    one_line_error(&o, "PrecisionError");
}

#[test]
fn euler_table() {
    let o = lncert(&["euler-limit", "--seq", "ratios:2", "--n", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["rows"][0]["lower"], "2/3");
    assert_eq!(v["rows"][0]["upper"], "3/4");
    let o = lncert(&["euler-limit", "--seq", "ratios:2,1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
    one_line_error(&o, "NonIncreasingSequence");
    let o = lncert(&["euler-limit", "--seq", "identity", "--n", "1000", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["inside"] == Value::Bool(true)));
}

#[test]
fn figure_to_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nine.svg");
    let o = lncert(&["figure", "fig09", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let file = std::fs::read_to_string(&path).unwrap();
    let o = lncert(&["figure", "partition-lower-e"]);
    assert_eq!(stdout(&o), file);
    roxmltree::Document::parse(&file).unwrap();
    let o = lncert(&["figure", "fig07"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_replays_saved_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let o = lncert(&["geom", "2", "3", "--json"]);
    let path = dir.path().join("c.json");
    std::fs::write(&path, stdout(&o)).unwrap();
    let o = lncert(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let tampered = stdout(&lncert(&["geom", "2", "3", "--json"])).replace("\"15/8\"", "\"2/1\"");
    std::fs::write(&path, tampered).unwrap();
    let o = lncert(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    one_line_error(&o, "ReplayError");
}

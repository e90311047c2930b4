use std::process::Command;

use serde_json::Value;

fn chern(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chern"));
    cmd.args(args);
    for var in ["CHERN_DEGREE", "CHERN_FORMAT", "CHERN_SEED"] {
        cmd.env_remove(var);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("valid JSON")
}

#[test]
fn total_chern_of_two_lines() {
    let (code, out, _) = chern(&["--format", "text", "chern", "total", "--class", r#"{"pos":[[1],[0,1]]}"#], &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "t^0: 1\nt^1: u1+u2\nt^2: u1*u2\n");
}

#[test]
fn degree_env_override_truncates() {
    let class = r#"{"neg":[[1]]}"#;
    let (_, out, _) = chern(&["chern", "total", "--class", class], &[("CHERN_DEGREE", "3")]);
    let v = json(&out);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["total"]["coefficients"].as_array().unwrap().len(), 4);
    // the flag wins over the environment
    let (_, out, _) = chern(&["chern", "total", "--class", class, "--degree", "2"], &[("CHERN_DEGREE", "3")]);
    assert_eq!(json(&out)["degree"], 2);
}

#[test]
fn format_env_override() {
    let (code, out, _) = chern(&["grass", "rank", "3", "6"], &[("CHERN_FORMAT", "text")]);
    assert_eq!(code, 0);
    assert_eq!(out, "rank: 20\n");
}

#[test]
fn seed_is_recorded_in_grr_reports() {
    let (code, out, _) = chern(&["grr", "verify", "--max-i", "2"], &[("CHERN_SEED", "17")]);
    assert_eq!(code, 0);
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["seed"] == 17 && r["pass"] == true));
}

#[test]
fn universal_polynomials() {
    let (_, out, _) = chern(&["universal-poly", "--n", "2", "--m", "1", "--i", "2"], &[]);
    assert_eq!(json(&out)["text"], "c1(F)*c1(G)+c2(F)+c1(G)^2");
    let (_, out, _) = chern(&["universal-poly", "--n", "3", "--i", "1", "--lambda", "2"], &[]);
    assert_eq!(json(&out)["text"], "2*c1(F)");
}

#[test]
fn schur_polynomial_and_operation() {
    let (_, out, _) = chern(&["schur", "--mu", "1,1", "--k", "3"], &[]);
    assert_eq!(json(&out)["text"], "x1*x2+x1*x3+x2*x3");
    let (code, out, _) =
        chern(&["--format", "text", "schur", "--mu", "1,1", "--class", r#"{"pos":[[1],[0,1],[0,0,1]]}"#], &[]);
    assert_eq!(code, 0);
    // the determinant of lambda-classes for (1,1) is the complete symmetric class
    assert!(out.starts_with("L[2*u3]+L[u2+u3]+L[2*u2]+L[u1+u3]+L[u1+u2]+L[2*u1]"), "{out}");
}

#[test]
fn gamma_commands() {
    let (_, out, _) =
        chern(&["--format", "text", "gamma-degree", "--class", r#"{"pos":[[1,1]],"neg":[[1],[0,1]]}"#], &[]);
    assert_eq!(out, "filtration degree: 2\n");
    let (_, out, _) =
        chern(&["--format", "text", "--degree", "3", "gamma-series", "--class", r#"{"pos":[[1]],"neg":[[]]}"#], &[]);
    assert_eq!(out, "t^0: 1\nt^1: v1\n");
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        &["lr", "--mu", "1,2", "--nu", "1"][..],
        &["lr", "--mu", "2,-1"],
        &["chern", "dual", "--class", "[1,2]"],
        &["grass", "rank", "0", "3"],
        &["frobnicate"],
        &["--degree", "0", "grass", "rank", "2", "4"],
    ] {
        let (code, out, err) = chern(args, &[]);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["grass", "present", "3", "6"];
    let first = chern(&args, &[]);
    let second = chern(&args, &[]);
    assert_eq!(first, second);
    assert_eq!(first.0, 0);
}

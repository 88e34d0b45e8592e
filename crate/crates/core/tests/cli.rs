use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn daggerlab(args: &[&str], stdin: &str, envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_daggerlab"));
    cmd.args(args)
        .env_remove("DAGGERLAB_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const SWAP: &str = r#"{"field":"C","dom":2,"cod":2,"entries":[[[0,0],[1,0]],[[1,0],[0,0]]]}"#;

#[test]
fn sqrt_of_swap_squares_back() {
    let out = daggerlab(&["sqrt"], SWAP, &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["interpolation_data"].as_array().unwrap().len(), 2);
}

#[test]
fn sqrt_rejects_bad_input() {
    let real = r#"{"field":"R","dom":1,"cod":1,"entries":[[[1]]]}"#;
    assert_eq!(daggerlab(&["sqrt"], real, &[]).status.code(), Some(2));
    let scaled = r#"{"field":"C","dom":1,"cod":1,"entries":[[[2,0]]]}"#;
    assert_eq!(daggerlab(&["sqrt"], scaled, &[]).status.code(), Some(2));
    let broken = daggerlab(&["sqrt", "-"], "{\"field\":", &[]);
    assert_eq!(broken.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&broken.stderr).contains("line 1"));
}

#[test]
fn sqrt_reads_a_file_and_writes_out() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("u.json");
    let output = dir.path().join("root.json");
    std::fs::write(&input, SWAP).unwrap();
    let out = daggerlab(
        &[
            "sqrt",
            input.to_str().unwrap(),
            "--out",
            output.to_str().unwrap(),
        ],
        "",
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["root"]["dom"], 2);
}

#[test]
fn verify_axioms_exit_codes() {
    let base = [
        "verify-axioms",
        "--dims",
        "1,2,3",
        "--trials",
        "5",
        "--field",
    ];
    for (field, code) in [("C", 0), ("R", 1), ("H", 1)] {
        let args: Vec<&str> = base.iter().copied().chain([field]).collect();
        let out = daggerlab(&args, "", &[]);
        assert_eq!(out.status.code(), Some(code), "{field}");
        let v = json(&out);
        let h5: Vec<&Value> = v["reports"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["axiom"] == "H5")
            .collect();
        let expected = if field == "C" { "pass" } else { "infeasible" };
        assert!(h5.iter().all(|r| r["status"] == expected), "{field}");
    }
}

#[test]
fn seed_from_environment_matches_flag() {
    let args = ["lemmas", "--field", "R", "--dims", "2,3", "--trials", "3"];
    let from_env = daggerlab(&args, "", &[("DAGGERLAB_SEED", "17")]);
    let flag: Vec<&str> = args.iter().copied().chain(["--seed", "17"]).collect();
    let from_flag = daggerlab(&flag, "", &[]);
    assert_eq!(json(&from_env)["seed"], 17);
    assert_eq!(from_env.stdout, from_flag.stdout);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"field":"H","dims":[2],"seed":5,"trials":2}"#).unwrap();
    let out = daggerlab(
        &[
            "reconstruct",
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "6",
        ],
        "",
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["field"], "H");
    assert_eq!(v["seed"], 6);
    assert!(v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["axiom"].as_str().unwrap().starts_with("reconstruct.")));
}

#[test]
fn span_text_and_field_check() {
    let out = daggerlab(&["span", "--dims", "1,2", "--format", "text"], "", &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank=1"));
    assert!(text.contains("rank=8"));
    assert_eq!(
        daggerlab(&["span", "--field", "R"], "", &[]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors() {
    assert_eq!(
        daggerlab(&["lemmas", "--field", "Q"], "", &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(daggerlab(&["nonsense"], "", &[]).status.code(), Some(2));
    assert_eq!(daggerlab(&["--help"], "", &[]).status.code(), Some(0));
    let missing = daggerlab(&["lemmas", "--config", "/nonexistent/cfg.json"], "", &[]);
    assert_eq!(missing.status.code(), Some(2));
}

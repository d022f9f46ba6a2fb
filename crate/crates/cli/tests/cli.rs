use std::path::PathBuf;
use std::process::{Command, Output};

fn boxpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxpoly")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("boxpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let _ = std::fs::remove_file(&path);
    path
}

#[test]
fn compute_prints_one_json_line() {
    let text = stdout(&boxpoly(&["compute", "--spec", "1,1,1,1;6"]));
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["box"], serde_json::json!(["0", "0", "1", "1", "1", "0"]));
    assert_eq!(v["hstar"], serde_json::json!(["1", "0", "2", "2", "1", "0"]));
    assert_eq!(v["ms"], serde_json::Value::Null);
}

#[test]
fn invalid_spec_fails_with_a_message() {
    let out = boxpoly(&["compute", "--spec", "1;1"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(err.lines().count(), 1, "{err}");

    let out = boxpoly(&["compute", "--spec", "1,x;5"]);
    assert!(!out.status.success());
}

#[test]
fn sampling_output_ignores_job_count() {
    let args = |jobs: &'static str| {
        ["--jobs", jobs, "sample-random", "--d", "6", "-N", "101", "--count", "25", "--seed", "9"]
    };
    let one = boxpoly(&args("1"));
    let four = boxpoly(&args("4"));
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(stdout(&one).lines().count(), 25);
    let summary = String::from_utf8_lossy(&one.stderr);
    assert!(summary.contains("ChaCha8Rng"), "{summary}");
}

#[test]
fn emit_converts_json_lines() {
    let input = scratch("records.jsonl");
    let out = boxpoly(&[
        "--out",
        input.to_str().unwrap(),
        "sweep-partitions",
        "--n",
        "5",
    ]);
    assert!(out.status.success());
    let jsonl = std::fs::read_to_string(&input).unwrap();
    let records = jsonl.lines().count();
    assert!(records > 0);

    let csv = stdout(&boxpoly(&["--format", "csv", "emit", "--input", input.to_str().unwrap()]));
    assert_eq!(csv.lines().count(), records + 1);
    assert!(csv.starts_with("spec,d,N,box,hstar"));

    let tsv = stdout(&boxpoly(&["--format", "tsv", "emit", "--input", input.to_str().unwrap()]));
    assert_eq!(tsv.lines().filter(|l| l.starts_with("# ")).count(), records);

    let svg = stdout(&boxpoly(&["--format", "svg", "emit", "--input", input.to_str().unwrap()]));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    let again = stdout(&boxpoly(&["emit", "--input", input.to_str().unwrap()]));
    assert_eq!(again, jsonl);
}

#[test]
fn resume_appends_only_new_rows() {
    let path = scratch("resume.jsonl");
    let p = path.to_str().unwrap();
    let base = ["--out", p, "sample-random", "--d", "5", "-N", "40", "--seed", "3", "--no-idp", "--resume"];
    let run = |count: &str| {
        let mut args = base.to_vec();
        args.extend(["--count", count]);
        assert!(boxpoly(&args).status.success());
        std::fs::read_to_string(&path).unwrap()
    };
    let first = run("10");
    let second = run("20");
    assert!(second.starts_with(&first));
    let specs: std::collections::HashSet<String> = second
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            format!("{};{}", v["a"], v["N"])
        })
        .collect();
    assert_eq!(specs.len(), second.lines().count(), "no spec written twice");
    assert_eq!(run("20"), second, "a finished run appends nothing");
}

#[test]
fn family_subcommands() {
    let alpha: serde_json::Value =
        serde_json::from_str(&stdout(&boxpoly(&["alpha", "--a", "5", "-N", "12"]))).unwrap();
    assert_eq!(alpha["alpha"], serde_json::json!([2, 2, 3, 2, 2]));
    assert_eq!(alpha["residue_rule"], alpha["alpha"]);

    let st: serde_json::Value =
        serde_json::from_str(&stdout(&boxpoly(&["stapledon", "--spec", "1,1;4"]))).unwrap();
    assert_eq!(st["ell"], 2);
    assert_eq!(st["b"], serde_json::json!(["2", "2"]));

    let geo = stdout(&boxpoly(&["--format", "tsv", "geometric", "--q", "2", "--k", "4", "--witness"]));
    assert_eq!(geo.lines().count(), 1 + 6);
}

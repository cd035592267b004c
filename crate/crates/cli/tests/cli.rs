use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_northcott"))
        .args(args)
        .env_remove("NORTHCOTT_PRECISION_BITS")
        .env_remove("NORTHCOTT_DIGIT_CAP")
        .env_remove("NORTHCOTT_MR_ROUNDS")
        .env_remove("NORTHCOTT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cells(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

#[test]
fn construct_const_one() {
    let o = run(&[
        "construct",
        "--gamma",
        "0",
        "--f",
        "const:1",
        "--variant",
        "two-prime",
        "--terms",
        "3",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).take(3).map(cells).collect();
    assert_eq!(
        rows,
        vec![
            vec!["1", "2", "11", "13"],
            vec!["2", "3", "23", "29"],
            vec!["3", "5", "149", "151"]
        ]
    );
}

#[test]
fn construct_minf_uses_log_notation() {
    let o = run(&["construct", "--variant", "minf", "--terms", "2", "--digit-cap", "50"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(cells(lines[1]), ["1", "2", "59", "61"]);
    assert_eq!(cells(lines[2])[2], "~exp(243)");
}

#[test]
fn gamma_out_of_range_is_a_usage_error() {
    let o = run(&["construct", "--gamma", "2", "--variant", "two-prime", "--terms", "2"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gamma"));
}

#[test]
fn bad_flags_exit_64() {
    assert_eq!(run(&["construct", "--no-such-flag"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["construct", "--gamma", "x"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_reports_embed_config_and_are_reproducible() {
    let args = [
        "--format",
        "json",
        "--precision",
        "96",
        "bracket",
        "--f",
        "const:1",
        "--terms",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "bracket");
    assert_eq!(v["config"]["precision"], 96);
    assert_eq!(v["config"]["digit_cap"], 2000);
}

#[test]
fn environment_sets_precision() {
    let o = Command::new(env!("CARGO_BIN_EXE_northcott"))
        .args(["--format", "json", "classify", "--f", "log"])
        .env("NORTHCOTT_PRECISION_BITS", "200")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["precision"], 200);
    let o = Command::new(env!("CARGO_BIN_EXE_northcott"))
        .args(["classify"])
        .env("NORTHCOTT_PRECISION_BITS", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn enumerate_emits_json_lines() {
    let o = run(&["--format", "json", "enumerate", "--deg", "2", "--cap", "0.1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, records) = lines.split_last().unwrap();
    assert_eq!(records.len(), 5);
    assert!(records.iter().all(|r| r["is_rou"] == true));
    assert_eq!(summary["number_count"], 9);
    assert_eq!(summary["schema"], 1);
}

#[test]
fn enumerate_csv_has_header() {
    let o = run(&["--format", "csv", "enumerate", "--deg", "1", "--cap", "log:3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().next().unwrap().contains(','));
    assert!(out.lines().count() >= 6);
}

#[test]
fn budget_stop_exits_1_with_resume_hint() {
    let o = run(&["enumerate", "--deg", "2", "--cap", "0.5", "--max-polynomials", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--resume"));
}

#[test]
fn height_of_radical_agrees_with_oracle() {
    let o = run(&["--format", "json", "height", "--radical", "(11/13)^(1/2)", "--oracle"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["agree"], true);
}

#[test]
fn verify_suites_pass() {
    for suite in ["heights", "bracket-const", "table1"] {
        let o = run(&["verify", "--suite", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_recip-lab"));
    c.env_remove("RECIP_LAB_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const LITTLEWOOD: &str = r#"{"measure":{"type":"atoms","weights":[[-1,"1/2"],[1,"1/2"]]},
    "m_values":[5,9],"samples":1,"seed":3,"mode":"exhaustive"}"#;

#[test]
fn verify_counts_prints_the_table() {
    let o = run(&["verify", "counts"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("PASS irreducible_reciprocal_counts"));
    let row: Vec<&str> = out
        .lines()
        .find(|l| l.split_whitespace().take(2).eq(["5", "5"]))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(row, ["5", "5", "312", "312"]);
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let o = run(&["verify", "unknown"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn verify_all_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.jsonl");
    let o = run(&[
        "verify",
        "all",
        "--seed",
        "7",
        "--format",
        "jsonlines",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let lines = fs::read_to_string(&out).unwrap();
    for line in lines.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["check"]["failed"], 0);
    }
    assert!(lines.lines().count() >= 9);
}

#[test]
fn littlewood_square_discriminants_never_occur() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "lw.json", LITTLEWOOD);
    let o = run(&["experiment", &cfg]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.contains(",disc_square,")).collect();
    assert_eq!(rows.len(), 2);
    for r in rows {
        let f: Vec<&str> = r.split(',').collect();
        assert_eq!((f[2], f[7]), ("0.0", "0"), "{r}");
    }
    assert!(out.lines().next().unwrap().starts_with("# recip-lab"));
    assert!(out.contains("# config_sha256 "));
}

#[test]
fn dirac_irreducibility_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "dirac.json",
        r#"{"measure":{"type":"atoms","weights":[[0,"1"]]},"m_values":[2],"samples":50,"seed":1,"format":"jsonlines"}"#,
    );
    let o = run(&["experiment", &cfg]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let row: serde_json::Value = out
        .lines()
        .skip(1)
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|v| v["statistic"] == "irreducible")
        .unwrap();
    assert_eq!(row["exact"], "1");
    assert_eq!(row["ci_low"], row["ci_high"]);
}

#[test]
fn same_seed_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "mc.json",
        r#"{"measure":{"type":"uniform","lo":-3,"hi":3},"m_values":[6,8],"samples":300,"seed":11,
            "mode":"sample","statistics":["irreducible","reciprocal_divisor","exceptional","disc_square","galois"]}"#,
    );
    let a = run(&["experiment", &cfg, "--workers", "1"]);
    let b = run(&["experiment", &cfg, "--workers", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["experiment", &cfg, "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&c).contains("# seed 12"));
}

#[test]
fn experiment_errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(
        dir.path(),
        "bad.json",
        r#"{"measure":{"type":"uniform","lo":0,"hi":1},"m_values":[],"samples":5}"#,
    );
    assert_eq!(code(&run(&["experiment", &bad])), 2);
    let unknown = write_config(
        dir.path(),
        "unknown.json",
        r#"{"measure":{"type":"uniform","lo":0,"hi":1},"m_values":[2],"samples":5,"colour":1}"#,
    );
    assert_eq!(code(&run(&["experiment", &unknown])), 2);
    assert_eq!(code(&run(&["experiment", "/definitely/not/here.json"])), 3);
    let good = write_config(dir.path(), "lw.json", LITTLEWOOD);
    assert_eq!(
        code(&run(&["experiment", &good, "--out", "/definitely/not/here/out.csv"])),
        3
    );
    let out = dir.path().join("out.csv");
    assert_eq!(code(&run(&["experiment", &good, "--out", out.to_str().unwrap()])), 0);
    assert!(fs::read_to_string(out)
        .unwrap()
        .contains("m,statistic,estimate,ci_low,ci_high,n,seed,exact"));
}

#[test]
fn classify_reports() {
    let o = run(&["classify", "1,1,1,1,1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "G2");
    assert_eq!(v["c2sm_excluded"], true);
    let half = run(&["classify", "--half", "1,1,1"]);
    assert_eq!(half.stdout, o.stdout);
    // (T^2+T+1)(T^2+1)
    let red: serde_json::Value = serde_json::from_str(stdout(&run(&["classify", "1,1,2,1,1"])).trim()).unwrap();
    assert_eq!(red["verdict"], "reducible");
    let csv = stdout(&run(&["classify", "1,1,1,1,1", "--format", "csv"]));
    assert!(csv.lines().any(|l| l == "verdict,G2"));
}

#[test]
fn classify_rejects_bad_input() {
    let o = run(&["classify", "--full", "1,2,1,1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not reciprocal"));
    assert_eq!(code(&run(&["classify", "1,2,3"])), 2);
    assert_eq!(code(&run(&["classify", "1,a"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let file = write_config(dir.path(), "phi5.txt", "1,1,1,1,1\n");
    let v: serde_json::Value = serde_json::from_str(stdout(&run(&["classify", &file])).trim()).unwrap();
    assert_eq!(v["verdict"], "G2");
}

#[test]
fn delta_and_count() {
    let uniform3 = r#"{"type":"uniform","lo":0,"hi":2}"#;
    let o = run(&[
        "delta",
        "--measure",
        uniform3,
        "--m",
        "2",
        "--primes",
        "3",
        "--kmax",
        "1",
    ]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "0"));
    let dirac = r#"{"type":"atoms","weights":[[0,"1"]]}"#;
    let o = run(&["delta", "--measure", dirac, "--m", "2", "--primes", "2", "--kmax", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim().contains('/'));
    let three = run(&[
        "delta",
        "--measure",
        uniform3,
        "--m",
        "2",
        "--primes",
        "2,3,5",
        "--kmax",
        "1",
    ]);
    assert_eq!(code(&three), 4);
    let capped = bin()
        .env("RECIP_LAB_CAP", "10")
        .args([
            "delta",
            "--measure",
            uniform3,
            "--m",
            "3",
            "--primes",
            "3",
            "--kmax",
            "3",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&capped), 4);
    let o = run(&["count", "3", "1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "1"));
    assert_eq!(stdout(&run(&["count", "5", "5"])).trim(), "312");
    assert_eq!(code(&run(&["count", "4", "1"])), 2);
    assert_eq!(code(&run(&["count", "3", "0"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

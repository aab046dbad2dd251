use std::path::Path;
use std::process::{Command, Output};

fn g2(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2"))
        .args(args)
        .env("G2_CACHE_DIR", cache)
        .env_remove("G2_SEED")
        .output()
        .expect("g2 runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn construct_10_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["construct", "10"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["N"], "10");
    assert_eq!(v["verification"]["count"], "10");
    assert_eq!(v["construction_log"]["seed"], 1);
    let file = dir.path().join("c.json");
    std::fs::write(&file, &o.stdout).unwrap();
    let o = g2(&["verify", file.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["valid"], true);
}

#[test]
fn construct_13_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["construct", "13"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 (mod 6)"));
    assert!(o.stdout.is_empty());
}

#[test]
fn construct_12_with_factors_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c12.json");
    let o = g2(&["construct", "12", "--factors", "2^2,3", "--seed", "5", "--out", file.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["construction_log"]["seed"], 5);
    let bad = g2(&["construct", "12", "--factors", "2,3"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn tampered_certificate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["construct", "20"], dir.path());
    let text = stdout(&o).replacen("\"N\": \"20\"", "\"N\": \"21\"", 1);
    let file = dir.path().join("bad.json");
    std::fs::write(&file, text).unwrap();
    let o = g2(&["verify", file.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = g2(&["verify", dir.path().join("missing.json").to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn weil_central_exceptional() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["weil", "central", "2", "10"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["f"], "x^4 + x^3 + 2*x^2 + 2*x + 4");
    assert_eq!(g2(&["weil", "central", "11", "1000"], dir.path()).status.code(), Some(1));
}

#[test]
fn weil_enum_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["weil", "enum", "10"], dir.path());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,a,b,ordinary,irreducible,seed"));
    assert!(text.lines().any(|l| l == "2,-1,-2,false,false,1"));
    assert!(lines.all(|l| l.split(',').count() == 6));
}

#[test]
fn hilbert_minus_19() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["hilbert", "-19"], dir.path());
    assert_eq!(stdout(&o), "x + 884736\n");
    assert_eq!(g2(&["hilbert", "-5"], dir.path()).status.code(), Some(1));
}

#[test]
fn delta_min_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["delta-min", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["delta"], "144");
}

#[test]
fn glue_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = g2(&["glue2", "--e1", "3,0", "--e2", "0,1", "-p", "5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(!json(&o)["curves"].as_array().unwrap().is_empty());
    let o = g2(&["glue3", "--e1", "1,1", "--e2", "1,0", "-p", "7"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["curves"].is_array());
    assert_eq!(g2(&["glue2", "--e1", "0,0", "--e2", "0,1", "-p", "5"], dir.path()).status.code(), Some(1));
}

#[test]
fn verify_2013_needs_slow_flag() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(g2(&["verify-2013"], dir.path()).status.code(), Some(1));
    let o = g2(&["verify-2013", "--exponents", "1,0,1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["point_count"], "8000");
    assert_eq!(v["p"], "8171");
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(g2(&["bogus"], dir.path()).status.code(), Some(1));
}

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn adw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adw"))
        .args(args)
        .env("ADW_THREADS", "2")
        .output()
        .expect("adw runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn witness_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/witnesses"))
}

#[test]
fn show_prints_the_table() {
    let o = adw(&["show", "AD4.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("e_1▷e_2=e_4, e_3▷e_1=e_4"), "{}", stdout(&o));
    let o = adw(&["show", "As3.5", "--params", "lambda=0"]);
    assert!(stdout(&o).contains("e_1e_1=e_3, e_2e_2=e_3"), "{}", stdout(&o));
}

#[test]
fn check_exit_codes() {
    let o = adw(&["check", "AD3.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all identities hold"));
    let o = adw(&["check", "AD3.17", "--params", "lambda=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("id1 at (e_1,e_1,e_2)"), "{}", stdout(&o));
}

#[test]
fn usage_errors_echo_the_token() {
    let o = adw(&["check", "AD3.8", "--params", "alpha=1/0x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1/0x"), "{}", stderr(&o));
    let o = adw(&["show", "AD9.9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("AD9.9"));
    let o = adw(&["verify", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nosuch"));
    let o = adw(&["check", "AD3.15", "--params", "alpha=0,beta=1,gamma=1,lambda=1"]);
    assert_eq!(o.status.code(), Some(2), "constraint violation is a usage error");
    assert_eq!(adw(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sum_and_center() {
    let o = adw(&["sum", "AD4.18", "--params", "alpha=2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("matches As4.6"));
    let o = adw(&["center", "As4.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("<e_3,e_4>"));
}

#[test]
fn suite_runs_quickly() {
    let start = Instant::now();
    let o = adw(&["verify", "ad4-thm1", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(start.elapsed() < Duration::from_secs(60));
    let o = adw(&["verify", "ad3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 1);
    let fail = v["checks"].as_array().unwrap().iter().find(|c| c["status"] == "fail").unwrap();
    assert_eq!(fail["repro"], "adw check AD3.17 --params lambda=0");
}

#[test]
fn witnesses_verify_and_search() {
    let file = witness_dir().join("ad3-21-ad3-20.json");
    let o = adw(&["iso", "verify", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let o = adw(&[
        "iso",
        "AD4.38",
        "AD4.39",
        "--src-params",
        "alpha=0",
        "--dst-params",
        "alpha=0,beta=-1/2",
        "--witness",
        witness_dir().join("ad4-38-ad4-39.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = adw(&[
        "iso",
        "AD3.8",
        "AD3.8",
        "--src-params",
        "alpha=1,beta=0",
        "--dst-params",
        "alpha=0,beta=-1",
        "--search",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, std::fs::read_to_string(witness_dir().join("ad3-8-swap-1.json")).unwrap());

    // A witness for one pair is rejected for another.
    let o = adw(&[
        "iso",
        "AD3.8",
        "AD3.8",
        "--src-params",
        "alpha=1,beta=0",
        "--dst-params",
        "alpha=2,beta=0",
        "--witness",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn automorphism_printed_form_is_rejected() {
    let o = adw(&["automorphism", "As4.10", "2", "--printed", "--params", "a=1,b=0,c=2,d=0,e=0,f=0"]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("not an automorphism"));
}

#[test]
fn probe_and_export() {
    let o = adw(&["probe", "As4.6/AD3.4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("forces a_33 = -1"));
    assert_eq!(adw(&["probe", "nope"]).status.code(), Some(2));
    let o = adw(&["probe", "list"]);
    assert_eq!(stdout(&o).lines().count(), 18);
    let o = adw(&["export", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn listing_filters() {
    let o = adw(&["list", "--base", "As4.3"]);
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(ids, (1..=13).map(|k| format!("AD4.{k}")).collect::<Vec<_>>());
    let o = adw(&["list", "--dim", "3", "--kind", "assoc"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}

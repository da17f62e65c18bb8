use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compactify"))
        .args(args)
        .env_remove("COMPACTIFY_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn tree_register_of_cherry() {
    assert_eq!(ok(&["tree", "register", "(..)"]), "tree,register\n(..),1\n");
}

#[test]
fn tree_steps_end_at_leaf() {
    let text = ok(&["tree", "reduce", "((..)(..))", "--steps"]);
    let last = text.lines().last().unwrap();
    assert_eq!(last, "2,.,0,0");
}

#[test]
fn path_degree() {
    assert_eq!(ok(&["path", "cdeg", "UURD"]), "path,cdeg\nUURD,1\n");
}

#[test]
fn exact_json_keeps_rationals() {
    let v: Value =
        serde_json::from_str(&ok(&["exact", "r-branches", "--n", "5", "--r", "1", "--format", "json"])).unwrap();
    assert_eq!(v["command"], "exact");
    assert_eq!(v["parameters"]["n"], 5);
    assert_eq!(v["records"][0]["exact"]["numerator"], "5");
    assert_eq!(v["records"][0]["exact"]["denominator"], "3");
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_compactify"))
        .args(["exact", "catalan", "--n", "10"])
        .env("COMPACTIFY_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["records"][0]["exact"], 16796);
}

#[test]
fn verify_small_sweep_passes() {
    let out = run(&["verify", "cdeg-counts", "--nmax", "9"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn mutated_constant_fails_verification() {
    let out = run(&["verify", "fringes", "--nmax", "6", "--mutate", "fringe_cubic:1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn fluctuation_table_tracks_fourier_series() {
    let text = ok(&["fluctuation", "branches", "--nmin", "64", "--nmax", "256", "--points", "5"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,x,phase,empirical,fourier"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert!((row[3] - row[4]).abs() < 5e-3, "{row:?}");
    }
}

#[test]
fn fluctuation_writes_file() {
    let path = std::env::temp_dir().join(format!("compactify-fluct-{}.csv", std::process::id()));
    ok(&[
        "fluctuation",
        "total-fringe",
        "--nmin",
        "128",
        "--nmax",
        "512",
        "--points",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn sampling_is_deterministic_across_thread_counts() {
    let a = ok(&["mc", "cdeg", "--n", "20", "--samples", "2000", "--seed", "9", "--threads", "1"]);
    let b = ok(&["mc", "cdeg", "--n", "20", "--samples", "2000", "--seed", "9", "--threads", "4"]);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tree", "register", "(.."]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nope", "--nmax", "3"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "cdeg", "--n", "13"]).status.code(), Some(2));
    assert_eq!(run(&["exact", "fringe", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["tree", "reduce", "."]).status.code(), Some(3));
    assert_eq!(run(&["oracle", "cdeg", "--n", "11", "--unsafe-bound", "11"]).status.code(), Some(0));
}

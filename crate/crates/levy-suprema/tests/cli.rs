use std::process::{Command, Output};

use levy_suprema::table::{Cell, Table};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levy-suprema"))
        .args(args)
        .env("LEVY_SUPREMA_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn table(args: &[&str]) -> Table {
    let out = cli(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    Table::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

fn float(t: &Table, row: usize, col: &str) -> f64 {
    match &t.rows[row][t.column(col).unwrap()] {
        Cell::Float(v) => *v,
        Cell::Int(v) => *v as f64,
        c => panic!("{col} is {c:?}"),
    }
}

#[test]
fn brownian_sup_cdf_row() {
    let t = table(&["sup-cdf", "--family", "brownian", "--t", "1", "--x", "1"]);
    assert_eq!(t.columns, ["t", "x", "p", "p_raw", "quad_err", "flag"]);
    assert!((float(&t, 0, "p") - 0.5204998778130465).abs() < 1e-6);
    assert_eq!(t.rows[0][5], Cell::Bool(false));
}

#[test]
fn cauchy_bounds_row() {
    let t = table(&["bounds", "--family", "stable:alpha=1", "--t", "1", "--x", "1"]);
    assert_eq!(t.columns, ["t", "x", "env_lower", "env_upper"]);
    assert!((float(&t, 0, "env_lower") - 5e-5).abs() < 1e-18);
    assert_eq!(float(&t, 0, "env_upper"), 1.0);
}

#[test]
fn cauchy_psi_dagger_row() {
    let t = table(&["psi-dagger", "--family", "stable:alpha=1", "--xi", "2"]);
    assert_eq!(t.columns, ["xi", "psi_dagger", "sqrt_psi", "lower_ratio", "upper_ratio"]);
    assert!((float(&t, 0, "psi_dagger") - 2f64.sqrt()).abs() < 1e-7);
    for c in ["lower_ratio", "upper_ratio"] {
        let r = float(&t, 0, c);
        assert!((0.5581..=1.7917).contains(&r), "{c} = {r}");
    }
}

#[test]
fn csv_output_round_trips_byte_for_byte() {
    let out = cli(&["sup-laplace", "--family", "stable:alpha=1.5", "--t", "0.5:2:2", "--xi", "0.5:2:3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 7);
    assert_eq!(Table::from_csv(&text).unwrap().to_csv(), text);
}

#[test]
fn json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let out = cli(&[
        "renewal",
        "--family",
        "relativistic:alpha=1,m=1",
        "--x",
        "0.1:10:3",
        "--output",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let val = r["V"].as_f64().unwrap();
        assert!(r["V_lower"].as_f64().unwrap() <= val && val <= r["V_upper"].as_f64().unwrap());
    }
}

#[test]
fn simulate_and_compare_columns() {
    let t = table(&[
        "simulate", "--family", "brownian", "--t", "1", "--x", "1", "--paths", "4000", "--steps", "100", "--seed", "3",
    ]);
    assert_eq!(t.columns, ["t", "x", "p_hat", "ci95", "n_paths", "n_steps", "refine_delta"]);
    assert_eq!(t.rows[0][4], Cell::Int(4000));
    let again = table(&[
        "simulate", "--family", "brownian", "--t", "1", "--x", "1", "--paths", "4000", "--steps", "100", "--seed", "3",
    ]);
    assert_eq!(t, again);
    let c = table(&[
        "compare", "--family", "stable:alpha=1.5", "--t", "1", "--x", "0.5:2:2", "--paths", "20000", "--steps", "200",
    ]);
    assert_eq!(c.rows.len(), 2);
    for row in &c.rows {
        assert_eq!(row[c.column("contained").unwrap()], Cell::Bool(true));
        assert_eq!(row[c.column("agrees").unwrap()], Cell::Bool(true));
    }
}

#[test]
fn precondition_failures_exit_with_2() {
    for args in [
        &["sup-cdf", "--family", "gamma", "--t", "1", "--x", "1"][..],
        &["sup-cdf", "--family", "brownian", "--t", "2:1:3", "--x", "1"],
        &["psi-dagger", "--family", "cpp-cosine", "--xi", "1"],
        &["sup-cdf", "--family", "brownian", "--t", "1", "--x", "1", "--gs-terms", "7"],
        &["simulate", "--family", "brownian", "--t", "1", "--x", "1", "--paths", "1000000", "--steps", "100000"],
        &["renewal", "--family", "cpp-cosine", "--x", "1"],
    ] {
        let out = cli(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let msg = String::from_utf8(cli(&["bounds", "--family", "gamma", "--t", "1", "--x", "1"]).stderr).unwrap();
    assert!(msg.contains("relativistic:alpha="));
}

#[test]
fn non_increasing_exponent_is_named() {
    let out = cli(&["sup-cdf", "--family", "cpp-cosine", "--t", "1", "--x", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("increasing"));
}

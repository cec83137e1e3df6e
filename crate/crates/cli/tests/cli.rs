use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercert"))
        .args(args)
        .output()
        .unwrap()
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercert"))
        .args(args)
        .env(key, val)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

#[test]
fn numeric_ring_table_on_a_quintic() {
    let r = json(&["ring-table", "--d", "5"]);
    let table = r["results"]["table"].as_array().unwrap();
    assert_eq!(table[1]["monomial"], "u1^3 u2");
    assert_eq!(table[1]["value"], "-50");
    assert_eq!(r["command"], "ring-table");
    assert!(!r["provenance"].as_array().unwrap().is_empty());
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn ring_table_needs_exactly_one_source() {
    assert_eq!(code(&["ring-table"]), Some(2));
    assert_eq!(code(&["ring-table", "--d", "5", "--symbolic"]), Some(2));
}

#[test]
fn chi_examples() {
    assert_eq!(
        json(&["chi", "--d", "15", "--m", "0", "--bundle", "sym"])["results"]["chi"],
        "365"
    );
    let r = json(&["chi", "--d", "15", "--bundle", "e2m", "--asymptotic"]);
    assert_eq!(r["results"]["leading_coefficient"], "85/108");
    assert_eq!(r["results"]["leading_power"], 4);
    let r = json(&["chi", "--d", "7", "--bundle", "sym", "--asymptotic"]);
    // (c1^2 - c2)/6 with c1^2 = 63, c2 = 189
    assert_eq!(r["results"]["leading_coefficient"], "-21");
    assert_eq!(code(&["chi", "--d", "0", "--m", "1"]), Some(2));
    assert_eq!(
        code(&["chi", "--d", "6", "--m", "1", "--twist", "1/0"]),
        Some(2)
    );
    assert_eq!(
        code(&["chi", "--d", "6", "--m", "1", "--twist", "x"]),
        Some(2)
    );
    assert_eq!(code(&["chi", "--d", "6"]), Some(2));
}

#[test]
fn twisted_chi_accepts_negative_fractions() {
    let r = json(&["chi", "--d", "6", "--m", "2", "--twist", "-1/2"]);
    assert_eq!(r["params"]["twist"], "-1/2");
    assert!(r["results"]["chi"].is_string());
}

#[test]
fn single_degree_sweep_passes_the_ratio_test() {
    let r = json(&["sweep", "--dmin", "21", "--dmax", "21"]);
    let rows = r["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["hyperbolicity"]["holds"], true);
    assert_eq!(rows[0]["hyperbolicity"]["margin"], "294");
    assert_eq!(r["results"]["first_hyperbolic"], 21);
}

#[test]
fn sweep_csv_has_a_stable_header() {
    let out = run(&["sweep", "--dmin", "5", "--dmax", "7", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "d,c1sq,c2,theta1_lower,theta1_upper,theta2_lower,gg_existence,miyaoka,ratio_7_9,bogomolov,foliation,hyperbolicity,hyperbolicity_margin"
    );
    assert_eq!(
        lines.next().unwrap(),
        "5,5,55,1,2,,false,false,false,false,false,,"
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn sweep_range_violations_are_usage_errors() {
    assert_eq!(code(&["sweep", "--dmin", "4", "--dmax", "10"]), Some(2));
    assert_eq!(code(&["sweep", "--dmin", "10", "--dmax", "9"]), Some(2));
    assert_eq!(code(&["sweep", "--dmin", "5", "--dmax", "201"]), Some(2));
    assert_eq!(
        code(&[
            "sweep",
            "--dmin",
            "5",
            "--dmax",
            "201",
            "--max-degree",
            "300"
        ]),
        Some(0)
    );
}

#[test]
fn connection_report_shape() {
    let r = json(&["connection", "--d", "6", "--k", "2,1,2,1"]);
    let res = &r["results"];
    assert_eq!(res["gamma"].as_array().unwrap().len(), 64);
    assert_eq!(res["equations_checked"], 64);
    assert_eq!(res["pole_divisor"]["total_degree"], 8);
    assert_eq!(res["ratio_B_over_K"], "4");
    assert_eq!(res["smooth_critical_relation"], "16*a^6 = 46656");
    assert_eq!(res["pole_budget"]["bounds"][0]["parity_bound"], "1/3");
    // jacobian determinant: sum of the four (d - 1) row degrees
    assert_eq!(res["jacobian_degree"], 20);
    let factors: Vec<&str> = res["pole_divisor"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["factor"].as_str().unwrap())
        .collect();
    assert_eq!(&factors[..4], ["z0", "z1", "z2", "z3"]);
}

#[test]
fn connection_with_a_zero_exponent_and_a_parameter_value() {
    let r = json(&["connection", "--d", "6", "--k", "2,2,2,0"]);
    assert_eq!(r["results"]["gamma"].as_array().unwrap().len(), 64);
    let r = json(&["connection", "--d", "5", "--k", "2,1,1,1", "--a", "-3/2"]);
    assert_eq!(r["params"]["a"], "-3/2");
    assert_eq!(r["results"]["nonsingular"], true);
    assert!(r["results"]["pole_budget"].is_null());
}

#[test]
fn connection_rejects_bad_compositions() {
    assert_eq!(code(&["connection", "--d", "6", "--k", "1,1,1,1"]), Some(2));
    assert_eq!(code(&["connection", "--d", "4", "--k", "1,1,1,1"]), Some(2));
    assert_eq!(code(&["connection", "--d", "6", "--k", "3,3"]), Some(2));
    assert_eq!(
        code(&["connection", "--d", "6", "--k", "2,2,1,1", "--a", "1/"]),
        Some(2)
    );
}

#[test]
fn h0p3_examples_and_capacity() {
    assert_eq!(json(&["h0p3", "--m", "1", "--k", "2"])["results"]["h0"], 6);
    let r = json(&["h0p3", "--m", "2", "--k", "3"]);
    assert_eq!(r["results"]["h0"], 0);
    assert_eq!(r["results"]["vanishing_witnessed"], true);
    assert!(
        json(&["h0p3", "--m", "3", "--k", "6"])["results"]["h0"]
            .as_u64()
            .unwrap()
            > 0
    );
    assert_eq!(json(&["h0p3", "--m", "2", "--k", "-3"])["results"]["h0"], 0);
    assert_eq!(
        code(&["h0p3", "--m", "6", "--k", "14", "--cap", "100"]),
        Some(3)
    );
}

#[test]
fn output_is_byte_identical_across_runs_and_strategies() {
    for args in [
        vec!["sweep", "--dmin", "5", "--dmax", "30"],
        vec!["connection", "--d", "5", "--k", "2,1,1,1"],
        vec!["h0p3", "--m", "3", "--k", "7"],
    ] {
        let a = run(&args).stdout;
        let b = run(&args).stdout;
        let mut seq = args.clone();
        seq.push("--sequential");
        let c = run(&seq).stdout;
        let d = run_env(&args, "HYPERCERT_THREADS", "2").stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, d);
    }
}

#[test]
fn thread_hint_must_be_a_positive_integer() {
    let args = ["h0p3", "--m", "1", "--k", "2"];
    assert_eq!(
        run_env(&args, "HYPERCERT_THREADS", "zero").status.code(),
        Some(2)
    );
    assert_eq!(
        run_env(&args, "HYPERCERT_THREADS", "0").status.code(),
        Some(2)
    );
}

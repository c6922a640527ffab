use std::process::{Command, Output};

fn acp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acp")).args(args).output().expect("run acp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = acp(&full);
    (serde_json::from_slice(&o.stdout).expect("valid JSON"), o.status.code().unwrap())
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn norm_examples() {
    let (v, code) = json(&["norm", "--p", "2", "ealpha(0.25)"]);
    assert_eq!(code, 0);
    assert!((num(&v["result"]["membership"]["norm"]) - 2.0).abs() < 1e-12);

    let (v, _) = json(&["norm", "--p", "2", "t"]);
    assert!((num(&v["result"]["membership"]["norm"]) - 1.0).abs() < 1e-12);

    let o = acp(&["norm", "--p", "2", "--deriv", "t^-0.25"]);
    assert!(stdout(&o).starts_with("|||f||| = 1.414214"), "{}", stdout(&o));
}

#[test]
fn json_echoes_schema_and_defaults() {
    let (v, _) = json(&["norm", "t^2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "norm");
    assert_eq!(v["config"]["depth"], 40);
    assert_eq!(v["config"]["window"], serde_json::json!([5, 40]));
    assert_eq!(v["config"]["p"], "2");
}

#[test]
fn non_member_exits_3_with_diagnosis() {
    let (v, code) = json(&["norm", "--p", "2", "t^-0.1"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["membership"]["is_member"], false);
    assert!(!v["result"]["diagnosis"].as_array().unwrap().is_empty());
    let o = acp(&["aid", "--p", "2", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_and_config_errors_exit_2_without_report() {
    for args in [
        vec!["norm", "t^("],
        vec!["norm", "--depth", "3", "t"],
        vec!["norm", "--window-min", "9", "--window-max", "9", "t"],
        vec!["verdict", "--p", "2", "t"],
        vec!["norm", "--p", "0.5", "t"],
        vec!["reproduce", "ex9"],
        vec!["verdict", "--deriv", "--r", "3", "t"],
    ] {
        let o = acp(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verdict_examples_and_exit_codes() {
    let (v, code) = json(&["verdict", "--p", "2", "--r", "4", "t^-0.15"]);
    assert_eq!((code, v["result"]["verdict"].as_str()), (0, Some("Multiplier")));
    assert_eq!(v["result"]["route"], "Thm6_sufficient_passed");
    let conditions = v["result"]["conditions"].as_array().unwrap();
    for c in conditions {
        for key in ["name", "pass", "analytic", "empirical"] {
            assert!(c.get(key).is_some(), "{key} missing");
        }
    }

    let (v, code) = json(&["verdict", "--p", "2", "--r", "4", "t^-0.25"]);
    assert_eq!((code, v["result"]["verdict"].as_str()), (10, Some("NotMultiplier")));

    let (v, code) = json(&["verdict", "--p", "3", "--r", "2", "t"]);
    assert_eq!(code, 10);
    assert_eq!(v["result"]["route"], "Thm4_r_lt_p");

    let (v, code) = json(&["verdict", "--p", "inf", "--r", "inf", "t"]);
    assert_eq!(code, 0);
    assert!(v["result"]["operator_norm"].is_object());
}

#[test]
fn profile_of_boundary_power_is_flat() {
    let o = acp(&["profile", "--p", "2", "--r", "4", "--format", "csv", "t^-0.25"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,block_norm,weighted,partial_sum,fitted_slope"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 40);
    // ((1 - 2^-1.5) / 24)^(1/2)
    let flat = ((1.0 - 2f64.powf(-1.5)) / 24.0).sqrt();
    for row in &rows {
        assert!((row[2] - flat).abs() < 1e-12);
    }
}

#[test]
fn profile_of_zero_and_identity() {
    let (v, _) = json(&["profile", "--p", "2", "--r", "4", "0"]);
    for row in v["result"]["rows"].as_array().unwrap() {
        assert_eq!(num(&row["block_norm"]), 0.0);
        assert_eq!(num(&row["weighted"]), 0.0);
    }
    let (v, _) = json(&["profile", "--p", "2", "--r", "4", "t^2"]);
    let w: Vec<f64> = v["result"]["rows"].as_array().unwrap().iter().map(|r| num(&r["weighted"])).collect();
    assert!(w.windows(2).all(|p| p[1] < p[0]));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = acp(&["verdict", "--p", "1.5", "--r", "3", "--format", "json", "--out", path.to_str().unwrap(), "t^-0.2"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    // floats carry 17 significant digits
    assert!(String::from_utf8(x).unwrap().contains("1.5000000000000000e0"));
}

#[test]
fn reproduce_ex1_and_hardy_match() {
    for exp in ["ex1", "hardy"] {
        let (v, code) = json(&["reproduce", exp]);
        assert_eq!(code, 0, "{exp}");
        assert_eq!(v["result"]["mismatches"], 0);
    }
    let (_, code) = json(&["reproduce", "--p", "1.5", "--r", "3", "ex1"]);
    assert_eq!(code, 0);
}

#[test]
fn reproduce_ex2_flags_the_cases_that_disagree() {
    let (v, code) = json(&["reproduce", "ex2"]);
    assert_eq!(code, 1);
    let rows = v["result"]["rows"].as_array().unwrap();
    let failing: Vec<&str> = rows
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["case"].as_str().unwrap())
        .collect();
    // mg stays in AC_2 for the log-damped witness at r = 3, and the critical
    // witness already refutes t^-0.3 at r = 5
    assert_eq!(failing.len(), 2, "{failing:?}");
    assert!(failing[0].starts_with("r = 3: m g"));
    assert!(failing[1].starts_with("r = 5: verdict"));
}

#[test]
fn aid_table_decreases() {
    let (v, code) = json(&["aid", "--p", "2", "t^0.5*L^-1"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    let d: Vec<f64> = rows.iter().map(|r| num(&r["defect"])).collect();
    assert!(d.windows(2).all(|w| w[1] <= w[0]));
    for r in rows {
        assert!(num(&r["defect"]) <= num(&r["bound"]) * (1.0 + 1e-12));
    }
}

#[test]
fn direct_check_exit_codes() {
    let o = acp(&["direct-check", "--p", "2", "--r", "4", "t^-0.25"]);
    assert_eq!(o.status.code(), Some(10));
    let o = acp(&["direct-check", "--p", "2", "--r", "4", "t"]);
    assert_eq!(o.status.code(), Some(0));
    let o = acp(&["direct-check", "--p", "2", "--r", "4", "--witness", "t^-0.5", "t"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expression_words_are_joined_and_dash_expressions_work() {
    let (v, _) = json(&["norm", "t^2", "+", "t"]);
    // ||2t + 1||_2 = sqrt(13/3)
    assert!((num(&v["result"]["membership"]["norm"]) - (13.0f64 / 3.0).sqrt()).abs() < 1e-12);
    let o = acp(&["membership", "--format", "csv", "--", "-t*L^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("expr,p,input,is_member"));
}

use std::process::{Command, Output};

use serde_json::Value;

fn genimp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genimp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn scalar(o: &Output) -> f64 {
    stdout(o).trim().parse().unwrap_or_else(|_| panic!("not a number: {}", stdout(o)))
}

#[test]
fn eval_examples() {
    let o = genimp(&["eval", r#"{"kind":"yager_residual","p":2}"#, "0.5", "0.2"]);
    assert!(o.status.success());
    assert!((scalar(&o) - 0.37550).abs() < 1e-5);
    let o = genimp(&["eval", r#"{"kind":"mean_residual"}"#, "0", "0"]);
    assert_eq!(scalar(&o), 0.0);
    let o = genimp(&["eval", r#"{"kind":"basic","name":"min"}"#, "0.3", "0.8"]);
    assert_eq!(scalar(&o), 0.3);
}

#[test]
fn eval_unary_and_json() {
    let o = genimp(&["eval", "--unary", "generator", "neg_log", "1"]);
    assert_eq!(stdout(&o).trim(), "+inf");
    let o = genimp(&["eval", "--unary", "negation", r#"{"kind":"yager_np","p":2}"#, "0"]);
    assert_eq!(scalar(&o), 1.0);
    let o = genimp(&["--json", "eval", "lukasiewicz", "0.7", "0.2"]);
    assert!((json(&o)["value"].as_f64().unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn eval_rejects_bad_input() {
    let o = genimp(&["eval", "{not json", "0", "0"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = genimp(&["eval", "lukasiewicz", "1.5", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_yager_residual_properties_hold() {
    let o = genimp(&["verify", r#"{"kind":"yager_residual","p":2}"#, "--props", "NP,EP,IP,OP,CP:N2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let reports = json(&o);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 5);
    for r in reports {
        assert_eq!(r["verdict"], "holds-on-samples");
        assert!(r["witness"].is_null());
        assert_eq!(r["sample_spec"]["seed"], 42);
        assert_eq!(r["tolerance"], 1e-9);
    }
}

#[test]
fn verify_mean_residual_axioms_fails_at_origin() {
    let o = genimp(&["verify", "mean_residual", "--props", "axioms"]);
    assert_eq!(o.status.code(), Some(1));
    let reports = json(&o);
    let i3 = reports.as_array().unwrap().iter().find(|r| r["property"] == "I3").unwrap();
    assert_eq!(i3["verdict"], "fails");
    assert_eq!(i3["witness"]["point"], serde_json::json!([0.0, 0.0]));
    assert_eq!(i3["witness"]["lhs"], 0.0);
}

#[test]
fn verify_piecewise_ep_fails() {
    let o = genimp(&["verify", "piecewise_f", "--props", "EP"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)[0]["witness"]["point"], serde_json::json!([0.7, 0.65, 0.2]));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(genimp(&["verify", "piecewise_f", "--props", "XYZ"]).status.code(), Some(2));
    assert_eq!(genimp(&["verify", "piecewise_f", "--props", "tnorm"]).status.code(), Some(2));
    assert_eq!(genimp(&["verify", "lukasiewicz", "--props", "CP:{bad"]).status.code(), Some(2));
}

#[test]
fn verify_tnorm_axioms() {
    let o = genimp(&["verify", r#"{"kind":"yager_tnorm","p":2}"#, "--props", "tnorm"]);
    assert_eq!(o.status.code(), Some(0));
    let o = genimp(&["verify", r#"{"kind":"mean"}"#, "--props", "T4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["--grid", "31", "--seed", "7", "verify", "piecewise_f", "--props", "EP,OP"];
    assert_eq!(genimp(&args).stdout, genimp(&args).stdout);
}

#[test]
fn surface_row_count_and_origin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("yager.csv");
    let o = genimp(&["surface", r#"{"kind":"yager_residual","p":2}"#, "--n", "101", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,value"));
    assert_eq!(lines.count(), 10201);

    let o = genimp(&["surface", "mean_residual", "--n", "11"]);
    let first: Vec<f64> = stdout(&o).lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 0.0, 0.0]);
    assert_eq!(genimp(&["surface", "mean_residual", "--n", "1"]).status.code(), Some(2));
    assert!(!genimp(&["surface", "mean_residual", "-o", "/no/such/dir/out.csv"]).status.success());
}

#[test]
fn surface_of_user_table_residual() {
    let table = r#"{"kind":"residual","of":{"kind":"table","values":[[0,0,0],[0,0.1,0.5],[0,0.5,1]]}}"#;
    let o = genimp(&["surface", table, "--n", "21"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 21 * 21);
}

#[test]
fn surface_round_trips_as_table() {
    let n = 21;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tl.csv");
    let tl = r#"{"kind":"basic","name":"lukasiewicz"}"#;
    assert!(genimp(&["surface", tl, "--n", &n.to_string(), "-o", path.to_str().unwrap()]).status.success());
    let table = serde_json::json!({"kind": "table", "csv": path}).to_string();
    let o = genimp(&["--grid", "41", "compare", &table, tl]);
    assert!(o.status.success());
    let diff = json(&o)["max_abs_diff"].as_f64().unwrap();
    assert!(diff <= 2.0 / (n as f64 - 1.0), "{diff}");
}

#[test]
fn residual_command() {
    let o = genimp(&["residual", "mean", "0", "0"]);
    assert_eq!(scalar(&o), 0.0);
    let o = genimp(&["--json", "residual", r#"{"kind":"basic","name":"lukasiewicz"}"#, "0.7", "0.2"]);
    let v = json(&o);
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(v["monotone"], true);
    assert_eq!(genimp(&["residual", "lukasiewicz", "0.5", "0.5"]).status.code(), Some(2));
}

#[test]
fn compare_generated_route_with_closed_form() {
    let ign = r#"{"kind":"ign","g":{"kind":"power_gp","p":3},"N":{"kind":"yager_np","p":3}}"#;
    let o = genimp(&["compare", ign, r#"{"kind":"yager_residual","p":3}"#, "--max-diff", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let o = genimp(&["compare", "lukasiewicz", "mean_residual", "--max-diff", "1e-9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn counterexamples() {
    let o = genimp(&["counterexample", "piecewise_conorm", "--law", "associativity"]);
    assert_eq!(o.status.code(), Some(1));
    let w = &json(&o)["witness"];
    assert_eq!(w["point"], serde_json::json!([0.3, 0.35, 0.2]));
    assert!((w["lhs"].as_f64().unwrap() - 0.6).abs() < 1e-12);
    assert!((w["rhs"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let o = genimp(&["counterexample", r#"{"kind":"basic","name":"product"}"#, "--law", "associativity"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["witness"].is_null());

    let o = genimp(&["counterexample", "piecewise_f", "--law", "EP"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["witness"]["point"], serde_json::json!([0.7, 0.65, 0.2]));

    assert_eq!(genimp(&["counterexample", "piecewise_f", "--law", "associativity"]).status.code(), Some(2));
}

#[test]
fn classify() {
    let member = r#"{"kind":"intersection_member","phi":{"kind":"power","a":2}}"#;
    let o = genimp(&["classify", member]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let results = json(&o);
    assert_eq!(results.as_array().unwrap().len(), 3);
    assert!(results.as_array().unwrap().iter().all(|r| r["overall"]["verdict"] == "consistent-with-membership"));

    let o = genimp(&["classify", "piecewise_f", "--class", "SN"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &json(&o)[0];
    assert_eq!(r["class_id"], "SN");
    assert_eq!(r["overall"]["verdict"], "excluded");
    assert_eq!(r["overall"]["criterion"], "EP");
}

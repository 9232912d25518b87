use std::process::Command;

use serde_json::Value;
use vermacas_cli::{run, Outcome, EXIT_CHECK_FAILED, EXIT_MODULE_UNDEFINED, EXIT_PASS, EXIT_USAGE};

fn vermacas(args: &[&str]) -> Outcome {
    run(std::iter::once("vermacas").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", out.stdout))
}

fn check_names(v: &Value) -> Vec<(String, bool)> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["passed"].as_bool().unwrap()))
        .collect()
}

#[test]
fn verify_exact_default_passes() {
    let out = vermacas(&["verify-exact"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["payload"]["tensor"]["total"], 102);
    assert_eq!(v["payload"]["tensor"]["failures"].as_array().unwrap().len(), 0);
    assert!(v.get("wall_clock_ms").is_none());
}

#[test]
fn injected_failure_is_named_and_exits_one() {
    let out = vermacas(&["verify-exact", "--inject-failure"]);
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    let failing: Vec<String> = check_names(&json(&out)).into_iter().filter(|c| !c.1).map(|c| c.0).collect();
    assert_eq!(failing, vec!["[l1,l-1] = 3l0 (injected)".to_string()]);
}

#[test]
fn berezin_suite_is_skipped_at_half() {
    let out = vermacas(&["verify-exact", "--h", "1/2", "--max-index", "3"]);
    assert_eq!(out.code, EXIT_PASS);
    let v = json(&out);
    let skipped = v["payload"]["berezin"]["skipped"].as_str().unwrap();
    assert!(skipped.contains("q_R"), "{skipped}");
}

#[test]
fn defect_corner_case_at_half() {
    let out = vermacas(&["defect", "--i", "2", "--j", "-2", "--h", "1/2"]);
    assert_eq!(out.code, EXIT_PASS);
    let p = &json(&out)["payload"];
    assert_eq!(p["hs"]["partial_sums"][3], "1/8");
    assert_eq!(p["rank"]["ranks"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(p["matrix"]["diagonal_head"], serde_json::json!(["1/4", "1/4", "0", "0"]));
}

#[test]
fn defect_generic_weight_converges() {
    let out = vermacas(&["defect", "--i", "2", "--j", "-3", "--h", "3/4", "--truncations", "100,200,400,800"]);
    assert_eq!(out.code, EXIT_PASS);
    let hs = &json(&out)["payload"]["hs"];
    assert_eq!(hs["converged"], true);
    assert!(hs["slope_approx"].as_f64().unwrap() <= -1.5);
}

#[test]
fn half_plane_defect_short_circuits() {
    let out = vermacas(&["defect", "--i", "1", "--j", "0", "--h", "3/4"]);
    assert_eq!(out.code, EXIT_PASS);
    let v = json(&out);
    assert_eq!(v["payload"]["zero_defect"], true);
    assert!(v["payload"].get("hs").is_none());
}

#[test]
fn undefined_operator_exits_three_with_structured_error() {
    let out = vermacas(&["defect", "--i", "2", "--j", "-2", "--h", "0"]);
    assert_eq!(out.code, EXIT_MODULE_UNDEFINED);
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "ModuleUndefined");
    assert_eq!(v["error"]["detail"]["n"], 0);
    assert!(out.stderr.starts_with("error:"));

    let sub = vermacas(&["defect", "--i", "2", "--j", "-2", "--h", "0", "--start", "1"]);
    assert_eq!(sub.code, EXIT_PASS, "{}", sub.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(vermacas(&["defect", "--i", "2", "--j", "-2", "--h", "0.5"]).code, EXIT_USAGE);
    assert_eq!(vermacas(&["defect", "--i", "2", "--j", "-2", "--h", "1/2", "--truncations", "200,100"]).code, EXIT_USAGE);
    assert_eq!(vermacas(&["central-charge", "--i", "1", "--h0", "1"]).code, EXIT_USAGE);
    assert_eq!(vermacas(&["export-matrix", "--op", "Q3", "--h", "1"]).code, EXIT_USAGE);
    assert_eq!(vermacas(&["no-such-command"]).code, EXIT_USAGE);
}

#[test]
fn central_charge_at_index_two() {
    for h0 in ["1/2", "1"] {
        let out = vermacas(&["central-charge", "--i", "2", "--h0", h0]);
        assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
        let p = &json(&out)["payload"];
        assert_eq!(p["kappa"], "4");
        assert_eq!(p["central_charge"], "8ħ");
        assert_eq!(p["order_swap"], "0");
    }
}

#[test]
fn central_charge_reports_cubic_mismatch() {
    let out = vermacas(&["central-charge", "--i", "3", "--h0", "1"]);
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    let v = json(&out);
    assert_eq!(v["payload"]["kappa"], "6");
    assert_eq!(v["payload"]["central_charge"], "3ħ");
    let failing: Vec<String> = check_names(&v).into_iter().filter(|c| !c.1).map(|c| c.0).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("kappa = (2/3)"));
}

#[test]
fn cocycle_runs_and_empty_triples_pass() {
    let out = vermacas(&["cocycle", "--table-compare"]);
    assert_eq!(out.code, EXIT_PASS);
    let p = &json(&out)["payload"];
    assert_eq!(p["normalization"]["lambda"], "-1/48i");
    assert_eq!(p["table"]["c0_zero"]["discrepancies"].as_array().unwrap().len(), 0);
    assert!(!p["table"]["c0_h"]["discrepancies"].as_array().unwrap().is_empty());

    let empty = vermacas(&["cocycle", "--triples", "0"]);
    assert_eq!(empty.code, EXIT_PASS);
    assert_eq!(json(&empty)["payload"]["random_triples"]["count"], 0);
}

#[test]
fn seeds_are_reproducible() {
    let a = vermacas(&["cocycle", "--triples", "20", "--seed", "7"]);
    let b = vermacas(&["cocycle", "--triples", "20", "--seed", "7"]);
    assert_eq!(a, b);
}

#[test]
fn export_matrix_csv() {
    let out = vermacas(&["export-matrix", "--op", "L2", "--h", "1/2", "--size", "4", "--format", "csv"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(out.stdout, "row,col,value\n0,2,3\n1,3,15\n");

    let undefined = vermacas(&["export-matrix", "--op", "L-2", "--h", "0", "--size", "4"]);
    assert_eq!(undefined.code, EXIT_MODULE_UNDEFINED);

    let defect = vermacas(&["export-matrix", "--op", "defect", "--i", "2", "--j", "-2", "--h", "1/2", "--size", "3", "--format", "csv"]);
    assert_eq!(defect.stdout, "row,col,value\n0,0,1/4\n1,1,1/4\n");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("vermacas-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = vermacas(&["central-charge", "--i", "2", "--h0", "1/2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "central-charge");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_is_opt_in() {
    let out = vermacas(&["cocycle", "--triples", "0", "--timing"]);
    assert!(json(&out)["wall_clock_ms"].is_u64());
}

#[test]
fn table_format_lists_checks() {
    let out = vermacas(&["central-charge", "--i", "2", "--h0", "1", "--format", "table"]);
    assert!(out.stdout.contains("central_charge: 8ħ"));
    assert!(out.stdout.trim_end().ends_with("all checks passed"));
}

#[test]
fn binary_exit_codes_match_library() {
    let bin = env!("CARGO_BIN_EXE_vermacas");
    let status = Command::new(bin).args(["central-charge", "--i", "1", "--h0", "1"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
    let ok = Command::new(bin).args(["cocycle", "--triples", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), vermacas(&["cocycle", "--triples", "0"]).stdout);
}

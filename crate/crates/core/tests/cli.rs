//! CLI integration: output formats, JSON round-trip through the binary,
//! and the documented exit codes (2 parse error, 3 budget error).

use std::process::Command;
use sylowgraph::report::GraphReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sylowgraph"))
}

#[test]
fn compute_a8_json_round_trips() {
    let out = bin().args(["compute", "A8", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let report = GraphReport::parse_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.group, "A8");
    assert_eq!(report.order, "20160");
    assert_eq!(report.vertices, vec![2, 3, 5, 7]);
    let pairs: Vec<(u64, u64)> = report.arrows.iter().map(|a| (a.from, a.to)).collect();
    assert_eq!(pairs, vec![(3, 2), (5, 2), (7, 3)]);
    assert!(report.connected);
    assert_eq!(report.diameter, Some(3));
    let graph = report.to_graph().unwrap();
    assert_eq!(GraphReport::from_graph(&graph), report);
}

#[test]
fn compute_disconnected_c30() {
    let out = bin().args(["compute", "C30", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let report = GraphReport::parse_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(!report.connected);
    assert_eq!(report.diameter, None);
    assert!(report.arrows.is_empty());
}

#[test]
fn compute_dot_output() {
    let out = bin().args(["compute", "S4", "--format", "dot"]).output().unwrap();
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph sylow {"));
    assert!(dot.contains("p3 -> p2"));
}

#[test]
fn parse_errors_exit_2() {
    let out = bin().args(["compute", "Q8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_errors_exit_3() {
    // S12 exceeds the default enumeration budget for exact graphs.
    let out = bin().args(["compute", "S12"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    // And an explicitly tiny budget trips earlier.
    let out = bin()
        .args(["compute", "M11", "--max-order", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_psl2_suite_exits_zero() {
    let out = bin().args(["verify", "--suite", "psl2"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{}", text);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
    assert!(text.contains("seed:"));
}

#[test]
fn predict_cross_check_exits_zero() {
    let out = bin()
        .args(["predict", "--type", "A", "--l", "4", "--eps", "+", "--q", "2", "--cross-check"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{}", text);
    assert!(text.contains("are a subset of"));
}

#[test]
fn formation_command_reports() {
    let out = bin()
        .args(["formation", "S3 x C5", "--blocks", "2,3|5"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{}", text);
    assert!(text.contains("in product class: true"));
    assert!(text.contains("closure equivalence holds: true"));
}

use std::path::Path;
use std::process::{Command, Output};

use ccflab::ccf::{CapReport, ScanTable, WitnessReport};
use ccflab::constructions::ExampleReport;
use ccflab::sets::FarthestQuery;
use ccflab::solver::CenterResult;

fn ccflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccflab")).args(args).env("CCFLAB_THREADS", "1").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn round_trips<T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(text: &str) -> T {
    let v: T = serde_json::from_str(text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    v
}

const L1_WITNESS: &str = r#"{"set":{"norm":{"dim":2,"family":{"pnorm":1}},"points":[[1,0],[0,1],[0.5,0.5]]},"center_index":2,"viewpoint":[0,0]}"#;
const L2_WITNESS: &str = r#"{"set":{"norm":{"dim":2,"family":{"pnorm":2}},"points":[[1,0],[0,1],[0.5,0.5]]},"center_index":2,"viewpoint":[0,0]}"#;

#[test]
fn center_from_file_round_trips_and_leaves_input_alone() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("set.json");
    let body = r#"{"norm":{"dim":3,"family":{"pnorm":3}},"points":[[1,0,0],[0,1,0],[0,0,1]]}"#;
    std::fs::write(&input, body).unwrap();
    let out = dir.path().join("center.json");
    let o = ccflab(&["center", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(&input).unwrap(), body);
    let res: CenterResult = round_trips(&std::fs::read_to_string(&out).unwrap());
    let s = 1.0 / (1.0 + 2f64.sqrt());
    assert!(res.center.iter().all(|c| (c - s).abs() < 1e-4));
}

#[test]
fn witness_verdicts_map_to_exit_codes() {
    let o = ccflab(&["ccf-verify", "--input", L1_WITNESS]);
    assert_eq!(o.status.code(), Some(0));
    round_trips::<WitnessReport>(&stdout(&o));
    // in the plane the midpoint is no longer farthest from θ
    let o = ccflab(&["ccf-verify", "--input", L2_WITNESS]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let o = ccflab(&["center", "--input", "{\"norm\": {\"dim\": 2,\n  \"family\": {\"pnorm\": 2}},\n \"points\": [[0, 0], [1,]]}"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("column"), "{err}");
    let o = ccflab(&["center", "--input", r#"{"norm":{"dim":2,"family":{"hexagonal":1}},"points":[[0,0]]}"#]);
    assert_eq!(o.status.code(), Some(2));
    let o = ccflab(&["center", "--input", "/nonexistent/set.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ccflab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn farthest_json_and_csv() {
    let input = r#"{"set":{"norm":{"dim":2,"family":{"pnorm":"inf"}},"points":[[0,0],[1,0],[1,1]]},"viewpoints":[[0,0],[2,0]]}"#;
    let o = ccflab(&["farthest", "--input", input]);
    assert_eq!(o.status.code(), Some(0));
    let q: Vec<FarthestQuery> = round_trips(&stdout(&o));
    assert_eq!(q[0].achievers, vec![1, 2]);
    assert_eq!(q[1].achievers, vec![0]);
    let o = ccflab(&["farthest", "--input", input, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn scan_and_cap_check() {
    let o = ccflab(&["scan", "--samples", "2000", "--input", r#"{"norm":{"dim":2,"family":{"pnorm":1}},"z_count":4,"t_grid":[0.5]}"#]);
    assert_eq!(o.status.code(), Some(0));
    let table: ScanTable = round_trips(&stdout(&o));
    assert_eq!(table.rows.len(), 4);
    let o = ccflab(&["scan", "--samples", "2000", "--format", "csv", "--input", r#"{"norm":{"dim":2,"family":{"pnorm":1}},"z_count":4,"t_grid":[0.5]}"#]);
    assert!(stdout(&o).starts_with("z_1,z_2,t,r_hat,ratio,samples,accept_ratio"));

    let cap = r#"{"norm":{"dim":2,"family":{"pnorm":2}},"u":[1,0],"v":[0,1]}"#;
    let o = ccflab(&["cap-check", "--input", cap]);
    assert_eq!(o.status.code(), Some(0));
    let rep: CapReport = round_trips(&stdout(&o));
    assert_eq!(rep.samples, 256);
}

#[test]
fn reproduce_single_targets() {
    for args in [
        &["reproduce", "example2.7", "--n", "4"][..],
        &["reproduce", "example2.8", "--n", "10"],
        &["reproduce", "sp"],
        &["reproduce", "ap", "--p", "4", "--t", "100"],
        &["reproduce", "embed", "--samples", "200"],
    ] {
        let o = ccflab(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let rep: ExampleReport = round_trips(&stdout(&o));
        assert!(rep.overall);
    }
    // t = 1.5 is below the threshold for p = 4
    let o = ccflab(&["reproduce", "ap", "--p", "4", "--t", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ccflab(&["reproduce", "ap", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_all_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports");
    let o = ccflab(&["reproduce", "all", "--samples", "3000", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let summary = std::fs::read_to_string(out.join("summary.md")).unwrap();
    assert_eq!(summary.matches("| PASS |").count(), 12, "{summary}");
    for name in ["finite_dim_n3.json", "c0_truncated_n10.json", "ap_witness_p4.json", "scan_l3.json", "scan_l1.csv"] {
        assert!(Path::new(&out.join(name)).exists(), "{name}");
    }
    let rep: ExampleReport = round_trips(&std::fs::read_to_string(out.join("lp_embedding.json")).unwrap());
    assert!(rep.overall);
}

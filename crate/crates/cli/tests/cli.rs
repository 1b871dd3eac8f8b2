use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ogs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ogs"))
        .args(args)
        .output()
        .unwrap()
}

fn ogs_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ogs"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn bounds_product(v: &Value) -> u128 {
    v["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["bound"].as_u64().unwrap() as u128)
        .product()
}

#[test]
fn build_m12_json() {
    let v = json(&ogs(&["build", "--group", "M12", "--json"]));
    assert_eq!(v["group"]["name"], "M12");
    assert_eq!(bounds_product(&v), 95040);
    assert!(v["levels"].is_array());
}

#[test]
fn factor_then_rank_then_unrank() {
    let f = json(&ogs(&[
        "factor",
        "--group",
        "A5",
        "--element",
        "(1,2,3)",
        "--json",
    ]));
    assert_eq!(f["element"], "(1,2,3)");
    let exps: Vec<String> = f["exponents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let r = json(&ogs(&[
        "rank",
        "--group",
        "A5",
        "--exponents",
        &exps.join(","),
        "--json",
    ]));
    assert_eq!(r["rank"], f["rank"]);
    let rank = f["rank"].as_str().unwrap();
    let u = json(&ogs(&["unrank", "--group", "A5", "--rank", rank, "--json"]));
    assert_eq!(u["element"], "(1,2,3)");
    assert_eq!(u["exponents"], f["exponents"]);
}

#[test]
fn every_listed_build_verifies_from_stdin() {
    let listed = [
        "M11", "M12", "M22", "M23", "M24", "A5", "A9", "S4", "S9", "C5", "C12", "PSL2_5", "PSL2_13",
    ];
    for name in listed {
        let built = ogs(&["build", "--group", name, "--json"]);
        assert!(built.status.success(), "{name}: {}", stderr(&built));
        let checked = ogs_stdin(
            &["verify", "--file", "-", "--mode", "structural"],
            &stdout(&built),
        );
        assert!(checked.status.success(), "{name}: {}", stderr(&checked));
    }
}

fn corrupted_a5() -> String {
    let mut v = json(&ogs(&["build", "--group", "A5", "--json"]));
    v["items"][0]["perm"] = Value::from("()");
    v.to_string()
}

#[test]
fn corrupted_file_fails_with_witness() {
    for mode in ["structural", "exhaustive"] {
        let o = ogs_stdin(
            &["verify", "--file", "-", "--mode", mode, "--json"],
            &corrupted_a5(),
        );
        assert_eq!(o.status.code(), Some(1), "{mode}: {}", stderr(&o));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["ok"], false);
        assert!(report["failure"]["kind"].is_string(), "{report}");
    }
}

#[test]
fn unverified_file_is_checked_before_factoring() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a5.json");
    std::fs::write(&path, corrupted_a5()).unwrap();
    let o = ogs(&[
        "factor",
        "--file",
        path.to_str().unwrap(),
        "--element",
        "(1,2,3)",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["build", "--group", "M13"],
        &["factor", "--group", "A5", "--element", "(1,2"],
        &["factor", "--group", "A5", "--element", "(1,2)"],
        &["factor", "--group", "A5", "--element", "(1,9)"],
        &["build", "--group", "A5", "--file", "x.json"],
        &[
            "rank",
            "--group",
            "A5",
            "--element",
            "(1,2,3)",
            "--exponents",
            "0,0,0,1",
        ],
        &["rank", "--group", "A5", "--exponents", "9,0,0,0"],
        &["unrank", "--group", "A5", "--rank", "60"],
        &["build"],
    ];
    for args in cases {
        let o = ogs(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn malformed_inputs_exit_2() {
    let o = ogs_stdin(&["verify", "--file", "-"], "{ not json");
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gens.txt");
    std::fs::write(&path, "deg 4\n(1,2)\n").unwrap();
    let o = ogs(&["build", "--generators-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn generators_file_builds_a_system() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.txt");
    std::fs::write(&path, "# S4\ndegree 4\n(1,2,3,4)\n(1,2)\n").unwrap();
    let v = json(&ogs(&[
        "build",
        "--generators-file",
        path.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(bounds_product(&v), 24);
}

#[test]
fn tiny_memory_budget_exits_3() {
    let o = ogs(&[
        "verify",
        "--group",
        "M23",
        "--mode",
        "exhaustive",
        "--memory-budget",
        "1024",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn order_of_m24() {
    let o = ogs(&["order", "--group", "M24"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "244823040");
}

#[test]
fn check_paper_passes() {
    let o = ogs(&["check-paper", "--json"]);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn catalog_json_matches_data_file() {
    let o = ogs(&["catalog", "--json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("../../core/data/catalog.json"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["build", "--group", "M22", "--json"][..],
        &["build", "--group", "PSL2_13", "--seed", "4"][..],
    ] {
        assert_eq!(stdout(&ogs(args)), stdout(&ogs(args)));
    }
}

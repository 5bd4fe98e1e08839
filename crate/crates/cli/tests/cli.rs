use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn schur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schur"))
        .args(args)
        .env_remove("SCHUR_EXT_SOLVER")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn entry<'a>(report: &'a Value, kind: &str) -> Vec<&'a Value> {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["kind"] == kind)
        .map(|e| &e["value"])
        .collect()
}

#[test]
fn bounds_444_lower_43() {
    let out = schur(&["bounds", "3", "4", "4", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("bounds_3_4_4_4.json"));
    let report = json(&out);
    assert_eq!(report["max_lower"], 43);
    assert!(entry(&report, "lower").iter().all(|v| **v == 43));
}

#[test]
fn bounds_two_colors_exact() {
    let out = schur(&["bounds", "2", "4", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("bounds_2_4_5.json"));
    // st - t - 1 with s = 4, t = 5.
    assert_eq!(entry(&json(&out), "exact"), vec![&Value::from(4 * 5 - 5 - 1)]);
}

#[test]
fn bounds_strict_lower_via_stu() {
    let out = schur(&["bounds", "--stu", "3,3,5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("bounds_stu_3_3_5.json"));
    // 2tu - u - 1 with t = 3, u = 5.
    assert_eq!(
        entry(&json(&out), "strict-lower"),
        vec![&Value::from(2 * 3 * 5 - 5 - 1)]
    );

    let positional = schur(&["bounds", "3", "3", "3", "5", "--json"]);
    assert_eq!(stdout(&positional), stdout(&out));
}

#[test]
fn bounds_text_and_csv() {
    let text = stdout(&schur(&["bounds", "3", "4", "4", "4"]));
    assert!(text.starts_with("S(3; 4,4,4)\n"));
    assert!(text.contains("S >= 43"));
    let csv = stdout(&schur(&["bounds", "3", "4", "4", "4", "--format", "csv"]));
    assert!(csv.starts_with("name,kind,value\n"));
    assert!(csv.contains("product formula,lower,43"));
}

#[test]
fn bounds_with_ramsey_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("ramsey.json");
    std::fs::write(&table, r#"{"3,3,3": 17}"#).unwrap();
    let out = schur(&[
        "bounds",
        "3",
        "3",
        "3",
        "3",
        "--json",
        "--ramsey-table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["min_upper"], 16);
}

#[test]
fn bounds_parse_failures_are_usage_errors() {
    for args in [
        &["bounds", "3", "4", "x"][..],
        &["bounds", "3", "4", "4"],
        &["bounds", "--stu", "3,3"],
        &["bounds"],
        &["bounds", "2", "3", "2"],
    ] {
        let out = schur(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn construct_case2_u4() {
    let out = schur(&["construct", "case2", "--u", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("construct_case2_u4.json"));
    assert_eq!(json(&out)["n"], 27);
    assert!(schur(&["construct", "case2", "--u", "3"]).status.code() == Some(2));
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let case1 = dir.path().join("case1.json");
    let out = schur(&["construct", "case1", "--u", "5", "-o", case1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let valid = schur(&["verify", case1.to_str().unwrap(), "3", "3", "3", "5"]);
    assert_eq!(valid.status.code(), Some(0));
    assert_eq!(stdout(&valid), "VALID\n");

    let ones = write(dir.path(), "ones.json", r#"{"n":2,"r":1,"colors":[1,1]}"#);
    let invalid = schur(&["verify", ones.to_str().unwrap(), "1", "3"]);
    assert_eq!(invalid.status.code(), Some(1));
    assert_eq!(stdout(&invalid), "INVALID\ncolor 1: 1 + 1 = 2\n");
    let invalid_json = json(&schur(&["verify", ones.to_str().unwrap(), "1", "3", "--json"]));
    assert_eq!(invalid_json["valid"], false);
    assert_eq!(
        invalid_json["solution"],
        serde_json::json!({"color": 1, "xs": [1, 1, 2]})
    );

    let truncated = write(dir.path(), "truncated.json", r#"{"n":2,"r":1,"colo"#);
    assert_eq!(
        schur(&["verify", truncated.to_str().unwrap(), "1", "3"]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        schur(&["verify", missing.to_str().unwrap(), "1", "3"]).status.code(),
        Some(2)
    );
    let bad_color = write(dir.path(), "bad.json", r#"{"n":2,"r":1,"colors":[1,2]}"#);
    assert_eq!(
        schur(&["verify", bad_color.to_str().unwrap(), "1", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn encode_writes_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    let out = schur(&["encode", "2", "3", "3", "-n", "5", "-o", cnf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert_eq!(text.lines().next(), Some("p cnf 10 22"));
    // Standard output carries the same file when no path is given.
    assert_eq!(stdout(&schur(&["encode", "2", "3", "3", "-n", "5"])), text);
}

#[test]
fn solve_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let out = schur(&[
        "solve",
        "3",
        "3",
        "3",
        "3",
        "-n",
        "13",
        "--witness-out",
        w.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("SAT\n"));
    let verify = schur(&["verify", w.to_str().unwrap(), "3", "3", "3", "3"]);
    assert_eq!(stdout(&verify), "VALID\n");

    let unsat = schur(&["solve", "3", "3", "3", "3", "-n", "14", "--json"]);
    assert_eq!(json(&unsat)["status"], "unsat");
}

#[test]
fn search_prints_value_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("w");
    let out = schur(&["search", "3", "3", "3", "3", "--witness-dir", store.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "S = 14"), "{text}");
    assert!(store.join("3-3-3_n13.json").exists());

    let again = json(&schur(&[
        "search",
        "3",
        "3",
        "3",
        "3",
        "--json",
        "--witness-dir",
        store.to_str().unwrap(),
    ]));
    assert_eq!(again["value"], 14);
    assert!(again["probes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|p| p["source"] == "store"));
}

#[test]
fn search_budget_is_a_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = schur(&[
        "search",
        "3",
        "4",
        "4",
        "4",
        "--conflicts",
        "5",
        "--witness-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        schur(&["search", "3", "3", "3", "3", "--conflicts", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        schur(&["search", "3", "3", "3", "3", "--time-limit", "-1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_confirms_and_refutes() {
    assert_eq!(schur(&["check", "2", "3", "3", "--value", "5"]).status.code(), Some(0));
    let refuted = schur(&["check", "3", "3", "3", "3", "--value", "15", "--json"]);
    assert_eq!(refuted.status.code(), Some(1));
    let report = json(&refuted);
    assert_eq!(report["sat_below"], false);
    assert_eq!(report["unsat_confirmed"], true);
    let starved = schur(&["check", "3", "3", "3", "3", "--value", "14", "--conflicts", "1"]);
    assert_eq!(starved.status.code(), Some(3));
}

#[test]
fn table_rows_agree() {
    let out = schur(&["table", "table1", "--max-value", "14", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("ks,expected,kind,computed,result,provenance\n"));
    assert!(text.contains("\"3,3,3\",14,exact,14,agree,"));
    assert_eq!(schur(&["table", "table9"]).status.code(), Some(2));
}

#[test]
fn embed_finds_clique() {
    let dir = tempfile::tempdir().unwrap();
    let ones = write(dir.path(), "ones.json", r#"{"n":2,"r":1,"colors":[1,1]}"#);
    let out = schur(&[
        "embed",
        ones.to_str().unwrap(),
        "--clique",
        "3",
        "--color",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["clique"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["solution"]["xs"], serde_json::json!([1, 1, 2]));
    assert_eq!(v["edge_coloring"]["m"], 3);
}

#[test]
fn brute_matches_known_value() {
    assert_eq!(stdout(&schur(&["brute", "2", "3", "4"])), "S = 7\n");
    assert_eq!(stdout(&schur(&["brute", "2", "3", "4", "--cap", "5"])), "S > 5\n");
}

#[test]
fn sat_mode_speaks_competition_format() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let out = schur(&["sat", cnf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
    let text = stdout(&out);
    assert!(text.contains("s SATISFIABLE\n"));
    assert!(text.contains("v -1 2\n"));
    let unsat = write(dir.path(), "g.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    assert_eq!(schur(&["sat", unsat.to_str().unwrap()]).status.code(), Some(20));
    let broken = write(dir.path(), "h.cnf", "p cnf 1 1\n1 x 0\n");
    assert_eq!(schur(&["sat", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[cfg(unix)]
mod external {
    use super::*;
    use std::os::unix::fs::PermissionsExt;

    fn script(dir: &Path, name: &str, body: &str) -> String {
        let path = dir.join(name);
        std::fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
        std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn solve_with(cmd: &str, n: &str) -> Output {
        schur(&[
            "solve",
            "3",
            "3",
            "3",
            "3",
            "-n",
            n,
            "--solver",
            "external",
            "--external-cmd",
            cmd,
        ])
    }

    #[test]
    fn binary_as_its_own_external_solver() {
        let cmd = format!("{} sat", env!("CARGO_BIN_EXE_schur"));
        assert_eq!(stdout(&solve_with(&cmd, "13")), "SAT\n");
        assert_eq!(stdout(&solve_with(&cmd, "14")), "UNSAT\n");
    }

    #[test]
    fn environment_variable_supplies_the_command() {
        let cmd = format!("{} sat", env!("CARGO_BIN_EXE_schur"));
        let out = Command::new(env!("CARGO_BIN_EXE_schur"))
            .args(["solve", "2", "3", "3", "-n", "4", "--solver", "external"])
            .env("SCHUR_EXT_SOLVER", cmd)
            .output()
            .unwrap();
        assert_eq!(stdout(&out), "SAT\n");
        assert_eq!(
            schur(&["solve", "2", "3", "3", "-n", "4", "--solver", "external"])
                .status
                .code(),
            Some(2)
        );
    }

    #[test]
    fn protocol_and_soundness_failures() {
        let dir = tempfile::tempdir().unwrap();
        let garbage = script(dir.path(), "garbage.sh", "echo hello; exit 10");
        assert_eq!(solve_with(&garbage, "5").status.code(), Some(4));

        let unknown = script(dir.path(), "unknown.sh", "echo 's UNKNOWN'");
        assert_eq!(solve_with(&unknown, "5").status.code(), Some(4));

        // Claims satisfiable with the all-false assignment: no integer gets a color.
        let liar = script(dir.path(), "liar.sh", "echo 's SATISFIABLE'; echo 'v 0'");
        assert_eq!(solve_with(&liar, "5").status.code(), Some(5));

        let missing = dir.path().join("no-such-solver");
        assert_eq!(solve_with(missing.to_str().unwrap(), "5").status.code(), Some(4));
    }

    #[test]
    fn scratch_files_are_removed() {
        let dir = tempfile::tempdir().unwrap();
        let scratch = dir.path().join("scratch");
        std::fs::create_dir(&scratch).unwrap();
        let cmd = format!("{} sat", env!("CARGO_BIN_EXE_schur"));
        let out = schur(&[
            "solve",
            "2",
            "3",
            "3",
            "-n",
            "4",
            "--solver",
            "external",
            "--external-cmd",
            &cmd,
            "--scratch-dir",
            scratch.to_str().unwrap(),
        ]);
        assert_eq!(stdout(&out), "SAT\n");
        assert_eq!(std::fs::read_dir(&scratch).unwrap().count(), 0);
    }
}

use std::fs;

use serde_json::Value;
use sqfree_cli::output::parse_text;
use sqfree_cli::run;
use sqfree_cli::verify::{E2, P17};

fn text(args: &[&str]) -> (i32, Vec<serde_json::Map<String, Value>>) {
    let mut argv = vec!["sqfree"];
    argv.extend_from_slice(args);
    let out = run(argv);
    (out.exit_code, parse_text(&out.stdout))
}

fn json(args: &[&str]) -> (i32, Vec<Value>) {
    let mut argv = vec!["sqfree", "--format", "json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let records = out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    (out.exit_code, records)
}

#[test]
fn check_reports_leftmost_square() {
    let (code, recs) = text(&["check", "1", "3", "2", "4"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["square_free"], "false");
    assert_eq!(recs[0]["square.start"], "1");
    assert_eq!(recs[0]["square.half_len"], "2");

    let (code, recs) = text(&["check", "1,3,6,4,2,5,7"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["square_free"], "true");
}

#[test]
fn build_em_prints_parts() {
    let (code, recs) = json(&["build-em", "2"]);
    assert_eq!(code, 0);
    let result = &recs[0]["result"];
    let keys: Vec<&str> = result.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["r", "y", "x", "z", "h_prime", "h", "s", "t", "e_prime", "e"] {
        assert!(keys.contains(&k), "{k} missing");
    }
    let e: Vec<String> = result["e"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    assert_eq!(e.join(" "), E2);
}

#[test]
fn crucial_by_positions_and_kind() {
    let (code, recs) = text(&["--assert", "crucial", "--positions", "0,1,n-1,n", P17]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["crucial"], "true");
    assert_eq!(recs[0]["positions"], "0 1 16 17");

    let (code, recs) = text(&["--assert", "crucial", "--kind", "s", P17]);
    assert_eq!(code, 1);
    assert_eq!(recs[0]["status"], "property_failed");

    let (code, _) = text(&["crucial", "--kind", "s", P17]);
    assert_eq!(code, 0);
}

#[test]
fn text_and_json_carry_the_same_payload() {
    for args in [
        &["check", "2 4 1 3"][..],
        &["check", "1 3 6 4 2 5 7"],
        &["levels", "2", "4", "6", "3", "1", "5", "7"],
        &["witness", "--pos", "4", "1 3 5 4 2 6"],
        &["blocked", "2 1 3"],
        &["sfperm", "5"],
        &["count-squarefree", "6"],
    ] {
        let (_, t) = text(args);
        let (_, j) = json(args);
        let mut flat = Vec::new();
        if !j[0]["input"].is_null() {
            sqfree_cli::output::flatten("input", &j[0]["input"], &mut flat);
        }
        sqfree_cli::output::flatten("", &j[0]["result"], &mut flat);
        for (k, v) in flat {
            assert_eq!(t[0][&k], Value::String(v), "{args:?} key {k}");
        }
        assert_eq!(t[0]["command"], j[0]["command"]);
    }
}

#[test]
fn iso_and_constructions() {
    let (code, recs) = text(&["--assert", "iso", "1 3 2", "10 30 20"]);
    assert_eq!((code, recs[0]["order_isomorphic"].as_str()), (0, Some("true")));
    let (code, _) = text(&["--assert", "iso", "1 3 2", "3 1 2"]);
    assert_eq!(code, 1);

    let (code, recs) = text(&["c1", "1 2", "3 4 5", "6 7"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["perm"], "1 3 6 4 2 5 7");
    let (code, recs) = text(&["wrap1", "9", "0", "1 3 6 4 2 5 7"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["perm"], "9 1 3 6 4 2 5 7 0");

    let (code, recs) = text(&["c2", "6 7", "3 4 5", "1 2"]);
    assert_eq!(code, 0);
    let built = recs[0]["perm"].as_str().unwrap().to_string();
    let (code, recs) = text(&["wrap2", "0", "9", &built]);
    assert_eq!(code, 0);
    assert!(recs[0]["perm"].as_str().unwrap().starts_with("0 "));
}

#[test]
fn extend_lists_every_rank() {
    let (code, recs) = json(&["extend", "--pos", "2", "1 2 3"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["extensions"].as_array().unwrap().len(), 4);
    let (_, recs) = text(&["extend", "--pos", "2", "--rank", "2", "1 2 3"]);
    assert_eq!(recs[0]["extensions.0.perm"], "1 3 2 4");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["nonsense"][..],
        &["check"],
        &["check", "(1 2 3)"],
        &["check", "1 1 2"],
        &["extend", "--pos", "9", "1 2 3"],
        &["c1", "1 2", "3 4"],
        &["build-em", "0"],
        &["crucial", "--positions", "0,9", "1 2 3"],
        &["search", "15", "--positions", "bi"],
        &["verify-paper", "--max-m", "1"],
    ] {
        let mut argv = vec!["sqfree"];
        argv.extend_from_slice(args);
        assert_eq!(run(argv).exit_code, 2, "{args:?}");
    }
    let (code, recs) = json(&["check", "1 1"]);
    assert_eq!(code, 2);
    assert_eq!(recs[0]["status"], "usage_error");
}

#[test]
fn help_is_not_an_error() {
    let out = run(["sqfree", "--help"]);
    assert_eq!(out.exit_code, 0);
    assert!(out.stdout.contains("build-em"));
}

#[test]
fn file_input_gives_one_record_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perms.txt");
    fs::write(&path, "1 3 2 4\n1 3 2\n\n1,3,6,4,2,5,7\n").unwrap();
    let (code, recs) = text(&["--assert", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let flags: Vec<&str> = recs.iter().map(|r| r["square_free"].as_str().unwrap()).collect();
    assert_eq!(flags, ["false", "true", "true"]);
}

#[test]
fn search_writes_hits_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hits.txt");
    let (code, recs) =
        json(&["search", "7", "--positions", "left", "--jobs", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let summary = &recs[0]["result"];
    let written: Vec<String> = fs::read_to_string(&path).unwrap().lines().map(str::to_string).collect();
    assert_eq!(summary["hit_count"].as_u64().unwrap() as usize, written.len());
    let listed: Vec<String> =
        summary["hits"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    assert_eq!(listed, written);
    assert_eq!(summary["positions"], serde_json::json!([0]));
    assert!(summary["total_enumerated"].as_u64().unwrap() > 0);
    assert!(summary["elapsed_secs"].is_number());

    let (_, single) = json(&["search", "7", "--positions", "left", "--count-only"]);
    assert_eq!(single[0]["result"]["hit_count"], summary["hit_count"]);
    assert!(single[0]["result"].get("hits").is_none());

    let (_, counted) = json(&["search", "9"]);
    let (_, direct) = json(&["count-squarefree", "9"]);
    assert_eq!(counted[0]["result"]["total_enumerated"], direct[0]["result"]["count"]);
}

#[test]
fn verify_paper_small_scope() {
    let (code, recs) = json(&["verify-paper", "--max-m", "3", "--max-n", "7", "--seed", "7"]);
    assert_eq!(code, 0, "{recs:?}");
    assert_eq!(recs[0]["result"]["all_passed"], true);
    assert_eq!(recs[0]["result"]["checks"].as_array().unwrap().len(), 11);
}

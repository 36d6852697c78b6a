use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn asg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = asg(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

const WORKED_EXAMPLES: &[&str] = &[
    "5,3,1;1,5,2;8,3,5;2,1,1;2,2,1",
    "3,0;0,3;5,2;2,5",
    "3,0;0,9;5,2;2,11",
    "9,0;0,9;6,6;7,7;8,8",
    "5,2;2,2;2,1;5,3",
    "2,0;0,2;4,1;2,3",
    "2,1;1,5;1,1;4,5",
    "1,5;5,1;2,2;3,3",
    "3,0;0,3;2,1",
    "1,2,1;2,3,1;2,1,3;2,3,2;2,2,2;3,3,3",
    "3;5;7",
    "2;3",
];

#[test]
fn analyze_reports_sorted_conductor() {
    let r = json_of(&["analyze", "--gens", "3,0;0,3;5,2;2,5", "--json"]);
    assert_eq!(r["schema"], "asg-report/1");
    assert_eq!(r["conductor"]["generators"], serde_json::json!([[2, 8], [5, 5], [8, 2]]));
    assert_eq!(r["classification"]["typ"], 3);
    assert_eq!(r["classification"]["is_cm"], false);
}

#[test]
fn json_reports_match_the_published_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../docs/report-schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for gens in WORKED_EXAMPLES {
        for extra in [&[][..], &["--stats", "--limit-box", "6"][..]] {
            let mut args = vec!["analyze", "--gens", gens, "--json"];
            args.extend_from_slice(extra);
            let r = json_of(&args);
            let errors: Vec<String> = validator.iter_errors(&r).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{gens}: {errors:?}");
        }
    }
}

#[test]
fn text_report_labels_type_and_criterion() {
    let o = asg(&["analyze", "--gens", "2,0;0,2;4,1;2,3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("typ(S) (equals Cohen-Macaulay type of K[S] when CM): 2"));
    assert!(text.contains("Buchsbaum:         yes (per criterion)"));
    assert!(text.contains("conductor:         {(2,2), (4,0)}"));
}

#[test]
fn check_subcommand() {
    let o = asg(&["check", "cm", "--gens", "2,0;0,2;4,1;2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "false\n");
    let o = asg(&["check", "gorenstein", "--gens", "1,5;5,1;2,2;3,3"]);
    assert_eq!(stdout(&o), "true\n");
    let o = asg(&["check", "normal", "--gens", "1,0;1,2;1,1"]);
    assert_eq!(stdout(&o), "true\n");
    let r = json_of(&["check", "buchsbaum", "--gens", "2,0;0,2;4,1;2,3", "--json"]);
    assert_eq!(r, serde_json::json!({ "property": "buchsbaum", "value": true }));
}

#[test]
fn smaller_subcommands() {
    let o = asg(&["apery", "--gens", "2,0;0,2;4,1;2,3"]);
    assert_eq!(stdout(&o), "(0,0)\n(2,3)\n(4,1)\n");
    let o = asg(&["type", "--gens", "3;5;7"]);
    assert!(stdout(&o).contains("QF(S): (2) (4)"));
    let o = asg(&["normalization", "--gens", "3,0;0,3;2,1"]);
    assert_eq!(stdout(&o), "(0,3)\n(1,2)\n(2,1)\n(3,0)\n");
    let o = asg(&["conductor", "--gens", "5,2;2,2;2,1;5,3"]);
    assert_eq!(stdout(&o), "(4,2)\n(5,2)\n");
    let o = asg(&["frobenius", "--gens", "3;5;7"]);
    assert_eq!(stdout(&o), "4\n");
    let r = json_of(&["frobenius", "--gens", "2;3", "--json"]);
    assert_eq!(r["frobenius"], 1);
}

#[test]
fn file_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"generators": [[3, 0], [0, 3], ["5", "2"], [2, 5]]}}"#).unwrap();
    let path = f.path().to_str().unwrap();
    let r = json_of(&["conductor", "--file", path, "--json"]);
    assert_eq!(r["generators"], serde_json::json!([[2, 8], [5, 5], [8, 2]]));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"{{"gens": [[1]]}}"#).unwrap();
    assert_eq!(asg(&["analyze", "--file", bad.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(asg(&["analyze", "--file", "/nonexistent/gens.json"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let o = asg(&["analyze", "--gens", "1,2;2,1;1,1"]);
    assert_eq!(o.status.code(), Some(0));

    for (args, code) in [
        (&["analyze", "--gens", "1,0,0;0,1,0"][..], 3),
        (&["analyze", "--gens", "1,0,0;0,1,0;1,0,1;0,1,1"][..], 3),
        (&["analyze", "--gens", "1,a"][..], 2),
        (&["analyze", "--gens", "1,0;0"][..], 2),
        (&["analyze", "--gens", "-1,0;0,1"][..], 2),
        (&["analyze", "--gens", "0,0;0,1"][..], 2),
        (&["analyze"][..], 2),
        (&["frobenius", "--gens", "1,0;0,1"][..], 2),
        (&["frobenius", "--gens", "4;6"][..], 2),
        (&["analyze", "--gens", "3,0;0,3;5,2;2,5", "--limit-tuples", "8"][..], 4),
        (&["analyze", "--gens", "1,0,0;0,1,0;0,0,1", "--limit-box", "200"][..], 4),
    ] {
        let o = asg(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn numerical_gcd_is_reported_not_applied() {
    let o = asg(&["analyze", "--gens", "4;6;9"]);
    assert!(o.status.success());
    assert!(stderr(&o).is_empty());
    let o = asg(&["analyze", "--gens", "4;6", "--json"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("gcd 2"));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["cone"]["extremal"], serde_json::json!([[4]]));
    assert!(r.get("frobenius").is_none());
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for gens in ["3,0;0,9;5,2;2,11", "5,3,1;1,5,2;8,3,5;2,1,1;2,2,1"] {
        let one = asg(&["analyze", "--gens", gens, "--json", "--threads", "1"]);
        let four = asg(&["analyze", "--gens", gens, "--json", "--threads", "4"]);
        assert!(one.status.success() && four.status.success());
        assert_eq!(one.stdout, four.stdout);
    }
}

#[test]
fn oracle_cross_check_flag() {
    let r = json_of(&["analyze", "--gens", "3,0;0,3;5,2;2,5", "--json", "--limit-box", "14"]);
    assert_eq!(
        r["oracle_check"],
        serde_json::json!({ "bound": 14, "membership_agrees": true, "apery_agrees": true, "conductor_agrees": true })
    );
}

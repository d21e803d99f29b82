use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hopfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn exact_values(v: &Value) -> Vec<String> {
    v["connections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["invariant"]["value"]["exact"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn check_builtin_algebras() {
    for a in ["cyclic:k=2,l=3,d=1", "kac-paljutkin"] {
        let o = hopfg(&["check", "--algebra", a]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(stdout(&o).contains("result: PASS"));
    }
}

#[test]
fn check_reports_corrupted_antipode() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let o = hopfg(&[
        "export",
        "--algebra",
        "cyclic:k=1,l=3,d=1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let mut raw: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let entry = raw["antipode"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e[0] == 0 && e[1] == 1)
        .unwrap();
    entry[2] = serde_json::json!([1, "1"]);
    fs::write(&path, raw.to_string()).unwrap();
    let o = hopfg(&["check", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("HG9    FAIL"), "{out}");
    assert!(out.contains("witness"));
    let o = hopfg(&["check", "--algebra", path.to_str().unwrap(), "--format", "json"]);
    let v = json(&o);
    let hg9 = v["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "HG9")
        .unwrap();
    assert_eq!(hg9["passed"], false);
    assert_eq!(v["passed"], false);
}

#[test]
fn cp2_at_l_two_vanishes() {
    let o = hopfg(&[
        "invariant",
        "--algebra",
        "cyclic:k=1,l=2,d=1",
        "--diagram",
        "cp2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(exact_values(&json(&o)), vec!["0"]);
}

#[test]
fn cp2_at_l_three_prints_both_forms() {
    let o = hopfg(&["invariant", "--algebra", "cyclic:k=1,l=3,d=1", "--diagram", "cp2"]);
    let out = stdout(&o);
    assert!(
        out.contains("value    1/3 + 2/3*z^1  (z = primitive 3-th root of unity)"),
        "{out}"
    );
    assert!(out.contains("0.000000000000 + 0.577350269190i  (approximate, non-authoritative)"));
}

#[test]
fn s1xs3_over_all_connections() {
    let o = hopfg(&[
        "invariant",
        "--algebra",
        "cyclic:k=2,l=3,d=1",
        "--diagram",
        "s1xs3",
        "--connection",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(exact_values(&v), vec!["3", "3"]);
    assert_eq!(v["sum"]["exact"], "6");
    let s = json(&hopfg(&[
        "sum",
        "--algebra",
        "cyclic:k=2,l=3,d=1",
        "--diagram",
        "s1xs3",
        "--format",
        "json",
    ]));
    assert_eq!(s["sum"], v["sum"]);
}

#[test]
fn explicit_connection_by_name() {
    let o = hopfg(&[
        "invariant",
        "--algebra",
        "cyclic:k=2,l=2,d=1",
        "--diagram",
        "s1xs1xs2",
        "--connection",
        "a,1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["connections"][0]["images"], serde_json::json!(["a", "1"]));
    assert_eq!(exact_values(&v), vec!["4"]);
}

#[test]
fn summing_with_s4_changes_nothing() {
    let run = |d: &str| {
        exact_values(&json(&hopfg(&[
            "invariant",
            "--algebra",
            "cyclic:k=2,l=5,d=2",
            "--diagram",
            d,
            "--format",
            "json",
        ])))
    };
    assert_eq!(run("connected-sum:cp2,s4"), run("cp2"));
}

#[test]
fn json_output_is_byte_stable() {
    let args = [
        "invariant",
        "--algebra",
        "kac-paljutkin",
        "--diagram",
        "s1xs1xs2",
        "--connection",
        "all",
        "--format",
        "json",
    ];
    let (a, b) = (hopfg(&args), hopfg(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

fn script(dir: &tempfile::TempDir, text: &str) -> String {
    let p = dir.path().join("script.json");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn move_scripts_keep_values() {
    let dir = tempfile::tempdir().unwrap();
    let conj = script(
        &dir,
        r#"[{"move": "conjugate", "by": 1}, {"move": "reorient", "component": 0}]"#,
    );
    let o = hopfg(&[
        "moves",
        "--algebra",
        "kac-paljutkin",
        "--diagram",
        "s1xs1xs2",
        "--connection",
        "a,a",
        "--script",
        &conj,
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("result: all values equal"));

    let round = script(
        &dir,
        r#"[{"move": "II-1-insert", "dot": 1, "index": 2, "at": {"component": 1, "index": 1}, "first": "up"},
            {"move": "II-1-remove", "dot": 1, "index": 2}]"#,
    );
    let o = hopfg(&[
        "moves",
        "--algebra",
        "cyclic:k=3,l=2,d=1",
        "--diagram",
        "s1xs1xs2",
        "--connection",
        "a,a^2",
        "--script",
        &round,
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let pair = script(
        &dir,
        r#"[{"move": "I-2-insert", "over": {"component": 0, "index": 1}, "under": {"component": 0, "index": 0},
             "antiparallel": true, "first_sign": "-"}]"#,
    );
    let o = hopfg(&[
        "moves",
        "--algebra",
        "cyclic:k=1,l=4,d=1",
        "--diagram",
        "cp2",
        "--script",
        &pair,
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(json(&o)["steps"][0]["equal"], true);
}

#[test]
fn inapplicable_move_names_its_step() {
    let dir = tempfile::tempdir().unwrap();
    let bad = script(
        &dir,
        r#"[{"move": "III-5-insert"}, {"move": "I-2-remove", "first": 0, "second": 1}]"#,
    );
    let o = hopfg(&[
        "moves",
        "--algebra",
        "cyclic:k=1,l=3,d=1",
        "--diagram",
        "s2xs2",
        "--script",
        &bad,
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 1"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&hopfg(&["check", "--algebra", "sweedler"])), 2);
    assert_eq!(
        code(&hopfg(&[
            "invariant",
            "--algebra",
            "cyclic:k=2,l=3,d=1",
            "--diagram",
            "t4"
        ])),
        2
    );
    let o = hopfg(&[
        "invariant",
        "--algebra",
        "cyclic:k=2,l=3,d=1",
        "--diagram",
        "s1xs3",
        "--connection",
        "b",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&hopfg(&["check", "--algebra", "/nonexistent/a.json"])), 2);
    assert_eq!(code(&hopfg(&["frobnicate"])), 2);
}

#[test]
fn exported_files_feed_back_in() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("kp.json");
    let d = dir.path().join("d.json");
    assert_eq!(
        code(&hopfg(&[
            "export",
            "--algebra",
            "kac-paljutkin",
            "--out",
            a.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(
        code(&hopfg(&[
            "export",
            "--diagram",
            "connected-sum:s2xs2,cp2bar",
            "--out",
            d.to_str().unwrap()
        ])),
        0
    );
    let from_files = hopfg(&[
        "invariant",
        "--algebra",
        a.to_str().unwrap(),
        "--diagram",
        d.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let builtin = hopfg(&[
        "invariant",
        "--algebra",
        "kac-paljutkin",
        "--diagram",
        "connected-sum:s2xs2,cp2bar",
        "--format",
        "json",
    ]);
    assert_eq!(code(&from_files), 0);
    assert_eq!(exact_values(&json(&from_files)), exact_values(&json(&builtin)));
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_idemfact"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), parse(&out))
}

fn parse(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn witness_path() -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/witness_intz.json");
    p.to_string_lossy().into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn verify_file(path: &PathBuf) -> (i32, Value) {
    run(&["verify", &path.to_string_lossy()])
}

#[test]
fn factor_id2_top_row() {
    let (code, doc) = run(&["factor-id2", "--ring", "Z", "--matrix", "[[2,3],[0,0]]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["kind"], "id2-certificate");
    assert_eq!(doc["factors"].as_array().unwrap().len(), 2);
    assert_eq!(doc["input"], json!({"ring": "Z", "rows": [[2, 3], [0, 0]]}));
}

#[test]
fn obstruct_witness_is_not_factorable() {
    let (code, doc) = run(&["obstruct", "--ring", "IntZ", "--matrix", &witness_path(), "--depth", "8"]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"]["kind"], "NotFactorable");
    assert_eq!(doc["tree"]["case"], "i");
    assert_eq!(doc["tree"]["derivation"]["outcome"]["kind"], "non-integral");
}

#[test]
fn intz_convert() {
    assert_eq!(run(&["intz-convert", "--poly", "X^2"]), (0, json!({"binom": [0, 1, 2]})));
    assert_eq!(run(&["intz-convert", "--binom", "binom[0, 1, 2]"]), (0, json!({"poly": "X^2"})));
    let (code, doc) = run(&["intz-convert", "--poly", "X/2"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "NotIntegerValued");
}

#[test]
fn exit_codes() {
    let (code, doc) = run(&["factor-id2", "--ring", "Z", "--matrix", "[[2,1],[1,1]]"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (2, Some("NotSingular")));
    let (code, doc) = run(&["factor-ge2", "--ring", "IntZ", "--matrix", "[[2,1],[1,1]]"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (2, Some("NotEuclidean")));
    let (code, doc) = run(&["factor-id2", "--ring", "Z", "--matrix", "[[2,1],[1"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (3, Some("Parse")));
    let (code, _) = run(&["factor-id2", "--ring", "W", "--matrix", "[[1,0],[0,0]]"]);
    assert_eq!(code, 3);
    let (code, _) = run(&["factor-id2", "--ring", "Z", "--matrix", "[[\"2x\",0],[0,0]]"]);
    assert_eq!(code, 3);
    let (code, _) = run(&["no-such-verb"]);
    assert_eq!(code, 3);
}

#[test]
fn curve_report_aliases_agree() {
    let a = run(&["curve-report", "--F", "X^4+Y^4+1"]);
    let b = run(&["curve", "report", "--F", "X^4+Y^4+1"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    assert_eq!(a.1["verdict"]["ge2_fails"], true);
    assert_eq!(a.1["degrees"]["d_x"], 4);
    let (code, doc) = run(&["curve-report", "--F", "Y^2 - X"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (2, Some("PointsAtInfinityRational")));
}

#[test]
fn emitted_documents_verify() {
    let w = witness_path();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("id2.json", vec!["factor-id2", "--ring", "Z", "--matrix", "[[6,4],[-9,-6]]"]),
        ("id2q.json", vec!["factor-id2", "--ring", "Q[X]", "--matrix", "[[\"X\",\"X^2\"],[1,\"X\"]]"]),
        ("ge2.json", vec!["factor-ge2", "--ring", "Z", "--matrix", "[[7,-3],[-2,1]]"]),
        ("tform.json", vec!["tform", "--ring", "Z", "--matrix", "[[5,2],[2,1]]"]),
        ("tformz.json", vec!["tform", "--ring", "IntZ", "--matrix", "[[2,1],[1,1]]"]),
        ("obstruct.json", vec!["obstruct", "--ring", "IntZ", "--matrix", &w]),
        ("curve.json", vec!["curve-report", "--F", "X^2+Y^2+1", "--seed", "3"]),
    ];
    for (name, args) in cases {
        let path = tmp(name);
        let mut full = args.clone();
        let p = path.to_string_lossy().into_owned();
        full.extend(["--output", &p]);
        let out = bin().args(&full).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(out.stdout.is_empty());
        let (code, doc) = verify_file(&path);
        assert_eq!(code, 0, "{name}: {doc}");
        assert_eq!(doc["valid"], true);
    }
}

#[test]
fn verify_rejects_tampering() {
    let path = tmp("tampered.json");
    let (_, mut doc) = run(&["obstruct", "--ring", "IntZ", "--matrix", &witness_path()]);
    doc["tree"]["comparisons"][0]["rel"] = json!("<");
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, out) = verify_file(&path);
    assert_eq!(code, 1);
    assert_eq!(out["valid"], false);

    let (_, mut cert) = run(&["factor-id2", "--ring", "Z", "--matrix", "[[2,3],[0,0]]"]);
    cert["factors"][1]["rows"][1][0] = json!(7);
    std::fs::write(&path, cert.to_string()).unwrap();
    assert_eq!(verify_file(&path).0, 1);

    std::fs::write(&path, "not json").unwrap();
    assert_eq!(verify_file(&path).0, 3);
}

#[test]
fn depth_env_override() {
    let m = "[[5,2],[2,1]]";
    let shallow = bin()
        .args(["obstruct", "--ring", "Z", "--matrix", m])
        .env("IDEMFACT_DEPTH", "1")
        .output()
        .unwrap();
    let doc = parse(&shallow);
    assert_eq!(doc["depth_limit"], 1);
    assert_eq!(doc["verdict"]["kind"], "Unknown");
    let deep = bin().args(["obstruct", "--ring", "Z", "--matrix", m]).env_remove("IDEMFACT_DEPTH").output().unwrap();
    let doc = parse(&deep);
    assert_eq!(doc["depth_limit"], 8);
    assert_eq!(doc["verdict"]["kind"], "Factored");
    let flag = bin()
        .args(["obstruct", "--ring", "Z", "--matrix", m, "--depth", "20"])
        .env("IDEMFACT_DEPTH", "2")
        .output()
        .unwrap();
    assert_eq!(parse(&flag)["depth_limit"], 20);
}

#[test]
fn output_is_deterministic() {
    let args = ["curve-report", "--F", "X^4+Y^4+1", "--seed", "11"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn corpus_passes() {
    let out = bin().arg("corpus").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("obstruct IntZ witness"));
    assert!(!text.contains("FAIL"));
}

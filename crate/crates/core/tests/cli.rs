use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_torus-moduli"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

const PAIRS: &str = r#"{"records":[
  {"id":"identity","U1":[[1,0],[0,1]],"U2":[[1,0],[0,1]]},
  {"id":"aa1","U1":[[0.5,0],[0,2]],"U2":[[0.3333333333333333,0],[0,3]]},
  {"id":"parabolic","mode":"rational","U1":[[1,[1,7]],[0,1]],"U2":[[-1,0],[0,-1]]}
]}"#;

#[test]
fn classify_reports_types_and_combos() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "pairs.json", PAIRS);
    let out = run(&["classify", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v.len(), 3);
    assert_eq!(v[0]["combo"], "(B,B)");
    assert_eq!(v[1]["combo"], "(A,A)");
    assert_eq!(v[2]["combo"], "(C,B)");
    assert_eq!(v[2]["types"][0]["tag"], "C");
    assert_eq!(v[2]["exact"]["traces"][0], "2");
}

#[test]
fn canon_serializes_flat_parameters() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "pairs.json", PAIRS);
    let out = run(&["canon", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v[0]["sector"], "BB");
    assert_eq!(v[0]["eps1"], 1);
    assert_eq!(v[0]["eps2"], 1);
    assert_eq!(v[1]["sector"], "AA1");
    assert_eq!(v[1]["lambda"], 0.5);
    assert!((v[1]["mu"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(v[2]["sector"], "CB");
    assert_eq!(v[2]["eps3"], 1);
    assert_eq!(v[2]["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn non_commuting_record_exits_3_with_code() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "nc.json",
        r#"{"records":[{"id":"ok","U1":[[1,0],[0,1]],"U2":[[1,0],[0,1]]},{"id":"nc","U1":[[1,1],[0,1]],"U2":[[1,0],[1,1]]}]}"#,
    );
    let out = run(&["classify", &input]);
    assert_eq!(out.status.code(), Some(3));
    let v = lines(&out);
    assert_eq!(v[0]["status"], "ok");
    assert_eq!(v[1]["error"]["code"], "NOT_COMMUTING");
}

#[test]
fn ambiguous_record_exits_4() {
    let dir = TempDir::new().unwrap();
    // det 1, trace 2 + 1e-12, eigenvalues 1 ± 1e-6: inside the parabolic band
    // but far from both ±I and the nilpotent cone at its scale.
    let input = write(
        &dir,
        "amb.json",
        r#"{"records":[{"id":"amb","U1":[[1.000000000001,0.00001],[0.0000001,1]],"U2":[[1,0],[0,1]]}]}"#,
    );
    let out = run(&["classify", &input]);
    let v = lines(&out);
    assert_eq!(v[0]["error"]["code"], "AMBIGUOUS", "{v:?}");
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn parse_errors_exit_2_with_context() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"records":[{"id":"x","U1":[[1,0],[0,1]]}]}"#);
    let out = run(&["canon", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));

    let frac = write(
        &dir,
        "frac.json",
        r#"{"records":[{"id":"r","mode":"rational","U1":[[0.5,0],[0,2]],"U2":[[1,0],[0,1]]}]}"#,
    );
    let out = run(&["classify", &frac]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("record 0"));

    let out = run(&["classify", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equiv_verdicts() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "eq.json",
        r#"{"comparisons":[
          {"id":"conj","left":{"U1":[[0.5,0],[0,2]],"U2":[[0.25,0],[0,4]]},
                       "right":{"U1":[[2,0],[0,0.5]],"U2":[[4,0],[0,0.25]]}},
          {"id":"bc-twin","left":{"U1":[[1,0],[0,1]],"U2":[[1,1],[0,1]]},
                          "right":{"U1":[[1,0],[0,1]],"U2":[[1,-1],[0,1]]}},
          {"id":"aa1-aa2","left":{"U1":[[0.5,0],[0,2]],"U2":[[0.5,0],[0,2]]},
                          "right":{"U1":[[0.5,0],[0,2]],"U2":[[2,0],[0,0.5]]}}
        ]}"#,
    );
    let out = run(&["equiv", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v[0]["verdict"], "EQUIVALENT");
    assert_eq!(v[1]["verdict"], "DISTINCT");
    assert_eq!(v[1]["left"]["eps4"], 1);
    assert_eq!(v[1]["right"]["eps4"], -1);
    assert_eq!(v[2]["verdict"], "DISTINCT");
    assert_eq!(v[2]["left"]["sector"], "AA1");
    assert_eq!(v[2]["right"]["sector"], "AA2");
}

#[test]
fn sample_then_canon_round_trips() {
    let dir = TempDir::new().unwrap();
    let doc = dir.path().join("dd.json");
    let out = run(&["sample", "--sector", "DD", "--count", "100", "--seed", "9", "--conjugate", "--out", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let canon = run(&["canon", doc.to_str().unwrap()]);
    assert_eq!(canon.status.code(), Some(0));
    let v = lines(&canon);
    assert_eq!(v.len(), 100);
    assert!(v.iter().all(|l| l["sector"] == "DD"));

    let bb = run(&["sample", "--sector", "BB", "--count", "4"]);
    let doc: Value = serde_json::from_slice(&bb.stdout).unwrap();
    assert_eq!(doc["records"].as_array().unwrap().len(), 4);

    assert_eq!(run(&["sample", "--sector", "QQ"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = run(&["sample", "--sector", "CC", "--count", "20", "--seed", "4", "--conjugate"]);
    let b = run(&["sample", "--sector", "CC", "--count", "20", "--seed", "4", "--conjugate"]);
    assert_eq!(a.stdout, b.stdout);
    let input = write(&dir, "cc.json", std::str::from_utf8(&a.stdout).unwrap());
    assert_eq!(run(&["canon", &input]).stdout, run(&["canon", &input]).stdout);
}

fn plot(dir: &Path, figure: &str) -> csv::Reader<fs::File> {
    let svg = dir.join(format!("{figure}.svg"));
    let out = run(&["plot", figure, "--resolution", "6", "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    csv::Reader::from_path(svg.with_extension("csv")).unwrap()
}

#[test]
fn plot_writes_svg_and_csv() {
    let dir = TempDir::new().unwrap();
    let mut r = plot(dir.path(), "overall");
    let headers: Vec<String> = r.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(headers, ["figure", "group", "kind", "element", "sector", "params", "x", "y", "z"]);
    assert!(r.records().count() > 0);
}

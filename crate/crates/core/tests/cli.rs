use std::process::{Command, Output};

use serde_json::Value;
use zigzag::cli::render::{ascii_arrow_pairs, tikz_arrow_pairs};

const BIN: &str = env!("CARGO_BIN_EXE_zigzag");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn entry(rows: &Value, p: i64, q: i64) -> &Value {
    rows.as_array().unwrap().iter().find(|r| r["p"] == p && r["q"] == q).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SQUARE: &str = r#"{
  "components": [
    {"p": 0, "q": 0, "dim": 1}, {"p": 1, "q": 0, "dim": 1},
    {"p": 0, "q": 1, "dim": 1}, {"p": 1, "q": 1, "dim": 1}
  ],
  "d1": [
    {"p": 0, "q": 0, "entries": [[0, 0, {"re": "1", "im": "0"}]]},
    {"p": 0, "q": 1, "entries": [[0, 0, {"re": "-1", "im": "0"}]]}
  ],
  "d2": [
    {"p": 0, "q": 0, "entries": [[0, 0, {"re": "1", "im": "0"}]]},
    {"p": 1, "q": 0, "entries": [[0, 0, {"re": "1", "im": "0"}]]}
  ]
}
"#;

#[test]
fn origin_diagram_has_one_square() {
    let o = run(&["decompose", "--iwasawa", "t=0", "--format", "ascii"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("square:").count(), 1);
    assert!(text.contains("square:1,1;1,2;2,1;2,2"));
    // square marker sits between rows 1 and 2, between columns 1 and 2
    let marker = text.lines().find(|l| l.contains("[1]")).unwrap();
    assert!(marker.find("[1]").unwrap() > marker.find("^3").unwrap());
    assert!(text.contains("verified: ok"));
}

#[test]
fn rank_one_diagram_has_the_wedge() {
    let text = stdout(&run(&["decompose", "--iwasawa", "t11=1/2"]));
    assert!(text.contains("zigzag:1,0;1,1;2,0  (1,0)->(2,0)  (1,0)->(1,1)"));
}

#[test]
fn square_file_gives_a_single_square() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "square.json", SQUARE);
    let v = json(&["decompose", "--json", &path, "--format", "json"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["fingerprint"], serde_json::json!({"square:0,0;0,1;1,0;1,1": 1}));
}

#[test]
fn ascii_and_tikz_draw_the_same_arrows() {
    for params in ["t=0", "t11=1/2", "t11=1/2,t22=1/2,t31=2i"] {
        for scalars in [false, true] {
            let mut a = vec!["decompose", "--iwasawa", params, "--format", "ascii"];
            let mut t = vec!["decompose", "--iwasawa", params, "--format", "tikz"];
            if scalars {
                a.push("--show-scalars");
                t.push("--show-scalars");
            }
            let a = ascii_arrow_pairs(&stdout(&run(&a)));
            let t = tikz_arrow_pairs(&stdout(&run(&t)));
            assert!(!a.is_empty());
            assert_eq!(a, t, "{params}");
        }
    }
}

#[test]
fn tikz_output_is_a_complete_picture() {
    let text = stdout(&run(&["decompose", "--iwasawa", "t=0", "--format", "tikz", "--show-scalars"]));
    assert!(text.starts_with("\\begin{tikzpicture}"));
    assert!(text.trim_end().ends_with("\\end{tikzpicture}"));
    assert_eq!(text.matches("\\draw[d1]").count() + text.matches("\\draw[d2]").count(), 16);
    assert!(text.contains("node[lbl"));
}

#[test]
fn tables_for_the_three_cases() {
    let v = json(&["tables", "--iwasawa", "t=0", "--format", "json"]);
    assert_eq!(v["consistent"], true);
    let row = entry(&v["cohomology"], 1, 3);
    assert_eq!((row["column"].as_u64(), row["bott_chern"].as_u64(), row["im_d1"].as_u64()), (Some(3), Some(2), Some(1)));
    let v = json(&["tables", "--iwasawa", "t11=1/2,t22=1/2", "--format", "json"]);
    assert_eq!(entry(&v["cohomology"], 2, 1)["column"], 4);
    let betti: Vec<u64> = v["de_rham"].as_array().unwrap().iter().map(|b| b["dim"].as_u64().unwrap()).collect();
    assert_eq!(betti, [1, 4, 8, 10, 8, 4, 1]);
}

#[test]
fn tables_for_a_single_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "dot.json", r#"{"components": [{"p": 2, "q": 1, "dim": 1}]}"#);
    let v = json(&["tables", "--json", &path, "--format", "json"]);
    let row = entry(&v["cohomology"], 2, 1);
    for flavor in ["column", "row", "bott_chern", "aeppli"] {
        assert_eq!(row[flavor], 1, "{flavor}");
    }
    assert_eq!(v["de_rham"], serde_json::json!([{"k": 3, "dim": 1}]));
}

#[test]
fn pages_and_alternating_sums() {
    let v = json(&["pages", "--iwasawa", "t11=1/2,t22=1/2", "--format", "json"]);
    let chi = v["chi_e2"].as_array().unwrap().iter().find(|r| r["p"] == 1 && r["q"] == 1).unwrap();
    assert_eq!(chi["chi"], 3);
    let v = json(&["pages", "--iwasawa", "t=0", "--format", "json", "--rmax", "3"]);
    let pages = v["pages"].as_array().unwrap();
    assert_eq!(pages.len(), 3);
    assert_eq!(entry(&pages[0]["entries"], 2, 2)["dim"], 6);
    assert_eq!(entry(&pages[1]["entries"], 2, 2)["dim"], 4);
    let dims = |i: usize| -> Vec<Value> { pages[i]["entries"].as_array().unwrap().iter().map(|e| e["dim"].clone()).collect() };
    assert_eq!(dims(1), dims(2));
    let v = json(&["pages", "--iwasawa", "t=0", "--format", "json", "--filtration", "row"]);
    assert_eq!(v["filtration"], "row");
    assert_eq!(v["consistent"], true);
}

#[test]
fn classify_is_deterministic_and_writes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&["classify", "--samples", "24", "--seed", "9", "--format", "json", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["groups"].as_array().unwrap().len(), 3);
    assert!(v["groups"].as_array().unwrap().iter().all(|g| g["matches_diagram"] == true));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn convert_origin_and_round_trip() {
    let o = run(&["convert", "--iwasawa", "t=0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 16);
    let binom = [1, 3, 3, 1];
    for c in comps {
        let (p, q) = (c["p"].as_u64().unwrap() as usize, c["q"].as_u64().unwrap() as usize);
        assert_eq!(c["dim"].as_u64().unwrap(), binom[p] * binom[q]);
    }
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "origin.json", &text);
    assert_eq!(stdout(&run(&["convert", "--json", &path])), text);
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        &dir,
        "bad.json",
        "{\"components\": [{\"p\": 0, \"q\": 0, \"dim\": 1}, {\"p\": 1, \"q\": 0, \"dim\": 1}],\n \"d1\": [{\"p\": 0, \"q\": 0, \"entries\": [[0, 0, {\"re\": \"1/0\", \"im\": \"0\"}]]}]}",
    );
    let o = run(&["convert", "--json", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("column"), "{err}");

    // a commuting square breaks d1 d2 + d2 d1 = 0
    let commuting = SQUARE.replace("\"-1\"", "\"1\"");
    let path = write_temp(&dir, "commuting.json", &commuting);
    assert_eq!(run(&["decompose", "--json", &path]).status.code(), Some(1));

    assert_eq!(run(&["decompose"]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--iwasawa", "t=0", "--json", &path]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--iwasawa", "t7=1"]).status.code(), Some(1));
    assert_eq!(run(&["convert", "--iwasawa", "t=0", "--format", "ascii"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--samples", "0"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--json", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn help_documents_flags_and_the_parameter_bound() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for flag in ["--iwasawa", "--json", "--format", "--rmax", "--filtration", "--samples", "--seed", "--show-scalars", "--out"] {
        assert!(text.contains(flag), "{flag}");
    }
    assert!(text.contains("not") && text.contains("enforced"));
}

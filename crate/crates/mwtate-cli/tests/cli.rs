use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn mwtate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwtate")).args(args).output().expect("binary runs")
}

fn mwtate_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mwtate"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().expect("piped").write_all(input.as_bytes()).expect("stdin accepts input");
    child.wait_with_output().expect("binary exits")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const SIX_COMPLEX: &str =
    r#"{"cells":[{"id":"a","weight":0},{"id":"b","weight":1}],"attach":[{"from":"b","to":"a","coeff":6}]}"#;

#[test]
fn decompose_six_attachment() {
    let o = mwtate_stdin(&["decompose", "--in", "-"], SIX_COMPLEX);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o), json!([{"kind":"dyadic","t":1,"weight":0},{"kind":"odd","p":3,"r":1,"shift":0}]));
}

#[test]
fn decompose_from_file() {
    let dir = std::env::temp_dir().join(format!("mwtate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("six.json");
    std::fs::write(&path, SIX_COMPLEX).unwrap();
    let o = mwtate(&["decompose", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o).as_array().unwrap().len(), 2);
}

#[test]
fn pages_table_shows_truncated_v_tower() {
    let o =
        mwtate(&["pages", "--blocks", r#"[{"kind":"dyadic","t":2,"weight":0}]"#, "--page", "4", "--format", "table"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<&str>> =
        text.lines().skip(2).map(|l| l.split_whitespace().collect()).filter(|r: &Vec<&str>| !r.is_empty()).collect();
    assert_eq!(rows, vec![vec!["2", "1", "2", "v"]], "{text}");
}

#[test]
fn pages_range_json() {
    let o = mwtate(&["pages", "--blocks", r#"[{"kind":"dyadic","t":1,"weight":0}]"#, "--range", "2..4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o).as_array().unwrap().len(), 3);
}

#[test]
fn classify_hp1_examples() {
    let o = mwtate(&["classify-hp1", "--rank", "2", "--euler", "0,4"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["is_free"], json!(false));
    assert_eq!(v["stably_free_nontrivial"], json!(true));
    let o = mwtate(&["classify-hp1", "--rank", "4", "--c2", "-3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["c2"], json!(-3));
    assert_eq!(code(&mwtate(&["classify-hp1", "--rank", "2", "--euler", "1,4"])), 2);
    assert_eq!(code(&mwtate(&["classify-hp1", "--rank", "3", "--euler", "0,4"])), 2);
    assert_eq!(code(&mwtate(&["classify-hp1", "--rank", "2"])), 64);
}

#[test]
fn check_kunneth_passes() {
    let o = mwtate(&["check", "--suite", "kunneth", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["seed"], json!(7));
}

#[test]
fn check_unknown_suite_is_usage_error() {
    assert_eq!(code(&mwtate(&["check", "--suite", "nope"])), 64);
}

#[test]
fn tensor_and_cohomology() {
    let o = mwtate(&[
        "tensor",
        "--blocks",
        r#"[{"kind":"dyadic","t":1,"weight":0}]"#,
        "--blocks",
        r#"[{"kind":"odd","p":3,"r":1,"shift":0}]"#,
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o), json!([]));
    let o = mwtate(&["cohomology", "--blocks", r#"[{"kind":"dyadic","t":2,"weight":1}]"#, "--theory", "witt"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["model"], json!("minimal-euclidean"));
    assert_eq!(v["groups"], json!([{"degree":2,"free":0,"torsion":[4]}]));
    for theory in ["chow", "chow-mod2", "mod2", "mw-diagonal"] {
        let o = mwtate(&["cohomology", "--blocks", r#"[{"kind":"free","weight":0}]"#, "--theory", theory]);
        assert_eq!(code(&o), 0, "{theory}");
    }
}

#[test]
fn pbundle_and_blowup() {
    let o = mwtate(&["pbundle-hp1", "--euler", "0,8"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert!(v["normal_form"].as_array().unwrap().contains(&json!({"kind":"dyadic","t":3,"weight":1})));
    let req = r#"{"x":{"cells":[{"id":"a","weight":0},{"id":"b","weight":1},{"id":"c","weight":2}],"attach":[]},
        "z":[{"kind":"free","weight":0}],"n":2,"th":{"cells":[{"id":"t","weight":1}],"attach":[]},
        "g":[{"from":"c","to":"t","coeff":1}]}"#;
    let o = mwtate_stdin(&["blowup", "--in", "-"], req);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["eta_check"]["holds"], json!(true));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&mwtate(&["pages", "--blocks", "not json"])), 1);
    assert_eq!(code(&mwtate(&["decompose", "--in", "/nonexistent/complex.json"])), 1);
    assert_eq!(code(&mwtate(&["pages", "--blocks", r#"[{"kind":"odd","p":9,"r":1,"shift":0}]"#])), 2);
    let bad = r#"{"cells":[{"id":"a","weight":0},{"id":"b","weight":2}],"attach":[{"from":"b","to":"a","coeff":1}]}"#;
    let o = mwtate_stdin(&["decompose", "--in", "-"], bad);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["valid"], json!(false));
    assert_eq!(code(&mwtate(&["--model", "other", "pages", "--blocks", "[]"])), 64);
    assert_eq!(code(&mwtate(&["frobnicate"])), 64);
    assert_eq!(code(&mwtate(&["--help"])), 0);
    assert_eq!(code(&mwtate(&["--version"])), 0);
    assert_eq!(code(&mwtate(&["check", "--suite", "steenrod"])), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "--suite", "tensor-witt", "--seed", "11"];
    assert_eq!(mwtate(&args).stdout, mwtate(&args).stdout);
    let o1 = mwtate_stdin(&["decompose", "--in", "-"], SIX_COMPLEX);
    let o2 = mwtate_stdin(&["decompose", "--in", "-"], SIX_COMPLEX);
    assert_eq!(o1.stdout, o2.stdout);
}

#[test]
fn decompose_realize_round_trip() {
    let blocks =
        r#"[{"kind":"free","weight":0},{"kind":"dyadic","t":2,"weight":1},{"kind":"dyadic","t":0,"weight":-1}]"#;
    let a = mwtate::motives::NormalForm::from_json(blocks).unwrap();
    let complex = mwtate::motives::realize(&a).unwrap().to_json();
    let o = mwtate_stdin(&["decompose", "--in", "-"], &complex);
    assert_eq!(code(&o), 0);
    let once = String::from_utf8(o.stdout).unwrap();
    let b = mwtate::motives::NormalForm::from_json(&once).unwrap();
    assert_eq!(b, a);
    let again = mwtate_stdin(&["decompose", "--in", "-"], &mwtate::motives::realize(&b).unwrap().to_json());
    assert_eq!(String::from_utf8(again.stdout).unwrap(), once);
}

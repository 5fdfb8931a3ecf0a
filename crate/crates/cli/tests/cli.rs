use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn veer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veer"))
        .args(args)
        .output()
        .expect("runs veer")
}

fn veer_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_veer"))
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

fn data(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "core",
        "tests",
        "data",
        name,
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn validate_exit_codes() {
    assert_eq!(
        veer(&["validate", &data("s227.tgl")]).status.code(),
        Some(0)
    );
    assert_eq!(
        veer(&["validate", &data("m004.tgl")]).status.code(),
        Some(0)
    );
    assert_eq!(
        veer(&["validate", &data("nonorientable_m001.tgl")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        veer(&["validate", "/no/such/file.tgl"]).status.code(),
        Some(2)
    );
}

#[test]
fn truncated_input_reports_line() {
    let o = veer_stdin(
        &["validate", "-"],
        "tets 2\n0 : 1 0123 1 1320 1 3210 1 3102\n",
    );
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn report_s227_matches_known_row() {
    let o = veer(&["report", "--json", &data("s227.tgl")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["name"], "s227");
    let row = [
        "e02,e13", "e01,e23", "e01,e23", "e02,e13", "e03,e12", "e03,e12",
    ];
    let s = v["structures"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["taut_angle"] == serde_json::json!(row))
        .expect("known row present");
    assert_eq!(s["veering"], true);
    assert_eq!(s["taut"], true);
    assert_eq!(s["strict"], true);
}

#[test]
fn report_s438_is_veering_but_not_taut() {
    let v = json(&veer(&["report", "--json", &data("s438.tgl")]));
    let row = [
        "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e01,e23",
    ];
    let s = v["structures"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["taut_angle"] == serde_json::json!(row))
        .unwrap();
    assert_eq!(s["veering"], true);
    assert_eq!(s["taut"], false);
}

#[test]
fn report_m004_has_a_veering_structure() {
    let v = json(&veer(&["report", "--json", &data("m004.tgl")]));
    assert!(v["counts"]["with_veering"].as_u64().unwrap() >= 1);
}

#[test]
fn report_without_strict_structure_exits_one() {
    let o = veer(&["report", &data("degree2.tgl")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_is_deterministic() {
    let a = stdout(&veer(&["report", "--json", &data("s227.tgl")]));
    let b = stdout(&veer(&["report", "--json", &data("s227.tgl")]));
    assert_eq!(a, b);
}

#[test]
fn single_structure() {
    let v = json(&veer(&[
        "report",
        "--json",
        "--structure",
        "0",
        &data("m004.tgl"),
    ]));
    assert_eq!(v["index"], 0);
    let o = veer(&["report", "--structure", "99", &data("m004.tgl")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stdin_is_accepted() {
    let text = fs::read_to_string(data("m004.tgl")).unwrap();
    let o = veer_stdin(&["report", "--json", "-"], &text);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["name"], "stdin");
}

#[test]
fn census_over_one_file_and_none() {
    let dir = tempfile::tempdir().unwrap();
    let empty = json(&veer(&["census", "--json", dir.path().to_str().unwrap()]));
    for key in [
        "triangulations",
        "taut_angle_structures",
        "with_taut",
        "with_veering",
        "taut_and_veering",
    ] {
        assert_eq!(empty[key], 0, "{key}");
    }
    fs::copy(data("s227.tgl"), dir.path().join("s227.tgl")).unwrap();
    let o = veer(&["census", "--json", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["triangulations"], 1);
    assert_eq!(v["taut_angle_structures"], 4);
    assert!(v["taut_and_veering"].as_u64().unwrap() >= 1);
}

#[test]
fn ptb_words() {
    let o = veer(&["ptb", "RL"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("tets 2\n"));
    assert!(out.contains("verified: yes"));

    let v = json(&veer(&["ptb", "--json", "RRLL"]));
    assert_eq!(v["tet_count"], 4);
    assert_eq!(v["verified"], true);

    assert_eq!(veer(&["ptb", "L"]).status.code(), Some(2));
    assert_eq!(veer(&["ptb", "RXL"]).status.code(), Some(2));
}

#[test]
fn ptb_random_is_reproducible() {
    let a = stdout(&veer(&["ptb", "--random", "10", "--seed", "7", "--json"]));
    let b = stdout(&veer(&["ptb", "--random", "10", "--seed", "7", "--json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["word"].as_str().unwrap().len(), 10);
    assert_eq!(veer(&["ptb", "--random", "1"]).status.code(), Some(2));
}

#[test]
fn ptb_output_round_trips_through_validate() {
    let o = veer(&["ptb", "--json", "RRL"]);
    let tgl = json(&o)["tgl"].as_str().unwrap().to_owned();
    let back = veer_stdin(&["validate", "-"], &tgl);
    assert_eq!(back.status.code(), Some(0));
}

#[test]
fn qmatrix_grid() {
    let o = veer(&["qmatrix", &data("m004.tgl")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].contains("0:Q01_23"));
    assert!(lines[1].starts_with("e0"));
}

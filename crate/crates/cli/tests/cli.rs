use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn belyikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_belyikit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn success_prints_sorted_report() {
    let o = belyikit(&["radical", "--point", "3:125:128"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert!(text.ends_with("}\n"));
    let v = stdout_json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["command"], "radical");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn exit_codes() {
    // rejected map
    let o = belyikit(&["belyi", "check", "--map", "x^3 - 3*x"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside {0,1,oo}"));
    // bad flags and domain errors
    assert_eq!(code(&belyikit(&["height"])), 2);
    assert_eq!(code(&belyikit(&["height", "--point", "0:0:0"])), 2);
    assert_eq!(code(&belyikit(&["siegel", "audit", "--map", "x", "--infty", "0,1,oo", "--eps", "2", "--bound", "3"])), 2);
    // resource cap
    let o = belyikit(&["abc", "check", "--a", "1", "--b", "8", "--eps", "1/100000000", "--c", "1"]);
    assert_eq!(code(&o), 3);
    // nonrational critical values
    assert_eq!(code(&belyikit(&["belyi", "make", "--map", "x^3 - 6*x"])), 5);
    // help is not an error
    assert_eq!(code(&belyikit(&["--help"])), 0);
}

#[test]
fn out_writes_file_and_keeps_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let o = belyikit(&["--out", p, "height", "--point", "3:125:128"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let stored = fs::read_to_string(&path).unwrap();
    let direct = belyikit(&["height", "--point", "3:125:128"]);
    assert_eq!(stored.as_bytes(), &direct.stdout[..]);
    // only the report is left behind
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn out_to_missing_directory_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("r.json");
    let o = belyikit(&["--out", path.to_str().unwrap(), "height", "--point", "1:2:3"]);
    assert_eq!(code(&o), 4);
    assert!(o.stdout.is_empty());
}

#[test]
fn csv_output() {
    let o = belyikit(&["--format", "csv", "abc", "scan", "--cmax", "100", "--top", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,c,M,R,quality"));
    assert!(lines.next().unwrap().starts_with("1,80,81,81,30,"));
    assert_eq!(text.lines().count(), 4);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    assert_eq!(code(&belyikit(&["--out", path.to_str().unwrap(), "abc", "scan", "--cmax", "50"])), 0);
    assert!(fs::read_to_string(&path).unwrap().starts_with("a,b,c,M,R,quality\n"));

    assert_eq!(code(&belyikit(&["--format", "csv", "height", "--point", "1:2:3"])), 2);
}

#[test]
fn timing_is_opt_in() {
    let plain = stdout_json(&belyikit(&["height", "--point", "1:2:3"]));
    assert!(plain.get("timing").is_none());
    let timed = stdout_json(&belyikit(&["--timing", "height", "--point", "1:2:3"]));
    assert!(timed["timing"]["elapsed_ms"].is_number());
}

#[test]
fn jobs_do_not_change_reports() {
    let args = ["abc", "scan", "--cmax", "500"];
    let one = belyikit(&[&["--jobs", "1"][..], &args].concat());
    let four = belyikit(&[&["--jobs", "4"][..], &args].concat());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(code(&belyikit(&["--jobs", "0", "height", "--point", "1:2:3"])), 2);
}

#[test]
fn stored_corpus_passes() {
    let o = belyikit(&["corpus", "run", corpus_dir().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("0 failed"));
}

#[test]
fn tampered_corpus_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let src = corpus_dir().join("height_3_125_128.json");
    let dst = dir.path().join("height_3_125_128.json");
    let text = fs::read_to_string(src).unwrap().replace("\"M\": \"128\"", "\"M\": \"127\"");
    fs::write(&dst, text).unwrap();
    let o = belyikit(&["corpus", "run", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("FAIL height_3_125_128: report differs at /report/payload/M"), "{err}");

    // blessing restores it
    assert_eq!(code(&belyikit(&["corpus", "run", "--bless", dir.path().to_str().unwrap()])), 0);
    assert_eq!(code(&belyikit(&["corpus", "run", dir.path().to_str().unwrap()])), 0);
}

#[test]
fn corpus_directory_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let o = belyikit(&["corpus", "run", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("0 cases"));
    let missing = dir.path().join("nope");
    assert_eq!(code(&belyikit(&["corpus", "run", missing.to_str().unwrap()])), 2);
}

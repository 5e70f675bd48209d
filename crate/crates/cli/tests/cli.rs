use std::path::Path;
use std::process::{Command, Output};

fn ssp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssp")).args(args).env_remove("SSP_JOBS").output().expect("ssp runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn genus2_at_11_has_two_classes() {
    let out = ssp(&["census", "--family", "genus2", "-p", "11", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 2);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(v["referee"]["value"], 2);
    assert_eq!(v["runtime_ms"], serde_json::Value::Null);
    // top-level keys in schema order
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = ["family", "p", "field_degree", "count", "classes", "referee", "runtime_ms", "seed"];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(&format!("\n  \"{k}\":")).expect(k)).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
}

#[test]
fn howe_b_at_23() {
    let out = ssp(&["census", "--family", "howe-b", "-p", "23"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 33);
}

#[test]
fn formula_suite_passes() {
    let out = ssp(&["verify", "--suite", "formulas", "--pmax", "199"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn empty_census_report() {
    let out = ssp(&["census", "--family", "hyper4", "-p", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 0);
    assert_eq!(v["classes"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["census", "--family", "genus2", "-p", "59"][..],
        &["census", "--family", "genus2", "-p", "12", "--stretch"],
        &["census", "--family", "nonsense", "-p", "11"],
        &["census", "--family", "genus2", "-p", "11", "--jobs", "0"],
        &["census", "--family", "genus2", "-p", "11", "--checkpoint", "x"],
        &["frobnicate"],
    ] {
        assert_eq!(ssp(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn stretch_opens_the_range() {
    let out = ssp(&["census", "--family", "genus2", "-p", "59", "--stretch"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], json(&out)["referee"]["value"]);
}

#[test]
fn csv_has_one_row_per_class() {
    let out = ssp(&["census", "--family", "elliptic", "-p", "101", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|row| &row[3] == "9" && &row[8] == "eichler_h"));
}

fn run_to(dir: &Path, name: &str, extra: &[&str]) -> Vec<u8> {
    let out = dir.join(name);
    let mut args = vec!["census", "--family", "hyper4", "-p", "11", "--chunk-size", "500", "--output", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = ssp(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read(out).unwrap()
}

#[test]
fn reports_do_not_depend_on_jobs_or_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let plain = run_to(dir.path(), "a", &["--jobs", "1"]);
    assert_eq!(run_to(dir.path(), "b", &["--jobs", "4"]), plain);

    let ck = dir.path().join("ck");
    let ck = ck.to_str().unwrap();
    assert_eq!(run_to(dir.path(), "c", &["--checkpoint", ck]), plain);
    // simulate a crash: keep the header and a few chunks, then tear the last line
    let text = std::fs::read_to_string(ck).unwrap();
    let mut kept: String = text.lines().take(6).map(|l| format!("{l}\n")).collect();
    kept.push_str("hyper4 11 9 surv");
    std::fs::write(ck, kept).unwrap();
    assert_eq!(run_to(dir.path(), "d", &["--checkpoint", ck, "--jobs", "2"]), plain);
    // a completed log is reused without rescanning
    assert_eq!(run_to(dir.path(), "e", &["--checkpoint", ck]), plain);
    assert!(!dir.path().join(".e.partial").exists());
}

#[test]
fn seed_is_echoed_and_results_are_seed_independent() {
    let a = json(&ssp(&["census", "--family", "genus2", "-p", "13", "--seed", "1"]));
    let b = json(&ssp(&["census", "--family", "genus2", "-p", "13", "--seed", "99"]));
    assert_eq!(a["seed"], 1);
    assert_eq!(b["seed"], 99);
    assert_eq!(a["classes"], b["classes"]);
}

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn sgff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgff")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn nullvec_example_passes() {
    let out = sgff(&["verify", "nullvec", "--nu", "2/5", "--n-max", "3", "--seed", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    assert_eq!(r["schema"], "sgff-report/1");
    assert_eq!(r["aggregate"]["verdict"], "pass");
    assert_eq!(r["config"]["seed"], 7);
}

#[test]
fn virasoro_example_passes() {
    let out = sgff(&["verify", "virasoro", "--level-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("virasoro/null-table/level<=8"));
}

#[test]
fn stated_sign_failure_sets_exit_one() {
    let out = sgff(&["verify", "fermions", "--n-max", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let checks = r["checks"].as_array().unwrap();
    let failing: Vec<&str> =
        checks.iter().filter(|c| c["verdict"] == "fail").map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(failing, vec!["fermions/shift/m=-1/n=0", "fermions/shift/m=-1/n=1"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sgff(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(sgff(&["verify", "towers", "--nu", "7/5"]).status.code(), Some(2));
    assert_eq!(sgff(&["verify", "towers", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(sgff(&["table", "null", "--level-max", "9"]).status.code(), Some(2));
    assert_eq!(sgff(&[]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let args = ["verify", "exact-residue", "--n-max", "2", "--seed", "5", "--format", "json"];
    let key = |v: &Value| -> Vec<(String, String, String)> {
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["id"].to_string(), c["verdict"].to_string(), c["witness_hash"].to_string()))
            .collect()
    };
    let a = key(&json(&sgff(&args)));
    let b = key(&json(&sgff(&args)));
    assert_eq!(a, b);
    let mut sorted = a.clone();
    sorted.sort();
    assert_eq!(a, sorted);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# run settings\nnu = 3/7\nn-max = 1\nseed = 9\nformat = json").unwrap();
    let path = f.path().to_str().unwrap();
    let r = json(&sgff(&["verify", "towers", "--config", path]));
    assert_eq!(r["config"]["nu"], "3/7");
    assert_eq!(r["config"]["n_max"], 1);
    let r = json(&sgff(&["verify", "towers", "--config", path, "--seed", "4"]));
    assert_eq!(r["config"]["seed"], 4);
    assert_eq!(r["config"]["nu"], "3/7");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = blue").unwrap();
    let out = sgff(&["verify", "towers", "--config", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_has_one_row_per_check() {
    let out = sgff(&["verify", "bethe", "--n-max", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,verdict,anchor"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn show_prints_towers_words_and_omega() {
    let out = sgff(&["show", "M0", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("S1^3*S2"), "{text}");
    let r = json(&sgff(&["show", "psi*0(Z1) chi*0(X1)", "--format", "json"]));
    assert_eq!(r["components"][0]["l"], 1);
    assert_eq!(sgff(&["show", "omega", "--n", "1"]).status.code(), Some(0));
    assert_eq!(sgff(&["show", "psi*[2]"]).status.code(), Some(2));
}

#[test]
fn null_table_text() {
    let out = sgff(&["table", "null", "--level-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().any(|l| l.contains("Ψ_{1,3}")));
}

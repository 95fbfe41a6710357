use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use dlchow::dlclass::{ClassKind, ClassReport, ComputationPath};
use dlchow::permgroup::{all_elements, Permutation, Twist};
use dlchow::schubert::FlagRing;
use serde_json::Value;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlchow")).args(args).env("DLCHOW_CACHE", cache).output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn class_examples() {
    assert_eq!(
        ok(&["class", "--n", "3", "--w", "s1 s2", "--kind", "dl", "--twist", "trivial"]),
        "q*[s1 s2] + [s2 s1]\n"
    );
    assert_eq!(ok(&["class", "--n", "2", "--w", "id", "--kind", "dl"]), "(q+1)*[id]\n");
    assert_eq!(ok(&["class", "--n", "3", "--w", "s1", "--kind", "unip"]), "[s1]\n");
    assert_eq!(ok(&["class", "--n", "3", "--w", "s1", "--kind", "ss"]), "3*[s1]\n");
    assert_eq!(ok(&["class", "--n", "3", "--w", "s1 s2", "--q", "2"]), "2*[s1 s2] + [s2 s1]\n");
    assert_eq!(ok(&["class", "--n", "3", "--w", "s2 s1", "--path", "divided-difference"]), "[s1 s2] + q*[s2 s1]\n");
}

#[test]
fn class_listing_follows_group_order_for_any_job_count() {
    let serial = ok(&["class", "--n", "4", "--twist", "w0", "--jobs", "1"]);
    let parallel = ok(&["class", "--n", "4", "--twist", "w0", "--jobs", "4"]);
    assert_eq!(serial, parallel);
    let labels: Vec<&str> = serial.lines().map(|l| l.split(": ").next().unwrap()).collect();
    let expected: Vec<String> = all_elements(4).map(|w| w.word_string()).collect();
    assert_eq!(labels, expected);
}

#[test]
fn json_output_round_trips() {
    let ring = FlagRing::new(4).unwrap();
    for (w, kind) in [("s1 s2 s3", "dl"), ("s2 s1 s3 s2", "unip"), ("s1 s3", "ss")] {
        let text = ok(&["class", "--n", "4", "--w", w, "--kind", kind, "--twist", "w0", "--format", "json"]);
        let value: Value = serde_json::from_str(&text).unwrap();
        let parsed = ClassReport::from_json(&value).unwrap();
        let kind: ClassKind = kind.parse().unwrap();
        let w = Permutation::parse(w, 4).unwrap();
        let expected =
            ClassReport::compute(&ring, &w, Twist::ConjByW0, kind, ComputationPath::PairEnumeration).unwrap();
        assert_eq!(parsed, expected);
    }
    let all: Value = serde_json::from_str(&ok(&["class", "--n", "3", "--format", "json"])).unwrap();
    assert_eq!(all.as_array().unwrap().len(), 6);
}

#[test]
fn csv_schema() {
    let text = ok(&["class", "--n", "3", "--w", "s1 s2", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("w,basis_element,coefficient"));
    assert_eq!(lines.collect::<Vec<_>>(), vec!["s1 s2,s1 s2,q", "s1 s2,s2 s1,1"]);
}

#[test]
fn equal_classes_listing() {
    assert_eq!(ok(&["equal-classes", "--n", "2"]), "no nontrivial groups\n");
    assert_eq!(ok(&["equal-classes", "--n", "3"]), "{s1 s2, s2 s1}: inverse\n");
    assert_eq!(ok(&["equal-classes", "--n", "4"]).lines().count(), 6);
    let value: Value = serde_json::from_str(&ok(&["equal-classes", "--n", "4", "--format", "json"])).unwrap();
    let groups = value["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 6);
    assert!(groups.iter().all(|g| g["members"].is_array() && g["explanation"].is_string()));
    let csv = ok(&["equal-classes", "--n", "3", "--format", "csv"]);
    assert_eq!(csv, "group,w,explanation\n1,s1 s2,inverse\n1,s2 s1,inverse\n");
}

#[test]
fn transition_components_hecke_schubert() {
    assert!(ok(&["transition", "--n", "2"]).lines().any(|l| l == "det = ±(q+1)"));
    let t: Value = serde_json::from_str(&ok(&["transition", "--n", "3", "--twist", "w0", "--format", "json"])).unwrap();
    assert_eq!(t["factorization"], "±(q-1)*(q+1)^6*(q^2-q+1)");
    assert_eq!(ok(&["components", "--n", "4", "--w", "s1", "--twist", "w0"]), "q^4+q^3+2*q^2+q+1\n");
    assert_eq!(ok(&["components", "--n", "4", "--w", "s1 s3", "--kind", "ss"]), "6\n");
    assert_eq!(ok(&["components", "--n", "3", "--w", "s1", "--q", "1"]), "3\n");
    assert_eq!(ok(&["hecke", "--n", "3", "--expr", "T[s1]*T[s1]"]), "(x-1)*T[s1] + x*T[id]\n");
    assert_eq!(ok(&["hecke", "--n", "3", "--expr", "T[s1]*T[s1]", "--q", "2"]), "T[s1] + 2*T[id]\n");
    assert_eq!(ok(&["schubert", "--n", "3", "--w", "s2 s1"]), "x1^2\n");
    assert_eq!(ok(&["schubert", "--n", "3"]).lines().count(), 6);
}

#[test]
fn exit_codes() {
    let o = run(&["class", "--n", "9", "--w", "id"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["class", "--n", "3", "--w", "s5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("out of range"));
    assert_eq!(run(&["class", "--n", "3", "--kind", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["hecke", "--n", "3", "--expr", "T[s1]*("]).status.code(), Some(2));
    assert_eq!(run(&["class", "--n", "0", "--w", "id"]).status.code(), Some(2));
    let o = run(&["schubert", "--n", "7", "--w", "id"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn corrupt_cache_is_rebuilt_and_strict_mode_reports_it() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["class", "--n", "3", "--w", "id", "--strict-cache"];
    let first = run_in(dir.path(), &args);
    assert!(first.status.success());
    let file = dir.path().join("structure-n3.jsonl");
    assert!(file.exists());
    writeln!(OpenOptions::new().append(true).open(&file).unwrap(), "{{not json").unwrap();

    let strict = run_in(dir.path(), &args);
    assert_eq!(strict.status.code(), Some(4));
    assert!(stderr(&strict).contains("corrupt"));
    // the strict run already rewrote the store
    let again = run_in(dir.path(), &args);
    assert!(again.status.success());
    assert_eq!(stdout(&again), stdout(&first));

    writeln!(OpenOptions::new().append(true).open(&file).unwrap(), "garbage").unwrap();
    let lenient = run_in(dir.path(), &args[..5]);
    assert!(lenient.status.success());
    assert!(stderr(&lenient).contains("warning"));
    assert_eq!(stdout(&lenient), stdout(&first));
}

#[test]
fn cache_dir_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = run_in(env_dir.path(), &["transition", "--n", "2", "--cache-dir", flag_dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(flag_dir.path().join("structure-n2.jsonl").exists());
    assert!(!env_dir.path().join("structure-n2.jsonl").exists());
}

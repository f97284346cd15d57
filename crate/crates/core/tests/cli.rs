use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polar-srg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

const PETERSEN: &[&str] = &["--family", "no-even2", "--q", "2", "--r", "2", "--eps", "-1"];

fn with<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn build_reports_petersen_parameters() {
    let o = run(&with(&["build", "--format", "json"], PETERSEN));
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["v"], 10);
    assert_eq!(v["k"], 3);
    assert_eq!(v["lambda"], 0);
    assert_eq!(v["mu"], 1);
    assert_eq!(v["matches_expected"], true);
    assert_eq!(v["seed"], 0);
}

#[test]
fn construct_writes_a_set_file() {
    let o = run(&with(&["construct", "--method", "I", "--t", "1"], PETERSEN));
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("# graph: no-even2 q=2 r=2 eps=-1\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
    let report = String::from_utf8(o.stderr).unwrap();
    assert!(report.contains("h1=1 h2=3 type=negative"), "{report}");
}

fn round_trip(construct: &[&str], dir: &Path) {
    let file = dir.join("set.txt");
    let file = file.to_str().unwrap();
    let mut args = construct.to_vec();
    args.extend(["--format", "json", "--seed", "7", "--out", file]);
    let built = run(&args);
    assert!(built.status.success(), "{}", String::from_utf8_lossy(&built.stderr));
    let checked = run(&["verify", file, "--format", "json", "--seed", "7"]);
    assert!(checked.status.success());
    assert_eq!(built.stdout, checked.stdout);
    let again = run(&args);
    assert_eq!(built.stdout, again.stdout);
}

#[test]
fn construct_then_verify_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    round_trip(&with(&["construct", "--method", "I", "--t", "1"], PETERSEN), dir.path());
    round_trip(
        &["construct", "--method", "III", "--family", "no-perp", "--q", "3", "--r", "2", "--eps", "1"],
        dir.path(),
    );
    round_trip(
        &["construct", "--method", "II", "--family", "no-odd", "--q", "3", "--r", "2", "--eps", "-1", "--k", "1"],
        dir.path(),
    );
    round_trip(
        &["construct", "--method", "I", "--t", "1", "--complement", "--family", "no-even3", "--q", "3", "--r", "2", "--eps", "1", "--part", "2"],
        dir.path(),
    );
}

#[test]
fn verify_accepts_explicit_files_and_rejects_foreign_points() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    std::fs::write(&good, "# graph: no-even2 q=2 r=2 eps=-1\n([0], [0], [0], [1])\n([1], [0],[0],[1])\n").unwrap();
    let o = run(&["verify", good.to_str().unwrap(), "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["set"]["size"], 2);
    assert_eq!(v["set"]["provenance"]["kind"], "explicit");

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "# graph: no-even2 q=2 r=2 eps=-1\n([0], [0], [0], [0])\n").unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "Parse");
}

#[test]
fn invalid_flag_combinations_fail_before_building() {
    let o = run(&with(&["construct", "--method", "I", "--group", "k"], PETERSEN));
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UnsupportedParameters");

    let o = run(&["build", "--family", "nu", "--q", "2", "--r", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_exits_nonzero_with_a_record() {
    // printed and measured values disagree for this chain difference
    let o = run(&[
        "construct", "--method", "I", "--t", "1", "--difference", "--family", "no-perp", "--q", "3",
        "--r", "2", "--eps", "1", "--format", "json", "--out", "/dev/null",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["measured"]["h2"], 3);
    assert_eq!(v["matches_expected"], false);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("\"CheckFailed\""));
}

#[test]
fn fields_and_dot_outputs() {
    let o = run(&["fields", "list"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("GF(2^6) order=64 modulus=[1, 1, 0, 0, 0, 0, 1]"));
    let o = run(&with(&["build", "--format", "dot"], PETERSEN));
    assert_eq!(stdout(&o).matches(" -- ").count(), 15);
}

#[test]
fn scan_lists_orbit_unions() {
    let o = run(&["scan", "--family", "no-even2", "--q", "2", "--r", "3", "--eps", "1", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["group"], "l");
    assert!(!v["hits"].as_array().unwrap().is_empty());
}

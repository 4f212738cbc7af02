//! End-to-end checks of the command-line interface: report content,
//! exit codes, and byte-level determinism of reruns.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hoops")
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run(args: &[&str]) -> Run {
    let output = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(output.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf8 stderr"),
        code: output.status.code().expect("exit code"),
    }
}

fn fixture_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hoops_cli_{name}"));
    std::fs::create_dir_all(&dir).expect("fixture dir");
    dir
}

fn write_fixture(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("fixture write");
    path
}

const FIG8: &str = r#"{
  "dim": 2,
  "basepoint": ["0", "0"],
  "vertices": [
    ["0", "0"], ["4", "0"], ["2", "4"], ["0", "0"],
    ["-4", "0"], ["-2", "-4"], ["0", "0"]
  ]
}"#;

const SPUR: &str = r#"{
  "dim": 2,
  "basepoint": ["0", "0"],
  "vertices": [["0", "0"], ["3", "1"], ["0", "0"]]
}"#;

const TRIANGLE: &str = r#"{
  "dim": 2,
  "basepoint": ["0", "0"],
  "vertices": [["0", "0"], ["4", "0"], ["2", "4"], ["0", "0"]]
}"#;

const COMMUTATOR: &str = r#"{
  "dim": 2,
  "basepoint": ["0", "0"],
  "vertices": [
    ["0", "0"], ["4", "0"], ["2", "4"], ["0", "0"],
    ["-4", "0"], ["-2", "-4"], ["0", "0"],
    ["2", "4"], ["4", "0"], ["0", "0"],
    ["-2", "-4"], ["-4", "0"], ["0", "0"]
  ]
}"#;

const ZERO_CONN: &str = r#"{ "group": "so3", "dim": 2, "terms": [] }"#;

fn line_value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("report line {key:?} missing in:\n{report}"))
}

#[test]
fn reduce_prints_normal_forms_and_versioned_header() {
    let dir = fixture_dir("reduce");
    for (input, want, len) in [
        ("[1,1,-1]", "[1]", "1"),
        ("[]", "[]", "0"),
        ("[2,3,-1]", "[2,3,-1]", "3"),
    ] {
        let file = write_fixture(&dir, "word.json", input);
        let r = run(&["reduce", file.to_str().unwrap()]);
        assert_eq!(r.code, 0, "stderr: {}", r.stderr);
        assert!(r.stdout.starts_with("hoops report v1\n"), "versioned header");
        assert_eq!(line_value(&r.stdout, "reduced"), want);
        assert_eq!(line_value(&r.stdout, "length"), len);
    }
}

#[test]
fn malformed_inputs_exit_with_code_two() {
    let dir = fixture_dir("badinput");
    let bad_word = write_fixture(&dir, "bad.json", "[0]");
    let r = run(&["reduce", bad_word.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("error:"));

    let r = run(&["reduce", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(r.code, 2, "missing file is an input error");

    let bad_loop = write_fixture(&dir, "badloop.json", "{}");
    let r = run(&["decompose", bad_loop.to_str().unwrap()]);
    assert_eq!(r.code, 2);
}

#[test]
fn decompose_reports_the_expected_words() {
    let dir = fixture_dir("decompose");
    for (name, json, want_word, want_gens) in [
        ("fig8.json", FIG8, "[1,2]", "2"),
        ("spur.json", SPUR, "[]", "0"),
        ("triangle.json", TRIANGLE, "[1]", "1"),
    ] {
        let file = write_fixture(&dir, name, json);
        let r = run(&["decompose", file.to_str().unwrap()]);
        assert_eq!(r.code, 0, "stderr: {}", r.stderr);
        assert_eq!(line_value(&r.stdout, "word"), want_word, "{name}");
        assert_eq!(line_value(&r.stdout, "generators"), want_gens, "{name}");
    }
}

#[test]
fn decompose_record_files_round_trip() {
    let dir = fixture_dir("decompose_record");
    let file = write_fixture(&dir, "fig8.json", FIG8);
    let out = dir.join("dec.json");
    let r = run(&[
        "decompose",
        file.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    let text = std::fs::read_to_string(&out).expect("record written");
    let dec = hoops::geom::read_decomposition(&text).expect("record parses");
    assert_eq!(dec.generator_count(), 2);
}

#[test]
fn hoop_triviality_verdicts_follow_the_group() {
    let dir = fixture_dir("hooptrivial");
    let comm = write_fixture(&dir, "comm.json", COMMUTATOR);
    let spur = write_fixture(&dir, "spur.json", SPUR);

    let r = run(&["hoop-trivial", comm.to_str().unwrap(), "--group", "u1"]);
    assert_eq!(r.code, 0);
    assert_eq!(line_value(&r.stdout, "word"), "[1,2,-1,-2]");
    assert_eq!(line_value(&r.stdout, "verdict"), "TRIVIAL");

    let witness = dir.join("witness.json");
    let r = run(&[
        "hoop-trivial",
        comm.to_str().unwrap(),
        "--group",
        "so3",
        "--witness-out",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(line_value(&r.stdout, "verdict"), "NONTRIVIAL");
    let distance: f64 = line_value(&r.stdout, "distance")
        .parse()
        .expect("distance parses");
    assert!(distance > 1e-6);
    let conn = hoops::gauge::read_connection(&witness).expect("witness parses");
    assert_eq!(conn.spec(), hoops::gauge::LieGroupSpec::So3);

    let r = run(&["hoop-trivial", spur.to_str().unwrap(), "--group", "sl2r"]);
    assert_eq!(r.code, 0);
    assert_eq!(line_value(&r.stdout, "verdict"), "TRIVIAL");
}

#[test]
fn finite_tables_decide_by_enumeration() {
    let dir = fixture_dir("finitetable");
    let comm = write_fixture(&dir, "comm.json", COMMUTATOR);
    let z4 = write_fixture(&dir, "z4.txt", "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
    let r = run(&["hoop-trivial", comm.to_str().unwrap(), "--group", z4.to_str().unwrap()]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(line_value(&r.stdout, "verdict"), "TRIVIAL", "abelian table");

    let s3 = hoops::words::CayleyTable::symmetric(3);
    let s3_file = write_fixture(&dir, "s3.txt", &s3.to_text());
    let r = run(&["hoop-trivial", comm.to_str().unwrap(), "--group", s3_file.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(line_value(&r.stdout, "verdict"), "NONTRIVIAL", "commutator acts in S3");

    let r = run(&["hoop-trivial", comm.to_str().unwrap(), "--group", "nope"]);
    assert_eq!(r.code, 2, "unknown group is an input error");
}

#[test]
fn holonomy_reports_identity_for_the_zero_connection() {
    let dir = fixture_dir("holonomy_zero");
    let comm = write_fixture(&dir, "comm.json", COMMUTATOR);
    let conn = write_fixture(&dir, "zero.json", ZERO_CONN);
    let r = run(&["holonomy", comm.to_str().unwrap(), conn.to_str().unwrap()]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(line_value(&r.stdout, "error"), "0.000000e0");
    assert!(r.stdout.contains("[1.000000000000e0, 0.000000000000e0]"));
}

#[test]
fn holonomy_error_estimate_shrinks_with_doubled_steps() {
    let dir = fixture_dir("holonomy_conv");
    let comm = write_fixture(&dir, "comm.json", COMMUTATOR);
    // A synthesized witness gives a nonzero connection to transport.
    let witness = dir.join("witness.json");
    let r = run(&[
        "hoop-trivial",
        comm.to_str().unwrap(),
        "--group",
        "su2",
        "--witness-out",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let csv = dir.join("conv.csv");
    let r = run(&[
        "holonomy",
        comm.to_str().unwrap(),
        witness.to_str().unwrap(),
        "--steps",
        "32",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let table = std::fs::read_to_string(&csv).expect("csv written");
    let errors: Vec<f64> = table
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 3);
    assert!(
        errors[1] < errors[0] && errors[2] < errors[1],
        "doubling steps shrinks the estimate: {errors:?}"
    );
}

#[test]
fn counterexample_reports_silent_holonomy_and_live_word() {
    let r = run(&["counterexample", "--levels", "3", "--trials", "20"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let max: f64 = line_value(&r.stdout, "max holonomy distance")
        .parse()
        .expect("distance parses");
    assert!(max < 1e-6, "abelian transport sees nothing: {max}");
    let len: usize = line_value(&r.stdout, "word reduced length")
        .parse()
        .expect("length parses");
    assert!(len > 0, "the reduced word survives");
    assert_eq!(line_value(&r.stdout, "exponent vector"), "all zero");
    assert!(r.stdout.contains("levels 2->3:"), "distance table present");
}

#[test]
fn counterexample_rejections_use_exit_code_three() {
    let r = run(&["counterexample", "--levels", "99"]);
    assert_eq!(r.code, 3, "depth precondition rejection");
    let r = run(&["counterexample", "--group", "so3"]);
    assert_eq!(r.code, 2, "unsupported group is an input error");
    let r = run(&["counterexample", "--levels", "3", "--trials", "5", "--order", "99"]);
    assert_eq!(r.code, 3, "seminorm order beyond the oracle");
}

#[test]
fn identical_invocations_produce_identical_reports() {
    let dir = fixture_dir("determinism");
    let comm = write_fixture(&dir, "comm.json", COMMUTATOR);
    let args = [
        "hoop-trivial",
        comm.to_str().unwrap(),
        "--group",
        "so3",
        "--seed",
        "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout, "byte-identical reruns");

    let ce_args = ["counterexample", "--levels", "2", "--trials", "5"];
    let first = run(&ce_args);
    let second = run(&ce_args);
    assert_eq!(first.stdout, second.stdout, "experiment reruns match");
}

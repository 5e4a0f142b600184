//! End-to-end runs of the `salvetti` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use salvetti::laurent::{parse_polynomial, CoefficientDomain};
use serde_json::Value;

const A2_FAMILY: &str = "\
- ; 1 ; -q + 1
- ; 2 ; -q + 1
1 ; 2 ; -q^2 + q - 1
2 ; 1 ; q^2 - q + 1
";

fn salvetti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salvetti")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("salvetti-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json", "-q"]);
    let out = salvetti(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn cohomology_a2_exits_zero() {
    let v = json(&["cohomology", "--type", "A2"]);
    assert_eq!(v["verdict"]["ok"], true);
    let groups = v["results"][0]["cohomology"].as_array().unwrap();
    let dims: Vec<u64> = groups.iter().map(|g| g["torsion_dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [0, 1, 2]);
}

#[test]
fn polynomial_strings_reparse_canonically() {
    let v = json(&["milnor", "--type", "B3"]);
    let degrees = v["results"][0]["milnor"]["degrees"].as_array().unwrap();
    assert!(!degrees.is_empty());
    for d in degrees {
        let text = d["charpoly"].as_str().unwrap();
        let p = parse_polynomial(text, CoefficientDomain::Rationals).unwrap();
        assert_eq!(p.to_string(), text);
    }
}

#[test]
fn output_is_deterministic() {
    for format in ["json", "csv", "pretty"] {
        let args = ["verify", "--type", "B2", "--format", format, "-q"];
        let (a, b) = (salvetti(&args), salvetti(&args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn csv_has_header_and_rows() {
    let out = salvetti(&["cohomology", "--type", "A1", "--format", "csv", "-q"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("coefficients,section,degree,key,value"));
    assert!(lines.any(|l| l.starts_with("Q,cohomology,1,")));
}

#[test]
fn degree_filter_limits_output() {
    let v = json(&["cohomology", "--type", "A3", "--degrees", "2-3"]);
    let groups = v["results"][0]["cohomology"].as_array().unwrap();
    let degrees: Vec<u64> = groups.iter().map(|g| g["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [2, 3]);
}

#[test]
fn reducible_type_carries_a_note() {
    let v = json(&["milnor", "--type", "A2xA1"]);
    let milnor = &v["results"][0]["milnor"];
    assert_eq!(milnor["irreducible"], false);
    assert!(milnor["note"].as_str().unwrap().contains("irreducib"));
}

#[test]
fn prime_field_coefficients() {
    let v = json(&["cohomology", "--type", "A2", "--coeff", "Zp:3"]);
    assert_eq!(v["results"][0]["coefficients"], "Zp:3");
}

#[test]
fn integer_coefficients_run_every_prime() {
    let v = json(&["cohomology", "--type", "A1", "--coeff", "Z", "--primes", "2,5"]);
    let fields: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["coefficients"].as_str().unwrap()).collect();
    assert!(fields == ["Z", "Q", "Zp:2", "Zp:5"], "{fields:?}");
}

#[test]
fn family_generator_round_trips() {
    let out = salvetti(&["family", "--type", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let path = fixture("generated.txt", &stdout(&out));
    let v = json(&["family", "--family", path.to_str().unwrap()]);
    assert_eq!(v["verdict"]["ok"], true);
    assert_eq!(v["source"]["generators"], 2);
}

#[test]
fn valid_family_file_verifies() {
    let path = fixture("a2.txt", A2_FAMILY);
    let v = json(&["verify", "--family", path.to_str().unwrap()]);
    assert_eq!(v["results"][0]["shift"]["all_match"], true);
}

#[test]
fn broken_cocycle_is_an_input_error() {
    let bad = A2_FAMILY.replace("1 ; 2 ; -q^2 + q - 1", "1 ; 2 ; q^2 - q + 1");
    let path = fixture("bad.txt", &bad);
    let out = salvetti(&["family", "--family", path.to_str().unwrap(), "-q"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4") && err.contains("cocycle"), "{err}");
}

#[test]
fn zero_entry_is_an_input_error() {
    let path = fixture("zero.txt", "- ; 1 ; 0\n");
    let out = salvetti(&["family", "--family", path.to_str().unwrap(), "-q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["cohomology"][..],
        &["cohomology", "--type", "Q7"],
        &["cohomology", "--type", "A2", "--coeff", "Zp:4"],
        &["cohomology", "--type", "A2", "--window-radius", "0"],
        &["cohomology", "--type", "A2", "--degrees", "3-1"],
        &["milnor", "--family", "/nonexistent"],
        &["frobnicate"],
    ] {
        assert_eq!(salvetti(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("salvetti-out-{}.json", std::process::id()));
    let out = salvetti(&["cohomology", "--type", "A1", "--format", "json", "-q", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["command"], "cohomology");
    std::fs::remove_file(path).unwrap();
}

//! Command-line contract: exit codes, witnesses and golden reports.

use std::fs;
use std::path::PathBuf;

use lpi_forge::cli;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("lpi-forge").chain(args.iter().copied()), &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let r = run(&full);
    assert!(r.err.is_empty(), "{}", r.err);
    (r.code, serde_json::from_str(&r.out).unwrap())
}

/// Drops timings and turns absolute data paths into bare file names.
fn stable(mut v: Value) -> Value {
    fn walk(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("elapsedMs");
                m.values_mut().for_each(walk);
            }
            Value::Array(a) => a.iter_mut().for_each(walk),
            Value::String(s) if s.contains("/data/") => *s = s.rsplit('/').next().unwrap().to_string(),
            _ => {}
        }
    }
    walk(&mut v);
    v
}

fn assert_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

#[test]
fn maschke_suite_holds() {
    let (code, v) = json(&["suite", "MASCHKE"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["manifestVersion"], "1");
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["suite"] == "MASCHKE"));
}

#[test]
fn commutator_fails_on_quaternions_with_witness() {
    let q8 = data("q8_f3.alg");
    let (code, v) = json(&["check", "--algebra", &q8, "--lpi", "1 - x1^-1*x2^-1*x1*x2"]);
    assert_eq!(code, 1);
    let r = &v["results"][0];
    assert_eq!(r["holds"], false);
    assert_eq!(r["mode"], "exhaustive");
    assert!(r["witness"].as_str().unwrap().starts_with("(i, j)"), "{r}");
    assert_eq!(v["field"], "F3");
    let hashes = v["inputHashes"].as_array().unwrap();
    assert_eq!(hashes.len(), 2);
    assert_eq!(hashes[1]["name"], "lpi");
}

#[test]
fn parse_reports_substitution() {
    let (code, v) = json(&["parse", "1 - x1^2*x2^-2", "--field", "Q"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["qualifies"], true);
    assert_eq!(r["zeroTotalWords"][0], "x1^2*x2^-2");
    assert_eq!(r["suggestedSubstitution"]["k"], 2);
}

#[test]
fn parse_text_golden() {
    let r = run(&["parse", "3 - 1/2*x1*x2 + x2^-1", "--field", "Q"]);
    assert_eq!(r.code, 0);
    let body: String = r.out.lines().filter(|l| !l.starts_with("all assertions")).map(|l| format!("{l}\n")).collect();
    assert_golden("parse.txt", &body);
}

#[test]
fn radical_json_golden() {
    let (code, v) = json(&["radical", "--algebra", &data("s3_f2.alg")]);
    assert_eq!(code, 0);
    assert_golden("radical_s3_f2.json", &(serde_json::to_string_pretty(&stable(v)).unwrap() + "\n"));
}

#[test]
fn derive_verifies_on_an_algebra() {
    let (code, v) = json(&["derive", "--lpi", "1 - x1^2*x2^2*x1", "--algebra", &data("s3_f2.alg")]);
    let results = v["results"].as_array().unwrap();
    assert!(results.iter().any(|r| r["assertion"] == "derivation trace"));
    let checked: Vec<_> = results.iter().filter(|r| r.get("holds").is_some()).collect();
    assert_eq!(code, if checked.iter().all(|r| r["holds"] == true) { 0 } else { 1 });
}

#[test]
fn derive_two_variable_reduction() {
    let (code, v) = json(&["derive", "--lpi", "1 - x1*x2*x3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["twoVariableReduction"], true);
    assert!(v["results"][1]["g"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    let q8 = data("q8_f3.alg");
    let cases: [&[&str]; 9] = [
        &["check", "--algebra", &q8, "--lpi", "1 - x"],
        &["check", "--algebra", &q8, "--lpi", "1 + 1/3*x1"],
        &["check", "--algebra", &q8, "--lpi", "x1 - x1"],
        &["check", "--algebra", "/nonexistent.alg", "--lpi", "1 - x1"],
        &["check", "--algebra", &q8, "--lpi", "1 - x1", "--field", "F5"],
        &["parse", "1", "--field", "F4"],
        &["suite", "NOPE"],
        &["radical", "--algebra", &q8, "--cap", "1000000000"],
        &["frobnicate"],
    ];
    for args in cases {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
        assert!(!r.err.is_empty(), "{args:?}");
    }
    let r = run(&["check", "--algebra", &q8, "--lpi", "1 - x"]);
    assert!(r.err.contains("byte 5"), "{}", r.err);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn caps_exit_three() {
    let q8 = data("q8_f3.alg");
    assert_eq!(run(&["units", "--algebra", &q8, "--cap", "10"]).code, 3);
    assert_eq!(run(&["check", "--algebra", &q8, "--lpi", "1 - x1^2", "--mode", "exhaustive", "--cap", "100"]).code, 3);
}

#[test]
fn standard_identities() {
    let m2 = data("m2_f3.alg");
    assert_eq!(run(&["check-identity", "--algebra", &m2, "--standard", "4"]).code, 0);
    assert_eq!(run(&["check-identity", "--algebra", &m2, "--standard", "2"]).code, 1);
    assert_eq!(run(&["check-identity", "--algebra", &m2, "--standard", "3"]).code, 2);
}

#[test]
fn saved_ideal_feeds_a_quotient_file() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = dir.path().join("j.json");
    let ideal_arg = ideal.to_str().unwrap();
    assert_eq!(run(&["radical", "--algebra", &data("s3_f2.alg"), "--save-ideal", ideal_arg]).code, 0);
    let quo = dir.path().join("quo.alg");
    fs::write(&quo, format!("kind = quotient\nfield = F2\nbase = {}\nideal = j.json\n", data("s3_f2.alg"))).unwrap();
    let (code, v) = json(&["radical", "--algebra", quo.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["dim"], 5);
    assert_eq!(v["results"][0]["rank"], 0);
    assert_eq!(v["inputHashes"].as_array().unwrap().len(), 3);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let r = run(&["al", "--n", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.out.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"][0]["qualifies"], false);
    let leftovers = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}

#[test]
fn units_listing_and_save() {
    let dir = tempfile::tempdir().unwrap();
    let save = dir.path().join("units.json");
    let (code, v) = json(&["units", "--algebra", &data("m2_f3.alg"), "--list", "--save", save.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["count"], 48);
    assert_eq!(v["results"][0]["units"].as_array().unwrap().len(), 48);
    let saved: Value = serde_json::from_str(&fs::read_to_string(&save).unwrap()).unwrap();
    assert_eq!(saved["count"], 48);
}

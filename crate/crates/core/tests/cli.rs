//! The `exotic` binary end to end: exit codes, artifacts and determinism.

use std::path::Path;
use std::process::{Command, Output};

use exotic_core::cli::report::{parse_tsv, tsv_cell, Report};

fn exotic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exotic"))
        .args(args)
        .env_remove("EXOTIC_GUARD")
        .output()
        .expect("binary runs")
}

fn exotic_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exotic"))
        .args(args)
        .current_dir(dir)
        .env_remove("EXOTIC_GUARD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn orbits_for_n_two_has_five_rows() {
    let o = exotic(&["orbits", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = parse_tsv(&stdout(&o)).unwrap();
    assert_eq!(header, ["mu", "nu", "jordan_type", "nilpotency_order", "v_is_zero"]);
    assert_eq!(rows.len(), 5);
}

#[test]
fn identities_pass() {
    let o = exotic(&["verify", "identities", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.passed);
    assert_eq!(r.rows.len(), 10);
    assert_eq!(r.summary["passed"], 10);
}

#[test]
fn two_key_census_table() {
    let o = exotic(&["fibers", "--mu", "", "--nu", "2,1", "--alpha", "1,2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = parse_tsv(&stdout(&o)).unwrap();
    assert_eq!(header, ["q", "key", "nested", "semistandard", "count"]);
    assert_eq!(rows.len(), 2);
    let semistandard: Vec<&str> = rows.iter().map(|r| r[3].as_str()).collect();
    assert_eq!(semistandard, ["true", "false"]);
}

#[test]
fn empty_census_is_header_only() {
    // For μ = (2) the vector v is not killed by x, so no Lagrangian inside ker x contains it.
    let o = exotic(&["fibers", "--mu", "2", "--nu", "", "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "q\tkey\tnested\tsemistandard\tcount\n");
}

#[test]
fn json_round_trips_and_matches_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("census.json");
    let tsv_path = dir.path().join("census.tsv");
    let base = ["fibers", "--mu", "1", "--nu", "1", "--alpha", "1,1", "--q", "2,3,5"];
    let mut args = base.to_vec();
    args.extend(["--format", "json", "--out", json_path.to_str().unwrap()]);
    assert_eq!(exotic(&args).status.code(), Some(0));
    let mut args = base.to_vec();
    args.extend(["--out", tsv_path.to_str().unwrap()]);
    assert_eq!(exotic(&args).status.code(), Some(0));

    let text = std::fs::read_to_string(&json_path).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.schema, "exotic-report/1");
    assert_eq!(report.to_json(), text, "parse then emit is the identity");

    let (header, rows) = parse_tsv(&std::fs::read_to_string(&tsv_path).unwrap()).unwrap();
    assert_eq!(header, report.columns);
    let from_json: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|row| report.columns.iter().map(|c| tsv_cell(&row[c])).collect())
        .collect();
    assert_eq!(rows, from_json);
    // Three primes give a fit for every key.
    assert!(report.summary["fits"].as_array().unwrap().iter().all(|f| !f["polynomial"].is_null()));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["fibers", "--mu", "", "--nu", "2,1", "--alpha", "1,1,1", "--q", "2,3", "--format", "json"];
    let one = exotic(&[&args[..], &["--threads", "1"]].concat());
    let eight = exotic(&[&args[..], &["--threads", "8"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["nonsense"][..],
        &["orbits"],
        &["fibers", "--mu", "1", "--nu", "", "--alpha", "2", "--q", "4"],
        &["fibers", "--mu", "1", "--nu", "", "--alpha", "2", "--q", "2,2"],
        &["fibers", "--mu", "1", "--nu", "", "--alpha", "2", "--q", "17"],
        &["fibers", "--mu", "1", "--nu", "", "--alpha", "1,1,1"],
        &["fibers", "--mu", "2,1,3", "--nu", "", "--alpha", "6"],
        &["fibers", "--mu", "1", "--nu", "", "--alpha", "1", "--guard", "0"],
        &["strata", "--mu", "3", "--nu", ""],
        &["grass-count", "--k", "1", "--d", "3"],
    ] {
        let o = exotic(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn guard_env_overrides_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_exotic"))
        .args(["fibers", "--mu", "", "--nu", "2,1", "--alpha", "1,2", "--guard", "100000000"])
        .env("EXOTIC_GUARD", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}

#[test]
fn failed_assertion_exits_one_with_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    // Three points cannot pin down a degree-4 count polynomial.
    let o = exotic_in(dir.path(), &["grass-count", "--k", "2", "--d", "4", "--q", "2,3,5"]);
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(dir.path().join("exotic-counterexamples.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "grass-count");
    assert_eq!(v["failures"].as_array().unwrap().len(), 1);

    let custom = dir.path().join("why.json");
    let o = exotic_in(
        dir.path(),
        &["grass-count", "--k", "2", "--d", "4", "--q", "2,3,5", "--counterexamples", custom.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(custom.exists());
}

#[test]
fn grass_count_fits_the_expected_degree() {
    let o = exotic(&["grass-count", "--k", "2", "--d", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.summary["fitted_degree"], r.summary["expected_degree"]);
}

#[test]
fn rsk_reports_the_three_matches() {
    let o = exotic(&["rsk", "--alpha", "2", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = parse_tsv(&stdout(&o)).unwrap();
    let got: Vec<(&str, &str)> = rows.iter().map(|r| (r[0].as_str(), r[4].as_str())).collect();
    assert_eq!(got, [("0,2,2,0", "matched"), ("1,1,1,1", "matched"), ("2,0,0,2", "matched")]);
}

#[test]
fn small_verification_workflows_pass() {
    for args in [
        &["verify", "case-analysis", "--n", "2", "--q", "2,3"][..],
        &["verify", "ineq", "--n", "2"],
        &["verify", "main", "--n", "2"],
        &["verify", "main", "--mu", "", "--nu", "2,1", "--alpha", "1,2"],
        &["verify", "jordan-lemmas", "--n", "2", "--trials", "200", "--seed", "7"],
        &["ejordan", "--n", "3"],
        &["normal-basis", "--mu", "2", "--nu", "1", "--q", "3"],
    ] {
        let o = exotic(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn help_documents_columns() {
    let o = exotic(&["fibers", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("TSV columns: q, key"));
}

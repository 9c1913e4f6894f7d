use std::path::PathBuf;
use std::process::{Command, Output};

use riesz_lab::Rational;
use riesz_lab_cli::report::load_reports;
use riesz_lab_cli::{command_suite, reverify_report, SuiteConfig, SuiteName, Trials, Witness};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn riesz_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz-lab"))
        .args(args)
        .env_remove("RIESZ_LAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn passing_suite_exits_zero() {
    let o = riesz_lab(&["check", "--suite", "orthosymmetry", "--m", "3", "--n", "4", "--trials", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS mode-agreement"));
}

#[test]
fn exhaustive_nakano_passes() {
    let o = riesz_lab(&["check", "--suite", "nakano", "--space", "finite:3", "--trials", "exhaustive", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["properties"][0]["trials"], 729);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["check", "--suite", "nope"][..],
        &["check", "--suite", "nakano", "--n", "3", "--space", "finite:4"],
        &["check", "--suite", "orthosymmetry", "--trials", "exhaustive"],
        &["check", "--suite", "nakano", "--space", "finite:5", "--trials", "exhaustive"],
        &["check", "--suite", "counterexample", "--space", "finite:3"],
        &["check", "--suite", "carriers", "--m", "1"],
        &["check", "--suite", "carriers", "--trials", "0"],
        &["check"],
        &["carrier", "--poly", "missing.json"],
    ] {
        assert_eq!(riesz_lab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_riesz-lab"))
            .args(["check", "--suite", "carriers", "--trials", "5", "--format", "json"])
            .env("RIESZ_LAB_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(json(&run("42"))["config"]["seed"], 42);
    let flag = riesz_lab(&["check", "--suite", "carriers", "--trials", "5", "--format", "json", "--seed", "42"]);
    assert_eq!(run("42").stdout, flag.stdout);
}

#[test]
fn bad_rational_reports_position() {
    let o = riesz_lab(&["carrier", "--poly", &fixture("bad_rational.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("zero denominator") && err.contains(":3:") && err.contains("atoms[0].weight"), "{err}");
}

#[test]
fn counterexample_demo() {
    for m in ["2", "3", "4"] {
        let o = riesz_lab(&["demo", "counterexample", "--m", m, "--depth", "50"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["gap"], "1");
        assert_eq!(v["verified"], true);
        assert_eq!(v["zeroProbe"], true);
        assert_eq!(v["values"].as_array().unwrap().len(), 50);
        assert_eq!(v["basePoint"]["tail"], "1");
    }
}

#[test]
fn order_continuity_of_files() {
    let check = |f: &str| riesz_lab(&["check", "order-continuity", "--poly", &fixture(f)]);
    let o = check("normal_omega.json");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["orderContinuous"], true);
    let o = check("limit_atom_omega.json");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["decided"], true);
    let o = check("product.json");
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["zeroProbe"]["passed"], true);
    assert_eq!(v["witness"]["gap"], "1");
    assert_eq!(check("diagonal_tensor.json").status.code(), Some(0));
}

#[test]
fn carrier_of_diagonal_tensor() {
    let o = riesz_lab(&["carrier", "--poly", &fixture("diagonal_tensor.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["carrier"]["isolatedSupport"], serde_json::json!([1, 3]));
    assert_eq!(v["nullIdeal"]["support"], serde_json::json!([2]));
}

#[test]
fn nakano_files() {
    let o = riesz_lab(&["nakano", "--p", &fixture("normal_omega.json"), "--q", &fixture("pure_limit_omega.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["hypothesisMet"], true);
    assert_eq!(v["polysDisjoint"], true);
    // without order continuity the criterion fails, but that is no violation
    let o = riesz_lab(&["nakano", "--p", &fixture("pure_limit_omega.json"), "--q", &fixture("pure_limit_omega.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["equivalenceHolds"], false);
    assert_eq!(v["carriersDisjoint"], true);
}

#[test]
fn localize_measure() {
    let o = riesz_lab(&["localize", "--obj", &fixture("measure_f3.json"), "--gen", &fixture("generator_f3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["masked"]["atoms"], serde_json::json!([{"point": 1, "weight": "1"}]));
    assert_eq!(v["induced"]["space"]["n"], 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("riesz-lab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = riesz_lab(&["check", "--suite", "isometry", "--trials", "5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let reports = load_reports(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(reports[0].suite, SuiteName::Isometry);
    std::fs::remove_dir_all(dir).unwrap();
}

fn orthosymmetry_report() -> riesz_lab_cli::Report {
    let config = SuiteConfig {
        m: 3,
        space: riesz_lab::lattice::Space::finite(4),
        trials: Trials::Count(30),
        ..SuiteConfig::single(SuiteName::Orthosymmetry)
    };
    command_suite(&config).unwrap().remove(0)
}

#[test]
fn tampered_witness_is_rejected() {
    let mut report = orthosymmetry_report();
    assert!(reverify_report(&report).unwrap() > 0);
    let finding = &mut report.properties[0].witnesses[0];
    let Some(Witness::Orthosymmetry { counterexample, .. }) = &mut finding.witness else {
        panic!("expected an orthosymmetry witness");
    };
    counterexample.lhs = riesz_lab::forms::Value::from(Rational::new(12345, 7));
    assert!(reverify_report(&report).is_err());
}

#[test]
fn fabricated_failure_is_rejected() {
    let mut report = orthosymmetry_report();
    // a case that holds, stored as if it had failed
    let mut finding = report.properties[0].witnesses[0].clone();
    finding.witness = None;
    report.properties[0].failures.push(finding);
    assert!(reverify_report(&report).is_err());
}

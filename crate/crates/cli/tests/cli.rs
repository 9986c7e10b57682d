use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kspringer(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kspringer"))
        .args(args)
        .env("KSPRINGER_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn su11_pipeline_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = kspringer(
        &["run", "--form", "su(1,1)", "--H", "2", "--N", "6", "--json"],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = json(&out);
    assert_eq!(r["verdict"], "PASS");
    for c in r["checks"].as_array().unwrap() {
        if c["name"] != "qct" {
            assert_eq!(c["verdict"], "PASS", "{c}");
        } else {
            assert_eq!(c["verdict"], "EVIDENCE");
        }
    }
}

#[test]
fn su21_pipeline_reports_zero_canonical_weight() {
    let dir = tempfile::tempdir().unwrap();
    let out = kspringer(
        &[
            "run", "--form", "su(2,1)", "--H", "2,2", "--lambda", "0,0", "--N", "6", "--json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdict"], "PASS");
    let canon = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "canonical-weight")
        .unwrap();
    assert_eq!(
        canon["details"]["gradings"][0]["combinatorial"],
        serde_json::json!([0, 0])
    );
}

#[test]
fn malformed_epsilon_exits_2_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = kspringer(
        &[
            "run",
            "--type",
            "A",
            "--rank",
            "2",
            "--epsilon",
            "1",
            "--json-out",
            report.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!report.exists());
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));
}

#[test]
fn non_equal_rank_is_out_of_scope() {
    let dir = tempfile::tempdir().unwrap();
    let out = kspringer(&["verify-paper", "sl(3,R)"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of scope"));
}

#[test]
fn bott_p1_pin() {
    let dir = tempfile::tempdir().unwrap();
    let out = kspringer(
        &["bott", "--type", "A", "--rank", "1", "--lambda=-3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dims"], serde_json::json!({ "1": 2 }));
}

#[test]
fn config_file_runs_are_bit_identical_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("job.json");
    std::fs::write(&config, r#"{"form": "su(2,2)", "H": "search", "N": 4, "kmax": 3, "seed": 7, "checks": ["grading", "vanishing", "hilbert"]}"#).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    let cfg = config.to_str().unwrap();
    for (path, extra) in [(&a, None), (&b, None), (&c, Some("--no-cache"))] {
        let mut args = vec!["run", "--config", cfg, "--json-out", path.to_str().unwrap()];
        args.extend(extra);
        let out = kspringer(&args, &dir.path().join("cache"));
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());
    assert_eq!(a, std::fs::read(c).unwrap());
    let r: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(r["H"], serde_json::json!([[4, -6, 4], [4, -2, 4]]));
    assert_eq!(r["seed"], 7);
}

#[test]
fn unknown_check_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = kspringer(
        &["run", "--form", "su(1,1)", "--checks", "grading,bogus"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_triple_satisfies_identities() {
    let dir = tempfile::tempdir().unwrap();
    let out = kspringer(
        &["oracle", "triple", "--form", "sp(4,R)", "--H", "4,-6"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["identities"],
        serde_json::json!([true, true, true, true, true, true])
    );
}

#[test]
fn components_total_for_su11() {
    let dir = tempfile::tempdir().unwrap();
    let out = kspringer(
        &[
            "components",
            "--form",
            "su(1,1)",
            "--H",
            "2",
            "--H=-2",
            "--kmax",
            "4",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["total_dims"], serde_json::json!([2, 2, 2, 2, 2]));
}

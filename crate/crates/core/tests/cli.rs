use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn stabcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabcoh"))
        .args(args)
        .env_remove("STABCOH_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--format", "json"]);
    let out = stabcoh(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schemas/report.schema.json");
    let value: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

const EVERY_SUBCOMMAND: &[&[&str]] = &[
    &[
        "codim",
        "--d",
        "3",
        "--n",
        "2",
        "--N",
        "3",
        "--layout",
        "coordinate",
    ],
    &[
        "verify-lemma",
        "--d",
        "5",
        "--n",
        "2",
        "--N",
        "3",
        "--trials",
        "5",
    ],
    &[
        "hilbert",
        "--n",
        "2",
        "--N",
        "3",
        "--layout",
        "coordinate",
        "--d-max",
        "6",
    ],
    &["regularity", "--n", "1", "--N", "3"],
    &["d0-scan", "--n", "2", "--N", "3", "--trials", "3"],
    &["grassmann", "--n", "3", "--l", "2"],
    &["config-homology", "--n", "2", "--l", "2"],
    &["gl-cohomology", "--n", "4"],
    &["e1-page", "--d", "19", "--n", "1", "--N", "10"],
    &["stable-verify", "--n", "3"],
    &["band", "--d", "23", "--n", "2", "--N", "12"],
    &["stable-range", "--d", "6", "--n", "2"],
];

#[test]
fn every_report_validates_against_schema() {
    let schema = schema();
    for args in EVERY_SUBCOMMAND {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["subcommand"], args[0]);
        let msgs: Vec<String> = match schema.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errors) => errors
                .map(|e| format!("{e} at {}", e.instance_path))
                .collect(),
        };
        assert!(msgs.is_empty(), "{args:?}: {msgs:?}");
    }
}

#[test]
fn schema_rejects_incomplete_reports() {
    let schema = schema();
    let (_, mut v) = json(&["stable-verify", "--n", "1"]);
    v.as_object_mut().unwrap().remove("strata_degrees");
    assert!(!schema.is_valid(&v));
    let (_, mut v) = json(&["gl-cohomology", "--n", "1"]);
    v["table"]["1"] = serde_json::json!([1]);
    assert!(!schema.is_valid(&v));
}

#[test]
fn verify_lemma_example() {
    let (code, v) = json(&[
        "verify-lemma",
        "--d",
        "5",
        "--n",
        "2",
        "--N",
        "3",
        "--trials",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["seed_source"], "flag");
    let codims: Vec<u64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["codimension"].as_u64().unwrap())
        .collect();
    assert_eq!(codims, vec![9; 50]);
}

#[test]
fn stable_verify_example() {
    let (code, v) = json(&["stable-verify", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["strata_degrees"],
        serde_json::json!([1, 3, 4, 5, 6, 8, 9])
    );
}

#[test]
fn gl_cohomology_csv_example() {
    let out = stabcoh(&["gl-cohomology", "--n", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<(u32, u32)> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(rows, vec![(0, 1), (1, 1), (3, 1), (4, 1)]);
}

#[test]
fn env_seed_is_honored_and_echoed() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_stabcoh"));
        cmd.args([
            "verify-lemma",
            "--d",
            "3",
            "--n",
            "1",
            "--N",
            "2",
            "--trials",
            "4",
            "--format",
            "json",
        ]);
        cmd.args(extra);
        cmd.env_remove("STABCOH_SEED");
        if let Some(s) = env {
            cmd.env("STABCOH_SEED", s);
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        (
            v["seed"].as_u64().unwrap(),
            v["seed_source"].as_str().unwrap().to_string(),
            v["results"].clone(),
        )
    };
    let (seed, source, default_results) = run(None, &[]);
    assert_eq!((seed, source.as_str()), (0, "default"));
    let (seed, source, env_results) = run(Some("99"), &[]);
    assert_eq!((seed, source.as_str()), (99, "env"));
    let (seed, source, flag_results) = run(Some("99"), &["--seed", "99"]);
    assert_eq!((seed, source.as_str()), (99, "flag"));
    assert_eq!(env_results, flag_results);
    assert_ne!(default_results, env_results);
}

#[test]
fn points_file_round_trip() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"[["1","0","0"],["0","1","0"],["0","0","1"]]"#).unwrap();
    let path = f.path().to_str().unwrap();
    let (code, v) = json(&["hilbert", "--points", path, "--d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["symbolic"], 9);
    assert_eq!(v["rows"][0]["ordinary"], 10);
    let (code, v) = json(&["codim", "--points", path, "--d", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["codimension"], 9);
}

#[test]
fn malformed_points_exit_2_with_position() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"[["1","0"],["2","1/0"]]"#).unwrap();
    let out = stabcoh(&["codim", "--d", "3", "--points", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("point 1, coordinate 1"), "{err}");

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "[[\"1\",\n \"0\"").unwrap();
    let out = stabcoh(&["codim", "--d", "3", "--points", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = stabcoh(&["codim", "--d", "3", "--points", "/nonexistent/points.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify-lemma", "--n", "2"][..],
        &["frobnicate"],
        &["band", "--d", "0", "--n", "1", "--N", "2"],
        &[
            "codim",
            "--d",
            "3",
            "--layout",
            "collinear",
            "--points-json",
            "[[\"1\",\"0\"]]",
        ],
    ] {
        assert_eq!(stabcoh(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_path_and_jobs_do_not_change_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let base = [
        "verify-lemma",
        "--d",
        "7",
        "--n",
        "3",
        "--N",
        "4",
        "--trials",
        "12",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    for (path, jobs) in [(&a, "1"), (&b, "4")] {
        let mut args = base.to_vec();
        args.extend_from_slice(&["--jobs", jobs, "--output", path.to_str().unwrap()]);
        let out = stabcoh(&args);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn outside_regime_is_stamped() {
    let (code, v) = json(&["band", "--d", "9", "--n", "2", "--N", "3"]);
    assert_eq!(v["regime"]["guaranteed"], false);
    assert!(v["regime"]["notes"][0]
        .as_str()
        .unwrap()
        .starts_with("outside guaranteed regime"));
    assert_eq!(code, if v["verified"] == true { 0 } else { 1 });
}

#[test]
fn every_table_renders() {
    for args in EVERY_SUBCOMMAND {
        let out = stabcoh(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.starts_with("stabcoh "), "{args:?}");
        assert!(text.lines().count() >= 3, "{args:?}: {text}");
    }
}

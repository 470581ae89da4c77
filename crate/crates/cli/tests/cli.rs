use std::io::Write;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use staircase_cli::{run_args, Env, Outcome};
use tempfile::NamedTempFile;

const SERIES: &str = "\
ring x y
ideal I
  x^3*y + x*y^4 - x^3*y^2
  x^2*y^3 + y^6 - x^2*y^4
ideal F
  (x^3*y + x*y^4 - x^3*y^2)/(1 - y)
  (x^2*y^3 + y^6 - x^2*y^4)/(1 - y)
";

const MAPS: &str = "\
ring x y
map phi
  rel x*y
  comp x
map psi
  rel x*y
  comp x + y
map finite
  comp x^2 + y^3
  comp x*y
";

const HARD: &str = "\
ring x y z
ideal J
  x^2 + y^3 + z^4 + x*y*z + y*z^2
  x*y + z^3 - y^4
  y^2*z + x^3 - x*z^5
";

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], path: Option<&Path>) -> Outcome {
    run_env(args, path, &Env::default())
}

fn run_env(args: &[&str], path: Option<&Path>, env: &Env) -> Outcome {
    let mut argv: Vec<String> = vec!["staircase".into(), args[0].into()];
    if let Some(p) = path {
        argv.push(p.display().to_string());
    }
    argv.extend(args[1..].iter().map(|s| s.to_string()));
    run_args(argv, env)
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.exit, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn body(out: &Outcome) -> String {
    let mut v: Value = serde_json::from_str(&out.stdout).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    serde_json::to_string(&v).unwrap()
}

#[test]
fn dim_of_a_non_regular_pair() {
    let f = file("ring x y\nideal I\n  x*y\n  x\n");
    let out = run(&["dim"], Some(f.path()));
    assert_eq!(out.exit, 0);
    assert!(out.stdout.contains("I: dim=1"), "{}", out.stdout);
    let v = json(&run(&["dim", "--json"], Some(f.path())));
    assert_eq!(v["results"][0]["dimension"], 1);
}

#[test]
fn sweep_shows_the_moving_witness() {
    let f = file(SERIES);
    let out = run(
        &["sweep", "--mu", "5..9", "--len", "12", "--ideal", "F"],
        Some(f.path()),
    );
    assert_eq!(out.exit, 0, "{}", out.stderr);
    for mu in 5..=9 {
        assert!(
            out.stdout.contains(&format!("(1,{})", mu + 1)),
            "{}",
            out.stdout
        );
    }
    assert!(out.stdout.contains("not stabilized in range"));
    let v = json(&run(
        &[
            "sweep", "--mu", "5..9", "--len", "12", "--ideal", "F", "--json",
        ],
        Some(f.path()),
    ));
    let rows = v["results"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let mu = row["mu"].as_u64().unwrap();
        let witness = serde_json::json!([1, mu + 1]);
        assert!(row["new_points"].as_array().unwrap().contains(&witness));
    }
}

#[test]
fn sweep_length_defaults_to_three_past_the_range() {
    let f = file(SERIES);
    let v = json(&run(
        &["sweep", "--mu", "5..9", "--ideal", "F", "--json"],
        Some(f.path()),
    ));
    assert_eq!(v["results"][0]["length_bound"], 12);
}

#[test]
fn expect_yes_fails_on_a_certified_no() {
    let f = file(MAPS);
    let out = run(&["flat-ci", "--map", "phi", "--expect-yes"], Some(f.path()));
    assert_eq!(out.exit, 2);
    assert!(out.stdout.contains("CertifiedNo"));
    assert!(out.stderr.contains("phi"));
    let out = run(&["flat-ci", "--map", "psi", "--expect-yes"], Some(f.path()));
    assert_eq!(out.exit, 0);
    // without the flag a no verdict is an ordinary result
    assert_eq!(run(&["flat-ci", "--map", "phi"], Some(f.path())).exit, 0);
}

#[test]
fn regseq_expect_yes() {
    let f = file("ring x y\nideal A\n  x\n  y\nideal B\n  x*y\n  x\n");
    assert_eq!(
        run(&["regseq", "--ideal", "A", "--expect-yes"], Some(f.path())).exit,
        0
    );
    assert_eq!(
        run(&["regseq", "--ideal", "B", "--expect-yes"], Some(f.path())).exit,
        2
    );
}

#[test]
fn milnor_number_of_the_finite_map() {
    let f = file(MAPS);
    let v = json(&run(
        &["milnor", "--map", "finite", "--json"],
        Some(f.path()),
    ));
    assert_eq!(v["results"][0]["mu0"], 5);
    assert_eq!(v["results"][0]["determinacy_bound"]["bound"], 5);
    let v = json(&run(&["milnor", "--map", "phi", "--json"], Some(f.path())));
    assert_eq!(v["results"][0]["mu0"], Value::Null);
}

#[test]
fn det_example_reproduces_the_syzygy_and_determinant() {
    let v = json(&run(&["det-example", "--json"], None));
    let jets = v["results"][0]["rows"].as_array().unwrap();
    let dets = v["results"][1]["rows"].as_array().unwrap();
    assert_eq!(jets.len(), 6);
    for (j, d) in jets.iter().zip(dets) {
        let mu = j["mu"].as_u64().unwrap();
        assert_eq!(j["syzygy"], format!("x*y^{}", mu + 1));
        assert_eq!(j["witness_in_slice"], true);
        assert_eq!(j["witness_in_exact"], true);
        assert_eq!(d["determinant"], format!("-x*y^{}", mu + 1));
    }
    let f = file(SERIES);
    assert_eq!(run(&["det-example"], Some(f.path())).exit, 1);
}

#[test]
fn parse_and_usage_errors_exit_one() {
    let bad = file("ring x y\nideal I\n  x^\n");
    let out = run(&["dim"], Some(bad.path()));
    assert_eq!(out.exit, 1);
    assert!(out.stderr.contains("line 3, column 4"), "{}", out.stderr);
    assert!(out.stdout.is_empty());

    let f = file(SERIES);
    assert_eq!(run(&["dim"], None).exit, 1);
    assert_eq!(
        run(&["dim"], Some(Path::new("/nonexistent/problem.txt"))).exit,
        1
    );
    assert_eq!(run(&["dim", "--ideal", "nope"], Some(f.path())).exit, 1);
    assert_eq!(run(&["flat-ci"], Some(f.path())).exit, 1);
    assert_eq!(run(&["jet"], Some(f.path())).exit, 1);
    assert_eq!(run(&["sweep", "--mu", "9..5"], Some(f.path())).exit, 1);
    assert_eq!(
        run(&["diagram", "--order", "1,2,3"], Some(f.path())).exit,
        1
    );
    assert_eq!(run(&["diagram", "--order", "0,1"], Some(f.path())).exit, 1);
    assert_eq!(run(&["frobnicate"], Some(f.path())).exit, 1);
    assert_eq!(run(&["dim", "--seed", "x"], Some(f.path())).exit, 1);
    let map = file("ring x y\nmap M\n  comp 1 + x\n");
    assert_eq!(run(&["flat-ci"], Some(map.path())).exit, 1);
}

#[test]
fn resource_ceilings_exit_three() {
    let f = file(HARD);
    let env = Env {
        step_ceiling: Some("2".into()),
        ..Env::default()
    };
    let out = run_env(&["diagram"], Some(f.path()), &env);
    assert_eq!(out.exit, 3);
    assert!(out.stderr.contains("ceiling"));
    let env = Env {
        pool_ceiling: Some("1".into()),
        ..Env::default()
    };
    assert_eq!(run_env(&["diagram"], Some(f.path()), &env).exit, 3);
    let env = Env {
        pool_ceiling: Some("lots".into()),
        ..Env::default()
    };
    assert_eq!(run_env(&["diagram"], Some(f.path()), &env).exit, 1);
    assert_eq!(run(&["diagram"], Some(f.path())).exit, 0);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let series = file(SERIES);
    let maps = file(MAPS);
    let cases: Vec<(Vec<&str>, Option<&Path>)> = vec![
        (vec!["diagram"], Some(series.path())),
        (vec!["regseq", "--seed", "5"], Some(series.path())),
        (vec!["sweep", "--mu", "5..7"], Some(series.path())),
        (
            vec!["flat-ci", "--seed", "3", "--trials", "4"],
            Some(maps.path()),
        ),
        (vec!["milnor"], Some(maps.path())),
        (vec!["det-example"], None),
    ];
    for (args, path) in cases {
        let mut json_args = args.clone();
        json_args.push("--json");
        let a = run(&json_args, path);
        let b = run(&json_args, path);
        assert_eq!(a.exit, 0, "{args:?}: {}", a.stderr);
        assert_eq!(body(&a), body(&b), "{args:?}");
        let h1 = run(&args, path);
        let h2 = run(&args, path);
        assert_eq!(h1.stdout, h2.stdout, "{args:?}");
        assert!(h1.stderr.starts_with("elapsed:"));
    }
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

// Field names and types documented for the JSON report.
#[test]
fn every_command_emits_the_documented_schema() {
    let series = file(&format!("{SERIES}mu 5..7\n"));
    let maps = file(MAPS);
    let cases: Vec<(&str, Option<&Path>, &[&str])> = vec![
        (
            "diagram",
            Some(series.path()),
            &["ideal", "vertices", "dimension", "colength"],
        ),
        ("vertices", Some(series.path()), &["ideal", "vertices"]),
        (
            "hilbert",
            Some(series.path()),
            &["ideal", "bound", "hilbert_samuel"],
        ),
        (
            "dim",
            Some(series.path()),
            &["ideal", "dimension", "vertices"],
        ),
        ("regseq", Some(series.path()), &["ideal", "verdict"]),
        ("flat-ci", Some(maps.path()), &["map", "verdict"]),
        (
            "milnor",
            Some(maps.path()),
            &["map", "mu0", "determinacy_bound"],
        ),
        ("jet", Some(series.path()), &["ideal", "reference", "rows"]),
        (
            "sweep",
            Some(series.path()),
            &[
                "ideal",
                "mu_min",
                "mu_max",
                "length_bound",
                "rows",
                "stabilization",
            ],
        ),
        (
            "oracle-check",
            Some(series.path()),
            &["ideal", "n", "agree", "engine_vertices", "oracle_vertices"],
        ),
        ("det-example", None, &["example", "rows"]),
    ];
    for (cmd, path, fields) in cases {
        let v = json(&run(&[cmd, "--json"], path));
        assert_eq!(
            keys(&v),
            [
                "command",
                "input_digest",
                "inputs",
                "results",
                "seed",
                "timing"
            ],
            "{cmd}"
        );
        assert_eq!(v["command"], cmd);
        let digest = v["input_digest"].as_str().unwrap();
        assert_eq!(digest.len(), 64);
        assert!(digest.chars().all(|c| c.is_ascii_hexdigit()));
        assert!(v["seed"].is_u64());
        assert!(v["timing"]["elapsed_ms"].is_f64());
        for k in [
            "file", "ring", "order", "trials", "bound", "mu", "len", "ideals", "maps",
        ] {
            assert!(v["inputs"].get(k).is_some(), "{cmd}: inputs.{k}");
        }
        let results = v["results"].as_array().unwrap();
        assert!(!results.is_empty(), "{cmd}");
        for r in results {
            for f in fields {
                assert!(r.get(*f).is_some(), "{cmd}: results[].{f} in {r}");
            }
            if let Some(verdict) = r.get("verdict") {
                let kind = verdict["kind"].as_str().unwrap();
                assert!(["CertifiedYes", "CertifiedNo", "UnknownAtBound"].contains(&kind));
                assert!(verdict["certificate"]["reason"].is_string());
            }
        }
    }
}

#[test]
fn file_options_apply_and_flags_override_them() {
    let f = file("ring x y\norder 3,1\nseed 9\nbound 4\nideal I\n  x + y^2\n");
    let v = json(&run(&["vertices", "--json"], Some(f.path())));
    assert_eq!(v["seed"], 9);
    assert_eq!(v["inputs"]["order"], serde_json::json!([3, 1]));
    assert_eq!(v["results"][0]["vertices"], serde_json::json!([[0, 2]]));
    let v = json(&run(
        &["vertices", "--json", "--order", "1,1", "--seed", "2"],
        Some(f.path()),
    ));
    assert_eq!(v["seed"], 2);
    assert_eq!(v["results"][0]["vertices"], serde_json::json!([[1, 0]]));
    let v = json(&run(&["hilbert", "--json"], Some(f.path())));
    assert_eq!(
        v["results"][0]["hilbert_samuel"].as_array().unwrap().len(),
        5
    );
}

#[test]
fn the_digest_tracks_file_contents() {
    let a = file("ring x y\nideal I\n  x\n");
    let b = file("ring x y\nideal I\n  x   \n");
    let da = json(&run(&["dim", "--json"], Some(a.path())))["input_digest"].clone();
    let db = json(&run(&["dim", "--json"], Some(b.path())))["input_digest"].clone();
    assert_ne!(da, db);
}

#[test]
fn binary_exit_codes_and_streams() {
    let exe = env!("CARGO_BIN_EXE_staircase");
    let maps = file(MAPS);
    let out = Command::new(exe)
        .args(["flat-ci", "--map", "phi", "--expect-yes"])
        .arg(maps.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("CertifiedNo"));

    let hard = file(HARD);
    let out = Command::new(exe)
        .args(["diagram"])
        .arg(hard.path())
        .env("STAIRCASE_POOL_CEILING", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(exe)
        .args(["det-example", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "det-example");
    assert!(out.stderr.is_empty());

    let out = Command::new(exe).arg("--bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

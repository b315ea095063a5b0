//! End-to-end tests against the compiled binary: exit codes, report
//! shapes, csv headers, config round-trips, and output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json stdout")
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("curvhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, text).expect("temp file");
    path
}

const SKEW_CONFIG: &str = r#"{ "kind": "diagonal", "v1": "2sin(t)", "v2": "3sin(t)",
  "v3": "4cos(t)", "domain": [0.0, 1.2] }"#;

#[test]
fn catalog_lists_every_entry_in_order() {
    let out = run(&["catalog"]);
    assert_eq!(code(&out), 0);
    let rows = stdout_json(&out);
    let ids: Vec<&str> = rows
        .as_array()
        .expect("array report")
        .iter()
        .map(|r| r["id"].as_str().expect("string id"))
        .collect();
    assert_eq!(
        ids,
        [
            "ex1",
            "ex2",
            "tsukada",
            "ex4",
            "ex5",
            "ex6",
            "ex7",
            "ex8-sphere",
            "ex8-hyperbolic",
            "ex8-flat",
            "ex9",
            "ex10-compact",
            "ex10-flat",
            "ex10-hyperbolic",
        ]
    );
}

#[test]
fn curvature_profile_reports_constant_components() {
    let out = run(&["curvature", "--catalog", "tsukada", "--samples", "12"]);
    assert_eq!(code(&out), 0);
    let text = stdout_text(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,k12,k13,k23,m1,m2,m3,r1,r2,r3,a_residual"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().expect("number")).collect())
        .collect();
    assert_eq!(rows.len(), 12);
    for row in &rows {
        assert_eq!(row.len(), 11);
        assert!((row[3] - row[1] - 4.0).abs() < 1e-9, "k23 - k12 is 4");
        assert!(row[10].abs() < 1e-8, "connection residual stays small");
    }
}

#[test]
fn curvature_profile_uses_product_columns() {
    let out = run(&["curvature", "--catalog", "ex9", "--samples", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout_text(&out);
    assert!(text.starts_with("t,sphere,sphere_circle,sphere_radial,circle_radial\n"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn invariants_profile_reports_vanishing_derivatives() {
    let out = run(&["invariants", "--catalog", "ex8-sphere", "--samples", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout_text(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,nabla_ric,nabla_r,ric1,ric2,ric3,ric4"
    );
    for line in lines {
        let row: Vec<f64> = line
            .split(',')
            .map(|c| c.parse().expect("number"))
            .collect();
        assert!(row[1].abs() < 1e-8, "|nabla Ric| vanishes on the sphere");
        assert!(row[2].abs() < 1e-8, "|nabla R| vanishes on the sphere");
    }
}

#[test]
fn check_ch_accepts_catalog_entry() {
    let out = run(&["check-ch", "--catalog", "tsukada"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "CH");
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-8);
}

#[test]
fn check_ch_rejects_skewed_config() {
    let path = write_temp("skew-ch.json", SKEW_CONFIG);
    let out = run(&["check-ch", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "NOT_CH");
    assert!(v["max_deviation"].as_f64().unwrap() > 1e-3);
}

#[test]
fn catalog_rows_round_trip_as_configs() {
    let rows = stdout_json(&run(&["catalog"]));
    let row = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "tsukada")
        .expect("tsukada row");
    let path = write_temp("round-trip.json", &serde_json::to_string(row).unwrap());
    let out = run(&["check-ch", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], "CH");
}

#[test]
fn check_smooth_reports_family_orbifold() {
    let out = run(&["check-smooth", "--catalog", "ex5", "--scale", "3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "ORBIFOLD");
    assert_eq!(v["orbifold_order"], 3);
}

#[test]
fn check_smooth_accepts_catalog_entry_at_both_ends() {
    let out = run(&["check-smooth", "--catalog", "ex1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "SMOOTH");
    let ends = v["ends"].as_array().unwrap();
    assert_eq!(ends.len(), 2);
    assert!(ends.iter().all(|e| e["verdict"] == "SMOOTH"));
}

#[test]
fn check_smooth_honors_end_flag() {
    let out = run(&["check-smooth", "--catalog", "ex1", "--end", "left"]);
    assert_eq!(code(&out), 0);
    let ends = stdout_json(&out)["ends"].as_array().unwrap().to_vec();
    assert_eq!(ends.len(), 1);
    assert_eq!(ends[0]["end"], "left");

    let out = run(&["check-smooth", "--catalog", "tsukada", "--end", "right"]);
    assert_eq!(code(&out), 2, "no collapse declared at that end");
}

#[test]
fn check_smooth_rejects_broken_closure() {
    let path = write_temp(
        "not-smooth.json",
        r#"{ "kind": "diagonal", "v1": "1.01sin(t)", "v2": "cos(t)", "v3": "1",
  "domain": [0.0, 1.5], "diagram": {"codim": 2, "a": 1} }"#,
    );
    let out = run(&["check-smooth", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["verdict"], "NOT_SMOOTH");
}

#[test]
fn classify_finds_catalog_entry() {
    let out = run(&["classify", "--catalog", "tsukada"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "MATCH");
    assert_eq!(v["match"]["id"], "tsukada");
    assert!((v["match"]["scale"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn classify_reports_homothety_factor() {
    let out = run(&["classify", "--catalog", "tsukada", "--scale", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["match"]["id"], "tsukada");
    assert!((v["match"]["scale"].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn classify_reports_family_parameter() {
    let out = run(&["classify", "--catalog", "ex5", "--scale", "3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["match"]["id"], "ex5");
    assert!((v["match"]["scale"].as_f64().unwrap() - 1.5).abs() < 1e-6);
    assert!((v["match"]["family_param"].as_f64().unwrap() - 3.0).abs() < 1e-9);
}

#[test]
fn classify_rejects_skewed_config() {
    let path = write_temp("skew-classify.json", SKEW_CONFIG);
    let out = run(&["classify", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["verdict"], "NOT_CH");
}

#[test]
fn solve_finds_isolated_root() {
    let out = run(&["solve", "--system", "5.1-compact"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["matches_known"], true);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    let root: Vec<f64> = roots[0]["root"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    let expect = [1.0, 2.0, 0.5];
    for (a, b) in root.iter().zip(expect.iter()) {
        assert!((a - b).abs() < 1e-6);
    }
    assert!(roots[0]["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn solve_confirms_empty_system() {
    let out = run(&["solve", "--system", "5.3.1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["matches_known"], true);
    assert!(v["roots"].as_array().unwrap().is_empty());
}

#[test]
fn solve_folds_ray_solutions_into_families() {
    let out = run(&["solve", "--system", "codim4-trig"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["matches_known"], true);
    assert!(v["roots"].as_array().unwrap().is_empty());
    assert_eq!(v["families"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_box_overrides_narrow_the_search() {
    let out = run(&["solve", "--system", "5.1-compact", "--box", "3:4,3:4,3:4"]);
    assert_eq!(code(&out), 1, "box excludes the known root");
    assert_eq!(stdout_json(&out)["matches_known"], false);

    let out = run(&["solve", "--system", "5.1-compact", "--box", "0:1"]);
    assert_eq!(code(&out), 2, "wrong range count is a usage error");

    let out = run(&["solve", "--system", "no-such-system"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["check-ch"])), 2, "an input source is required");
    assert_eq!(
        code(&run(&[
            "check-ch",
            "--catalog",
            "ex1",
            "--config",
            "x.json"
        ])),
        2,
        "input sources are exclusive"
    );
    assert_eq!(
        code(&run(&["check-ch", "--catalog", "no-such-id"])),
        2,
        "unknown catalog id"
    );
    assert_eq!(
        code(&run(&["check-ch", "--catalog", "ex1", "--format", "csv"])),
        2,
        "csv fits only sampled profiles"
    );
    assert_eq!(
        code(&run(&["check-ch", "--catalog", "ex1", "--tol", "0.5"])),
        2,
        "tolerance outside [1e-14, 1e-2]"
    );
    assert_eq!(
        code(&run(&["check-ch", "--catalog", "ex1", "--samples", "5"])),
        2,
        "sample count outside [10, 1000000]"
    );
    assert_eq!(
        code(&run(&["check-smooth", "--catalog", "ex1", "--order", "99"])),
        2,
        "order outside [2, 64]"
    );
    assert_eq!(
        code(&run(&["check-smooth", "--catalog", "ex1", "--scale", "-2"])),
        2,
        "scale must be positive"
    );
}

#[test]
fn malformed_config_is_reported_not_panicked() {
    let path = write_temp("broken.json", "{ this is not json");
    let out = run(&["check-ch", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let path = write_temp(
        "bad-grammar.json",
        r#"{ "kind": "diagonal", "v1": "frob(t)", "v2": "1", "v3": "1", "domain": [0.0, 1.0] }"#,
    );
    let out = run(&["check-ch", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn out_flag_writes_the_report_file() {
    let path = write_temp("report-target.json", "");
    let out = run(&[
        "check-ch",
        "--catalog",
        "ex1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "CH");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let first = run(&["classify", "--catalog", "tsukada"]);
    let second = run(&["classify", "--catalog", "tsukada"]);
    assert_eq!(first.stdout, second.stdout);

    let first = run(&["solve", "--system", "5.2.1"]);
    let second = run(&["solve", "--system", "5.2.1"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn reproduce_runs_every_check_deterministically() {
    let out = run(&["reproduce", "--samples", "20"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["draws"], 20);
    let ids: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    for needed in [
        "ch/tsukada",
        "smooth/ex5",
        "oracle/ex1",
        "roots/5.2.1",
        "roots/codim4-trig",
        "sweep/exponential",
        "discriminator/tsukada-nabla-ric",
        "parallel-curvature/ex9",
    ] {
        assert!(ids.contains(&needed), "missing row {needed}");
    }
    let again = run(&["reproduce", "--samples", "20"]);
    assert_eq!(out.stdout, again.stdout);
}

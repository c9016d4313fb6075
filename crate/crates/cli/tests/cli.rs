//! End-to-end checks of the CLI surface: subcommands, flags, JSON schema,
//! CSV formats, and error paths.

use std::process::Command;

fn bhkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bhkit"))
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = bhkit()
        .args(args)
        .arg("--json")
        .arg(&json)
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}: {out:?}", args);
    serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap()
}

fn result_named<'a>(report: &'a serde_json::Value, name: &str) -> &'a serde_json::Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap_or_else(|| panic!("missing result {name} in {report}"))
}

#[test]
fn exact_cases_all_pass() {
    for case in ["c2", "r2", "r3", "r6"] {
        let rep = run_json(&["exact", case]);
        assert_eq!(rep["command"], format!("exact {case}"));
        for r in rep["results"].as_array().unwrap() {
            assert_eq!(r["pass"], true, "exact {case}: {r}");
        }
    }
}

#[test]
fn report_schema_has_expected_fields() {
    let rep = run_json(&["exact", "c2"]);
    for key in ["command", "version", "results", "wall_ms"] {
        assert!(rep.get(key).is_some(), "missing {key}");
    }
    let first = &rep["results"][0];
    for key in ["name", "computed", "paper", "diff", "pass"] {
        assert!(first.get(key).is_some(), "missing result field {key}");
    }
}

#[test]
fn quotient_handles_catalog_and_custom_inputs() {
    let rep = run_json(&["quotient", "P8"]);
    let q = result_named(&rep, "quotient");
    assert!((q["computed"].as_f64().unwrap() - 33.36323).abs() < 0.2);
    assert_eq!(q["pass"], true);

    // |(1,0,0,1)|_{3/2} / ||x^3 + y^3|| = 2^{2/3} / 2.
    let rep = run_json(&["quotient", "--coeffs", "1,0,0,1", "--degree", "3"]);
    let q = result_named(&rep, "quotient")["computed"].as_f64().unwrap();
    assert!((q - 2f64.powf(2.0 / 3.0) / 2.0).abs() < 1e-9);

    // Float mode demotes exact catalog coefficients.
    let rep = run_json(&["quotient", "P5", "--mode", "float"]);
    assert_eq!(result_named(&rep, "quotient")["pass"], true);
}

#[test]
fn quotient_rejects_malformed_input() {
    let out = bhkit()
        .args(["quotient", "--coeffs", "1,x,3", "--degree", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bhkit()
        .args(["quotient", "--coeffs", "1,2", "--degree", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bhkit().args(["quotient", "P4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn power_endpoint_matches_published_root() {
    let rep = run_json(&["power", "P8", "--n", "75"]);
    let root = result_named(&rep, "per_degree_root");
    assert!((root["computed"].as_f64().unwrap() - 1.64042).abs() < 1e-3);
    assert_eq!(root["pass"], true);
    assert_eq!(result_named(&rep, "degree")["computed"], 600.0);
}

#[test]
fn power_series_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("series.csv");
    let out = bhkit()
        .args(["power", "P5", "--n", "12", "--series", "--csv"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("base_id,n,degree,per_degree_root"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    assert!(rows[0].starts_with("P5,1,5,"));
    assert!(rows[11].starts_with("P5,12,60,"));
}

#[test]
fn figure_requires_csv_path() {
    let out = bhkit().args(["figure", "qab-curve"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figure_curves_emit_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("qab.csv");
    let out = bhkit()
        .args(["figure", "qab-curve", "--csv"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("lambda,quotient\n"));
    // The curve contains its kink maximum; every row has two columns.
    let max = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((max - 10.7809).abs() < 2e-3, "max {max}");
}

#[test]
fn catalog_manifest_lists_all_entries() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cat.json");
    let out = bhkit()
        .args(["catalog", "--json"])
        .arg(&json)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let manifest_start = stdout.find('[').unwrap();
    let manifest_end = stdout.rfind(']').unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&stdout[manifest_start..=manifest_end]).unwrap();
    let entries = manifest.as_array().unwrap();
    assert_eq!(entries.len(), 7);
    assert_eq!(entries[0]["id"], "P2");
    assert_eq!(entries[0]["degree"], 2);
    assert_eq!(entries[2]["mode"], "exact");
    assert_eq!(entries[2]["coeffs"].as_array().unwrap().len(), 6);
}

use std::path::Path;
use std::process::{Command, Output};

fn vilenkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vilenkin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn weights_start_at_one() {
    let o = vilenkin(&["weights", "--alpha", "-0.3", "-n", "10"]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["k", "value"]);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], [0.0, 1.0]);
    assert!((rows[1][1] - 0.7).abs() < 1e-15);
    assert!((rows[2][1] - 0.595).abs() < 1e-15);
}

#[test]
fn kernel_identity_check() {
    let o = vilenkin(&["kernel", "--base", "2x3", "-n", "4", "--check-eq1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# base=2x3 resolution=3 dims=1\n"));
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    for (x, v) in values.iter().enumerate() {
        let want = if x % 4 == 0 { 4.0 } else { 0.0 };
        assert!((v - want).abs() < 1e-12);
    }
    let bad = vilenkin(&["kernel", "--base", "2x3", "-n", "3", "--check-eq1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn theorem4_report_respects_lower_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t4.csv");
    let plots = dir.path().join("plots");
    let o = vilenkin(&[
        "theorem4",
        "--base",
        "2x8",
        "--alpha",
        "0.3",
        "--beta",
        "0.3",
        "--out",
        out.to_str().unwrap(),
        "--plot-dir",
        plots.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# mean degree"));
    let (header, rows) = csv_rows(&text);
    let (e, lb, tail) = (column(&header, "error1"), column(&header, "lower_bound"), column(&header, "tail_bound"));
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert!(r[e] >= r[lb] - r[tail]);
        assert!(r[e] > 0.01);
    }
    let series = std::fs::read_to_string(plots.join("theorem4_error1.dat")).unwrap();
    assert_eq!(series.lines().count(), 6);
    assert_eq!(series.lines().next().unwrap().split(' ').count(), 2);
}

#[test]
fn json_mirrors_csv() {
    let args = ["theorem4", "--base", "2x6", "--engine", "diagonal"];
    let csv = stdout(&vilenkin(&args));
    let json = stdout(&vilenkin(&[&args[..], &["--format", "json"]].concat()));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let (header, rows) = csv_rows(&csv);
    let e = column(&header, "error1");
    for (row, jrow) in rows.iter().zip(v["rows"].as_array().unwrap()) {
        // serde_json's default float parser may be off by one ulp
        let j = jrow["error1"].as_f64().unwrap();
        assert!((row[e] - j).abs() <= 4.0 * f64::EPSILON * j.abs());
    }
}

#[test]
fn usage_and_validation_errors_exit_one() {
    assert_eq!(vilenkin(&["--no-such-flag"]).status.code(), Some(1));
    assert_eq!(vilenkin(&["nonsense"]).status.code(), Some(1));
    assert_eq!(vilenkin(&["theorem4", "--alpha", "0.6", "--beta", "0.5"]).status.code(), Some(1));
    assert_eq!(vilenkin(&["weights", "-n", "3"]).status.code(), Some(1));
    assert_eq!(vilenkin(&["moduli", "--base", "2x2x"]).status.code(), Some(1));
    assert_eq!(vilenkin(&["moduli", "--p", "0.5"]).status.code(), Some(1));
    assert_eq!(vilenkin(&["--help"]).status.code(), Some(0));
}

#[test]
fn transform_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    let back = dir.path().join("back.txt");
    let o = vilenkin(&["transform", "--base", "2,3,2", "--dims", "2", "--seed", "5", "--out", spec.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&spec).unwrap().starts_with("# base=2,3,2 resolution=3 dims=2 kind=spectrum"));
    let o = vilenkin(&["transform", "--input", spec.to_str().unwrap(), "--out", back.to_str().unwrap()]);
    assert!(o.status.success());
    let grid = std::fs::read_to_string(&back).unwrap();
    assert!(grid.starts_with("# base=2,3,2 resolution=3 dims=2\n"));
    assert_eq!(grid.lines().count(), 1 + 144);
}

#[test]
fn moduli_budget_and_sampling() {
    // 2x8: omega12 at level 0 enumerates 256^2 pairs, within budget; at
    // resolution 11 it would need 2^22 and is refused without --approximate
    let o = vilenkin(&["moduli", "--base", "2x11", "--kind", "omega12", "-k", "0", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = vilenkin(&["moduli", "--base", "2x4", "--kind", "omega12", "-k", "1", "-l", "2"]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header.join(","), "kind,k,l,p,value,shift_index");
    assert_eq!(rows.len(), 1);
}

#[test]
fn seeded_runs_are_deterministic() {
    for args in [
        &["lemma1", "--base", "2x8", "--seed", "9"][..],
        &["theorem3", "--base", "2x4", "--seed", "3", "--p", "inf"][..],
        &["moduli", "--base", "2x3", "--seed", "4"][..],
    ] {
        let a = vilenkin(args);
        let b = vilenkin(args);
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn corollary_scan_flags() {
    let o = vilenkin(&["corollary", "--base", "2x9", "--function", "holder"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypotheses decay: true; error decays: true"));
    let o = vilenkin(&["corollary", "--base", "2x9", "--function", "f0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["hypotheses_decay"], false);
    assert_eq!(v["error_decays"], false);
    assert!(Path::new(env!("CARGO_BIN_EXE_vilenkin")).exists());
}

use std::process::{Command, Output};

use binomial_filters::export::CoefficientRecord;

fn udbf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udbf")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn assert_usage_error(out: &Output) {
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.trim().lines().count() >= 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn design_seventh_order() {
    let text = stdout(&udbf(&["design", "--kind", "udb", "-n", "7", "--wn", "1"]));
    let zeta: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("zeta: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((zeta - 37f64.sqrt() / 7.0).abs() < 1e-15);
    assert!((zeta - 0.868966).abs() < 1e-6);

    let json = stdout(&udbf(&["design", "-n", "7", "--wn", "1", "--format", "json"]));
    let rec = CoefficientRecord::from_json(&json).unwrap();
    let binom = [1.0, 7.0, 21.0, 35.0, 35.0, 21.0, 7.0, 1.0];
    for (i, (a, c)) in rec.a.iter().zip(binom).enumerate() {
        let expected = if i == 0 || i == 7 { c } else { zeta * c };
        assert!((a - expected).abs() < 1e-12);
    }
}

#[test]
#[allow(clippy::approx_constant)]
fn design_butterworth_second_order() {
    let json = stdout(&udbf(&["design", "--kind", "butterworth", "-n", "2", "--wn", "1", "--format", "json"]));
    let rec = CoefficientRecord::from_json(&json).unwrap();
    assert_eq!(rec.a.len(), 3);
    assert!((rec.a[1] - 1.41421).abs() < 1e-5);
    assert!((rec.a[2] - 1.0).abs() < 1e-15);
}

#[test]
fn usage_errors_exit_nonzero() {
    let out = udbf(&["design", "--kind", "udb", "-n", "0", "--wn", "1"]);
    assert_usage_error(&out);
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim().lines().count(), 1);
    assert_usage_error(&udbf(&["design", "-n", "3", "--wn", "1", "--hz", "2"]));
    assert_usage_error(&udbf(&["design", "--kind", "butterworth", "-n", "3", "--wn", "1", "--zeta", "0.5"]));
    assert_usage_error(&udbf(&["analyze", "-n", "3", "--wn", "1", "--wmin", "10", "--wmax", "1"]));
    assert_usage_error(&udbf(&["design", "--kind", "chebyshev", "-n", "3", "--wn", "1"]));
}

fn sweep_rows(csv_text: &str) -> Vec<Vec<f64>> {
    csv_text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn analyze_rows() {
    let text = stdout(&udbf(&["analyze", "-n", "2", "--wn", "1", "--points", "3", "--wmin", "0.5", "--wmax", "2", "--format", "csv"]));
    assert!(text.starts_with("omega,magnitude,magnitude_db,phase_rad,phase_delay_s,group_delay_s\n"));
    let rows = sweep_rows(&text);
    assert!((rows[1][2] + 10.0 * 2f64.log10()).abs() < 1e-4);
    assert!((rows[1][2] + 3.0103).abs() < 1e-4);

    let rows = sweep_rows(&stdout(&udbf(&["analyze", "-n", "3", "--wn", "1", "--points", "3", "--wmin", "0.5", "--wmax", "2"])));
    assert!((rows[1][3] + 2.35619).abs() < 1e-5);

    let rows = sweep_rows(&stdout(&udbf(&["analyze", "-n", "4", "--wn", "1"])));
    assert_eq!(rows.len(), 1000);
    // Lowest row of the default sweep is omega_n / 100; the delay there is
    // the zeta-weighted origin value.
    let zeta4 = 10f64.sqrt() / 4.0;
    assert!((rows[0][5] - 4.0 * zeta4).abs() < 1e-3);
}

#[test]
fn simulate_metrics() {
    let out = udbf(&["simulate", "-n", "2", "--wn", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let os = v["metrics"]["overshoot_pct"].as_f64().unwrap();
    assert!((os - 4.32).abs() < 0.05);

    let v: serde_json::Value = serde_json::from_str(&stdout(&udbf(&["simulate", "-n", "1", "--wn", "1", "--format", "json"]))).unwrap();
    assert_eq!(v["metrics"]["overshoot_pct"].as_f64().unwrap(), 0.0);

    let v: serde_json::Value = serde_json::from_str(&stdout(&udbf(&["simulate", "-n", "10", "--wn", "1", "--format", "json"]))).unwrap();
    assert!(v["metrics"]["overshoot_pct"].as_f64().unwrap() <= 5.0);

    assert_usage_error(&udbf(&["simulate", "-n", "6", "--wn", "1", "--horizon", "3"]));
}

#[test]
fn digitize_records() {
    let json = stdout(&udbf(&["digitize", "-n", "2", "--wn", "1", "--fs", "100", "--format", "json"]));
    let rec = CoefficientRecord::from_json(&json).unwrap();
    assert_eq!(rec.pole_moduli.len(), 2);
    assert!(rec.pole_moduli.iter().all(|&m| m < 1.0));

    assert_usage_error(&udbf(&["digitize", "-n", "2", "--wn", "1", "--fs", "0.3"]));

    let fs = (100.0 / (2.0 * std::f64::consts::PI)).to_string();
    let csv_text = stdout(&udbf(&["digitize", "-n", "7", "--wn", "1", "--fs", &fs, "--format", "csv"]));
    let iir = CoefficientRecord::from_csv(&csv_text).unwrap().to_digital().unwrap();
    assert!((iir.dc_gain() - 1.0).abs() < 1e-9);

    let plain = stdout(&udbf(&["digitize", "-n", "2", "--wn", "1", "--fs", "10", "--prewarp", "false", "--format", "json"]));
    assert_ne!(CoefficientRecord::from_json(&plain).unwrap().a, CoefficientRecord::from_json(&stdout(&udbf(&["digitize", "-n", "2", "--wn", "1", "--fs", "10", "--format", "json"]))).unwrap().a);
}

#[test]
fn compare_is_deterministic_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("udbf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for path in [&a, &b] {
        let out = udbf(&["compare", "--seed", "42", "--sigma", "0.1", "--format", "csv", "--out", path.to_str().unwrap()]);
        let summary = stdout(&out);
        assert!(summary.starts_with("kind,overshoot_pct,rise_time_10_90,residual_noise_variance\n"));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(ta.starts_with(b"t,input,udb,butterworth,binomial\n"));
    let other = stdout(&udbf(&["compare", "--seed", "7", "--format", "csv"]));
    assert_ne!(other.as_bytes(), ta.as_slice());
    std::fs::remove_dir_all(&dir).unwrap();
}

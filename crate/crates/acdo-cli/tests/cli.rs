//! Behavior tests of the `acdo` binary: flag grammar, exit codes, the
//! config-file merge, NaN-row conventions, and CSV/JSON value parity.

use std::process::{Command, Output};

use serde_json::Value;

fn acdo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acdo"))
        .args(args)
        .output()
        .expect("acdo binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("terminated by signal")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

/// Data lines of a CSV table (comments and header stripped).
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn column_index(text: &str, name: &str) -> usize {
    text.lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .split(',')
        .position(|c| c == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn spectrum_matches_flat_ladder() {
    let out = acdo(&[
        "spectrum", "--m0", "1", "--omega", "1", "--mu", "0", "--eta", "1", "--s", "+1",
        "--n", "0..2", "--ml", "1/2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let energy_col = column_index(&text, "energy");
    let energies: Vec<f64> = csv_rows(&text)
        .iter()
        .map(|r| r[energy_col].parse().unwrap())
        .collect();
    let expected = [1.0, 5.0_f64.sqrt(), 3.0];
    assert_eq!(energies.len(), 3);
    for (got, want) in energies.iter().zip(expected) {
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }
}

#[test]
fn spectrum_nonrel_ladder() {
    let out = acdo(&[
        "spectrum", "--nonrel", "--mu", "0", "--s", "+1", "--n", "0..2", "--ml", "1/2",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let energy_col = column_index(&text, "energy");
    let energies: Vec<f64> = csv_rows(&text)
        .iter()
        .map(|r| r[energy_col].parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 3);
    for (got, want) in energies.iter().zip([0.0, 2.0, 4.0]) {
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }
}

#[test]
fn invalid_eta_exits_2_with_domain_reason() {
    let out = acdo(&["spectrum", "--eta", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("DomainError eta"), "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn even_two_ml_exits_2() {
    let out = acdo(&["spectrum", "--two-ml", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("DomainError two_ml"));
}

#[test]
fn conflicting_ml_flags_exit_2() {
    let out = acdo(&["spectrum", "--ml", "1/2", "--two-ml", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not both"));
}

#[test]
fn degenerate_oscillator_exits_3() {
    // omega_AC = mu*lambda2/(eta*m0) = 2, so omega_bar = 1 - 1 = 0 exactly.
    let out = acdo(&["wavefunction", "--mu", "1", "--lambda2", "2", "--omega", "1"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("DegenerateOscillator"));
}

#[test]
fn unknown_sweep_axis_exits_2() {
    let out = acdo(&["sweep", "--axis", "temperature", "--start", "0", "--stop", "1", "--step", "0.5"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("UnknownAxis"));
}

#[test]
fn sweep_keeps_error_rows_and_exits_0() {
    // omega_AC = 1.8: the first four omega values leave omega_bar < 0.
    let out = acdo(&[
        "sweep", "--axis", "omega", "--start", "0.2", "--stop", "1.0", "--step", "0.2",
        "--mu", "1", "--lambda2", "1.8", "--n", "0", "--ml", "1/2", "--s", "+1",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(lines.len(), 5);
    for bad in &lines[..4] {
        assert!(bad.contains("NaN"), "expected NaN cells: {bad}");
        assert!(bad.contains("NegativeEffectiveFrequency"), "expected reason: {bad}");
    }
    assert!(!lines[4].contains("NaN"));
    assert!(!lines[4].contains("NegativeEffectiveFrequency"));
}

#[test]
fn sweep_eta_axis_three_values_per_state() {
    let out = acdo(&[
        "sweep", "--axis", "eta", "--start", "0.5", "--stop", "1.0", "--step", "0.25",
        "--n", "0..1", "--ml", "1/2", "--s", "+1", "--branch", "particle",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 6); // 3 axis values x 2 states
    let axis_col = column_index(&text, "eta");
    assert_eq!(axis_col, 0, "axis value is the first column");
    let axis: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(axis, vec![0.5, 0.5, 0.75, 0.75, 1.0, 1.0]);
}

#[test]
fn sweep_b_field_is_affine_in_b() {
    let out = acdo(&[
        "sweep", "--axis", "b", "--start", "0", "--stop", "1", "--step", "0.25",
        "--mu", "1", "--n", "1", "--ml", "1/2", "--s", "+1", "--branch", "particle",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let energy_col = column_index(&text, "energy");
    let energies: Vec<f64> = csv_rows(&text)
        .iter()
        .map(|r| r[energy_col].parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 5);
    let slope = energies[1] - energies[0];
    for w in energies.windows(2) {
        assert!((w[1] - w[0] - slope).abs() < 1e-12, "not affine: {energies:?}");
    }
    assert!((slope - 0.25).abs() < 1e-12, "d(energy)/dB should be mu/eta * step");
}

#[test]
fn csv_and_json_carry_identical_values() {
    let args = [
        "spectrum", "--eta", "0.8", "--mu", "1", "--lambda1", "0.5", "--lambda2", "0.4",
        "--b", "0.7", "--s", "both", "--branch", "both", "--n", "0..2", "--ml", "-3/2,1/2",
    ];
    let csv_out = acdo(&args.iter().chain(&["--format", "csv"]).copied().collect::<Vec<_>>());
    let json_out = acdo(&args.iter().chain(&["--format", "json"]).copied().collect::<Vec<_>>());
    assert_eq!(code(&csv_out), 0);
    assert_eq!(code(&json_out), 0);

    let csv_text = stdout(&csv_out);
    let header: Vec<&str> = csv_text.lines().next().unwrap().split(',').collect();
    let rows = csv_rows(&csv_text);
    let json: Vec<Value> = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(rows.len(), json.len());
    assert_eq!(rows.len(), 3 * 2 * 2 * 2);

    for (row, obj) in rows.iter().zip(&json) {
        for (name, cell) in header.iter().zip(row) {
            match &obj[*name] {
                Value::Number(v) => {
                    let csv_value: f64 = cell.parse().unwrap();
                    let json_value = v.as_f64().unwrap();
                    let scale = json_value.abs().max(1.0);
                    assert!(
                        (csv_value - json_value).abs() <= 1e-15 * scale,
                        "{name}: csv {csv_value} vs json {json_value}"
                    );
                }
                Value::String(s) => assert_eq!(s, cell),
                other => panic!("unexpected JSON value for {name}: {other:?}"),
            }
        }
    }
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.json");
    std::fs::write(
        &config_path,
        r#"{"omega": 0.5, "eta": 0.8, "ml": "3/2", "s": "+1", "branch": "particle", "n": 0, "format": "json"}"#,
    )
    .unwrap();
    let out = acdo(&[
        "spectrum",
        "--config",
        config_path.to_str().unwrap(),
        "--omega",
        "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let rows: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 1);
    // Flag wins over file for omega; file supplies everything else.
    assert_eq!(rows[0]["omega_bar"].as_f64().unwrap(), 2.0);
    assert_eq!(rows[0]["eta"].as_f64().unwrap(), 0.8);
    assert_eq!(rows[0]["two_ml"].as_i64().unwrap(), 3);
    assert_eq!(rows[0]["branch"].as_str().unwrap(), "particle");
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.json");
    std::fs::write(&config_path, "[1, 2, 3]").unwrap();
    let out = acdo(&["spectrum", "--config", config_path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("ConfigError"));
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let to_stdout = acdo(&["spectrum", "--n", "0..1"]);
    let to_file = acdo(&["spectrum", "--n", "0..1", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&to_file), 0);
    assert!(stdout(&to_file).is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}

#[test]
fn wavefunction_density_normalizes_on_a_fine_grid() {
    let out = acdo(&["wavefunction", "--n", "0", "--ml", "1/2", "--s", "+1", "--rho", "0.001:8:0.004"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("trapezoid over this grid"));

    let rows = csv_rows(&text);
    let rho_col = column_index(&text, "rho");
    let density_col = column_index(&text, "density");
    let profile: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r[rho_col].parse().unwrap(), r[density_col].parse().unwrap()))
        .collect();
    assert!(profile.iter().all(|&(_, d)| d >= 0.0));
    // Ground state with gamma = 0: Gaussian upper component, maximal at the origin.
    assert!(profile[0].1 > profile.last().unwrap().1);
    let mut norm = 0.0;
    for w in profile.windows(2) {
        norm += 0.5 * (w[1].0 - w[0].0)
            * (w[0].0 * w[0].1 + w[1].0 * w[1].1);
    }
    norm *= 2.0 * std::f64::consts::PI;
    assert!((norm - 1.0).abs() < 1e-2, "trapezoid norm {norm}");
}

#[test]
fn wavefunction_rejects_state_ranges() {
    let out = acdo(&["wavefunction", "--n", "0..2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("exactly one"));
}

#[test]
fn oracle_coarse_grid_exits_2() {
    let out = acdo(&["oracle", "--gamma-eff", "0", "--alpha", "1", "--points", "50"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("GridTooCoarse"));
}

#[test]
fn oracle_raw_mode_meets_tolerance() {
    let out = acdo(&["oracle", "--gamma-eff", "0.25", "--alpha", "1.3", "--count", "2", "--points", "3000"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2);
    let dev_col = column_index(&text, "rel_dev");
    let order_col = column_index(&text, "order");
    for row in &rows {
        let dev: f64 = row[dev_col].parse().unwrap();
        let order: f64 = row[order_col].parse().unwrap();
        assert!(dev <= 1e-4, "rel_dev {dev}");
        assert!((order - 2.0).abs() <= 0.2, "order {order}");
    }
}

#[test]
fn oracle_physical_mode_crosschecks_spectrum() {
    let out = acdo(&[
        "oracle", "--n", "0..1", "--ml", "1/2", "--s", "+1", "--branch", "both",
        "--eta", "0.8", "--mu", "1", "--lambda1", "0.5", "--lambda2", "0.4", "--b", "0.7",
        "--points", "3000",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    let dev_col = column_index(&text, "rel_dev");
    for row in &rows {
        let dev: f64 = row[dev_col].parse().unwrap();
        assert!(dev <= 1e-4, "rel_dev {dev}");
    }
}

#[test]
fn verify_report_lists_every_check_once() {
    let out = acdo(&["verify", "--seed", "3"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let names: Vec<&str> = text
        .lines()
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(
        names,
        vec![
            "ode_residual",
            "coupled_closure",
            "phase_periodicity",
            "flat_limit",
            "branch_symmetry",
            "mu_zero_reduction",
            "oracle_agreement",
            "nonrel_asymptotics",
            "resonance_threshold",
            "normalization_orthogonality",
        ]
    );
    for line in text.lines() {
        assert!(line.starts_with("PASS "), "unexpected line: {line}");
        assert_eq!(line.split_whitespace().count(), 4, "line shape: {line}");
    }
}

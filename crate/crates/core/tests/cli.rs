mod common;

use std::collections::HashMap;
use std::fs;

use common::{cli, golden_path, stdout};
use monopole_dirac::analytic::{
    hmw_phase, nonrel_energy, relativistic_energy, settings_table, RadialFunction, SpinorField,
};
use monopole_dirac::{HalfInteger, PhysicalParameters, QuantumState, Sign};

fn record(text: &str) -> HashMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

fn num(rec: &HashMap<String, String>, key: &str) -> f64 {
    rec[key].parse().unwrap_or_else(|_| panic!("{key} = {}", rec[key]))
}

fn mj(num: i32) -> HalfInteger {
    HalfInteger::from_numerator(num).unwrap()
}

const SPECTRUM_ARGS: [&str; 13] = [
    "spectrum", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2", "--s", "-1", "--n",
    "1",
];

#[test]
fn spectrum_matches_library_bit_for_bit() {
    let out = cli(&SPECTRUM_ARGS);
    assert!(out.status.success());
    let rec = record(&stdout(&out));
    let p = PhysicalParameters::natural(-1.0, 1.0, 2.0).unwrap();
    let q = QuantumState::new(1, mj(1), Sign::Minus, Sign::Plus);
    let r = relativistic_energy(&p, &q).unwrap();
    let minus = relativistic_energy(&p, &q.with_branch(Sign::Minus)).unwrap();
    assert_eq!(num(&rec, "energy").to_bits(), r.energy.to_bits());
    assert_eq!(num(&rec, "energy_plus").to_bits(), r.energy.to_bits());
    assert_eq!(num(&rec, "energy_minus").to_bits(), minus.energy.to_bits());
    assert_eq!(num(&rec, "binding_energy").to_bits(), r.binding_energy.to_bits());
    assert_eq!(num(&rec, "eta").to_bits(), r.eta.to_bits());
    assert_eq!(num(&rec, "xi").to_bits(), r.derived.xi.to_bits());
    assert_eq!(num(&rec, "m_s").to_bits(), r.derived.m_s.to_bits());
    assert_eq!(num(&rec, "z0").to_bits(), r.z0.unwrap().to_bits());
    assert_eq!(num(&rec, "hmw_phase").to_bits(), hmw_phase(&p).to_bits());
}

#[test]
fn spectrum_json_matches_library() {
    let mut args = SPECTRUM_ARGS.to_vec();
    args.extend(["--format", "json"]);
    let out = cli(&args);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let p = PhysicalParameters::natural(-1.0, 1.0, 2.0).unwrap();
    let r = relativistic_energy(&p, &QuantumState::new(1, mj(1), Sign::Minus, Sign::Plus)).unwrap();
    assert_eq!(v["energy"].as_f64().unwrap().to_bits(), r.energy.to_bits());
    assert_eq!(v["eta"].as_f64().unwrap().to_bits(), r.eta.to_bits());
}

#[test]
fn spectrum_at_zero_kappa_is_rest_energy() {
    let out = cli(&[
        "spectrum", "--natural-units", "--kappa", "0", "--mj", "1/2", "--s", "+1", "--n", "0", "--d",
        "-1", "--lambda-m", "1",
    ]);
    assert!(out.status.success());
    let rec = record(&stdout(&out));
    assert_eq!(num(&rec, "energy_plus"), 1.0);
    assert_eq!(num(&rec, "energy_minus"), -1.0);
    assert_eq!(rec["continuum_edge"], "true");
}

#[test]
fn degenerate_channel_exits_3() {
    for kappa in ["0", "0.3"] {
        let out = cli(&[
            "spectrum", "--kappa", kappa, "--lambda-m", "0.5", "--d", "1", "--mj", "1/2", "--s", "1",
        ]);
        assert_eq!(out.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate channel"));
    }
}

#[test]
fn validation_errors_exit_2() {
    let cases: [&[&str]; 5] = [
        &["spectrum", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2"],
        &["spectrum", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/3", "--s", "1"],
        &["spectrum", "--kappa", "-2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2", "--s", "1"],
        &[
            "spectrum", "--m0", "2", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2",
            "--s", "1",
        ],
        &[
            "spectrum", "--natural-units", "--m0", "1", "--c", "1", "--hbar", "1", "--kappa", "2",
            "--lambda-m", "1", "--d", "-1", "--mj", "1/2", "--s", "1",
        ],
    ];
    for args in cases {
        assert_eq!(cli(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn explicit_constants() {
    let out = cli(&[
        "spectrum", "--m0", "2", "--c", "3", "--hbar", "0.5", "--kappa", "0.1", "--lambda-m", "1",
        "--d", "-1", "--mj", "1/2", "--s", "1",
    ]);
    assert!(out.status.success());
    let p = PhysicalParameters::new(2.0, 3.0, 0.5, -1.0, 1.0, 0.1).unwrap();
    let r = relativistic_energy(&p, &QuantumState::new(0, mj(1), Sign::Plus, Sign::Plus)).unwrap();
    assert_eq!(num(&record(&stdout(&out)), "energy").to_bits(), r.energy.to_bits());
}

#[test]
fn failed_run_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let p = path.to_str().unwrap();
    let out = cli(&["spectrum", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());

    fs::write(&path, "keep\n").unwrap();
    let out = cli(&[
        "spectrum", "--kappa", "0.3", "--lambda-m", "0.5", "--d", "1", "--mj", "1/2", "--s", "1",
        "--out", p,
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(fs::read_to_string(&path).unwrap(), "keep\n");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn out_file_equals_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.txt");
    let mut args = SPECTRUM_ARGS.to_vec();
    args.extend(["--out", path.to_str().unwrap()]);
    assert!(cli(&args).status.success());
    assert_eq!(fs::read(&path).unwrap(), cli(&SPECTRUM_ARGS).stdout);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(
        &path,
        r#"{"natural_units": true,
            "params": {"d": -1.0, "lambda_m": 1.0, "kappa": 5.0},
            "state": {"n": 2, "mj_numerator": 1, "s": -1}}"#,
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let p5 = PhysicalParameters::natural(-1.0, 1.0, 5.0).unwrap();
    let p2 = p5.with_kappa(2.0).unwrap();
    let q = QuantumState::new(2, mj(1), Sign::Minus, Sign::Plus);

    let out = cli(&["spectrum", "--config", cfg]);
    assert!(out.status.success());
    let e = relativistic_energy(&p5, &q).unwrap().energy;
    assert_eq!(num(&record(&stdout(&out)), "energy").to_bits(), e.to_bits());

    let out = cli(&["spectrum", "--config", cfg, "--kappa", "2", "--n", "0"]);
    let e = relativistic_energy(&p2, &q.with_n(0)).unwrap().energy;
    assert_eq!(num(&record(&stdout(&out)), "energy").to_bits(), e.to_bits());

    fs::write(&path, r#"{"params": {"d": -1.0, "unknown": 1}}"#).unwrap();
    assert_eq!(cli(&["spectrum", "--config", cfg]).status.code(), Some(2));
}

#[test]
fn settings_table_csv_matches_library() {
    let out = cli(&[
        "settings-table", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2", "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("setting,mj,s,sigma,energy,eta,xi,m_s"));
    let p = PhysicalParameters::natural(-1.0, 1.0, 2.0).unwrap();
    let rows = settings_table(&p, 0, mj(1)).unwrap();
    for (line, row) in lines.zip(rows.iter()) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], row.setting.to_string());
        assert_eq!(cells[1], row.mj.to_string());
        let e: f64 = cells[4].parse().unwrap();
        assert_eq!(e.to_bits(), row.spectrum.energy.to_bits());
    }
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn settings_table_text_is_aligned() {
    let out = cli(&["settings-table", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let widths: Vec<usize> = text.lines().map(|l| l.chars().count()).collect();
    assert_eq!(widths.len(), 9);
    assert!(widths.iter().all(|&w| w == widths[0]));
}

#[test]
fn radial_profile_matches_library_and_has_one_node() {
    let out = cli(&[
        "radial", "--kappa", "2", "--lambda-m", "1", "--d", "-1", "--mj", "1/2", "--s", "-1", "--n",
        "1", "--points", "801",
    ]);
    assert!(out.status.success());
    let p = PhysicalParameters::natural(-1.0, 1.0, 2.0).unwrap();
    let q = QuantumState::new(1, mj(1), Sign::Minus, Sign::Plus);
    let spec = relativistic_energy(&p, &q).unwrap();
    let plus = RadialFunction::new(&p, &q, &spec, Sign::Plus).unwrap();
    let minus = RadialFunction::new(&p, &q, &spec, Sign::Minus).unwrap();
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rho,r_plus,r_minus"));
    let mut col = Vec::new();
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(v[1].to_bits(), plus.eval(v[0]).to_bits());
        assert_eq!(v[2].to_bits(), minus.eval(v[0]).to_bits());
        col.push(v[1]);
    }
    assert_eq!(col.len(), 801);
    let signs: Vec<f64> = col.iter().filter(|v| v.abs() > 1e-12).map(|v| v.signum()).collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(changes, 1);
}

#[test]
fn spinor_profile_matches_library() {
    let out = cli(&[
        "spinor", "--kappa", "0.5", "--lambda-m", "1", "--d", "-1", "--mj", "1/2", "--s", "1",
        "--theta", "0.7", "--t", "1.3", "--points", "50", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let p = PhysicalParameters::natural(-1.0, 1.0, 0.5).unwrap();
    let q = QuantumState::new(0, mj(1), Sign::Plus, Sign::Plus);
    let field = SpinorField::new(&p, &q, &relativistic_energy(&p, &q).unwrap()).unwrap();
    let rho = v["rho"].as_array().unwrap();
    assert_eq!(rho.len(), 50);
    for (i, r) in rho.iter().enumerate() {
        let s = field.eval(1.3, r.as_f64().unwrap(), 0.7);
        assert_eq!(v["upper_re"][i].as_f64().unwrap().to_bits(), s.upper.re.to_bits());
        assert_eq!(v["lower_im"][i].as_f64().unwrap().to_bits(), s.lower.im.to_bits());
    }
}

#[test]
fn nonrel_example() {
    let out = cli(&["nonrel", "--kappa", "0.01", "--n", "0", "--m", "0", "--d", "-1", "--lambda-m", "1"]);
    assert!(out.status.success());
    let eps = num(&record(&stdout(&out)), "epsilon");
    assert!((eps + 2.2222e-5).abs() < 1e-9);
    let p = PhysicalParameters::natural(-1.0, 1.0, 0.01).unwrap();
    assert_eq!(eps.to_bits(), nonrel_energy(&p, 0, 0).unwrap().epsilon.to_bits());
}

#[test]
fn nonrel_divergence_exits_3() {
    let out = cli(&["nonrel", "--kappa", "0.01", "--n", "0", "--m", "0", "--d", "1", "--lambda-m", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn nonrel_oracle_picks_exact_form() {
    let out = cli(&[
        "nonrel", "--kappa", "0.01", "--n", "0", "--m", "-2", "--d", "-1", "--lambda-m", "1",
        "--oracle", "--variant", "exact",
    ]);
    assert!(out.status.success());
    assert_eq!(record(&stdout(&out))["accepted"], "exact");
}

#[test]
fn verify_default_grid_passes() {
    let out = cli(&["verify", "--d", "-1", "--lambda-m", "1", "--mj", "1/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with(",PASS")).count(), 18);
    assert!(text.lines().last().unwrap().starts_with("# PASS"));
}

#[test]
fn verify_tight_tolerance_is_mesh_too_coarse() {
    let out = cli(&["verify", "--d", "-1", "--lambda-m", "1", "--mj", "1/2", "--tolerance", "1e-12"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mesh too coarse"));
}

#[test]
fn verify_finer_mesh_shrinks_error() {
    let worst = |mesh: &str| -> f64 {
        let out = cli(&[
            "verify", "--d", "-1", "--lambda-m", "1", "--mj", "1/2", "--kappa", "2", "--mesh", mesh,
            "--format", "json",
        ]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["relative_error"].as_f64().unwrap())
            .fold(0.0, f64::max)
    };
    let ratio = worst("8000") / worst("16000");
    assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn sweep_figure_matches_golden() {
    for fig in 1..=4u8 {
        let out = cli(&["sweep", "--figure", &fig.to_string()]);
        assert!(out.status.success());
        assert_eq!(out.stdout, fs::read(golden_path(fig)).unwrap(), "figure {fig}");
    }
}

#[test]
fn sweep_from_config() {
    let spec = monopole_dirac::sweep::figure_spec(3).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    fs::write(&path, serde_json::json!({ "sweep": spec }).to_string()).unwrap();
    let out = cli(&["sweep", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(out.stdout, fs::read(golden_path(3)).unwrap());

    let both = cli(&["sweep", "--config", path.to_str().unwrap(), "--figure", "1"]);
    assert_eq!(both.status.code(), Some(2));
    assert_eq!(cli(&["sweep"]).status.code(), Some(2));
    assert_eq!(cli(&["sweep", "--figure", "9"]).status.code(), Some(2));
}

#[test]
fn sweep_json_output() {
    let out = cli(&["sweep", "--figure", "2", "--format", "json"]);
    assert!(out.status.success());
    let table: monopole_dirac::sweep::SweepTable = serde_json::from_slice(&out.stdout).unwrap();
    let expect = monopole_dirac::sweep::run_sweep(&monopole_dirac::sweep::figure_spec(2).unwrap()).unwrap();
    assert_eq!(table, expect);
}

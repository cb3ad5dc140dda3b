use std::path::Path;
use std::process::{Command, Output};

use dpo_cli::output::Table;

fn dpo(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpo"))
        .args(args)
        .env("DPO_OUT_DIR", out)
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dpo(&["figure", "fig4"], dir.path());
    assert!(out.status.success());
    let t = Table::from_csv(&read(dir.path(), "fig4_epsilon_0.3.csv")).unwrap();
    assert_eq!(t.x_name, "gamma_c_t");
    assert_eq!(t.column(0)[0], 1.0);
}

#[test]
fn fig5_with_five_points() {
    let dir = tempfile::tempdir().unwrap();
    assert!(dpo(&["figure", "fig5", "--points", "5"], dir.path())
        .status
        .success());
    let t = Table::from_csv(&read(dir.path(), "fig5.csv")).unwrap();
    assert_eq!(t.len(), 5);
    assert!(t.column(0).windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn json_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dpo(
        &["figure", "fig3", "--format", "json", "--points", "11"],
        dir.path(),
    );
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "fig3_epsilon_0.1.json")).unwrap();
    assert_eq!(v["tau_kappa"].as_array().unwrap().len(), 11);
    assert_eq!(v["value"][0].as_f64(), Some(0.0));
    let sidecar: serde_json::Value = serde_json::from_str(&read(dir.path(), "fig3.json")).unwrap();
    assert_eq!(sidecar["curves"][0]["file"], "fig3_epsilon_0.1.json");
    assert_eq!(sidecar["grid"]["points"], 11);
}

#[test]
fn negative_grid_bounds_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let out = dpo(
        &[
            "figure", "fig9", "--min", "-1", "--max", "1", "--points", "3",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        read(dir.path(), "fig9_epsilon_0.25.csv")
            .lines()
            .nth(2)
            .unwrap()
            .split(',')
            .next(),
        Some("0.00000000000e0")
    );
}

#[test]
fn validation_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["figure", "fig10"][..],
        &["figure", "fig5", "--points", "2"],
        &["figure", "fig6", "--max", "0.5"],
        &["figure", "fig2", "--format", "xml"],
        &[
            "sweep",
            "photons",
            "--epsilon-min",
            "0",
            "--epsilon-max",
            "0.1",
            "--points",
            "3",
        ],
        &[
            "sweep",
            "rho_aa_ss",
            "--epsilon-min",
            "0",
            "--epsilon-max",
            "0.1",
            "--points",
            "3",
            "--gamma-c-over-kappa",
            "-1",
        ],
        &["verify", "--fock-cutoff", "x"],
        &["bogus"],
    ] {
        let out = dpo(args, dir.path());
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn unwritable_output_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out = dpo(
        &[
            "figure",
            "fig2",
            "--out",
            blocker.join("sub").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dpo(&["--help"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
}

#[test]
fn sweep_single_row_and_reference_column() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sweep",
        "half_width_signal",
        "--epsilon-min",
        "0.25",
        "--epsilon-max",
        "0.25",
        "--points",
        "7",
    ];
    assert!(dpo(&args, dir.path()).status.success());
    let text = read(dir.path(), "sweep_half_width_signal.csv");
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("epsilon_over_kappa,value\n2.50000000000e-1,3.16"));

    let args = [
        "sweep",
        "mean_photon_signal",
        "--epsilon-min",
        "0",
        "--epsilon-max",
        "0.45",
        "--points",
        "10",
        "--reference-gamma-c",
        "0",
    ];
    assert!(dpo(&args, dir.path()).status.success());
    let t = Table::from_csv(&read(dir.path(), "sweep_mean_photon_signal.csv")).unwrap();
    assert_eq!(t.columns.len(), 2);
    assert!(t.column(0).iter().zip(t.column(1)).all(|(a, b)| a <= b));
}

#[test]
fn sweep_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "sweep",
        "var_minus_cavity",
        "--epsilon-min",
        "0",
        "--epsilon-max",
        "0.45",
        "--points",
        "91",
    ];
    dpo(&args, a.path());
    dpo(&args, b.path());
    assert_eq!(
        read(a.path(), "sweep_var_minus_cavity.csv"),
        read(b.path(), "sweep_var_minus_cavity.csv")
    );
}

#[test]
fn verify_small_cutoff_reports_adequacy_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dpo(
        &[
            "verify",
            "--fock-cutoff",
            "4",
            "--points",
            "0.45",
            "--no-spectrum",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "verify_report.json")).unwrap();
    assert_eq!(report["passed"], false);
    let entry = &report["points"][0]["entries"][0];
    assert!(entry["error"]
        .as_str()
        .unwrap()
        .contains("fock cutoff 4 too small"));
}

#[test]
fn verify_outside_bad_cavity_regime_warns_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dpo(
        &[
            "verify",
            "--gamma-c-over-kappa",
            "0.3",
            "--points",
            "0.1",
            "--fock-cutoff",
            "20",
            "--no-spectrum",
            "--dump-populations",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let report: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "verify_report.json")).unwrap();
    assert!(!report["points"][0]["warnings"]
        .as_array()
        .unwrap()
        .is_empty());
    let pops = Table::from_csv(&read(dir.path(), "populations_epsilon_0.1.csv")).unwrap();
    assert_eq!(pops.len(), 20);
    assert!((pops.column(0).iter().sum::<f64>() - 1.0).abs() < 1e-9);
}

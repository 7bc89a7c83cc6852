use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn jplab(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jplab"));
    cmd.args(args)
        .arg("--out")
        .arg(dir)
        .env_remove("JPLAB_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn jplab")
}

fn config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(dir: &Path, command: &str, body: &str) -> Output {
    let path = config(dir, "run.json", body);
    jplab(dir, &[command, "--config", path.to_str().unwrap()], &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines
        .next()
        .unwrap()
        .split(',')
        .position(|h| h == name)
        .unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn tk_prints_reduced_polynomials() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), "tk", r#"{"k": 2}"#);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-1 AB"), "{}", stdout(&o));
    let o = run(dir.path(), "tk", r#"{"k": 1}"#);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("0"));
}

#[test]
fn tk_six_warns_without_failing() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), "tk", r#"{"k": 6}"#);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn zero_trials_write_header_only() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), "verify-product", r#"{"trials": 0}"#);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        read(dir.path(), "verify-product.csv"),
        "trial,dim,k,residual\n"
    );
}

#[test]
fn product_output_is_seeded() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "p.json", r#"{"trials": 40, "seed": 5}"#);
    let cfg = cfg.to_str().unwrap();
    let mut outputs = Vec::new();
    for extra in [&[][..], &[][..], &["--seed", "6"][..]] {
        let mut args = vec!["verify-product", "--config", cfg];
        args.extend_from_slice(extra);
        assert_eq!(jplab(dir.path(), &args, &[]).status.code(), Some(0));
        outputs.push(read(dir.path(), "verify-product.csv"));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_ne!(outputs[0], outputs[2]);
    assert!(column(&outputs[0], "residual").iter().all(|&r| r <= 1e-9));
}

#[test]
fn csv_is_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let cfg = config(
        dir.path(),
        "p.json",
        r#"{"trials": 60, "seed": 9, "output": "a.csv"}"#,
    );
    let args = ["verify-product", "--config", cfg.to_str().unwrap()];
    assert_eq!(
        jplab(dir.path(), &args, &[("JPLAB_THREADS", "1")])
            .status
            .code(),
        Some(0)
    );
    let single = read(dir.path(), "a.csv");
    assert_eq!(jplab(dir.path(), &args, &[]).status.code(), Some(0));
    assert_eq!(single, read(dir.path(), "a.csv"));
}

#[test]
fn configuration_errors_exit_64() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(run(d, "tk", "{ not json").status.code(), Some(64));
    assert_eq!(
        run(
            d,
            "verify-halfline",
            r#"{"potential": {"name": "morse", "params": {}}}"#
        )
        .status
        .code(),
        Some(64)
    );
    assert_eq!(
        run(d, "tk", r#"{"k": 2, "extra": 1}"#).status.code(),
        Some(64)
    );
    assert_eq!(run(d, "tk", r#"{"k": 9}"#).status.code(), Some(64));
    assert_eq!(
        jplab(d, &["tk", "--config", "/nonexistent/run.json"], &[])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        jplab(d, &["no-such-command", "--config", "x"], &[])
            .status
            .code(),
        Some(64)
    );
    let cfg = config(d, "k.json", r#"{"k": 2}"#);
    let o = jplab(
        d,
        &["tk", "--config", cfg.to_str().unwrap()],
        &[("JPLAB_THREADS", "0")],
    );
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn halfline_free_potential_is_exact() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        "verify-halfline",
        r#"{"potential": {"name": "zero", "params": {}}, "n_grid": 60}"#,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = read(dir.path(), "verify-halfline.csv");
    for col in ["dirichlet_residual", "neumann_residual", "chain_residual"] {
        let vals = column(&csv, col);
        assert_eq!(vals.len(), 20);
        assert!(vals.iter().all(|&r| r <= 1e-10), "{col}: {vals:?}");
    }
}

#[test]
fn halfline_square_well_passes() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"potential": {"name": "square_well", "params": {"v0": 2.0, "a": 1.0}}, "n_grid": 200,
                   "z_grid": [[-1.0, 0.5], [2.0, 1.0], [0.5, 3.0]]}"#;
    let o = run(dir.path(), "verify-halfline", body);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn disk_truncation_is_flagged() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"potential": {"name": "gaussian", "params": {"amp": -3.0, "center": 0.0, "width": 0.3}},
                   "z": [-2.0, 0.5], "M_max": 1, "n_radial": 60}"#;
    let o = run(dir.path(), "verify-disk", body);
    assert!(stderr(&o).contains("truncation"), "{}", stderr(&o));
}

#[test]
fn tight_tolerance_exits_2() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"potential": {"name": "gaussian", "params": {"amp": -3.0, "center": 0.0, "width": 0.3}},
                   "z": [-2.0, 0.5], "M_max": 6, "n_radial": 40, "tolerances": {"disk": 1e-14}}"#;
    let o = run(dir.path(), "verify-disk", body);
    assert_eq!(o.status.code(), Some(2), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn free_disk_spectrum_starts_at_bessel_zero() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"potential": {"name": "zero", "params": {}}, "window": [1.0, 10.0], "bc": "dirichlet", "M_max": 3}"#;
    let o = run(dir.path(), "spectra", body);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lambdas = column(&read(dir.path(), "spectra.csv"), "lambda");
    assert!((lambdas[0] - 5.783185962946784).abs() < 1e-6, "{lambdas:?}");
}

#[test]
fn xi_scan_free_potential_is_zero() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"potential": {"name": "zero", "params": {}}, "lambda_range": {"lo": -0.5, "hi": 20.0, "count": 5},
                   "M_max": 4, "n_radial": 60}"#;
    let o = run(dir.path(), "xi-scan", body);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = read(dir.path(), "xi-scan.csv");
    let xi: Vec<f64> = csv
        .lines()
        .next()
        .unwrap()
        .split(',')
        .filter(|h| h.starts_with("xi"))
        .flat_map(|h| column(&csv, h))
        .collect();
    assert!(
        !xi.is_empty() && xi.iter().all(|x| x.abs() < 1e-3),
        "{xi:?}"
    );
}

#[test]
fn xi_scan_well_passes() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"potential": {"name": "square_well", "params": {"v0": 5.0, "a": 0.5}}, "lambdas": [-3.0, 4.0, 12.5],
                   "M_max": 5, "n_radial": 80}"#;
    let o = run(dir.path(), "xi-scan", body);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

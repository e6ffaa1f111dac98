use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_photon-wf");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), photon_wf::cli::HEADER);
    r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect()
}

fn col(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn standard_outside_cone_is_zero() {
    let out = run(&["sweep", "--treatment", "standard", "--zone", "far", "--axis", "space", "--fixed", "5", "--min", "6", "--max", "50"]);
    assert!(out.status.success());
    let r = rows(&out);
    assert_eq!(r.len(), 100);
    assert!(col(&r, 5).iter().all(|&v| v == 0.0));
    assert_eq!(r[0][8], "transverse");
    assert_eq!(r[1][8], "radial");
}

#[test]
fn seventeen_significant_digits() {
    let out = run(&["sweep", "--treatment", "dipole", "--zone", "mid", "--axis", "time", "--fixed", "1", "--min", "2", "--max", "3", "--points", "2"]);
    let r = rows(&out);
    for v in &r[0][..6] {
        let mantissa = v.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.len(), 18, "{v}");
    }
}

#[test]
fn far_pv_slope() {
    let out = run(&[
        "sweep", "--treatment", "dipole", "--zone", "far", "--part", "pv", "--axis", "space", "--fixed", "1",
        "--min", "10", "--max", "1000", "--points", "64", "--log", "--component", "transverse",
    ]);
    let r = rows(&out);
    let s = photon_wf::cli::loglog_slope(&col(&r, 1), &col(&r, 5));
    assert!((s + 4.0).abs() < 0.1, "{s}");
}

#[test]
fn oracle_backend_matches_closed_form() {
    let base = ["sweep", "--treatment", "exact", "--zone", "mid", "--part", "total", "--axis", "time", "--fixed", "1", "--min", "0.2", "--max", "5", "--points", "6"];
    let closed = rows(&run(&base));
    let mut with_oracle = base.to_vec();
    with_oracle.extend(["--backend", "oracle"]);
    let quad = rows(&run(&with_oracle));
    for (a, b) in closed.iter().zip(&quad) {
        let za = num_complex::Complex64::new(a[3].parse().unwrap(), a[4].parse().unwrap());
        let zb = num_complex::Complex64::new(b[3].parse().unwrap(), b[4].parse().unwrap());
        assert!((za - zb).norm() <= 1e-6 * zb.norm(), "{za} vs {zb}");
    }
}

#[test]
fn lightcone_row_is_flagged() {
    let out = run(&["sweep", "--treatment", "exact", "--zone", "near", "--axis", "space", "--fixed", "2", "--min", "1", "--max", "3", "--points", "3"]);
    assert!(out.status.success());
    let r = rows(&out);
    assert_eq!(r[2][10], "1");
    assert!(r[2][3].parse::<f64>().unwrap().is_nan());
    assert_eq!(r[0][10], "0");
}

#[test]
fn exit_codes() {
    let near_pole = run(&["sweep", "--treatment", "exact", "--zone", "near", "--part", "pole", "--axis", "space", "--fixed", "1", "--min", "1", "--max", "2"]);
    assert_eq!(near_pole.status.code(), Some(2));
    assert!(near_pole.stdout.is_empty());
    assert_eq!(run(&["sweep", "--treatment", "exact"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--treatment", "dipole", "--zone", "far", "--axis", "space", "--fixed", "1", "--min", "1", "--max", "2", "--backend", "oracle"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["sweep", "--treatment", "dipole", "--zone", "far", "--axis", "space", "--fixed", "1", "--min", "0", "--max", "2", "--log"]).status.code(),
        Some(2)
    );
    let failing = run(&["sweep", "--treatment", "exact", "--zone", "far", "--axis", "space", "--fixed", "0.1", "--min", "30", "--max", "30", "--points", "1", "--kappa", "1e300"]);
    assert_eq!(failing.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&failing.stderr).contains("X = 3e1"));
    assert_eq!(run(&["verify", "--suite", "special-functions", "--tol", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_report_shape() {
    let out = run(&["verify", "--suite", "residues"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "status", "max_rel_err", "tolerance", "points"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn constants_and_config() {
    let out = run(&["constants"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["a0_m", "kX_per_m", "kappa", "lightcone_unit_m", "omega0_rad_s", "si_prefactor"]);
    assert!((v["kappa"].as_f64().unwrap() - 548.0).abs() < 0.5);
    assert!((v["lightcone_unit_m"].as_f64().unwrap() / 1.94e-8 - 1.0).abs() < 0.01);
    assert!((v["kX_per_m"].as_f64().unwrap() / 2.835e10 - 1.0).abs() < 0.001);

    let dir = std::env::temp_dir().join(format!("pwf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("p.json");
    std::fs::write(&cfg, r#"{"kappa": 20.0}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&run(&["constants", "--config", cfg]).stdout).unwrap();
    assert_eq!(v["kappa"], 20.0);
    let v: serde_json::Value = serde_json::from_slice(&run(&["constants", "--config", cfg, "--kappa", "7"]).stdout).unwrap();
    assert_eq!(v["kappa"], 7.0);
    assert_eq!(run(&["constants", "--config", "/nonexistent.json"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("pwf-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.csv");
    let args = ["sweep", "--treatment", "dipole", "--zone", "far", "--axis", "space", "--fixed", "3", "--min", "0.5", "--max", "6", "--points", "12", "--si"];
    let stdout = run(&args).stdout;
    let mut with_file = args.to_vec();
    with_file.extend(["-o", path.to_str().unwrap()]);
    assert!(run(&with_file).stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

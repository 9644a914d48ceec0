use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac-squaring")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

const MODE: [&str; 8] = ["--k1", "0.3", "--k2", "0.4", "--k", "1.2", "--mass", "1"];

fn with_mode<'a>(head: &[&'a str]) -> Vec<&'a str> {
    head.iter().copied().chain(MODE).collect()
}

#[test]
fn bases_verify_reports_full_rank() {
    let v = json(&with_mode(&["bases", "--rep", "spinor", "--gamma", "0", "--verify"]));
    let check = &v["verification"][0];
    assert_eq!(check["rank"], 4);
    assert!(check["max_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn plane_wave_sets_have_rank_two() {
    let v = json(&with_mode(&["bases", "--set", "u", "--verify"]));
    let ranks: Vec<_> = v["verification"].as_array().unwrap().iter().map(|c| c["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [2, 2]);
}

#[test]
fn missing_mass_is_a_usage_error() {
    let out = run(&["bases", "--k1", "0.3", "--k2", "0.4", "--k", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--mass"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["bases", "--bogus"]).status.code(), Some(2));
}

#[test]
fn degenerate_maps_rejected() {
    let out = run(&["maps", "--k1", "0.3", "--k2", "0.4", "--k", "0", "--mass", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn maps_reconstruct() {
    let v = json(&with_mode(&["maps"]));
    assert!(v["reconstruction_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn weyl_equal_phases_ladder() {
    let v = json(&[
        "quantize", "weyl", "--k1", "0.3", "--k2", "0.4", "--a", "1", "--rho", "0.5", "--sigma", "0.5", "--kmax", "5",
    ]);
    let ks: Vec<f64> = v["spectrum"]["roots"].as_array().unwrap().iter().map(|r| r["k"].as_f64().unwrap()).collect();
    assert_eq!(ks.len(), 3);
    for (n, k) in ks.iter().enumerate() {
        assert!((k - (n + 1) as f64 * std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }
}

#[test]
fn dirac_bases_agree() {
    let v = json(&[
        "quantize", "dirac", "--k1", "0.3", "--k2", "0.4", "--mass", "1", "--a", "1", "--rho", "0.4", "--sigma",
        "-1.1", "--mu", "2.3", "--nu", "0.9", "--kmax", "6",
    ]);
    assert_eq!(v["identical_spectra"], true);
}

#[test]
fn empty_spectrum_warns() {
    let out = run(&[
        "quantize", "weyl", "--k1", "0.3", "--k2", "0.4", "--a", "1", "--rho", "0.5", "--sigma", "0.5", "--kmax", "1",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spectrum"]["roots"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn csv_spectrum_columns() {
    let out = run(&[
        "quantize", "weyl", "--k1", "0.3", "--k2", "0.4", "--a", "1", "--rho", "0.5", "--sigma", "0.5", "--kmax", "5",
        "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("branch,k,Re K,Im K,det_residual,unit_modulus_dev"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn csv_needs_single_basis() {
    let out = run(&[
        "quantize",
        "dirac",
        "--k1",
        "0.3",
        "--k2",
        "0.4",
        "--mass",
        "1",
        "--a",
        "1",
        "--equal-phases",
        "0.2",
        "--kmax",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = std::env::temp_dir().join(format!("dirac-squaring-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# mode\nk1 = 0.3\nk2 = 0.4\nk = 1.2\nmass = 5\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&["maps", "--config", p]);
    assert_eq!(from_file["mode"]["mass"].as_f64(), Some(5.0));
    let overridden = json(&["maps", "--config", p, "--mass", "1"]);
    assert_eq!(overridden["mode"]["mass"].as_f64(), Some(1.0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reference_check_alone_and_embedded() {
    let v = json(&["--reference-check"]);
    assert!(v["boundary"]["planewave_builder"].as_f64().unwrap() < 1e-12);
    let embedded = json(&with_mode(&["maps", "--reference-check"]));
    assert!(embedded["reference_check"]["clifford"].is_object());
    assert!(embedded["ranks"].is_array());
}

#[test]
fn covariant_g_constructions_agree() {
    let v = json(&["covariant-g", "--rho", "0.3", "--sigma", "-1.2", "--rep", "majorana"]);
    assert!(v["agreement"]["square"].as_f64().unwrap() < 1e-12);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dirac = [
        "quantize", "dirac", "--k1", "0.3", "--k2", "-0.4", "--mass", "1.1", "--a", "0.8", "--rho", "0.4", "--sigma",
        "-1.1", "--mu", "2.3", "--nu", "0.9", "--kmax", "5",
    ];
    let commands: Vec<Vec<&str>> = vec![
        with_mode(&["bases", "--set", "all", "--verify"]),
        with_mode(&["maps"]),
        with_mode(&["majorana"]),
        dirac.to_vec(),
        vec![
            "quantize", "weyl", "--k1", "0.3", "--k2", "0.4", "--a", "1", "--rho", "0.2", "--sigma", "1.4", "--kmax",
            "6",
        ],
        vec!["covariant-g", "--rho", "0.3", "--sigma", "-1.2"],
        vec!["--reference-check"],
    ];
    for args in commands {
        let (a, b) = (run(&args), run(&args));
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

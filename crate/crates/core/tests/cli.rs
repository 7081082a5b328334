use std::path::Path;
use std::process::{Command, Output};

fn softfoil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_softfoil")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn defaults_print_to_stdout() {
    let out = softfoil(&["energy"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let table: toml::Table = text.parse().unwrap();
    let total = table["total_j"].as_float().unwrap();
    assert!((1.0..=4.0).contains(&total), "{total}");
}

#[test]
fn unknown_config_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "[tube]\nradius = 7.5\n").unwrap();
    let out = softfoil(&["energy", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("radius"));
}

#[test]
fn pressure_beyond_validity_is_a_config_error() {
    let out = softfoil(&["freq-sweep", "--pressures", "0,9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_gain_curves_are_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.csv");
    std::fs::write(&path, "pressure_bar,frequency_hz,gain\n0.0,1.0,abc\n").unwrap();
    let out = softfoil(&["calibrate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn calibrate_without_input_is_a_config_error() {
    let out = softfoil(&["calibrate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threshold_flag_reaches_the_envelope() {
    let out = softfoil(&["envelope", "--config", &fixture("bench.toml"), "--threshold", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let table: toml::Table = String::from_utf8(out.stdout).unwrap().parse().unwrap();
    assert_eq!(table["gain_threshold"].as_float(), Some(4.0));
}

#[test]
fn calibration_report_feeds_back_into_a_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = softfoil(&["calibrate", "--config", &fixture("bench.toml"), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let config = dir.path().join("next.toml");
    std::fs::write(&config, "[dynamics]\ncalibration = \"calibration.toml\"\n").unwrap();
    let out = softfoil(&["freq-sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# effective_mass_kg=0.0044 (calibrated)"), "{text}");
}

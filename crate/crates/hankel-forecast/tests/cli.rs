//! End-to-end checks of the command-line interface: exit codes, output
//! files, and byte-identical reruns for seeded commands.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hankel-forecast"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("hankel_forecast_cli_tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_series(name: &str, values: &[f64]) -> PathBuf {
    let path = scratch(name);
    let text: String = values.iter().map(|v| format!("{v}\n")).collect();
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn forecast_writes_results_and_metadata() {
    let input = write_series(
        "geometric.csv",
        &(1..=20).map(|k| 0.8f64.powi(k)).collect::<Vec<_>>(),
    );
    let output = scratch("geometric_out.csv");
    let status = binary()
        .args([
            "forecast",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
            "--missing",
            "4",
            "--window",
            "10",
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let table = fs::read_to_string(&output).unwrap();
    assert!(table.starts_with("index,value,is_forecast\n"));
    assert_eq!(table.lines().count(), 25); // header + 24 values
    assert!(output.with_extension("singular.csv").exists());
    let meta = fs::read_to_string(output.with_extension("meta.json")).unwrap();
    assert!(meta.contains("\"status\": \"Converged\""));
}

#[test]
fn seeded_commands_are_byte_identical() {
    let out_a = scratch("sim_a.csv");
    let out_b = scratch("sim_b.csv");
    for out in [&out_a, &out_b] {
        let status = binary()
            .args([
                "simulate",
                "--output",
                out.to_str().unwrap(),
                "--case",
                "1",
                "--missing",
                "2,3",
                "--repetitions",
                "2",
                "--seed",
                "77",
                "--max-iter",
                "800",
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = fs::read(&out_a).unwrap();
    let b = fs::read(&out_b).unwrap();
    assert_eq!(a, b, "identical seeded runs must produce identical bytes");
}

#[test]
fn bounds_and_certificate_round_trip() {
    let out = scratch("bounds.csv");
    assert!(binary()
        .args(["bounds", "--output", out.to_str().unwrap(), "--rhos", "1.0"])
        .status()
        .unwrap()
        .success());
    let table = fs::read_to_string(&out).unwrap();
    // max m for the unit modulus on 13 x 13 is 11
    assert!(table.lines().nth(1).unwrap().contains(",11,"));

    // json format carries the same content
    let out_json = scratch("bounds.json");
    assert!(binary()
        .args([
            "bounds",
            "--output",
            out_json.to_str().unwrap(),
            "--rhos",
            "1.0",
            "--format",
            "json",
        ])
        .status()
        .unwrap()
        .success());
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_json).unwrap()).unwrap();
    assert_eq!(parsed[0]["max_missing"], 11);

    let candidate = write_series(
        "candidate.csv",
        &(1..=13).map(|k| 0.5f64.powi(k)).collect::<Vec<_>>(),
    );
    let cert_out = scratch("cert.json");
    assert!(binary()
        .args([
            "certificate",
            "--input",
            candidate.to_str().unwrap(),
            "--output",
            cert_out.to_str().unwrap(),
            "--window",
            "7",
            "--missing",
            "6",
        ])
        .status()
        .unwrap()
        .success());
    let report = fs::read_to_string(&cert_out).unwrap();
    assert!(report.contains("CertifiedUnique"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // 1: unknown flag
    let status = binary()
        .args(["forecast", "--frobnicate"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));

    // 1: parse error with a row number
    let bad = scratch("bad.csv");
    fs::write(&bad, "1.0\nnot_a_number\n").unwrap();
    let out = binary()
        .args([
            "forecast",
            "--input",
            bad.to_str().unwrap(),
            "--output",
            scratch("ignored.csv").to_str().unwrap(),
            "--missing",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));

    // 3: missing dataset
    let out = binary()
        .args([
            "forecast",
            "--input",
            "/definitely/not/here.csv",
            "--output",
            scratch("ignored2.csv").to_str().unwrap(),
            "--missing",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

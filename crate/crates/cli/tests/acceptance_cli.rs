//! Acceptance: the default verification sweep succeeds and one frozen
//! invocation per command reproduces its golden file byte for byte.

use std::path::Path;
use std::process::{Command, Output};

fn juttner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_juttner"))
        .args(args)
        .output()
        .expect("failed to spawn juttner")
}

#[test]
fn criterion_12_default_verify_exits_zero() {
    let out = juttner(&["verify"]);
    let ok = out.status.code() == Some(0);
    println!(
        "acceptance 12 default verify sweep exits 0: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(
        ok,
        "exit code {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn criterion_12_golden_files_byte_identical() {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let frozen: [(&str, Vec<&str>); 5] = [
        ("bessel.csv", vec!["bessel", "--order", "2", "--beta", "1"]),
        (
            "table.csv",
            vec!["table", "--beta-min", "0.1", "--beta-max", "10", "--points", "5"],
        ),
        (
            "invert.json",
            vec![
                "invert",
                "--eta",
                "7.3868740931663549e0",
                "--rho",
                "3.3704411746314179e0",
                "--format",
                "json",
            ],
        ),
        ("sound_speed.csv", vec!["sound-speed", "--beta", "1"]),
        (
            "verify.csv",
            vec!["verify", "--beta-min", "0.01", "--beta-max", "100", "--points", "25"],
        ),
    ];

    let mut ok = true;
    for (file, args) in &frozen {
        let expected = std::fs::read(golden_dir.join(file))
            .unwrap_or_else(|e| panic!("missing golden file {file}: {e}"));
        let out = juttner(args);
        let matched = out.stdout == expected;
        ok &= matched;
        if !matched {
            eprintln!(
                "golden mismatch for {file}:\n--- expected ---\n{}\n--- actual ---\n{}",
                String::from_utf8_lossy(&expected),
                String::from_utf8_lossy(&out.stdout)
            );
        }
    }
    println!(
        "acceptance 12 golden files byte-identical: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

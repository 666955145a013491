#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary from the fixtures directory with a clean environment bound.
pub fn dortho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dortho"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("DORTHO_PROBE_BOUND")
        .output()
        .expect("binary runs")
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "eigen_corollary_n3",
        args: &["eigen", "--operator", "corollary_operator.json", "-N", "3"],
        exit: 0,
    },
    GoldenCase {
        name: "eigen_corollary_n0",
        args: &["eigen", "--operator", "corollary_operator.json", "-N", "0"],
        exit: 0,
    },
    GoldenCase {
        name: "classify_derivative",
        args: &["classify", "--operator", "derivative_operator.json"],
        exit: 0,
    },
    GoldenCase {
        name: "classify_corollary",
        args: &["classify", "--operator", "corollary_operator.json"],
        exit: 0,
    },
    GoldenCase {
        name: "classify_linear_a3",
        args: &["classify", "--operator", "linear_a3_operator.json"],
        exit: 0,
    },
    GoldenCase {
        name: "verify_corollary42",
        args: &["verify", "--descriptor", "corollary42.json"],
        exit: 0,
    },
    GoldenCase {
        name: "verify_case1",
        args: &["verify", "--descriptor", "case1.json"],
        exit: 0,
    },
    GoldenCase {
        name: "duals_corollary42_m8",
        args: &["duals", "--family", "corollary42", "-M", "8"],
        exit: 0,
    },
    GoldenCase {
        name: "duals_gamma3_zero",
        args: &["duals", "--table", "gamma3_zero_table.json"],
        exit: 1,
    },
];

/// Compares stdout and the exit code of one case; `Err` explains the mismatch.
/// With `DORTHO_UPDATE_GOLDEN` set, rewrites the fixture instead.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let out = dortho(case.args);
    let code = out.status.code();
    if code != Some(case.exit) {
        return Err(format!(
            "{}: exit {:?}, expected {}; stderr: {}",
            case.name,
            code,
            case.exit,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let path = golden_dir().join(format!("{}.json", case.name));
    if std::env::var_os("DORTHO_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != out.stdout {
        return Err(format!(
            "{}: output differs from {}",
            case.name,
            path.display()
        ));
    }
    Ok(())
}

mod common;

use common::{check_golden, dortho, GOLDEN_CASES};

#[test]
fn outputs_match_golden_files() {
    let failures: Vec<String> = GOLDEN_CASES
        .iter()
        .filter_map(|case| check_golden(case).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_stable_across_runs() {
    let args = [
        "verify",
        "--descriptor",
        "corollary42.json",
        "-N",
        "6",
        "-M",
        "3",
    ];
    assert_eq!(dortho(&args).stdout, dortho(&args).stdout);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["eigen", "--operator", "malformed.json", "-N", "3"][..],
        &["eigen", "--operator", "missing.json", "-N", "3"],
        &["classify", "--operator", "bad_degree_operator.json"],
        &[
            "verify",
            "--family",
            "case1",
            "--params",
            "[1, 0, 0, -2, -6]",
        ],
        &[
            "verify",
            "--family",
            "case2",
            "--params",
            "[1, 0, 1, 1, 1, 1]",
        ],
        &["verify", "--family", "hermite"],
        &["verify"],
        &[
            "duals",
            "--family",
            "corollary42",
            "--params",
            "{\"a00\": 0.5}",
        ],
        &["frobnicate"],
    ] {
        let out = dortho(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn degree_violation_names_the_index() {
    let out = dortho(&["classify", "--operator", "bad_degree_operator.json"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("a_2"));
}

#[test]
fn verification_failures_exit_1() {
    let out = dortho(&["verify", "--operator", "linear_a3_operator.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not 2-orthogonal"));

    let out = dortho(&["eigen", "--operator", "collision_operator.json", "-N", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("collision"));
}

#[test]
fn derive_mode_passes_for_corollary_operator() {
    let out = dortho(&[
        "verify",
        "--operator",
        "corollary_operator.json",
        "-N",
        "8",
        "-M",
        "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["table"]["gamma"][2], "-10800");
}

#[test]
fn probe_bound_caps_n_and_m() {
    let out = dortho(&["verify", "--family", "corollary42", "--probe-bound", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["N"].as_u64(), v["M"].as_u64()), (Some(4), Some(4)));
}

#[test]
fn env_bound_sets_default_n() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_dortho"))
        .args(["verify", "--family", "corollary42", "-M", "2"])
        .env("DORTHO_PROBE_BOUND", "5")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["N"].as_u64(), Some(5));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("dortho-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = dortho(&[
        "eigen",
        "--operator",
        "corollary_operator.json",
        "-N",
        "2",
        "--out",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["poly"], serde_json::json!(["0", "0", "1"]));
    std::fs::remove_file(path).ok();
}

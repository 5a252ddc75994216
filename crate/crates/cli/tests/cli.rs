use std::path::{Path, PathBuf};
use std::process::Command;

use permcode_cli::{run, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args.iter().copied(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?} failed: {err}");
    out
}

fn small_spec() -> String {
    golden("small.spec").to_str().unwrap().to_owned()
}

#[test]
fn gen_prints_spec_and_size() {
    assert_eq!(
        ok(&["gen", "--family", "optimal", "--n", "6", "--d", "2"]),
        read_golden("gen_optimal_6_2.txt")
    );
    assert_eq!(
        ok(&["gen", "--family", "kloeve", "--n", "6", "--d", "2", "--q", "2"]),
        read_golden("gen_kloeve_6_2_2.txt")
    );
    assert_eq!(
        ok(&["gen", "--family", "dpgp", "--n", "6", "--d", "2"]),
        "36\n"
    );
}

#[test]
fn gen_writes_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("opt.spec");
    let p = path.to_str().unwrap();
    assert_eq!(
        ok(&["gen", "--family", "optimal", "--n", "6", "--d", "2", "--spec", p]),
        "36\n"
    );
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 6);
    assert_eq!(written + "# size 36\n", read_golden("gen_optimal_6_2.txt"));
    assert_eq!(ok(&["enumerate", "--spec", p]).lines().count(), 36);
}

#[test]
fn encode_small_spec() {
    let s = small_spec();
    assert_eq!(ok(&["encode", "--spec", &s, "--heads", "0 0 1"]), "1 0 2\n");
    assert_eq!(
        ok(&["encode", "--spec", &s, "--message", "0 0 0"]),
        "1 0 2\n"
    );
    assert_eq!(
        ok(&["encode", "--spec", &s, "--message", "0 1 0"]),
        "1 2 0\n"
    );
    assert_eq!(ok(&["encode", "--spec", &s, "--heads", "0 1 1"]), "1 2 0\n");
}

#[test]
fn mindist_and_enumerate_small_spec() {
    let s = small_spec();
    assert_eq!(ok(&["mindist", "--spec", &s]), "2\n");
    assert_eq!(ok(&["enumerate", "--spec", &s]), "1 0 2\n1 2 0\n");
    assert_eq!(
        ok(&["mindist", "--family", "optimal", "--n", "6", "--d", "3"]),
        "3\n"
    );
}

#[test]
fn mindist_of_single_word_is_infinite() {
    assert_eq!(
        ok(&["mindist", "--family", "optimal", "--n", "3", "--d", "3"]),
        "inf\n"
    );
}

#[test]
fn enumerate_dpgp() {
    assert_eq!(
        ok(&["enumerate", "--family", "dpgp", "--n", "4", "--d", "2"]),
        read_golden("enumerate_dpgp_4_2.txt")
    );
}

#[test]
fn decode_text_and_json() {
    let s = small_spec();
    assert_eq!(
        ok(&["decode", "--spec", &s, "--received", "2 -1 2"]),
        "heads=0 0 1\nmessage=0 0 0\ncodeword=1 0 2\n"
    );
    let json = ok(&[
        "decode",
        "--spec",
        &s,
        "--received",
        "1 3 0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["codeword"], serde_json::json!([1, 2, 0]));
    assert_eq!(v["message"], serde_json::json!([0, 1, 0]));
}

#[test]
fn dpgp_round_trip_and_failure() {
    let word = ok(&[
        "encode",
        "--family",
        "dpgp",
        "--n",
        "5",
        "--d",
        "2",
        "--message",
        "4 1",
    ]);
    let out = ok(&[
        "decode",
        "--family",
        "dpgp",
        "--n",
        "5",
        "--d",
        "2",
        "--received",
        word.trim(),
    ]);
    assert_eq!(out, format!("message=4 1\ncodeword={word}"));
    let (code, _, err) = call(&[
        "decode",
        "--family",
        "dpgp",
        "--n",
        "4",
        "--d",
        "2",
        "--received",
        "0 2 2 2",
    ]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("not a permutation"), "{err}");
}

#[test]
fn simulate_csv_is_deterministic() {
    let args = [
        "simulate", "--family", "optimal", "--n", "32", "--d", "6", "--noise", "2", "--trials",
        "500", "--seed", "9",
    ];
    let out = ok(&args);
    assert_eq!(
        out,
        "n,d,noise_max,trials,word_errors,wer,seed\n32,6,2,500,0,0.000000,9\n"
    );
    assert_eq!(ok(&args), out);
}

#[test]
fn simulate_text_and_json() {
    let base = [
        "simulate", "--family", "optimal", "--n", "16", "--d", "2", "--noise", "3", "--trials",
        "200", "--clip",
    ];
    let text = ok(&[&base[..], &["--format", "text"]].concat());
    let json = ok(&[&base[..], &["--format", "json"]].concat());
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let errors = v["word_errors"].as_u64().unwrap();
    assert!(errors > 0 && errors <= 200);
    assert!(text.contains(&format!("word_errors={errors}\n")), "{text}");
}

#[test]
fn simulate_reports_certified_distance_without_d() {
    let out = ok(&["simulate", "--spec", &small_spec(), "--trials", "10"]);
    assert!(out.ends_with("\n3,1,0,10,0,0.000000,1\n"), "{out}");
}

#[test]
fn verify_matches_golden() {
    assert_eq!(
        ok(&["verify", "--seed", "1"]),
        read_golden("verify_seed1.txt")
    );
    let json = ok(&["verify", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
}

#[test]
fn usage_errors_exit_1() {
    for (args, unknown) in [
        (vec!["--bogus"], true),
        (vec!["mindist", "--spec", "x", "--frob"], true),
        (vec!["frobnicate"], true),
        (vec!["encode", "--spec"], false),
        (
            vec!["gen", "--family", "hexagonal", "--n", "3", "--d", "1"],
            false,
        ),
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty());
        assert!(err.contains("--help"), "{err}");
        if unknown {
            assert!(err.contains("Usage: permcode"), "{err}");
        }
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("simulate"));
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.spec");
    std::fs::write(&bad, "# header\n0\n\n0 5\n").unwrap();
    let (code, _, err) = call(&["mindist", "--spec", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("line 4"), "{err}");

    let s = small_spec();
    for args in [
        vec!["encode", "--spec", &s, "--message", "0 2 0"],
        vec!["encode", "--spec", &s, "--heads", "0 0 0"],
        vec!["decode", "--spec", &s, "--received", "1 2"],
        vec![
            "enumerate",
            "--family",
            "optimal",
            "--n",
            "12",
            "--d",
            "1",
            "--max-size",
            "1000",
        ],
        vec!["gen", "--family", "optimal", "--n", "4", "--d", "0"],
        vec!["gen", "--family", "kloeve", "--n", "4", "--d", "2"],
        vec!["encode", "--spec", "/nonexistent/x.spec", "--message", "0"],
        vec!["simulate", "--spec", &s, "--trials", "0"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, EXIT_INVALID, "{args:?}");
        assert!(err.starts_with("error: "), "{err}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_permcode");
    let s = small_spec();
    let out = Command::new(bin)
        .args(["encode", "--spec", &s, "--heads", "0 0 1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, b"1 0 2\n");
    let out = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["encode", "--spec", &s, "--heads", "9 9 9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

use std::path::PathBuf;

use clap::Parser;
use nildegen_cli::{dispatch, run, Cli, EXIT_FAIL, EXIT_INPUT, EXIT_OK};

fn call(args: &[&str]) -> nildegen_cli::Output {
    run(std::iter::once("nildegen").chain(args.iter().copied()))
}

fn write(name: &str, text: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("commands");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const GF7_A2: &str = r#"{"field":{"char":7},"entries":[{"i":2,"j":2,"k":1,"c":"1"},{"i":2,"j":3,"k":1,"c":"1"},{"i":3,"j":3,"k":1,"c":"2"}]}"#;

#[test]
fn unknown_subcommand_is_an_input_error() {
    assert_eq!(call(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(
        call(&["hasse", "--char", "0", "--format", "svg"]).code,
        EXIT_INPUT
    );
    assert_eq!(call(&["hasse", "--char", "4"]).code, EXIT_INPUT);
    assert_eq!(call(&["--help"]).code, EXIT_OK);
}

#[test]
fn catalog_lists_the_table() {
    let out = call(&["catalog"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 6);
    assert!(out.stdout.contains("112+123+213"));
    assert!(out.stdout.contains("221+231+δ*331"));
}

#[test]
fn invariants_are_json() {
    let out = call(&["invariants", "c5"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["profile"]["nilpotency_class"], 3);
    assert_eq!(call(&["invariants", "z9"]).code, EXIT_INPUT);
}

#[test]
fn act_and_identify_round_trip() {
    let file = write(
        "c3.json",
        r#"{"field":{"char":7},"entries":[{"i":2,"j":2,"k":1,"c":"1"},{"i":3,"j":3,"k":1,"c":"1"}]}"#,
    );
    let out = call(&["act", &file, r#"[[1,0,0],[0,1,2],[0,3,1]]"#]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let moved = write("c3_moved.json", &out.stdout);
    let id = call(&["identify", &moved]);
    let v: serde_json::Value = serde_json::from_str(&id.stdout).unwrap();
    assert_eq!(v["id"], "c3");
    let moved = call(&[
        "act",
        &write("a2.json", GF7_A2),
        "[[3,0,0],[1,1,0],[0,5,1]]",
    ]);
    let id = call(&["identify", &write("a2_moved.json", &moved.stdout)]);
    let v: serde_json::Value = serde_json::from_str(&id.stdout).unwrap();
    assert_eq!(v["id"], "a(2)");
    assert_eq!(
        call(&["act", &file, "[[1,0,0],[0,1,0],[0,1,0]]"]).code,
        EXIT_INPUT
    );
    let bad = write(
        "bad.json",
        r#"{"field":{"char":7},"entries":[{"i":1,"j":1,"k":1,"c":"1"}]}"#,
    );
    assert_eq!(call(&["identify", &bad]).code, EXIT_FAIL);
}

#[test]
fn verify_witness_exit_codes() {
    let ok = write(
        "ok.json",
        r#"{"src":"c3","dst":"c1","char":2,"matrix":[["1","0","0"],["0","t","0"],["0","0","1"]]}"#,
    );
    assert_eq!(call(&["verify-witness", &ok]).code, EXIT_OK);
    let wrong = write(
        "wrong.json",
        r#"{"src":"c3","dst":"l1","char":0,"matrix":[["1","0","0"],["0","t","0"],["0","0","1"]]}"#,
    );
    let out = call(&["verify-witness", &wrong]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("coefficient 231"));
    let pole = write(
        "pole.json",
        r#"{"src":"c5","dst":"a0","char":0,"matrix":[["1","0","0"],["0","1","0"],["0","0","t"]]}"#,
    );
    assert_eq!(call(&["verify-witness", &pole]).code, EXIT_FAIL);
    let malformed = write(
        "malformed.json",
        r#"{"src":"c3","dst":"c1","char":0,"matrix":[["1"]]}"#,
    );
    assert_eq!(call(&["verify-witness", &malformed]).code, EXIT_INPUT);
    assert_eq!(
        call(&["verify-witness", "/nonexistent/witness.json"]).code,
        EXIT_INPUT
    );
}

#[test]
fn search_is_deterministic_and_reads_the_seed_variable() {
    let args = ["nildegen", "search-witness", "c5", "c3", "--budget", "3000"];
    let a = call(&args[1..]);
    assert_eq!(a, call(&args[1..]));
    assert_eq!(a.code, EXIT_OK);
    let Cli { command } = Cli::try_parse_from(args).unwrap();
    let from_env = dispatch(command, Some("9"));
    let Cli { command } = Cli::try_parse_from(args.iter().copied().chain(["--seed", "9"])).unwrap();
    assert_eq!(from_env, dispatch(command, None));
    let Cli { command } = Cli::try_parse_from(args).unwrap();
    assert_eq!(dispatch(command, Some("nine")).code, EXIT_INPUT);
}

#[test]
fn hasse_is_byte_identical_across_runs() {
    for c in ["0", "2"] {
        let a = call(&["hasse", "--char", c, "--format", "dot"]);
        assert_eq!(a.code, EXIT_OK);
        assert_eq!(a, call(&["hasse", "--char", c, "--format", "dot"]));
    }
    assert_eq!(call(&["hasse", "--char", "3"]).code, EXIT_OK);
}

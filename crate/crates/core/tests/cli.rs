use std::process::Command;

use wfrob::cli::{run_args, EXIT_GOLDEN, EXIT_INVALID, EXIT_LG, EXIT_OK, EXIT_VERIFY};

fn run(args: &[&str]) -> wfrob::cli::Outcome {
    run_args(std::iter::once("wfrob").chain(args.iter().copied()))
}

#[test]
fn invalid_arguments_exit_2() {
    for args in [
        &["build", "--l", "1", "--k", "1"][..],
        &["build", "--l", "3", "--k", "3"],
        &["lg-check", "--l", "2", "--k", "1", "--samples", "0"],
        &["build", "--l", "2", "--k", "1", "--tol", "bogus=1"],
        &["build", "--l", "2", "--k", "1", "--tol", "pencil=-1"],
        &["example", "a9k9"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).code, EXIT_INVALID, "{args:?}");
    }
}

#[test]
fn build_json_is_byte_identical() {
    let a = run(&["build", "--l", "3", "--k", "2"]);
    let b = run(&["build", "--l", "3", "--k", "2"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.output, b.output);
    let v: serde_json::Value = serde_json::from_str(&a.output).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["group"]["l"], 3);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 5);
}

#[test]
fn text_format_lists_the_potential() {
    let o = run(&["example", "a3k2", "--format", "text"]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o.message);
    assert!(o.output.contains("log"), "{}", o.output);
}

#[test]
fn examples_match_golden_files() {
    for name in ["a2k1", "a3k1", "a3k2"] {
        let o = run(&["example", name]);
        assert_eq!(o.code, EXIT_OK, "{name}: {:?}", o.message);
    }
}

#[test]
fn corrupted_example_prints_a_diff() {
    let o = run(&["example", "a2k1", "--corrupt"]);
    assert_eq!(o.code, EXIT_GOLDEN);
    let diff = o.message.unwrap();
    assert!(diff.contains("--- golden") && diff.contains("+++ computed"), "{diff}");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "--l", "3", "--k", "1"]).code, EXIT_OK);
    let bad = run(&["verify", "--l", "3", "--k", "1", "--corrupt"]);
    assert_eq!(bad.code, EXIT_VERIFY);
    assert!(bad.message.unwrap().contains("failed"));
    assert_eq!(run(&["verify", "--l", "2", "--k", "1", "--tol", "pencil=1e-300"]).code, EXIT_VERIFY);
}

#[test]
fn lg_check_exit_codes() {
    assert_eq!(run(&["lg-check", "--l", "2", "--k", "1", "--samples", "4"]).code, EXIT_OK);
    assert_eq!(run(&["lg-check", "--l", "2", "--k", "1", "--samples", "4", "--tol", "pullback=1e-300"]).code, EXIT_LG);
}

#[test]
fn binary_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("wfrob-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2k1.json");
    let status = Command::new(env!("CARGO_BIN_EXE_wfrob"))
        .args(["build", "--l", "2", "--k", "1", "--out"])
        .arg(&path)
        .env("WFROB_THREADS", "1")
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, run(&["build", "--l", "2", "--k", "1"]).output);
    let status = Command::new(env!("CARGO_BIN_EXE_wfrob")).args(["build", "--l", "1", "--k", "1"]).stderr(std::process::Stdio::null()).status().unwrap();
    assert_eq!(status.code(), Some(EXIT_INVALID));
    std::fs::remove_dir_all(&dir).unwrap();
}

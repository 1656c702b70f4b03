use std::process::{Command, Output};

use bggkit::{emit_json, parse_args, run_report, Report};

fn bggkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bggkit"))
        .args(args)
        .env_remove("BGGKIT_GUARDRAIL_SCALE")
        .output()
        .expect("binary runs")
}

fn report(s: &str) -> Report {
    let job = parse_args(std::iter::once("bggkit").chain(s.split_whitespace())).unwrap();
    run_report(&job).unwrap()
}

#[test]
fn a1_borel_trivial_components() {
    let r = report("report --type A1 --crossed 1 --weight 0");
    assert_eq!(r.bgg.degree_counts, vec![1, 1]);
    assert!(r.bgg.components.iter().all(|c| c.casimir.to_string() == "0/1"));
}

#[test]
fn a2_borel_trivial_components() {
    let r = report("report --type A2 --crossed 1,2 --weight 0,0");
    assert_eq!(r.bgg.degree_counts, vec![1, 2, 2, 1]);
    assert!(r.bgg.components.iter().all(|c| c.casimir.to_string() == "0/1" && c.identity_holds));
}

#[test]
fn json_round_trip() {
    for s in [
        "report --type B2 --crossed 2 --weight 1,0",
        "verify --type G2 --crossed 1 --weight 0,1",
    ] {
        let r = report(s);
        let json = emit_json(&r);
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_json(&back), json);
    }
}

#[test]
fn report_is_byte_identical_across_runs() {
    let args = ["report", "--type", "C3", "--crossed", "2", "--weight", "1,0,0"];
    let a = bggkit(&args);
    let b = bggkit(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dot_output() {
    let out = bggkit(&["diagram", "--type", "A1", "--crossed", "1", "--weight", "0"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 2);
    assert_eq!(dot.matches(" -> ").count(), 1);
    let out = bggkit(&["diagram", "--type", "A2", "--crossed", "1,2", "--weight", "0,0"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 6);
    assert_eq!(dot.matches(" -> ").count(), 8);
    assert!(dot.contains("lowest (2,2)\\ncasimir 0/1"));
}

#[test]
fn text_output() {
    let out = bggkit(&["verify", "--type", "A2", "--crossed", "1", "--weight", "1,1", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verification: PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bggkit(args).status.code().unwrap();
    assert_eq!(code(&["report", "--type", "A2", "--crossed", "1", "--weight", "0,0"]), 0);
    assert_eq!(code(&["report", "--type", "A2", "--crossed", "3", "--weight", "0,0"]), 2);
    assert_eq!(code(&["report", "--type", "A2", "--crossed", "1", "--weight", "0"]), 2);
    assert_eq!(code(&["report", "--type", "H3", "--crossed", "1", "--weight", "0,0,0"]), 2);
    assert_eq!(code(&["report", "--type", "A2", "--weight", "0,0"]), 2);
    assert_eq!(code(&["verify", "--type", "B3", "--crossed", "1", "--weight", "0,1,0", "--max-dim", "5"]), 3);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn guardrail_scale_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_bggkit"))
        .args(["report", "--type", "B3", "--crossed", "1,2,3", "--weight", "0,0,0"])
        .env("BGGKIT_GUARDRAIL_SCALE", "0.00001")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_bggkit"))
        .args(["report", "--type", "A1", "--crossed", "1", "--weight", "0"])
        .env("BGGKIT_GUARDRAIL_SCALE", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("bggkit-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a1.json");
    let out = bggkit(&["report", "--type", "A1", "--crossed", "1", "--weight", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.representation.dimension, 3);
    std::fs::remove_dir_all(dir).unwrap();
}

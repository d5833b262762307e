use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn reference() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples/reference.ifctp")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn ifctp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ifctp")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ifctp-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    path
}

const REFERENCE_PAYOFF: &str = "640,787,163,190";

#[test]
fn solve_report_matches_golden() {
    let file = reference();
    let out = ifctp(&[
        "solve",
        file.to_str().unwrap(),
        "--override-payoff",
        REFERENCE_PAYOFF,
        "--competitor",
        "baseline=[640,1020]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("solve_reference.txt"));
}

#[test]
fn solve_report_is_deterministic() {
    let file = reference();
    let args = ["solve", file.to_str().unwrap(), "--report", "machine"];
    let a = ifctp(&args);
    let b = ifctp(&args);
    assert_eq!(a.stdout, b.stdout);
    let seq = ifctp(&["solve", file.to_str().unwrap(), "--report", "machine", "--sequential"]);
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn machine_report_has_stable_keys() {
    let file = reference();
    let out = ifctp(&[
        "solve",
        file.to_str().unwrap(),
        "--override-payoff",
        REFERENCE_PAYOFF,
        "--report",
        "machine-readable",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let map: HashMap<&str, &str> = text.lines().map(|l| l.split_once('=').unwrap()).collect();
    assert_eq!(map["status"], "optimal");
    assert_eq!(map["payoff.source"], "override");
    let num = |k: &str| map[k].parse::<f64>().unwrap();
    assert!((num("ideal.center") - 830.0).abs() < 1e-9);
    assert!((num("ideal.width") - 163.0).abs() < 1e-9);
    assert!((num("lambda") - 0.776).abs() < 0.005);
    assert!((num("distance") - 13.29).abs() < 0.25);
    assert!((num("z.upper") - num("z.lower") - 2.0 * num("z.width")).abs() < 1e-9);
    assert_eq!(num("plan.violations"), 0.0);
}

#[test]
fn compare_without_an_instance() {
    let out = ifctp(&[
        "compare",
        "--ideal",
        "734.5,26.75",
        "--competitor",
        "baseline=[734,770]",
        "--competitor",
        "proposed=[712.5,767.5]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("compare_second.txt"));
}

#[test]
fn compare_against_an_instance() {
    let file = reference();
    let out = ifctp(&[
        "compare",
        file.to_str().unwrap(),
        "--override-payoff",
        REFERENCE_PAYOFF,
        "--competitor",
        "baseline=[640,1020]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("baseline      [640.00, 1020.00] = <830.00, 190.00>, distance 27.00"),
        "{text}"
    );
    assert!(text.ends_with("closest       compromise\n"), "{text}");
}

#[test]
fn ideal_and_payoff_commands() {
    let file = reference();
    let out = ifctp(&["ideal", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ideal         <830.00, 163.00>\n");

    let out = ifctp(&["payoff", file.to_str().unwrap(), "--report", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("payoff.l1=640\n"), "{text}");
    assert!(text.contains("payoff.l2=163\n"), "{text}");

    let out = ifctp(&["payoff", file.to_str().unwrap(), "--override-payoff", REFERENCE_PAYOFF]);
    assert!(stdout(&out).contains("lower        640.00     787.00"));
}

#[test]
fn oracle_check_passes_on_reference() {
    let file = reference();
    let out = ifctp(&["oracle-check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5, "{text}");
    assert!(text.ends_with("all checks passed\n"));
}

#[test]
fn oracle_check_refuses_large_instances() {
    let mut text = String::from("dims 5 6\n");
    for i in 1..=5 {
        for j in 1..=6 {
            text.push_str(&format!("cost {i} {j} = [1,2] fixed [3,4]\n"));
        }
        text.push_str(&format!("supply {i} = [10,12]\n"));
    }
    for j in 1..=6 {
        text.push_str(&format!("demand {j} = [5,6]\n"));
    }
    let file = temp_file("large.ifctp", &text);
    let out = ifctp(&["oracle-check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at most 20 routes"));
}

#[test]
fn infeasible_payoff_exits_2() {
    let file = reference();
    let out = ifctp(&["solve", file.to_str().unwrap(), "--override-payoff", "100,200,10,20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("status        infeasible"));
}

#[test]
fn invalid_input_exits_3() {
    let text = std::fs::read_to_string(reference()).unwrap();
    let reversed = temp_file("reversed.ifctp", &text.replace("cost 1 1 = [4,8]", "cost 1 1 = [8,4]"));
    let out = ifctp(&["solve", reversed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 6: interval lo > hi"));

    let missing = temp_file("missing.ifctp", &text.replace("demand 4 = [20,22]", ""));
    let out = ifctp(&["solve", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 4 demand entries, found 3"));

    assert_eq!(ifctp(&["solve", "/nonexistent/file.ifctp"]).status.code(), Some(3));
    assert_eq!(ifctp(&["compare", "--competitor", "a=[1,2]"]).status.code(), Some(3));
    assert_eq!(
        ifctp(&["payoff", reversed.to_str().unwrap(), "--override-payoff", "1,2,3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        ifctp(&["payoff", reversed.to_str().unwrap(), "--override-payoff", "9,2,3,4"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn node_limit_exits_4() {
    let file = reference();
    let out = ifctp(&["solve", file.to_str().unwrap(), "--node-limit", "2"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn help_exits_0() {
    let out = ifctp(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("oracle-check"));
}

use std::process::Command;

use serde_json::Value;

fn overgroup(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_overgroup"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = overgroup(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn solve_reports_verdict() {
    let v = json(&["solve", "--spec", "exact@(0)", "--word", "d"]);
    assert_eq!(v["identity"], true);
    assert_eq!(v["normal_form"], "d");
    assert_eq!(v["depth_used"], 0);
    let v = json(&[
        "solve",
        "--spec",
        "beta-01@121(0)",
        "--word",
        "BabaBabaBabaBaba",
    ]);
    assert_eq!(v["identity"], true);
    assert_eq!(v["depth_used"], 4);
}

#[test]
fn oracle_commands() {
    let v = json(&["oracle", "classify", "1201(201)"]);
    assert_eq!(v["oracle"], "(120)");
    assert_eq!(v["class"]["class"], "omega0");
    let v = json(&["oracle", "shift", "(012)"]);
    assert_eq!(v["shifted"], "(120)");
}

#[test]
fn word_commands() {
    assert_eq!(json(&["word", "reduce", "aabcx"])["normal_form"], "D");
    let v = json(&[
        "word",
        "nucleus",
        "--oracle",
        "121(0)",
        "--word",
        "BabaBabaBabaBaba",
        "--depth",
        "4",
    ]);
    assert_eq!(v["nucleus"]["entries"]["1111"], "B");
    assert_eq!(v["nucleus"]["entries"]["0000"], "");
    let v = json(&["word", "order", "--spec", "exact@(012)", "--word", "ad"]);
    assert_eq!(v["order"], 4);
    let (code, dot, _) = overgroup(&[
        "word", "sections", "--oracle", "(0)", "--word", "aba", "--depth", "1", "--dot",
    ]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn growth_csv() {
    let (code, out, _) = overgroup(&["growth", "--spec", "exact@(0)", "--rmax", "3", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "r,size\n0,1\n1,3\n2,5\n3,7\n");
}

#[test]
fn ball_dot_is_byte_identical_across_runs() {
    let args = ["ball", "--spec", "alpha@(0)", "--radius", "2", "--dot"];
    let first = overgroup(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, overgroup(&args));
}

#[test]
fn metric_and_distinguish() {
    let v = json(&["metric", "alpha@(0)", "exact@(0)", "--max-r", "4"]);
    assert_eq!(v["result"]["kind"], "exact");
    assert_eq!(v["result"]["n"], 0);
    assert_eq!(v["result"]["witness"], "d");
    let v = json(&["distinguish", "alpha@(0)", "alpha@(1)", "--max-len", "8"]);
    assert_eq!(v["length"], 8);
}

#[test]
fn construct_commands() {
    assert_eq!(json(&["construct", "vn", "--n", "1"])["word"], "xadax");
    assert_eq!(
        json(&["construct", "V", "--y", "B", "--path", "0"])["word"],
        "aBa"
    );
    let v = json(&[
        "construct",
        "wij",
        "--oracle",
        "(0)",
        "--i",
        "0",
        "--j",
        "1",
        "--verify",
    ]);
    assert_eq!(v["word"], "B");
    assert_eq!(v["contract_holds"], true);
    assert_eq!(json(&["construct", "fmap", "xB"])["image"], "b");
}

#[test]
fn verify_exit_status() {
    let (code, out, _) = overgroup(&["verify", "all", "--quick"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let (code, table, _) = overgroup(&["verify", "figure3", "--table"]);
    assert_eq!(code, 0);
    assert!(table.contains("figure3.labels"));
}

#[test]
fn error_exit_codes() {
    // usage errors, from clap and from spec validation
    assert_eq!(overgroup(&["frobnicate"]).0, 2);
    assert_eq!(
        overgroup(&["solve", "--spec", "beta-01@(012)", "--word", "a"]).0,
        2
    );
    assert_eq!(overgroup(&["verify", "no-such-suite"]).0, 2);
    let (code, _, err) = overgroup(&["solve", "--spec", "exact@(0)", "--word", "abz"]);
    assert_eq!(code, 2);
    assert!(err.contains('z'));
    // resource caps
    assert_eq!(
        overgroup(&[
            "ball",
            "--spec",
            "alpha@(0)",
            "--radius",
            "3",
            "--max-elements",
            "20"
        ])
        .0,
        3
    );
    assert_eq!(
        overgroup(&[
            "distinguish",
            "exact@(0)",
            "exact@(0)",
            "--max-words",
            "100"
        ])
        .0,
        3
    );
}

use regcon_cli::{run, Output};
use serde_json::Value;

fn regcon(args: &[&str]) -> Output {
    regcon_stdin(args, "")
}

fn regcon_stdin(args: &[&str], stdin: &str) -> Output {
    run(std::iter::once("regcon").chain(args.iter().copied()), stdin)
}

fn json(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = regcon_stdin(&full, stdin);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    (out.code, v)
}

fn classes(v: &Value) -> Vec<String> {
    v["constants"].as_array().unwrap().iter().map(|c| c["constant"]["class"].as_str().unwrap().to_string()).collect()
}

#[test]
fn relation_ranks() {
    for (g, rank) in [("S 3", 1), ("CxC 2 2", 1), ("C 12", 0), ("D 8", 3), ("D 12", 4)] {
        let (code, v) = json(&["relations", g], "");
        assert_eq!(code, 0);
        assert_eq!(v["rank"], rank, "{g}");
        assert_eq!(v["relations"].as_array().unwrap().len(), rank);
    }
    let (_, v) = json(&["relations", "S 3"], "");
    assert_eq!(v["relations"][0]["text"], "1*[1] - 2*[C2] - 1*[C3] + 2*[G]");
}

#[test]
fn permutation_group_input() {
    let (code, v) = json(&["relations", "perm: (1 2 3), (1 2)"], "");
    assert_eq!(code, 0);
    assert_eq!(v["order"], 6);
    assert_eq!(v["rank"], 1);
    let (code, v) = json(&["relations", "-"], "(1 2)(3 4), (1 3)(2 4)");
    assert_eq!(code, 0);
    assert_eq!(v["order"], 4);
}

#[test]
fn dihedral_constants() {
    for g in ["D 6", "D 10", "D 14"] {
        let p = (g[2..].parse::<u64>().unwrap() / 2).to_string();
        let (code, v) = json(&["regconst", g], "");
        assert_eq!(code, 0);
        assert_eq!(classes(&v), vec![p.clone(); 3], "{g}");
    }
    let (_, v) = json(&["regconst", "D 6", "--subgroup", "G"], "");
    assert_eq!(v["constants"][0]["class"], "3");
    assert_eq!(v["constants"][0]["exact"], "1/3");
}

#[test]
fn sl2f3_table() {
    for rel in ["[C4] - [C6] - [Q8] + [G]", "[C2] - 3*[C4] + 2*[Q8]"] {
        let (code, v) = json(&["regconst", "SL2F3", "--relation", rel], "");
        assert_eq!(code, 0);
        let mut got = classes(&v);
        got.sort();
        assert_eq!(got, ["1", "1", "1", "2", "2"], "{rel}");
    }
}

#[test]
fn empty_relation_is_trivial() {
    let (code, v) = json(&["regconst", "D 12", "--relation", "0"], "");
    assert_eq!(code, 0);
    assert!(classes(&v).iter().all(|c| c == "1"));
}

#[test]
fn padic_classes() {
    let (_, v) = json(&["regconst", "D 6", "--orbit", "0", "--primes", "2,3"], "");
    assert_eq!(v["constants"][0]["padic"], serde_json::json!(["u≡3", "3·square unit"]));
}

#[test]
fn twists() {
    let (code, v) = json(&["tau", "D 6", "--primes", "3"], "");
    assert_eq!(code, 0);
    assert_eq!(v["twists"][0]["dimension"], 4);
    let (code, v) = json(&["tau", "C 6"], "");
    assert_eq!(code, 0);
    assert!(v["twists"].as_array().unwrap().is_empty());
    let (code, v) = json(&["tau", "A 5"], "");
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
}

const KLEIN: &str = r#"{"setup":{"group":"CxC 2 2","inertia":"C2a","l":5,"q":5},"reduction":{"kind":"nonsplit_mult","n":3},"case":{"case":"2NS"}}"#;

#[test]
fn local_klein_four() {
    let (code, v) = json(&["local"], KLEIN);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["holds"], true);
    assert_eq!(v["report"]["per_relation"][0]["c_v"], "2");
    assert_eq!(v["report"]["per_relation"][0]["d_v"], "2");
    // wrong V: a failed check with a witness
    let wrong = KLEIN.replace(r#""case":{"case":"2NS"}"#, r#""v":{"type":"zero"}"#);
    let (code, v) = json(&["local"], &wrong);
    assert_eq!(code, 2);
    assert!(v["report"]["witness"].is_string());
    assert_eq!(v["report"]["witness_value"], "2");
}

#[test]
fn local_input_errors() {
    let out = regcon_stdin(&["local"], "{not json");
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error[Parse]"));
    let missing = r#"{"setup":{"group":"D 6","inertia":"C3","l":5,"q":5},"reduction":{"kind":"pot_good","delta":4},"case":{"case":"3C","epsilon":1}}"#;
    let (code, v) = json(&["local"], missing);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "MissingFlag");
    let out = regcon(&["local", "/nonexistent/input.json"]);
    assert_eq!(out.code, 1);
}

#[test]
fn tables() {
    let (code, v) = json(&["tables"], "");
    assert_eq!(code, 0);
    assert_eq!(v["tables"].as_array().unwrap().len(), 8);
    let (code, _) = json(&["tables", "D8", "--star", "true"], "");
    assert_eq!(code, 0);
    assert_eq!(regcon(&["tables", "Q16"]).code, 1);
}

#[test]
fn phi() {
    let identity = r#"{"rank":2,"n":[[1,0],[0,1]],"f_on_m":[[1,0],[0,1]],"f_on_mprime":[[1,0],[0,1]],"pairing":[[1,0],[0,1]]}"#;
    let (code, v) = json(&["phi"], identity);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    let (code, v) = json(&["phi", "--random", "5", "--seed", "9", "--e-max", "6", "--f-max", "6"], "");
    assert_eq!(code, 0);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 5);
    // F_M·N ≠ N·F_M'
    let bad = r#"{"rank":1,"n":[[2]],"f_on_m":[[1]],"f_on_mprime":[[-1]]}"#;
    assert_eq!(regcon_stdin(&["phi"], bad).code, 1);
}

#[test]
fn phi41_experiment_reports_without_claiming() {
    let (code, v) = json(&["phi41", "--count", "20", "--seed", "3"], "");
    assert_eq!(code, 0);
    assert_eq!(v["pairs"], 20);
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["regconst", "SL2F3", "--seed", "4"],
        vec!["phi", "--random", "4", "--seed", "17", "--format", "json"],
        vec!["tau", "D 12", "--format", "tsv"],
    ] {
        assert_eq!(regcon(&args), regcon(&args));
    }
    assert_eq!(regcon_stdin(&["local", "--format", "json"], KLEIN), regcon_stdin(&["local", "--format", "json"], KLEIN));
}

#[test]
fn usage() {
    assert_eq!(regcon(&[]).code, 1);
    assert_eq!(regcon(&["frobnicate"]).code, 1);
    assert_eq!(regcon(&["relations", "S 3", "--format", "xml"]).code, 1);
    let help = regcon(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("relations"));
    let out = regcon(&["relations", "D 7x"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("UnknownGroup"));
    let out = regcon(&["relations", "perm: (1 2 3"]);
    assert!(out.stderr.contains("parse error at 12"));
    assert_eq!(regcon(&["relations", "S 6", "--bound", "100"]).code, 1);
}

#[test]
fn binary_reads_stdin_and_sets_exit_code() {
    use std::io::Write;
    use std::process::{Command, Stdio};
    let wrong = KLEIN.replace(r#""case":{"case":"2NS"}"#, r#""v":{"type":"zero"}"#);
    for (input, code) in [(KLEIN.to_string(), 0), (wrong, 2)] {
        let mut child = Command::new(env!("CARGO_BIN_EXE_regcon"))
            .args(["local", "--format", "tsv"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
        let out = child.wait_with_output().unwrap();
        assert_eq!(out.status.code(), Some(code));
        assert!(String::from_utf8(out.stdout).unwrap().starts_with("# C_v and D_V"));
    }
}

use std::path::PathBuf;
use std::process::Command;

use defeasance::problem::Problem;

fn problems_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "problems"].iter().collect()
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_defeasance")).args(args).current_dir(problems_dir()).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("defeasance-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_reports_verdict_and_exit_code() {
    let (out, _, code) = run(&["solve", "example1.al"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("goal: r | s\nverdict: true\n"), "{out}");
    let (out, _, code) = run(&["solve", "example1.al", "--strategy", "r"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: false"));
}

#[test]
fn missing_query_is_an_error() {
    let path = scratch("noquery.al", "kind: al\nlogic: cpl\npremises: p\nabnormalities: q\nstrategy: r\n");
    let (out, err, code) = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("query"), "{err}");
}

#[test]
fn parse_errors_carry_lines() {
    let path = scratch("bad.al", "kind: al\nlogic: cpl\npremises: p &\n");
    let (_, err, code) = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn sigma_and_phi() {
    assert_eq!(run(&["sigma", "example1.al"]).0, "{p & ~p, q & ~q}\n");
    assert_eq!(run(&["phi", "example1.al"]).0, "{p & ~p}\n{q & ~q}\n");
}

#[test]
fn preferred_sets_of_example_two() {
    let (out, _, code) = run(&["extensions", "example2.aba"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{-p | -q}\n{q}\n");
}

#[test]
fn attack_free_theory_has_one_extension_with_everything() {
    let (out, _, _) = run(&["extensions", "attack_free.aspic"]);
    assert_eq!(out, "{a1, a2, a3}\n");
}

#[test]
fn translated_example_one_has_two_stable_extensions() {
    let (aba, _, code) = run(&["translate", "example1.al", "--direction", "al2aba"]);
    assert_eq!(code, 0);
    let path = scratch("example1.aba", &aba);
    let (out, _, _) = run(&["extensions", path.to_str().unwrap(), "--semantics", "stb"]);
    assert_eq!(out, "{-(p & ~p), -(r & ~r), -(s & ~s)}\n{-(q & ~q), -(r & ~r), -(s & ~s)}\n");
}

#[test]
fn example_three_translates_to_four_assumptions() {
    let (out, _, code) = run(&["translate", "example3.aspic", "-d", "aspic2aba"]);
    assert_eq!(code, 0);
    let p = Problem::parse(&out).unwrap();
    assert_eq!(p.assumptions.len(), 4);
    let abf = p.abf().unwrap();
    assert_eq!(abf.assumptions().len(), 4);
}

#[test]
fn compound_contrary_leaves_the_fragment() {
    let (_, err, code) = run(&["translate", "compound.aba", "-d", "aba2al"]);
    assert_eq!(code, 2);
    assert!(err.contains("not an atom"), "{err}");
}

#[test]
fn every_translation_reparses() {
    for (file, dir) in [
        ("example1.al", "al2aba"),
        ("example1.al", "al2aspic"),
        ("example3.aspic", "aspic2aba"),
        ("tokens.aba", "aba2al"),
    ] {
        let (out, err, code) = run(&["translate", file, "-d", dir]);
        assert_eq!(code, 0, "{file} {dir}: {err}");
        Problem::parse(&out).unwrap();
    }
}

#[test]
fn direction_must_fit_the_kind() {
    let (_, _, code) = run(&["translate", "example2.aba", "-d", "al2aba"]);
    assert_eq!(code, 2);
}

#[test]
fn json_keys_are_sorted() {
    let (out, _, _) = run(&["solve", "example2.aba", "--json"]);
    let keys: Vec<usize> =
        ["\"extensions\"", "\"report\"", "\"verdict\"", "\"witnesses\""].iter().map(|k| out.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], true);
}

#[test]
fn check_counts_and_exit() {
    let (out, _, code) = run(&["check", "T8", "--trials", "0"]);
    assert_eq!((out.as_str(), code), ("T8: 0/0 pass\n", 0));
    let (out, _, code) = run(&["check", "T8", "--trials", "200", "--seed", "1"]);
    assert_eq!((out.as_str(), code), ("T8: 200/200 pass\n", 0));
    let (out, _, code) = run(&["check", "T7", "--trials", "200", "--seed", "1"]);
    assert_eq!((out.as_str(), code), ("T7: 200/200 pass\n", 0));
}

#[test]
fn unknown_theorem_is_rejected() {
    let (_, _, code) = run(&["check", "T99"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let runs: Vec<String> = ["1", "4"]
        .iter()
        .map(|threads| {
            let out = Command::new(env!("CARGO_BIN_EXE_defeasance"))
                .args(["check", "C27", "--trials", "50", "--seed", "3", "--json"])
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .unwrap();
            String::from_utf8(out.stdout).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn corpus_round_trips() {
    for entry in std::fs::read_dir(problems_dir()).unwrap() {
        let path = entry.unwrap().path();
        let parsed = Problem::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let again = Problem::parse(&parsed.to_string()).unwrap();
        assert_eq!(parsed, again, "{}", path.display());
    }
}

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use nmr_core::semantics::{expansion_states, kripke_kleene_extension, well_founded_extension};
use nmr_core::{konolige, parse_default_theory, parse_theory, OperatorContext, Theory, TruthFunction};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect()
}

fn fixtures(ext: &str) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(ext))
        .collect();
    names.sort();
    names
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn nmr(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_nmr")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn solve(file: &str, extra: &[&str]) -> Run {
    let path = corpus(file);
    let mut args = vec!["solve", "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    nmr(&args)
}

fn theory_of(file: &str) -> Theory {
    let text = std::fs::read_to_string(corpus(file)).unwrap();
    if file.ends_with(".dt") {
        konolige(&parse_default_theory(&text).unwrap())
    } else {
        parse_theory(&text).unwrap()
    }
}

const AEL_SEMANTICS: [&str; 4] = ["kk", "expansion", "stable", "wf"];
const DL_SEMANTICS: [&str; 6] = ["kk", "expansion", "stable", "wf", "reiter", "weak"];

type World = Vec<String>;

fn worlds(v: &Value) -> Vec<World> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect())
        .collect()
}

fn world_set(v: &Value) -> BTreeSet<World> {
    worlds(v).into_iter().collect()
}

fn validate_state(state: &Value, vocab: &[String]) {
    let kind = state["kind"].as_str().unwrap();
    let (pp, cp) = (worlds(&state["pp"]), worlds(&state["cp"]));
    for w in pp.iter().chain(&cp) {
        let mut sorted = w.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(&sorted, w, "world atoms sorted and distinct");
        assert!(w.iter().all(|a| vocab.contains(a)));
    }
    let (pp_set, cp_set) = (world_set(&state["pp"]), world_set(&state["cp"]));
    assert_eq!(pp_set.len(), pp.len(), "no duplicate worlds");
    assert!(cp_set.is_subset(&pp_set), "cp within pp");
    match kind {
        "total" => assert_eq!(pp_set, cp_set),
        "partial" => assert_ne!(pp_set, cp_set),
        other => panic!("unknown kind {other}"),
    }
}

fn validate_output(json: &Value, logic: &str, semantics: &str, truth: &str) {
    let obj = json.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort();
    let mut expected = vec!["logic", "objective_consequences", "results", "semantics", "truth", "vocabulary"];
    if obj.contains_key("traces") {
        expected.push("traces");
        expected.sort();
    }
    assert_eq!(keys, expected);
    assert_eq!(json["logic"], logic);
    assert_eq!(json["semantics"], semantics);
    assert_eq!(json["truth"], truth);
    let vocab: Vec<String> = json["vocabulary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_str().unwrap().to_string())
        .collect();
    let results = json["results"].as_array().unwrap();
    for r in results {
        validate_state(r, &vocab);
    }
    let consequences = json["objective_consequences"].as_array().unwrap();
    assert_eq!(consequences.len(), results.len());
    for (c, r) in consequences.iter().zip(results) {
        if r["kind"] == "partial" {
            assert!(c.as_array().unwrap().is_empty());
        }
    }
}

#[test]
fn truth_sayer_well_founded() {
    let r = solve("truthsayer.ael", &["--logic", "ael", "--semantics", "wf"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "wf: TOTAL {∅, {P}}\n");
}

#[test]
fn partial_results_print_as_pairs() {
    let r = solve("liar.ael", &["--semantics", "wf"]);
    assert_eq!(r.stdout, "wf: PARTIAL ({∅, {P}}, {{P}})\n");
}

#[test]
fn empty_result_list_is_success() {
    let r = solve("liar.ael", &["--semantics", "stable"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "stable: none\n");
    let r = solve("liar.ael", &["--semantics", "expansion", "--json"]);
    assert_eq!(r.code, 0);
    let json: Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(json["results"].as_array().unwrap().is_empty());
}

#[test]
fn supervaluation_stable_extension() {
    let r = solve("tautology_antecedent.ael", &["--semantics", "stable", "--truth", "sv"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "stable: TOTAL {{P}}\n");
    let r = solve("tautology_antecedent.ael", &["--semantics", "stable"]);
    assert_eq!(r.stdout, "stable: none\n");
}

#[test]
fn nixon_reiter_json() {
    let r = solve("nixon.dt", &["--logic", "dl", "--semantics", "reiter", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let json: Value = serde_json::from_str(&r.stdout).unwrap();
    validate_output(&json, "dl", "reiter", "kleene");
    assert_eq!(json["vocabulary"], serde_json::json!(["R", "Q", "H", "D"]));
    let results = json["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(worlds(&results[0]["pp"]), vec![vec!["H", "Q", "R"]]);
    assert_eq!(worlds(&results[1]["pp"]), vec![vec!["D", "Q", "R"]]);
    assert_eq!(
        json["objective_consequences"],
        serde_json::json!([["R", "Q", "H", "~D"], ["R", "Q", "~H", "D"]])
    );
}

#[test]
fn json_is_valid_for_every_fixture() {
    for file in fixtures(".ael").iter().chain(&fixtures(".dt")) {
        let (logic, list): (&str, &[&str]) = if file.ends_with(".dt") {
            ("dl", &DL_SEMANTICS)
        } else {
            ("ael", &AEL_SEMANTICS)
        };
        for semantics in list {
            for truth in ["kleene", "sv"] {
                let r = solve(file, &["--semantics", semantics, "--truth", truth, "--json", "--trace"]);
                assert_eq!(r.code, 0, "{file} {semantics} {truth}: {}", r.stderr);
                let json: Value = serde_json::from_str(&r.stdout).unwrap();
                validate_output(&json, logic, semantics, truth);
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    for file in ["mutual.ael", "nixon.dt", "swede_japanese_combined.dt"] {
        for flags in [&["--semantics", "stable", "--json", "--trace"][..], &["--semantics", "wf", "--trace"]] {
            let a = solve(file, flags);
            let b = solve(file, flags);
            assert_eq!(a.stdout, b.stdout);
            assert_eq!(a.code, b.code);
        }
    }
}

/// Rebuilds every state of each JSON trace from its initial state and the
/// recorded world changes, and compares the final state with the result.
#[test]
fn traces_replay_to_results() {
    for file in fixtures(".ael").iter().chain(&fixtures(".dt")) {
        for semantics in ["kk", "stable", "wf"] {
            for truth in ["kleene", "sv"] {
                let r = solve(file, &["--semantics", semantics, "--truth", truth, "--json", "--trace"]);
                let json: Value = serde_json::from_str(&r.stdout).unwrap();
                let results = json["results"].as_array().unwrap();
                let traces = json["traces"].as_array().unwrap();
                assert_eq!(traces.len(), results.len(), "{file} {semantics}");
                for (trace, result) in traces.iter().zip(results) {
                    let mut pp = world_set(&trace["initial"]["pp"]);
                    let mut cp = world_set(&trace["initial"]["cp"]);
                    for step in trace["steps"].as_array().unwrap() {
                        let possible = world_set(&step["possible"]);
                        let impossible = world_set(&step["impossible"]);
                        assert!(possible.iter().all(|w| pp.contains(w) && !cp.contains(w)));
                        assert!(impossible.iter().all(|w| pp.contains(w) && !cp.contains(w)));
                        pp.retain(|w| !impossible.contains(w));
                        cp.extend(possible);
                        assert_eq!(pp, world_set(&step["state"]["pp"]));
                        assert_eq!(cp, world_set(&step["state"]["cp"]));
                    }
                    assert_eq!(pp, world_set(&result["pp"]), "{file} {semantics} {truth}");
                    assert_eq!(cp, world_set(&result["cp"]), "{file} {semantics} {truth}");
                }
            }
        }
    }
}

#[test]
fn human_trace_lists_steps() {
    let r = solve("kk_derivation.ael", &["--semantics", "kk", "--trace"]);
    assert_eq!(
        r.stdout,
        "kk: TOTAL {{P}, {P,Q}}\n\
         \x20 0: start ({∅, {P}, {Q}, {P,Q}}, {})\n\
         \x20 1: kk possible {{P,Q}} impossible {∅, {Q}} -> ({{P}, {P,Q}}, {{P,Q}})\n\
         \x20 2: kk possible {{P}} -> ({{P}, {P,Q}}, {{P}, {P,Q}})\n"
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ael");
    std::fs::write(&bad, "P &\n").unwrap();
    let bad = bad.to_str().unwrap();
    let r = nmr(&["solve", "--semantics", "wf", "--input", bad]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("line 1"));

    let modal_dt = dir.path().join("modal.dt");
    std::fs::write(&modal_dt, "K P\n").unwrap();
    let r = nmr(&["translate", "--input", modal_dt.to_str().unwrap()]);
    assert_eq!(r.code, 1);

    let r = solve("monotone_chain.ael", &["--semantics", "wf", "--max-atoms", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("resource cap"));

    let r = solve("truthsayer.ael", &["--logic", "ael", "--semantics", "reiter"]);
    assert_eq!(r.code, 1);
    let r = solve("truthsayer.ael", &["--semantics", "bogus"]);
    assert_eq!(r.code, 1);
    let r = nmr(&["solve", "--semantics", "wf", "--input", "/nonexistent/file.ael"]);
    assert_eq!(r.code, 1);
}

#[test]
fn translate_nixon() {
    let path = corpus("nixon.dt");
    let r = nmr(&["translate", "--input", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "R & Q\n~(H & D)\nK R & ~K ~H -> H\nK Q & ~K ~D -> D\n");
}

#[test]
fn translate_special_cases() {
    let r = nmr(&["translate", corpus("empty.dt").to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, ""));
    let r = nmr(&["translate", corpus("customs.dt").to_str().unwrap()]);
    assert_eq!(r.stdout, "~K ~NatUSA -> NatUSA\n");
}

#[test]
fn translation_round_trips() {
    for file in fixtures(".dt") {
        let r = nmr(&["translate", corpus(&file).to_str().unwrap()]);
        assert_eq!(r.code, 0);
        assert_eq!(parse_theory(&r.stdout).unwrap(), theory_of(&file), "{file}");
    }
}

#[test]
fn check_reports_agreement() {
    let r = nmr(&["check", "--input", corpus("truthsayer.ael").to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("expansions: fast 2 = brute 2; wf: process = algebraic"));
    let r = nmr(&["check", "--input", corpus("nixon.dt").to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("aligned: 2 = 2 extensions\n"));
    for file in fixtures(".ael").iter().chain(&fixtures(".dt")) {
        let r = nmr(&["check", corpus(file).to_str().unwrap()]);
        assert_eq!(r.code, 0, "{file}: {}", r.stdout);
        assert!(!r.stdout.contains("!="));
    }
}

/// Each injected defect is caught on every fixture where it changes an
/// answer: dropping a candidate matters when there is an expansion, and
/// skipping unfounded sets matters when the well-founded extension is more
/// precise than the Kripke-Kleene one.
#[test]
fn check_catches_injected_faults() {
    let mut caught = 0;
    for file in fixtures(".ael").iter().chain(&fixtures(".dt")) {
        let t = theory_of(file);
        let c = OperatorContext::new(t, TruthFunction::Kleene).unwrap();
        let has_expansion = !expansion_states(&c).unwrap().is_empty();
        let needs_mi = kripke_kleene_extension(&c).unwrap().results != well_founded_extension(&c).unwrap().results;
        for (fault, applies) in [("drop-first-candidate", has_expansion), ("skip-mi", needs_mi)] {
            let r = nmr(&["check", corpus(file).to_str().unwrap(), "--inject-fault", fault]);
            if applies {
                assert_eq!(r.code, 4, "{file} {fault}");
                assert!(r.stdout.contains("counterexample:"));
                caught += 1;
            } else {
                assert!(r.code == 0 || r.code == 4, "{file} {fault}");
            }
        }
    }
    assert!(caught >= 10);
}

#[test]
fn counterexample_is_minimized() {
    let r = nmr(&["check", corpus("unintended_expansion.ael").to_str().unwrap(), "--inject-fault", "skip-mi"]);
    assert_eq!(r.code, 4);
    let dump: Vec<&str> = r
        .stdout
        .split("counterexample:\n")
        .nth(1)
        .unwrap()
        .lines()
        .take_while(|l| !l.starts_with("counterexample findings"))
        .collect();
    assert_eq!(dump, vec!["  vocab: P Q", "  K Q -> Q"]);
}

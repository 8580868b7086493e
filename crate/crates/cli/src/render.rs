//! Human-readable and JSON rendering of solver results.

use std::fmt::Write;

use nmr_core::semantics::TraceStep;
use nmr_core::truth::entails;
use nmr_core::{
    BeliefState, DerivationTrace, Error, Formula, PartialBeliefState, SemanticsResult, TruthFunction, Vocabulary,
};
use serde::Serialize;

pub struct Request {
    pub logic: &'static str,
    pub semantics: &'static str,
    pub truth: TruthFunction,
    pub trace: bool,
}

type JsonWorld = Vec<String>;

#[derive(Serialize)]
struct JsonState {
    kind: &'static str,
    pp: Vec<JsonWorld>,
    cp: Vec<JsonWorld>,
}

#[derive(Serialize)]
struct JsonStep {
    kind: String,
    possible: Vec<JsonWorld>,
    impossible: Vec<JsonWorld>,
    state: JsonState,
}

#[derive(Serialize)]
struct JsonTrace {
    initial: JsonState,
    steps: Vec<JsonStep>,
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    vocabulary: &'a [String],
    logic: &'static str,
    semantics: &'static str,
    truth: String,
    results: Vec<JsonState>,
    objective_consequences: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    traces: Option<Vec<JsonTrace>>,
}

fn worlds(b: &BeliefState) -> Vec<JsonWorld> {
    let v = b.vocabulary();
    b.iter()
        .map(|w| {
            let mut atoms: Vec<String> = v.true_atoms(w).into_iter().map(String::from).collect();
            atoms.sort();
            atoms
        })
        .collect()
}

fn state(pb: &PartialBeliefState) -> JsonState {
    JsonState {
        kind: if pb.is_total() { "total" } else { "partial" },
        pp: worlds(pb.pp()),
        cp: worlds(pb.cp()),
    }
}

fn step(s: &TraceStep) -> JsonStep {
    JsonStep {
        kind: s.kind.to_string(),
        possible: worlds(&s.possible),
        impossible: worlds(&s.impossible),
        state: state(&s.state),
    }
}

fn trace(t: &DerivationTrace) -> JsonTrace {
    JsonTrace {
        initial: state(&t.initial),
        steps: t.steps.iter().map(step).collect(),
    }
}

/// Literals over the vocabulary entailed by a total state; `false` for the
/// empty state, which entails everything.
fn consequences(pb: &PartialBeliefState) -> Result<Vec<String>, Error> {
    let Some(b) = pb.as_total() else {
        return Ok(Vec::new());
    };
    if b.is_empty() {
        return Ok(vec!["false".into()]);
    }
    let mut out = Vec::new();
    for name in b.vocabulary().names() {
        let atom = Formula::atom(name.clone());
        if entails(b, &atom)? {
            out.push(name.clone());
        } else if entails(b, &Formula::not(atom))? {
            out.push(format!("~{name}"));
        }
    }
    Ok(out)
}

pub fn json(req: &Request, vocab: &Vocabulary, result: &SemanticsResult) -> Result<String, Error> {
    let output = JsonOutput {
        vocabulary: vocab.names(),
        logic: req.logic,
        semantics: req.semantics,
        truth: req.truth.to_string(),
        results: result.results.iter().map(state).collect(),
        objective_consequences: result.results.iter().map(consequences).collect::<Result<_, _>>()?,
        traces: req.trace.then(|| result.traces.iter().map(trace).collect()),
    };
    let mut text = serde_json::to_string_pretty(&output).map_err(|e| Error::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn human(req: &Request, result: &SemanticsResult) -> String {
    let mut out = String::new();
    if result.results.is_empty() {
        let _ = writeln!(out, "{}: none", req.semantics);
    }
    for (i, pb) in result.results.iter().enumerate() {
        match pb.as_total() {
            Some(b) => {
                let _ = writeln!(out, "{}: TOTAL {b}", req.semantics);
            }
            None => {
                let _ = writeln!(out, "{}: PARTIAL {pb}", req.semantics);
            }
        }
        if req.trace {
            if let Some(t) = result.traces.get(i) {
                write_trace(&mut out, t);
            }
        }
    }
    out
}

fn write_trace(out: &mut String, t: &DerivationTrace) {
    let _ = writeln!(out, "  0: start {}", t.initial);
    for (i, s) in t.steps.iter().enumerate() {
        let _ = write!(out, "  {}: {}", i + 1, s.kind);
        if !s.possible.is_empty() {
            let _ = write!(out, " possible {}", s.possible);
        }
        if !s.impossible.is_empty() {
            let _ = write!(out, " impossible {}", s.impossible);
        }
        let _ = writeln!(out, " -> {}", s.state);
    }
}

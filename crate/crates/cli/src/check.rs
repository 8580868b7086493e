//! `nmr check`: compares the fast algorithms with the brute-force
//! references and with each other, and shrinks any disagreement to a
//! small counterexample.

use std::fmt::Write;

use nmr_core::operators::Fault;
use nmr_core::oracle::{algebraic_wf, brute_expansions, brute_stable, OracleBudget};
use nmr_core::semantics::{expansion_states, kripke_kleene_extension, stable_extensions, well_founded_extension};
use nmr_core::{
    konolige, leq_p, only_negative, reiter_extensions, BeliefState, DefaultTheory, Limits, OperatorContext,
    PartialBeliefState, Result, Theory, TruthFunction,
};

/// Brute-force enumeration under supervaluation also enumerates completions,
/// so it gets a smaller vocabulary budget than under Kleene.
const KLEENE_BUDGET: OracleBudget = OracleBudget { max_atoms: 4 };
const SV_BUDGET: OracleBudget = OracleBudget { max_atoms: 3 };

pub struct Report {
    pub text: String,
    pub agreed: bool,
}

struct Findings {
    text: String,
    agreed: bool,
}

impl Findings {
    fn new() -> Self {
        Findings {
            text: String::new(),
            agreed: true,
        }
    }

    fn compare(&mut self, equal: bool) -> &'static str {
        self.agreed &= equal;
        if equal {
            "="
        } else {
            "!="
        }
    }
}

fn check_truth(t: &Theory, truth: TruthFunction, limits: Limits, fault: Option<Fault>, out: &mut Findings) -> Result<()> {
    let mut ctx = OperatorContext::with_limits(t.clone(), truth, limits)?;
    ctx.fault = fault;
    let kk_result = kripke_kleene_extension(&ctx)?;
    let wf_result = well_founded_extension(&ctx)?;
    let stable_result = stable_extensions(&ctx)?;
    let exps = expansion_states(&ctx)?;
    let stable = stable_result.total_states();
    let kk = &kk_result.results[0];
    let wf = &wf_result.results[0];

    let _ = writeln!(out.text, "truth: {truth}");
    let budget = match truth {
        TruthFunction::Kleene => KLEENE_BUDGET,
        TruthFunction::Supervaluation => SV_BUDGET,
    };
    let atoms = t.vocabulary().len();
    if atoms <= budget.max_atoms {
        let brute_exps = brute_expansions(&ctx, budget)?;
        let brute_st = brute_stable(&ctx, budget)?;
        let algebraic = algebraic_wf(&ctx, budget)?;
        let e = out.compare(exps == brute_exps);
        let w = out.compare(*wf == algebraic);
        let _ = writeln!(
            out.text,
            "expansions: fast {} {e} brute {}; wf: process {w} algebraic",
            exps.len(),
            brute_exps.len()
        );
        let s = out.compare(stable == brute_st);
        let _ = writeln!(out.text, "stable: fast {} {s} brute {}", stable.len(), brute_st.len());
    } else {
        let _ = writeln!(
            out.text,
            "oracle: skipped ({atoms} atoms, budget is {})",
            budget.max_atoms
        );
    }

    let mut violated = Vec::new();
    let total = |b: &BeliefState| PartialBeliefState::total(b.clone());
    let mut require = |ok: bool, name: &'static str| {
        if !ok {
            violated.push(name);
        }
    };
    let kk_below = exps.iter().map(|e| leq_p(kk, &total(e))).collect::<Result<Vec<_>>>()?;
    require(kk_below.iter().all(|&b| b), "kk-below-expansions");
    if let Some(b) = kk.as_total() {
        require(exps == [b.clone()], "kk-total-unique-expansion");
    }
    require(stable.iter().all(|s| exps.contains(s)), "stable-are-expansions");
    require(leq_p(kk, wf)?, "kk-below-wf");
    if let Some(b) = wf.as_total() {
        require(stable == [b.clone()], "wf-total-unique-stable");
    }
    if truth == TruthFunction::Kleene && only_negative(t) {
        let least = ctx.klfp_moore()?;
        require(*wf == total(&least), "only-negative-wf-is-least-expansion");
    }
    let replays = [&kk_result, &wf_result, &stable_result]
        .iter()
        .flat_map(|r| r.traces.iter().zip(&r.results))
        .all(|(trace, result)| trace.replay().as_ref() == Ok(result));
    require(replays, "trace-replay");

    if violated.is_empty() {
        let _ = writeln!(out.text, "propositions: ok");
    } else {
        out.agreed = false;
        let _ = writeln!(out.text, "propositions: violated {}", violated.join(", "));
    }
    Ok(())
}

fn theory_findings(t: &Theory, limits: Limits, fault: Option<Fault>) -> Result<Findings> {
    let mut out = Findings::new();
    for truth in [TruthFunction::Kleene, TruthFunction::Supervaluation] {
        check_truth(t, truth, limits, fault, &mut out)?;
    }
    Ok(out)
}

fn default_findings(dt: &DefaultTheory, limits: Limits, fault: Option<Fault>) -> Result<Findings> {
    let reiter = reiter_extensions(dt, &limits)?;
    let translation = konolige(dt);
    let mut ctx = OperatorContext::with_limits(translation.clone(), TruthFunction::Kleene, limits)?;
    ctx.fault = fault;
    let stable = stable_extensions(&ctx)?.total_states();

    let mut out = Findings::new();
    if reiter == stable {
        let _ = writeln!(out.text, "aligned: {} = {} extensions", reiter.len(), stable.len());
    } else {
        out.agreed = false;
        let _ = writeln!(
            out.text,
            "not aligned: reiter {} != stable {} extensions",
            reiter.len(),
            stable.len()
        );
    }
    let rest = theory_findings(&translation, limits, fault)?;
    out.text.push_str(&rest.text);
    out.agreed &= rest.agreed;
    Ok(out)
}

/// Greedily removes items while `still_fails` holds for the smaller input.
fn shrink<T>(mut current: T, candidates: impl Fn(&T) -> Vec<T>, still_fails: impl Fn(&T) -> Result<bool>) -> Result<T> {
    'outer: loop {
        for smaller in candidates(&current) {
            if still_fails(&smaller)? {
                current = smaller;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}

fn finish(first: Findings, counterexample: impl FnOnce() -> Result<(String, Findings)>) -> Result<Report> {
    let mut text = first.text;
    if !first.agreed {
        let (dump, findings) = counterexample()?;
        text.push_str("counterexample:\n");
        for line in dump.lines() {
            let _ = writeln!(text, "  {line}");
        }
        text.push_str("counterexample findings:\n");
        for line in findings.text.lines() {
            let _ = writeln!(text, "  {line}");
        }
    }
    Ok(Report {
        text,
        agreed: first.agreed,
    })
}

pub fn check_theory(t: &Theory, limits: Limits, fault: Option<Fault>) -> Result<Report> {
    let findings = theory_findings(t, limits, fault)?;
    finish(findings, || {
        let small = shrink(
            t.clone(),
            |cur| {
                (0..cur.formulas().len())
                    .filter_map(|i| {
                        let mut fs = cur.formulas().to_vec();
                        fs.remove(i);
                        Theory::new(cur.vocabulary().clone(), fs).ok()
                    })
                    .collect()
            },
            |cand| Ok(!theory_findings(cand, limits, fault)?.agreed),
        )?;
        Ok((small.to_string(), theory_findings(&small, limits, fault)?))
    })
}

pub fn check_default_theory(dt: &DefaultTheory, limits: Limits, fault: Option<Fault>) -> Result<Report> {
    let findings = default_findings(dt, limits, fault)?;
    finish(findings, || {
        let small = shrink(
            dt.clone(),
            |cur| {
                let facts = (0..cur.facts().len()).map(|i| cur.without(Some(i), None));
                let defaults = (0..cur.defaults().len()).map(|i| cur.without(None, Some(i)));
                facts.chain(defaults).collect()
            },
            |cand| Ok(!default_findings(cand, limits, fault)?.agreed),
        )?;
        Ok((small.to_string(), default_findings(&small, limits, fault)?))
    })
}

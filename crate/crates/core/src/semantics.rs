//! The four semantics of a modal theory: Kripke-Kleene extension, Moore
//! expansions, stable extensions and the well-founded extension, each
//! under the context's truth function, with derivation traces.

use std::fmt;

use crate::error::{Error, Result};
use crate::operators::{Fault, OperatorContext, Revision};
use crate::syntax::{collect_modal_subformulas, Formula};
use crate::truth::{models, TruthFunction};
use crate::worlds::{BeliefState, PartialBeliefState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsKind {
    KripkeKleene,
    Expansion,
    Stable,
    WellFounded,
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsKind::KripkeKleene => "kk",
            SemanticsKind::Expansion => "expansion",
            SemanticsKind::Stable => "stable",
            SemanticsKind::WellFounded => "wf",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Approximation step: unknown worlds resolved by evaluating the theory.
    Kk,
    /// Maximize-ignorance step: an unfounded set made certainly possible.
    Mi,
    /// Stable derivation round: false worlds removed with `cp` pinned.
    StableRemoval,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Kk => "kk",
            StepKind::Mi => "mi",
            StepKind::StableRemoval => "stable-removal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    /// Unknown worlds that became certainly possible.
    pub possible: BeliefState,
    /// Unknown worlds that became certainly impossible.
    pub impossible: BeliefState,
    /// State after the step.
    pub state: PartialBeliefState,
}

/// A derivation `B̃0 → … → B̃n` recorded step by step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub initial: PartialBeliefState,
    pub steps: Vec<TraceStep>,
}

impl DerivationTrace {
    fn new(initial: PartialBeliefState) -> Self {
        DerivationTrace {
            initial,
            steps: Vec::new(),
        }
    }

    fn push(&mut self, kind: StepKind, next: PartialBeliefState) {
        let prev = self.last();
        let step = TraceStep {
            kind,
            possible: next.cp().difference(prev.cp()),
            impossible: prev.pp().difference(next.pp()),
            state: next,
        };
        self.steps.push(step);
    }

    pub fn last(&self) -> &PartialBeliefState {
        self.steps.last().map_or(&self.initial, |s| &s.state)
    }

    /// The initial state followed by the state after each step.
    pub fn states(&self) -> Vec<PartialBeliefState> {
        std::iter::once(self.initial.clone())
            .chain(self.steps.iter().map(|s| s.state.clone()))
            .collect()
    }

    /// Re-applies the recorded world changes from the initial state. Only
    /// unknown worlds may change status, and each step must land on its
    /// recorded state.
    pub fn replay(&self) -> Result<PartialBeliefState> {
        let mut state = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let unknown = state.unknown();
            if !step.possible.is_subset(&unknown) || !step.impossible.is_subset(&unknown) {
                return Err(Error::internal(format!("trace step {i} changes a determined world")));
            }
            let next = PartialBeliefState::new(
                state.pp().difference(&step.impossible),
                state.cp().union(&step.possible),
            )?;
            if next != step.state {
                return Err(Error::internal(format!("trace step {i} does not reproduce its state")));
            }
            state = next;
        }
        Ok(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticsResult {
    pub kind: SemanticsKind,
    pub truth: TruthFunction,
    /// kk/wf: exactly one, possibly partial; expansion/stable: total
    /// states, canonically sorted.
    pub results: Vec<PartialBeliefState>,
    /// One trace per result for kk, wf and stable; empty for expansions.
    pub traces: Vec<DerivationTrace>,
}

impl SemanticsResult {
    /// Total results as belief states.
    pub fn total_states(&self) -> Vec<BeliefState> {
        self.results
            .iter()
            .filter_map(|r| r.as_total().cloned())
            .collect()
    }

    pub fn single(&self) -> Option<&PartialBeliefState> {
        match self.results.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

pub fn compute(ctx: &OperatorContext, kind: SemanticsKind) -> Result<SemanticsResult> {
    match kind {
        SemanticsKind::KripkeKleene => kripke_kleene_extension(ctx),
        SemanticsKind::Expansion => expansions(ctx),
        SemanticsKind::Stable => stable_extensions(ctx),
        SemanticsKind::WellFounded => well_founded_extension(ctx),
    }
}

pub fn kripke_kleene_extension(ctx: &OperatorContext) -> Result<SemanticsResult> {
    let mut trace = DerivationTrace::new(ctx.bottom());
    for next in ctx.kk_closure(&trace.initial)? {
        trace.push(StepKind::Kk, next);
    }
    Ok(SemanticsResult {
        kind: SemanticsKind::KripkeKleene,
        truth: ctx.truth(),
        results: vec![trace.last().clone()],
        traces: vec![trace],
    })
}

/// All fixpoints of `D_T`, canonically sorted.
///
/// Each guess of truth values for the modal subformulas reduces the theory
/// to an objective one; its models are the only belief state that could
/// produce that guess, so it is kept iff it is a fixpoint.
pub fn expansion_states(ctx: &OperatorContext) -> Result<Vec<BeliefState>> {
    let modal = collect_modal_subformulas(ctx.theory());
    let limit = ctx.limits().max_modal;
    if modal.len() > limit {
        return Err(Error::ResourceCap {
            what: "distinct modal subformulas",
            actual: modal.len(),
            limit,
        });
    }
    let vocab = ctx.theory().vocabulary();
    let mut found = Vec::new();
    for guess in 0u64..(1 << modal.len()) {
        let value = |phi: &Formula| {
            let i = modal.iter().position(|m| m == phi).expect("collected modal subformula");
            (guess >> i) & 1 == 1
        };
        let reduct: Vec<Formula> = ctx
            .theory()
            .formulas()
            .iter()
            .map(|f| f.substitute_knows(&value))
            .collect();
        let candidate = models(vocab, &reduct)?;
        if ctx.moore_step(&candidate)? == candidate {
            found.push(candidate);
        }
    }
    found.sort();
    found.dedup();
    if ctx.fault == Some(Fault::DropFirstCandidate) && !found.is_empty() {
        found.remove(0);
    }
    Ok(found)
}

pub fn expansions(ctx: &OperatorContext) -> Result<SemanticsResult> {
    let results = expansion_states(ctx)?
        .into_iter()
        .map(PartialBeliefState::total)
        .collect();
    Ok(SemanticsResult {
        kind: SemanticsKind::Expansion,
        truth: ctx.truth(),
        results,
        traces: Vec::new(),
    })
}

/// Stable extensions: expansions whose stable derivation reproduces them.
pub fn stable_extensions(ctx: &OperatorContext) -> Result<SemanticsResult> {
    let mut results = Vec::new();
    let mut traces = Vec::new();
    for b in expansion_states(ctx)? {
        let derivation = ctx.stable_derivation(&b)?;
        if derivation.outcome != Revision::Converged(b.clone()) {
            continue;
        }
        let mut trace = DerivationTrace::new(PartialBeliefState::new(ctx.full(), b.clone())?);
        for removed in derivation.removals {
            let pp = trace.last().pp().difference(&removed);
            trace.push(StepKind::StableRemoval, PartialBeliefState::new(pp, b.clone())?);
        }
        results.push(PartialBeliefState::total(b));
        traces.push(trace);
    }
    Ok(SemanticsResult {
        kind: SemanticsKind::Stable,
        truth: ctx.truth(),
        results,
        traces,
    })
}

/// Largest set `U` of unknown worlds of `pb` such that every world of `U`
/// evaluates to true once all of `U` is assumed certainly possible.
pub fn maximal_unfounded_set(ctx: &OperatorContext, pb: &PartialBeliefState) -> Result<BeliefState> {
    let mut u = pb.unknown();
    loop {
        let assumed = pb.with_possible(&u)?;
        let next = u.intersection(&ctx.evaluate(&assumed)?.truths);
        if next == u {
            return Ok(u);
        }
        u = next;
    }
}

/// Alternates approximation closure with maximize-ignorance steps over
/// the maximal unfounded set until neither applies.
pub fn well_founded_extension(ctx: &OperatorContext) -> Result<SemanticsResult> {
    let mut trace = DerivationTrace::new(ctx.bottom());
    loop {
        for next in ctx.kk_closure(trace.last())? {
            trace.push(StepKind::Kk, next);
        }
        if ctx.fault == Some(Fault::SkipUnfoundedSets) {
            break;
        }
        let current = trace.last().clone();
        let unfounded = maximal_unfounded_set(ctx, &current)?;
        if unfounded.is_empty() {
            break;
        }
        trace.push(StepKind::Mi, current.with_possible(&unfounded)?);
    }
    Ok(SemanticsResult {
        kind: SemanticsKind::WellFounded,
        truth: ctx.truth(),
        results: vec![trace.last().clone()],
        traces: vec![trace],
    })
}

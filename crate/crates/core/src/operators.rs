//! Moore's operator, its three-valued approximation, the stable revision
//! operator and the fixpoint iterations built on them.

use crate::error::{Error, Result};
use crate::syntax::{only_negative, Theory};
use crate::truth::{s5_theory_table, theory_table, TruthFunction, Valuation, DEFAULT_COMPLETION_CAP};
use crate::worlds::{bottom_p, check_atom_cap, leq_p, BeliefState, PartialBeliefState, DEFAULT_MAX_ATOMS};

/// Resource caps applied by the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum vocabulary size.
    pub max_atoms: usize,
    /// Maximum `|pp \ cp|` for supervaluation.
    pub completion_cap: usize,
    /// Maximum number of distinct modal subformulas for guess enumeration.
    pub max_modal: usize,
    /// Maximum number of defaults for subset enumeration.
    pub max_defaults: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: DEFAULT_MAX_ATOMS,
            completion_cap: DEFAULT_COMPLETION_CAP,
            max_modal: 20,
            max_defaults: 20,
        }
    }
}

/// Deliberate defects in the production path, used to check that the
/// brute-force cross-checks notice them.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Never apply maximize-ignorance steps.
    SkipUnfoundedSets,
    /// Discard the first accepted expansion candidate.
    DropFirstCandidate,
}

/// A theory together with the truth function its operators use.
#[derive(Debug, Clone)]
pub struct OperatorContext {
    theory: Theory,
    truth: TruthFunction,
    limits: Limits,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

/// Outcome of a stable revision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Revision {
    Converged(BeliefState),
    /// A world of the pinned belief state was derived impossible.
    NotStable,
}

/// A stable revision together with the worlds removed in each round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableDerivation {
    pub outcome: Revision,
    pub removals: Vec<BeliefState>,
}

impl OperatorContext {
    pub fn new(theory: Theory, truth: TruthFunction) -> Result<Self> {
        Self::with_limits(theory, truth, Limits::default())
    }

    pub fn with_limits(theory: Theory, truth: TruthFunction, limits: Limits) -> Result<Self> {
        check_atom_cap(theory.vocabulary(), limits.max_atoms)?;
        Ok(OperatorContext {
            theory,
            truth,
            limits,
            fault: None,
        })
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn truth(&self) -> TruthFunction {
        self.truth
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn with_truth(&self, truth: TruthFunction) -> Self {
        OperatorContext { truth, ..self.clone() }
    }

    pub fn full(&self) -> BeliefState {
        BeliefState::full(self.theory.vocabulary())
    }

    pub fn bottom(&self) -> PartialBeliefState {
        bottom_p(self.theory.vocabulary())
    }

    fn check_state(&self, b: &BeliefState) -> Result<()> {
        if **b.vocabulary() == **self.theory.vocabulary() {
            Ok(())
        } else {
            Err(Error::VocabularyMismatch)
        }
    }

    /// Three-valued table of the theory in `pb`.
    pub fn evaluate(&self, pb: &PartialBeliefState) -> Result<Valuation> {
        self.check_state(pb.pp())?;
        theory_table(self.truth, pb, self.theory.formulas(), self.limits.completion_cap)
    }

    /// `D_T(b) = { w : b, w ⊨ T }`.
    pub fn moore_step(&self, b: &BeliefState) -> Result<BeliefState> {
        self.check_state(b)?;
        s5_theory_table(b, self.theory.formulas())
    }

    /// The approximating operator: worlds where the theory is not false
    /// stay potentially possible, worlds where it is true become certainly
    /// possible.
    pub fn approx_step(&self, pb: &PartialBeliefState) -> Result<PartialBeliefState> {
        let v = self.evaluate(pb)?;
        PartialBeliefState::new(v.not_false(), v.truths)
    }

    /// Iterates `approx_step` from `start` until a fixpoint, returning every
    /// state after `start`. Each step must be a precision increase.
    pub fn kk_closure(&self, start: &PartialBeliefState) -> Result<Vec<PartialBeliefState>> {
        let mut chain = Vec::new();
        let mut current = start.clone();
        loop {
            let next = self.approx_step(&current)?;
            if next == current {
                return Ok(chain);
            }
            if !leq_p(&current, &next)? {
                return Err(Error::internal(format!(
                    "approximation chain is not increasing in precision: {current} -> {next}"
                )));
            }
            chain.push(next.clone());
            current = next;
        }
    }

    /// Least precision fixpoint of the approximating operator.
    pub fn kk_lfp(&self) -> Result<PartialBeliefState> {
        let bottom = self.bottom();
        Ok(self.kk_closure(&bottom)?.pop().unwrap_or(bottom))
    }

    /// Stable derivation for `b`: starting from `(W, b)`, remove every world
    /// where the theory is false until nothing changes.
    pub fn stable_derivation(&self, b: &BeliefState) -> Result<StableDerivation> {
        self.check_state(b)?;
        let mut removals = Vec::new();
        let mut current = self.full();
        loop {
            let pair = PartialBeliefState::new(current.clone(), b.clone())?;
            let next = current.intersection(&self.evaluate(&pair)?.not_false());
            if !b.is_subset(&next) {
                return Ok(StableDerivation {
                    outcome: Revision::NotStable,
                    removals,
                });
            }
            if next == current {
                return Ok(StableDerivation {
                    outcome: Revision::Converged(current),
                    removals,
                });
            }
            removals.push(current.difference(&next));
            current = next;
        }
    }

    pub fn stable_revision(&self, b: &BeliefState) -> Result<Revision> {
        Ok(self.stable_derivation(b)?.outcome)
    }

    /// Least fixpoint of `D_T` in the knowledge order, by iteration from
    /// `W`. Requires every `K` occurrence to be negative.
    pub fn klfp_moore(&self) -> Result<BeliefState> {
        if !only_negative(&self.theory) {
            return Err(Error::Precondition(
                "theory has a non-negative occurrence of K".into(),
            ));
        }
        let mut current = self.full();
        loop {
            let next = self.moore_step(&current)?;
            if next == current {
                return Ok(current);
            }
            if !next.is_subset(&current) {
                return Err(Error::internal("Moore iteration is not increasing in knowledge"));
            }
            current = next;
        }
    }
}

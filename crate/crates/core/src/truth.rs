//! Two-valued S5 evaluation, three-valued Kleene evaluation and
//! supervaluation.
//!
//! Every evaluator works on whole world sets at once: evaluating a formula
//! yields the set of worlds where it is true (and, for the three-valued
//! evaluators, the set where it is false). Single-world queries index into
//! those tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::syntax::{Formula, Theory};
use crate::worlds::{BeliefState, PartialBeliefState, Vocabulary, World};

/// Default cap on `|pp \ cp|` for supervaluation.
pub const DEFAULT_COMPLETION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Unknown,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    /// Precision order generated by `u ≤p t` and `u ≤p f`.
    pub fn leq_p(self, other: TruthValue) -> bool {
        self == TruthValue::Unknown || self == other
    }

    pub fn is_known(self) -> bool {
        self != TruthValue::Unknown
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "t",
            TruthValue::False => "f",
            TruthValue::Unknown => "u",
        })
    }
}

/// Three-valued truth function used to evaluate theories in partial states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthFunction {
    Kleene,
    Supervaluation,
}

impl fmt::Display for TruthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthFunction::Kleene => "kleene",
            TruthFunction::Supervaluation => "sv",
        })
    }
}

/// Per-world three-valued table: the worlds where a formula is true and
/// the worlds where it is false. The two sets are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    pub truths: BeliefState,
    pub falsities: BeliefState,
}

impl Valuation {
    fn constant(vocab: &Arc<Vocabulary>, v: TruthValue) -> Self {
        let (t, f) = match v {
            TruthValue::True => (BeliefState::full(vocab), BeliefState::empty(vocab)),
            TruthValue::False => (BeliefState::empty(vocab), BeliefState::full(vocab)),
            TruthValue::Unknown => (BeliefState::empty(vocab), BeliefState::empty(vocab)),
        };
        Valuation {
            truths: t,
            falsities: f,
        }
    }

    fn total(truths: BeliefState) -> Self {
        let falsities = truths.complement();
        Valuation { truths, falsities }
    }

    pub fn value(&self, w: World) -> TruthValue {
        if self.truths.contains(w) {
            TruthValue::True
        } else if self.falsities.contains(w) {
            TruthValue::False
        } else {
            TruthValue::Unknown
        }
    }

    /// Worlds where the value is not `f`.
    pub fn not_false(&self) -> BeliefState {
        self.falsities.complement()
    }
}

fn atom_index(vocab: &Vocabulary, name: &str) -> Result<usize> {
    vocab.index_of(name).ok_or_else(|| Error::UnknownAtom(name.to_string()))
}

fn check_world(vocab: &Vocabulary, w: World) -> Result<()> {
    if w.index() < vocab.num_worlds() {
        Ok(())
    } else {
        Err(Error::VocabularyMismatch)
    }
}

fn check_theory(vocab: &Arc<Vocabulary>, t: &Theory) -> Result<()> {
    if Arc::ptr_eq(vocab, t.vocabulary()) || **vocab == **t.vocabulary() {
        Ok(())
    } else {
        Err(Error::VocabularyMismatch)
    }
}

/// Worlds `w` with `b, w ⊨ f` in S5 over the belief state `b`.
pub fn s5_table(b: &BeliefState, f: &Formula) -> Result<BeliefState> {
    let vocab = b.vocabulary();
    Ok(match f {
        Formula::Atom(name) => BeliefState::atom(vocab, atom_index(vocab, name)?),
        Formula::Top => BeliefState::full(vocab),
        Formula::Bottom => BeliefState::empty(vocab),
        Formula::Not(g) => s5_table(b, g)?.complement(),
        Formula::And(l, r) => s5_table(b, l)?.intersection(&s5_table(b, r)?),
        Formula::Or(l, r) => s5_table(b, l)?.union(&s5_table(b, r)?),
        Formula::Implies(l, r) => s5_table(b, l)?.complement().union(&s5_table(b, r)?),
        Formula::Iff(l, r) => {
            let (l, r) = (s5_table(b, l)?, s5_table(b, r)?);
            l.intersection(&r).union(&l.union(&r).complement())
        }
        Formula::Knows(g) => {
            if b.is_subset(&s5_table(b, g)?) {
                BeliefState::full(vocab)
            } else {
                BeliefState::empty(vocab)
            }
        }
    })
}

/// Worlds satisfying every formula, in S5 over `b`.
pub fn s5_theory_table(b: &BeliefState, formulas: &[Formula]) -> Result<BeliefState> {
    let mut acc = BeliefState::full(b.vocabulary());
    for f in formulas {
        acc = acc.intersection(&s5_table(b, f)?);
    }
    Ok(acc)
}

/// Models of objective formulas over `vocab`.
pub fn models(vocab: &Arc<Vocabulary>, formulas: &[Formula]) -> Result<BeliefState> {
    if let Some(f) = formulas.iter().find(|f| !f.is_objective()) {
        return Err(Error::Precondition(format!("`{f}` is not objective")));
    }
    // `K` does not occur, so the belief state is irrelevant.
    s5_theory_table(&BeliefState::full(vocab), formulas)
}

/// `b, w ⊨ f`; `w` need not belong to `b`.
pub fn eval_s5(b: &BeliefState, w: World, f: &Formula) -> Result<bool> {
    check_world(b.vocabulary(), w)?;
    Ok(s5_table(b, f)?.contains(w))
}

/// `b ⊨ f`: every world of `b` satisfies `f`. Vacuous for empty `b`.
pub fn entails(b: &BeliefState, f: &Formula) -> Result<bool> {
    Ok(b.is_subset(&s5_table(b, f)?))
}

/// Kleene three-valued table of `f` in the partial state `pb`.
pub fn kleene_table(pb: &PartialBeliefState, f: &Formula) -> Result<Valuation> {
    let vocab = pb.vocabulary();
    Ok(match f {
        Formula::Atom(name) => Valuation::total(BeliefState::atom(vocab, atom_index(vocab, name)?)),
        Formula::Top => Valuation::constant(vocab, TruthValue::True),
        Formula::Bottom => Valuation::constant(vocab, TruthValue::False),
        Formula::Not(g) => {
            let v = kleene_table(pb, g)?;
            Valuation {
                truths: v.falsities,
                falsities: v.truths,
            }
        }
        Formula::And(l, r) => {
            let (l, r) = (kleene_table(pb, l)?, kleene_table(pb, r)?);
            Valuation {
                truths: l.truths.intersection(&r.truths),
                falsities: l.falsities.union(&r.falsities),
            }
        }
        Formula::Or(l, r) => {
            let (l, r) = (kleene_table(pb, l)?, kleene_table(pb, r)?);
            Valuation {
                truths: l.truths.union(&r.truths),
                falsities: l.falsities.intersection(&r.falsities),
            }
        }
        Formula::Implies(l, r) => {
            let (l, r) = (kleene_table(pb, l)?, kleene_table(pb, r)?);
            Valuation {
                truths: l.falsities.union(&r.truths),
                falsities: l.truths.intersection(&r.falsities),
            }
        }
        Formula::Iff(l, r) => {
            let (l, r) = (kleene_table(pb, l)?, kleene_table(pb, r)?);
            Valuation {
                truths: l
                    .truths
                    .intersection(&r.truths)
                    .union(&l.falsities.intersection(&r.falsities)),
                falsities: l
                    .truths
                    .intersection(&r.falsities)
                    .union(&l.falsities.intersection(&r.truths)),
            }
        }
        Formula::Knows(g) => {
            let v = kleene_table(pb, g)?;
            // f-clause first; on consistent pairs the clauses are exclusive
            let value = if !v.falsities.is_disjoint(pb.cp()) {
                TruthValue::False
            } else if pb.pp().is_subset(&v.truths) {
                TruthValue::True
            } else {
                TruthValue::Unknown
            };
            Valuation::constant(vocab, value)
        }
    })
}

/// Kleene table of a set of formulas: `f` where some member is `f`, `t`
/// where all are `t`.
pub fn kleene_theory_table(pb: &PartialBeliefState, formulas: &[Formula]) -> Result<Valuation> {
    let vocab = pb.vocabulary();
    let mut acc = Valuation::constant(vocab, TruthValue::True);
    for f in formulas {
        let v = kleene_table(pb, f)?;
        acc.truths = acc.truths.intersection(&v.truths);
        acc.falsities = acc.falsities.union(&v.falsities);
    }
    Ok(acc)
}

pub fn eval_kleene(pb: &PartialBeliefState, w: World, f: &Formula) -> Result<TruthValue> {
    check_world(pb.vocabulary(), w)?;
    Ok(kleene_table(pb, f)?.value(w))
}

pub fn eval_kleene_theory(pb: &PartialBeliefState, w: World, t: &Theory) -> Result<TruthValue> {
    check_theory(pb.vocabulary(), t)?;
    check_world(pb.vocabulary(), w)?;
    Ok(kleene_theory_table(pb, t.formulas())?.value(w))
}

/// Supervaluation table: joint case analysis over every total `b` with
/// `cp ⊆ b ⊆ pp`.
pub fn sv_theory_table(pb: &PartialBeliefState, formulas: &[Formula], cap: usize) -> Result<Valuation> {
    let unknown = pb.unknown().worlds();
    if unknown.len() > cap {
        return Err(Error::ResourceCap {
            what: "unknown worlds for supervaluation",
            actual: unknown.len(),
            limit: cap,
        });
    }
    let vocab = pb.vocabulary();
    let mut all_true = BeliefState::full(vocab);
    let mut any_true = BeliefState::empty(vocab);
    // Gray-code walk: consecutive completions differ in one world.
    let mut completion = pb.cp().clone();
    let count: u64 = 1 << unknown.len();
    for step in 0..count {
        if step > 0 {
            let w = unknown[step.trailing_zeros() as usize];
            if completion.contains(w) {
                completion.remove(w);
            } else {
                completion.insert(w);
            }
        }
        let table = s5_theory_table(&completion, formulas)?;
        all_true = all_true.intersection(&table);
        any_true = any_true.union(&table);
    }
    Ok(Valuation {
        truths: all_true,
        falsities: any_true.complement(),
    })
}

pub fn eval_sv(pb: &PartialBeliefState, w: World, t: &Theory) -> Result<TruthValue> {
    check_theory(pb.vocabulary(), t)?;
    check_world(pb.vocabulary(), w)?;
    Ok(sv_theory_table(pb, t.formulas(), DEFAULT_COMPLETION_CAP)?.value(w))
}

/// Supervaluation of a single formula.
pub fn eval_sv_formula(pb: &PartialBeliefState, w: World, f: &Formula) -> Result<TruthValue> {
    check_world(pb.vocabulary(), w)?;
    Ok(sv_theory_table(pb, std::slice::from_ref(f), DEFAULT_COMPLETION_CAP)?.value(w))
}

/// Table of the theory under the chosen truth function.
pub fn theory_table(
    truth: TruthFunction,
    pb: &PartialBeliefState,
    formulas: &[Formula],
    completion_cap: usize,
) -> Result<Valuation> {
    match truth {
        TruthFunction::Kleene => kleene_theory_table(pb, formulas),
        TruthFunction::Supervaluation => sv_theory_table(pb, formulas, completion_cap),
    }
}

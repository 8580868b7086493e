//! Shared helpers for integration tests: seeded random generators and a
//! naive world-by-world reference evaluator that shares no code with the
//! bitset evaluators in the library.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use nmr_core::{
    BeliefState, DefaultRule, DefaultTheory, Formula, PartialBeliefState, Theory, TruthValue, Vocabulary, World,
};
use rand::rngs::StdRng;
use rand::Rng;

pub fn corpus(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

pub fn vocab(n: usize) -> Arc<Vocabulary> {
    const NAMES: [&str; 4] = ["P", "Q", "R", "S"];
    Arc::new(Vocabulary::new(NAMES[..n].iter().copied()).unwrap())
}

pub fn random_formula(rng: &mut StdRng, n: usize, depth: u32, modal: bool) -> Formula {
    let atom = |rng: &mut StdRng| Formula::atom(["P", "Q", "R", "S"][rng.gen_range(0..n)]);
    if depth == 0 {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => atom(rng),
        };
    }
    let sub = |rng: &mut StdRng| random_formula(rng, n, depth - 1, modal);
    let choice = rng.gen_range(0..if modal { 10 } else { 8 });
    match choice {
        0 => atom(rng),
        1 => Formula::not(sub(rng)),
        2 => Formula::and(sub(rng), sub(rng)),
        3 => Formula::or(sub(rng), sub(rng)),
        4 | 5 => Formula::implies(sub(rng), sub(rng)),
        6 => Formula::iff(sub(rng), sub(rng)),
        7 => Formula::not(sub(rng)),
        _ => Formula::knows(sub(rng)),
    }
}

/// A theory of 1..=3 random formulas over the first `n` atoms.
pub fn random_theory(rng: &mut StdRng, n: usize) -> Theory {
    let count = rng.gen_range(1..=3);
    let formulas = (0..count)
        .map(|_| {
            let depth = rng.gen_range(1..=3);
            random_formula(rng, n, depth, true)
        })
        .collect();
    Theory::new(vocab(n), formulas).unwrap()
}

/// Random rule-shaped theory: `K a ∧ ¬K b → c` style formulas plus facts.
pub fn random_rule_theory(rng: &mut StdRng, n: usize, allow_negated: bool) -> Theory {
    let count = rng.gen_range(1..=3);
    let mut formulas = Vec::new();
    for _ in 0..count {
        let mut parts = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            parts.push(Formula::knows(random_formula(rng, n, 1, false)));
        }
        if allow_negated {
            for _ in 0..rng.gen_range(0..=1) {
                parts.push(Formula::not(Formula::knows(random_formula(rng, n, 1, false))));
            }
        }
        let head = random_formula(rng, n, 1, false);
        formulas.push(if parts.is_empty() {
            head
        } else {
            Formula::implies(Formula::conjunction(parts), head)
        });
    }
    Theory::new(vocab(n), formulas).unwrap()
}

pub fn random_belief_state(rng: &mut StdRng, v: &Arc<Vocabulary>) -> BeliefState {
    BeliefState::from_worlds(v, v.worlds().filter(|_| rng.gen_bool(0.5)))
}

pub fn random_partial(rng: &mut StdRng, v: &Arc<Vocabulary>) -> PartialBeliefState {
    let pp = random_belief_state(rng, v);
    let cp = BeliefState::from_worlds(v, pp.iter().filter(|_| rng.gen_bool(0.5)));
    PartialBeliefState::new(pp, cp).unwrap()
}

/// A random state at least as precise as `pb`.
pub fn refine(rng: &mut StdRng, pb: &PartialBeliefState) -> PartialBeliefState {
    let mut pp = pb.pp().clone();
    let mut cp = pb.cp().clone();
    for w in pb.unknown().iter() {
        match rng.gen_range(0..3) {
            0 => pp.remove(w),
            1 => cp.insert(w),
            _ => {}
        }
    }
    PartialBeliefState::new(pp, cp).unwrap()
}

pub fn random_default_theory(rng: &mut StdRng, n: usize) -> DefaultTheory {
    let v = vocab(n);
    let objective = |rng: &mut StdRng| {
        let depth = rng.gen_range(0..=2);
        random_formula(rng, n, depth, false)
    };
    let facts = (0..rng.gen_range(0..=2)).map(|_| objective(rng)).collect();
    let defaults = (0..rng.gen_range(1..=3))
        .map(|_| {
            let prerequisite = if rng.gen_bool(0.3) { Formula::Top } else { objective(rng) };
            let justifications = (0..rng.gen_range(0..=2)).map(|_| objective(rng)).collect();
            DefaultRule::new(prerequisite, justifications, objective(rng)).unwrap()
        })
        .collect();
    DefaultTheory::new(v, facts, defaults).unwrap()
}

// ---- reference evaluators, one world at a time ----

fn atom_value(v: &Vocabulary, w: World, name: &str) -> bool {
    w.holds(v.index_of(name).unwrap())
}

/// S5 satisfaction `b, w ⊨ f` by direct recursion.
pub fn ref_s5(v: &Vocabulary, b: &[World], w: World, f: &Formula) -> bool {
    match f {
        Formula::Atom(name) => atom_value(v, w, name),
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(g) => !ref_s5(v, b, w, g),
        Formula::And(l, r) => ref_s5(v, b, w, l) && ref_s5(v, b, w, r),
        Formula::Or(l, r) => ref_s5(v, b, w, l) || ref_s5(v, b, w, r),
        Formula::Implies(l, r) => !ref_s5(v, b, w, l) || ref_s5(v, b, w, r),
        Formula::Iff(l, r) => ref_s5(v, b, w, l) == ref_s5(v, b, w, r),
        Formula::Knows(g) => b.iter().all(|&u| ref_s5(v, b, u, g)),
    }
}

fn k_not(a: TruthValue) -> TruthValue {
    match a {
        TruthValue::True => TruthValue::False,
        TruthValue::False => TruthValue::True,
        TruthValue::Unknown => TruthValue::Unknown,
    }
}

fn k_and(a: TruthValue, b: TruthValue) -> TruthValue {
    use TruthValue::*;
    match (a, b) {
        (False, _) | (_, False) => False,
        (True, True) => True,
        _ => Unknown,
    }
}

fn k_or(a: TruthValue, b: TruthValue) -> TruthValue {
    k_not(k_and(k_not(a), k_not(b)))
}

/// Kleene evaluation by direct recursion over the status of each world.
pub fn ref_kleene(pb: &PartialBeliefState, w: World, f: &Formula) -> TruthValue {
    let v = pb.vocabulary();
    match f {
        Formula::Atom(name) => TruthValue::from_bool(atom_value(v, w, name)),
        Formula::Top => TruthValue::True,
        Formula::Bottom => TruthValue::False,
        Formula::Not(g) => k_not(ref_kleene(pb, w, g)),
        Formula::And(l, r) => k_and(ref_kleene(pb, w, l), ref_kleene(pb, w, r)),
        Formula::Or(l, r) => k_or(ref_kleene(pb, w, l), ref_kleene(pb, w, r)),
        Formula::Implies(l, r) => k_or(k_not(ref_kleene(pb, w, l)), ref_kleene(pb, w, r)),
        Formula::Iff(l, r) => {
            let (a, b) = (ref_kleene(pb, w, l), ref_kleene(pb, w, r));
            k_and(k_or(k_not(a), b), k_or(a, k_not(b)))
        }
        Formula::Knows(g) => {
            let worlds: Vec<World> = v.worlds().collect();
            if worlds
                .iter()
                .any(|&u| pb.status(u) == TruthValue::True && ref_kleene(pb, u, g) == TruthValue::False)
            {
                TruthValue::False
            } else if worlds
                .iter()
                .filter(|&&u| pb.status(u) != TruthValue::False)
                .all(|&u| ref_kleene(pb, u, g) == TruthValue::True)
            {
                TruthValue::True
            } else {
                TruthValue::Unknown
            }
        }
    }
}

pub fn ref_kleene_theory(pb: &PartialBeliefState, w: World, formulas: &[Formula]) -> TruthValue {
    formulas
        .iter()
        .fold(TruthValue::True, |acc, f| k_and(acc, ref_kleene(pb, w, f)))
}

/// Supervaluation by explicit enumeration of completions.
pub fn ref_sv_theory(pb: &PartialBeliefState, w: World, formulas: &[Formula]) -> TruthValue {
    let v = pb.vocabulary();
    let unknown: Vec<World> = pb.unknown().worlds();
    let mut seen_true = false;
    let mut seen_false = false;
    for mask in 0u32..(1 << unknown.len()) {
        let mut b: Vec<World> = pb.cp().worlds();
        b.extend(unknown.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &u)| u));
        if formulas.iter().all(|f| ref_s5(v, &b, w, f)) {
            seen_true = true;
        } else {
            seen_false = true;
        }
    }
    match (seen_true, seen_false) {
        (true, false) => TruthValue::True,
        (false, true) => TruthValue::False,
        _ => TruthValue::Unknown,
    }
}

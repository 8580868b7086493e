//! Default theories: parsing, the Konolige translation into modal
//! theories, direct computation of Reiter extensions, and the alignment
//! check between the two.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operators::{Limits, OperatorContext};
use crate::semantics::{compute, stable_extensions, SemanticsKind, SemanticsResult};
use crate::syntax::parser::{parse_formula_at, parse_vocab_header, strip_comment};
use crate::syntax::{default_vocabulary, Formula, Theory};
use crate::truth::{entails, models, TruthFunction};
use crate::worlds::{check_atom_cap, BeliefState, Vocabulary};

/// `prerequisite : justifications / consequent`, all objective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefaultRule {
    pub prerequisite: Formula,
    pub justifications: Vec<Formula>,
    pub consequent: Formula,
}

impl DefaultRule {
    pub fn new(prerequisite: Formula, justifications: Vec<Formula>, consequent: Formula) -> Result<Self> {
        let d = DefaultRule {
            prerequisite,
            justifications,
            consequent,
        };
        if let Some(f) = d.parts().find(|f| !f.is_objective()) {
            return Err(Error::Precondition(format!("default component `{f}` is not objective")));
        }
        Ok(d)
    }

    fn parts(&self) -> impl Iterator<Item = &Formula> {
        std::iter::once(&self.prerequisite)
            .chain(&self.justifications)
            .chain(std::iter::once(&self.consequent))
    }

    /// `K α ∧ ¬K¬β₁ ∧ … ∧ ¬K¬βₘ → γ`; a `true` prerequisite is left out.
    pub fn to_modal(&self) -> Formula {
        let prerequisite = (self.prerequisite != Formula::Top).then(|| Formula::knows(self.prerequisite.clone()));
        let justifications = self
            .justifications
            .iter()
            .map(|b| Formula::not(Formula::knows(Formula::not(b.clone()))));
        let antecedent = Formula::conjunction(prerequisite.into_iter().chain(justifications));
        Formula::implies(antecedent, self.consequent.clone())
    }
}

impl fmt::Display for DefaultRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prerequisite != Formula::Top {
            write!(f, "{} ", self.prerequisite)?;
        }
        let js: Vec<String> = self.justifications.iter().map(|j| j.to_string()).collect();
        write!(f, ": {} / {}", js.join(", "), self.consequent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefaultTheory {
    vocabulary: Arc<Vocabulary>,
    facts: Vec<Formula>,
    defaults: Vec<DefaultRule>,
}

impl DefaultTheory {
    pub fn new(vocabulary: Arc<Vocabulary>, facts: Vec<Formula>, defaults: Vec<DefaultRule>) -> Result<Self> {
        if let Some(f) = facts.iter().find(|f| !f.is_objective()) {
            return Err(Error::Precondition(format!("fact `{f}` is not objective")));
        }
        let all = facts.iter().chain(defaults.iter().flat_map(DefaultRule::parts));
        for f in all {
            if let Some(a) = f.atoms().into_iter().find(|a| vocabulary.index_of(a).is_none()) {
                return Err(Error::UnknownAtom(a.to_string()));
            }
        }
        Ok(DefaultTheory {
            vocabulary,
            facts,
            defaults,
        })
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocabulary
    }

    pub fn facts(&self) -> &[Formula] {
        &self.facts
    }

    pub fn defaults(&self) -> &[DefaultRule] {
        &self.defaults
    }

    /// Same theory with some facts and defaults left out; used to shrink
    /// counterexamples.
    pub fn without(&self, fact: Option<usize>, default: Option<usize>) -> Self {
        let keep = |skip: Option<usize>, i: usize| skip != Some(i);
        DefaultTheory {
            vocabulary: Arc::clone(&self.vocabulary),
            facts: self
                .facts
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(fact, *i))
                .map(|(_, f)| f.clone())
                .collect(),
            defaults: self
                .defaults
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(default, *i))
                .map(|(_, d)| d.clone())
                .collect(),
        }
    }
}

impl fmt::Display for DefaultTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vocab: {}", self.vocabulary.names().join(" "))?;
        for fact in &self.facts {
            writeln!(f, "{fact}")?;
        }
        for d in &self.defaults {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

fn parse_default_line(code: &str, line: usize) -> Result<DefaultRule> {
    let (head, consequent) = code.split_once('/').expect("caller checked for `/`");
    let Some((prerequisite, justifications)) = head.split_once(':') else {
        return Err(Error::parse(line, 1, "default is missing `:` before its justifications"));
    };
    if consequent.contains('/') {
        let column = head.chars().count() + 2 + consequent.find('/').unwrap_or(0);
        return Err(Error::parse(line, column, "more than one `/` in default"));
    }
    // Columns are 1-based offsets into the raw line.
    let pre_col = 1;
    let just_col = prerequisite.chars().count() + 2;
    let cons_col = head.chars().count() + 2;

    let prerequisite = if prerequisite.trim().is_empty() {
        Formula::Top
    } else {
        parse_formula_at(prerequisite, line, pre_col)?
    };
    let mut parsed_justifications = Vec::new();
    if !justifications.trim().is_empty() {
        let mut col = just_col;
        for part in justifications.split(',') {
            parsed_justifications.push(parse_formula_at(part, line, col)?);
            col += part.chars().count() + 1;
        }
    }
    if consequent.trim().is_empty() {
        return Err(Error::parse(line, cons_col, "default is missing its consequent"));
    }
    let consequent = parse_formula_at(consequent, line, cons_col)?;
    DefaultRule::new(prerequisite, parsed_justifications, consequent).map_err(|e| Error::parse(line, 1, e.to_string()))
}

/// Parses `.dt` text: `#` comments, an optional `vocab:` header, fact
/// lines, and default lines `PRE : J1, J2 / CONS`.
pub fn parse_default_theory(text: &str) -> Result<DefaultTheory> {
    let mut vocab = None;
    let mut facts = Vec::new();
    let mut defaults = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = strip_comment(raw);
        if code.trim().is_empty() {
            continue;
        }
        if let Some(v) = parse_vocab_header(code, line)? {
            if seen_content {
                return Err(Error::parse(line, 1, "`vocab:` header must precede all formulas"));
            }
            vocab = Some(v);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if code.contains('/') {
            defaults.push(parse_default_line(code, line)?);
        } else {
            let fact = parse_formula_at(code, line, 1)?;
            if !fact.is_objective() {
                return Err(Error::parse(line, 1, "modal operator in a default theory"));
            }
            facts.push(fact);
        }
    }
    let vocab = match vocab {
        Some(v) => v,
        None => default_vocabulary(facts.iter().chain(defaults.iter().flat_map(DefaultRule::parts)))?,
    };
    DefaultTheory::new(Arc::new(vocab), facts, defaults)
}

/// Konolige's translation: facts unchanged, each default to its modal
/// implication; the vocabulary is preserved.
pub fn konolige(dt: &DefaultTheory) -> Theory {
    let formulas = dt
        .facts
        .iter()
        .cloned()
        .chain(dt.defaults.iter().map(DefaultRule::to_modal))
        .collect();
    Theory::new(Arc::clone(&dt.vocabulary), formulas).expect("translation keeps the vocabulary")
}

/// Reiter's `Γ` operator on a candidate extension `e`, computed over world
/// sets: starting from the models of the facts, repeatedly apply every
/// default whose prerequisite is entailed and whose justifications are
/// each satisfied by some world of `e`.
pub fn reiter_gamma(dt: &DefaultTheory, e: &BeliefState) -> Result<BeliefState> {
    let vocab = &dt.vocabulary;
    let consistent: Vec<bool> = dt
        .defaults
        .iter()
        .map(|d| {
            d.justifications
                .iter()
                .map(|j| Ok(!models(vocab, std::slice::from_ref(j))?.is_disjoint(e)))
                .collect::<Result<Vec<bool>>>()
                .map(|v| v.into_iter().all(|ok| ok))
        })
        .collect::<Result<_>>()?;
    let consequents: Vec<BeliefState> = dt
        .defaults
        .iter()
        .map(|d| models(vocab, std::slice::from_ref(&d.consequent)))
        .collect::<Result<_>>()?;

    let mut current = models(vocab, &dt.facts)?;
    loop {
        let mut next = current.clone();
        for (i, d) in dt.defaults.iter().enumerate() {
            if consistent[i] && entails(&current, &d.prerequisite)? {
                next = next.intersection(&consequents[i]);
            }
        }
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Reiter extensions by enumerating subsets of generating defaults.
/// Independent of the modal machinery.
pub fn reiter_extensions(dt: &DefaultTheory, limits: &Limits) -> Result<Vec<BeliefState>> {
    check_atom_cap(&dt.vocabulary, limits.max_atoms)?;
    if dt.defaults.len() > limits.max_defaults {
        return Err(Error::ResourceCap {
            what: "number of defaults",
            actual: dt.defaults.len(),
            limit: limits.max_defaults,
        });
    }
    let vocab = &dt.vocabulary;
    let facts = models(vocab, &dt.facts)?;
    let consequents: Vec<BeliefState> = dt
        .defaults
        .iter()
        .map(|d| models(vocab, std::slice::from_ref(&d.consequent)))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    for subset in 0u64..(1 << dt.defaults.len()) {
        let mut candidate = facts.clone();
        for (i, c) in consequents.iter().enumerate() {
            if (subset >> i) & 1 == 1 {
                candidate = candidate.intersection(c);
            }
        }
        if reiter_gamma(dt, &candidate)? == candidate {
            found.push(candidate);
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Semantics of a default theory, via its Konolige translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DlSemantics {
    KripkeKleene,
    /// Weak extensions: expansions of the translation.
    Weak,
    /// Reiter extensions: stable extensions of the translation.
    Reiter,
    WellFounded,
}

impl DlSemantics {
    pub fn modal_kind(self) -> SemanticsKind {
        match self {
            DlSemantics::KripkeKleene => SemanticsKind::KripkeKleene,
            DlSemantics::Weak => SemanticsKind::Expansion,
            DlSemantics::Reiter => SemanticsKind::Stable,
            DlSemantics::WellFounded => SemanticsKind::WellFounded,
        }
    }
}

pub fn dl_semantics(
    dt: &DefaultTheory,
    kind: DlSemantics,
    truth: TruthFunction,
    limits: Limits,
) -> Result<SemanticsResult> {
    let ctx = OperatorContext::with_limits(konolige(dt), truth, limits)?;
    compute(&ctx, kind.modal_kind())
}

/// Reiter extensions computed directly and through the translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentReport {
    pub reiter: Vec<BeliefState>,
    pub stable: Vec<BeliefState>,
    pub weak: Vec<BeliefState>,
    pub kk: SemanticsResult,
    pub wf: SemanticsResult,
}

impl AlignmentReport {
    pub fn aligned(&self) -> bool {
        self.reiter == self.stable
    }
}

pub fn align_check(dt: &DefaultTheory, limits: Limits) -> Result<AlignmentReport> {
    let reiter = reiter_extensions(dt, &limits)?;
    let ctx = OperatorContext::with_limits(konolige(dt), TruthFunction::Kleene, limits)?;
    let stable = stable_extensions(&ctx)?.total_states();
    Ok(AlignmentReport {
        reiter,
        stable,
        weak: compute(&ctx, SemanticsKind::Expansion)?.total_states(),
        kk: compute(&ctx, SemanticsKind::KripkeKleene)?,
        wf: compute(&ctx, SemanticsKind::WellFounded)?,
    })
}

//! Modal formulas and theories: the AST, text parsing and printing,
//! modal-subformula collection and polarity analysis.

pub(crate) mod parser;
mod polarity;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::worlds::Vocabulary;

pub use parser::{parse_formula, parse_theory};
pub use polarity::{modal_polarities, only_negative, KOccurrence, Polarity};

/// Propositional modal formula with the single epistemic operator `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Knows(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn knows(f: Formula) -> Self {
        Formula::Knows(Box::new(f))
    }

    /// `M f`, i.e. `~K ~f`.
    pub fn possible(f: Formula) -> Self {
        Formula::not(Formula::knows(Formula::not(f)))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// True iff no `K` occurs in the formula.
    pub fn is_objective(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => true,
            Formula::Not(f) => f.is_objective(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_objective() && b.is_objective()
            }
            Formula::Knows(_) => false,
        }
    }

    /// Atom names in first-occurrence order, without duplicates.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(f) | Formula::Knows(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn collect_modal<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => {}
            Formula::Not(f) => f.collect_modal(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_modal(out);
                b.collect_modal(out);
            }
            Formula::Knows(f) => {
                f.collect_modal(out);
                if !out.contains(&f.as_ref()) {
                    out.push(f);
                }
            }
        }
    }

    /// Replaces every outermost `K φ` by the constant `value(φ)`.
    pub fn substitute_knows(&self, value: &impl Fn(&Formula) -> bool) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => self.clone(),
            Formula::Not(f) => Formula::not(f.substitute_knows(value)),
            Formula::And(a, b) => Formula::and(a.substitute_knows(value), b.substitute_knows(value)),
            Formula::Or(a, b) => Formula::or(a.substitute_knows(value), b.substitute_knows(value)),
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute_knows(value), b.substitute_knows(value))
            }
            Formula::Iff(a, b) => Formula::iff(a.substitute_knows(value), b.substitute_knows(value)),
            Formula::Knows(f) => {
                if value(f) {
                    Formula::Top
                } else {
                    Formula::Bottom
                }
            }
        }
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) | Formula::Knows(_) => 5,
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 6,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, child: &Formula, min: u8) -> fmt::Result {
    if child.precedence() < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Top => write!(f, "true"),
            Formula::Bottom => write!(f, "false"),
            Formula::Not(g) => {
                write!(f, "~")?;
                write_operand(f, g, 5)
            }
            Formula::Knows(g) => {
                write!(f, "K ")?;
                write_operand(f, g, 5)
            }
            Formula::And(a, b) => {
                write_operand(f, a, 4)?;
                write!(f, " & ")?;
                write_operand(f, b, 5)
            }
            Formula::Or(a, b) => {
                write_operand(f, a, 3)?;
                write!(f, " | ")?;
                write_operand(f, b, 4)
            }
            Formula::Implies(a, b) => {
                write_operand(f, a, 3)?;
                write!(f, " -> ")?;
                write_operand(f, b, 2)
            }
            Formula::Iff(a, b) => {
                write_operand(f, a, 2)?;
                write!(f, " <-> ")?;
                write_operand(f, b, 2)
            }
        }
    }
}

/// A finite modal theory over a fixed vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    vocabulary: Arc<Vocabulary>,
    formulas: Vec<Formula>,
}

impl Theory {
    /// Checks that every atom of `formulas` is in `vocabulary`.
    pub fn new(vocabulary: Arc<Vocabulary>, formulas: Vec<Formula>) -> Result<Self> {
        for f in &formulas {
            if let Some(a) = f.atoms().into_iter().find(|a| vocabulary.index_of(a).is_none()) {
                return Err(Error::UnknownAtom(a.to_string()));
            }
        }
        Ok(Theory {
            vocabulary,
            formulas,
        })
    }

    /// Theory whose vocabulary is its atoms in first-occurrence order.
    pub fn from_formulas(formulas: Vec<Formula>) -> Result<Self> {
        let vocabulary = Arc::new(default_vocabulary(&formulas)?);
        Self::new(vocabulary, formulas)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocabulary
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn is_objective(&self) -> bool {
        self.formulas.iter().all(Formula::is_objective)
    }
}

pub(crate) fn default_vocabulary<'a, I>(formulas: I) -> Result<Vocabulary>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut names: Vec<&str> = Vec::new();
    for f in formulas {
        for a in f.atoms() {
            if !names.contains(&a) {
                names.push(a);
            }
        }
    }
    Vocabulary::new(names)
}

impl fmt::Display for Theory {
    /// `.ael` text; the `vocab:` header is written only when the vocabulary
    /// differs from the one the formulas would induce.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let induced = default_vocabulary(&self.formulas).ok();
        if induced.as_ref() != Some(self.vocabulary.as_ref()) {
            writeln!(f, "vocab: {}", self.vocabulary.names().join(" "))?;
        }
        for g in &self.formulas {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The distinct formulas `φ` with `K φ` occurring in `t`, innermost first,
/// otherwise in order of first occurrence.
pub fn collect_modal_subformulas(t: &Theory) -> Vec<Formula> {
    let mut out: Vec<&Formula> = Vec::new();
    for f in &t.formulas {
        f.collect_modal(&mut out);
    }
    out.into_iter().cloned().collect()
}

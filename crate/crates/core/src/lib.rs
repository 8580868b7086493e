//! Fixpoint semantics for propositional autoepistemic logic and default
//! logic.
//!
//! A modal theory is evaluated over possible-world sets. The crate computes
//! the Kripke-Kleene extension, Moore expansions, stable extensions and the
//! well-founded extension of a theory, under either the Kleene or the
//! supervaluation truth function. Default theories are handled through
//! Konolige's translation and, independently, by a direct computation of
//! Reiter extensions.
//!
//! ```
//! use nmr_core::{parse_theory, semantics, OperatorContext, TruthFunction};
//!
//! let theory = parse_theory("K P -> P").unwrap();
//! let ctx = OperatorContext::new(theory, TruthFunction::Kleene).unwrap();
//! let wf = semantics::well_founded_extension(&ctx).unwrap();
//! assert!(wf.results[0].is_total());
//! ```

pub mod defaults;
pub mod error;
pub mod operators;
pub mod oracle;
pub mod semantics;
pub mod syntax;
pub mod truth;
pub mod worlds;

pub use defaults::{
    align_check, dl_semantics, konolige, parse_default_theory, reiter_extensions, AlignmentReport, DefaultRule,
    DefaultTheory, DlSemantics,
};
pub use error::{Error, Result};
pub use operators::{Limits, OperatorContext, Revision};
pub use semantics::{DerivationTrace, SemanticsKind, SemanticsResult, StepKind};
pub use syntax::{collect_modal_subformulas, modal_polarities, only_negative, parse_formula, parse_theory, Formula, Theory};
pub use truth::{TruthFunction, TruthValue};
pub use worlds::{bottom_p, leq_k, leq_p, BeliefState, PartialBeliefState, Vocabulary, World};

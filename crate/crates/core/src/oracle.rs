//! Brute-force reference implementations. These enumerate every belief
//! state (`2^(2^n)` of them) and are only meant for tiny vocabularies, as
//! a cross-check of the candidate-guessing and process-based algorithms.

use crate::error::{Error, Result};
use crate::operators::{OperatorContext, Revision};
use crate::syntax::Formula;
use crate::truth::TruthFunction;
use crate::worlds::{BeliefState, PartialBeliefState, World};

/// Largest vocabulary for exhaustive belief-state enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_atoms: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_atoms: 4 }
    }
}

impl OracleBudget {
    fn check(&self, ctx: &OperatorContext) -> Result<()> {
        let n = ctx.theory().vocabulary().len();
        if n > self.max_atoms {
            return Err(Error::ResourceCap {
                what: "atoms for brute-force enumeration",
                actual: n,
                limit: self.max_atoms,
            });
        }
        Ok(())
    }
}

/// Every belief state over the context's vocabulary, in canonical order.
fn all_belief_states(ctx: &OperatorContext) -> impl Iterator<Item = BeliefState> + '_ {
    let vocab = ctx.theory().vocabulary();
    let num_worlds = vocab.num_worlds() as u32;
    (0u64..(1u64 << num_worlds)).map(move |mask| {
        BeliefState::from_worlds(vocab, (0..num_worlds).filter(|i| (mask >> i) & 1 == 1).map(World))
    })
}

/// All `b ⊆ W` with `D_T(b) = b`.
pub fn brute_expansions(ctx: &OperatorContext, budget: OracleBudget) -> Result<Vec<BeliefState>> {
    budget.check(ctx)?;
    let mut out = Vec::new();
    for b in all_belief_states(ctx) {
        if ctx.moore_step(&b)? == b {
            out.push(b);
        }
    }
    Ok(out)
}

/// All `b ⊆ W` reproduced by their own stable revision.
pub fn brute_stable(ctx: &OperatorContext, budget: OracleBudget) -> Result<Vec<BeliefState>> {
    budget.check(ctx)?;
    let mut out = Vec::new();
    for b in all_belief_states(ctx) {
        if ctx.stable_revision(&b)? == Revision::Converged(b.clone()) {
            out.push(b);
        }
    }
    Ok(out)
}

/// Evaluation at a raw pair `(z, c)` of belief states, which need not be
/// consistent. This is the symmetric extension of the consistent-pair
/// truth functions: `A1(z, c)` is the set of worlds where the theory is not
/// false, and `A2(z, c) = A1(c, z)`. When `c ⊆ z` it is ordinary evaluation
/// in `(z, c)`; when `z ⊆ c` it is the set of worlds where the theory is
/// true in `(c, z)`.
///
/// The evaluator works one world at a time and shares no code with the
/// table-based evaluators of the solver.
struct RawPair<'a> {
    ctx: &'a OperatorContext,
    z: Vec<World>,
    c: Vec<World>,
}

impl RawPair<'_> {
    fn atom(&self, name: &str, w: World) -> Result<bool> {
        let k = self.ctx.theory().vocabulary().index_of(name).ok_or_else(|| Error::UnknownAtom(name.into()))?;
        Ok(w.holds(k))
    }

    /// Kleene: `K φ` is certainly true when `φ` is certainly true in every
    /// world of `z`.
    fn certainly(&self, f: &Formula, w: World) -> Result<bool> {
        Ok(match f {
            Formula::Atom(a) => self.atom(a, w)?,
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Not(g) => !self.possibly(g, w)?,
            Formula::And(a, b) => self.certainly(a, w)? && self.certainly(b, w)?,
            Formula::Or(a, b) => self.certainly(a, w)? || self.certainly(b, w)?,
            Formula::Implies(a, b) => !self.possibly(a, w)? || self.certainly(b, w)?,
            Formula::Iff(a, b) => {
                (self.certainly(a, w)? && self.certainly(b, w)?) || (!self.possibly(a, w)? && !self.possibly(b, w)?)
            }
            Formula::Knows(g) => {
                for &u in &self.z {
                    if !self.certainly(g, u)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Kleene: `K φ` is possibly true when `φ` is possibly true in every
    /// world of `c`.
    fn possibly(&self, f: &Formula, w: World) -> Result<bool> {
        Ok(match f {
            Formula::Atom(a) => self.atom(a, w)?,
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Not(g) => !self.certainly(g, w)?,
            Formula::And(a, b) => self.possibly(a, w)? && self.possibly(b, w)?,
            Formula::Or(a, b) => self.possibly(a, w)? || self.possibly(b, w)?,
            Formula::Implies(a, b) => !self.certainly(a, w)? || self.possibly(b, w)?,
            Formula::Iff(a, b) => {
                (self.possibly(a, w)? && self.possibly(b, w)?) || (!self.certainly(a, w)? && !self.certainly(b, w)?)
            }
            Formula::Knows(g) => {
                for &u in &self.c {
                    if !self.possibly(g, u)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    fn kleene_not_false(&self) -> Result<BeliefState> {
        let vocab = self.ctx.theory().vocabulary();
        let mut out = BeliefState::empty(vocab);
        for w in vocab.worlds() {
            let mut ok = true;
            for f in self.ctx.theory().formulas() {
                if !self.possibly(f, w)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.insert(w);
            }
        }
        Ok(out)
    }

    /// S5 truth of `f` at `w` in the belief state `b`.
    fn s5(&self, b: &[World], f: &Formula, w: World) -> Result<bool> {
        Ok(match f {
            Formula::Atom(a) => self.atom(a, w)?,
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Not(g) => !self.s5(b, g, w)?,
            Formula::And(l, r) => self.s5(b, l, w)? && self.s5(b, r, w)?,
            Formula::Or(l, r) => self.s5(b, l, w)? || self.s5(b, r, w)?,
            Formula::Implies(l, r) => !self.s5(b, l, w)? || self.s5(b, r, w)?,
            Formula::Iff(l, r) => self.s5(b, l, w)? == self.s5(b, r, w)?,
            Formula::Knows(g) => {
                for &u in b {
                    if !self.s5(b, g, u)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Supervaluation: `w` is kept if some choice of the worlds in `z \ c`
    /// makes the theory true at `w` whatever is chosen from `c \ z`. For
    /// `c ⊆ z` this is "true in some completion", for `z ⊆ c` it is "true in
    /// every completion" of `(c, z)`.
    fn sv_not_false(&self) -> Result<BeliefState> {
        let base: Vec<World> = self.z.iter().copied().filter(|w| self.c.contains(w)).collect();
        let exists: Vec<World> = self.z.iter().copied().filter(|w| !self.c.contains(w)).collect();
        let forall: Vec<World> = self.c.iter().copied().filter(|w| !self.z.contains(w)).collect();
        let vocab = self.ctx.theory().vocabulary();
        let subset = |pool: &[World], mask: u64| -> Vec<World> {
            pool.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &w)| w).collect()
        };
        let mut out = BeliefState::empty(vocab);
        for w in vocab.worlds() {
            'choice: for m1 in 0u64..(1 << exists.len()) {
                for m2 in 0u64..(1 << forall.len()) {
                    let mut b = base.clone();
                    b.extend(subset(&exists, m1));
                    b.extend(subset(&forall, m2));
                    for f in self.ctx.theory().formulas() {
                        if !self.s5(&b, f, w)? {
                            continue 'choice;
                        }
                    }
                }
                out.insert(w);
                break;
            }
        }
        Ok(out)
    }
}

/// `A1(z, c)`: worlds where the theory is not false at the raw pair.
fn raw_not_false(ctx: &OperatorContext, z: &BeliefState, c: &BeliefState) -> Result<BeliefState> {
    let pair = RawPair {
        ctx,
        z: z.worlds(),
        c: c.worlds(),
    };
    match ctx.truth() {
        TruthFunction::Kleene => pair.kleene_not_false(),
        TruthFunction::Supervaluation => {
            let limit = ctx.limits().completion_cap;
            let free = z.difference(c).len() + c.difference(z).len();
            if free > limit {
                return Err(Error::ResourceCap {
                    what: "free worlds for supervaluation",
                    actual: free,
                    limit,
                });
            }
            pair.sv_not_false()
        }
    }
}

/// Unrestricted stable revision `S(c)`: least fixpoint in the knowledge
/// order, i.e. from `W` downward, of `z ↦ A1(z, c)`.
fn stable_operator(ctx: &OperatorContext, c: &BeliefState) -> Result<BeliefState> {
    let mut z = ctx.full();
    loop {
        let next = raw_not_false(ctx, &z, c)?;
        if next == z {
            return Ok(z);
        }
        if !next.is_subset(&z) {
            return Err(Error::internal(format!("stable operator is not decreasing at {z}")));
        }
        z = next;
    }
}

/// Well-founded fixpoint by iterating `(x, y) ↦ (S(y), S(x))` from
/// `(W, ∅)`.
pub fn algebraic_wf(ctx: &OperatorContext, budget: OracleBudget) -> Result<PartialBeliefState> {
    budget.check(ctx)?;
    let mut x = ctx.full();
    let mut y = BeliefState::empty(ctx.theory().vocabulary());
    // Each productive round removes a world from `x` or adds one to `y`.
    for _ in 0..=2 * ctx.theory().vocabulary().num_worlds() {
        let nx = stable_operator(ctx, &y)?;
        let ny = stable_operator(ctx, &x)?;
        if nx == x && ny == y {
            if !y.is_subset(&x) {
                return Err(Error::internal(format!(
                    "alternating iteration reached an inconsistent pair ({x}, {y})"
                )));
            }
            return PartialBeliefState::new(x, y);
        }
        x = nx;
        y = ny;
    }
    Err(Error::internal(format!("alternating iteration does not converge; last pair ({x}, {y})")))
}

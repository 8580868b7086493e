//! Worlds, total and partial possible-world sets, and the knowledge and
//! precision orders.
//!
//! A world over a vocabulary of `n` atoms is identified by its canonical
//! index in `[0, 2^n)`: atom `k` is true in world `i` iff bit `k` of `i` is
//! set. Possible-world sets are bitsets over those indices, so every
//! fixpoint computation reduces to word-level set operations.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::truth::TruthValue;

/// Default cap on the number of atoms whose worlds may be materialized.
pub const DEFAULT_MAX_ATOMS: usize = 20;

/// Hard upper bound; `2^n` world indices must fit comfortably in memory.
const ABSOLUTE_MAX_ATOMS: usize = 30;

/// Ordered, duplicate-free list of atom names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vocabulary {
    names: Vec<String>,
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    !matches!(name, "K" | "M" | "true" | "false" | "vocab")
}

impl Vocabulary {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_atom_name(&name) {
                return Err(Error::Precondition(format!("`{name}` is not a valid atom name")));
            }
            if out.contains(&name) {
                return Err(Error::Precondition(format!("duplicate atom `{name}` in vocabulary")));
            }
            out.push(name);
        }
        if out.len() > ABSOLUTE_MAX_ATOMS {
            return Err(Error::ResourceCap {
                what: "vocabulary size",
                actual: out.len(),
                limit: ABSOLUTE_MAX_ATOMS,
            });
        }
        Ok(Vocabulary { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn num_worlds(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.num_worlds() as u32).map(World)
    }

    /// Names of the atoms true in `w`, sorted alphabetically.
    pub fn true_atoms(&self, w: World) -> Vec<&str> {
        let mut atoms: Vec<&str> = (0..self.len())
            .filter(|&k| w.holds(k))
            .map(|k| self.names[k].as_str())
            .collect();
        atoms.sort_unstable();
        atoms
    }

    /// The world making exactly `atoms` true.
    pub fn world_of(&self, atoms: &[&str]) -> Result<World> {
        let mut index = 0u32;
        for a in atoms {
            let k = self.index_of(a).ok_or_else(|| Error::UnknownAtom(a.to_string()))?;
            index |= 1 << k;
        }
        Ok(World(index))
    }

    pub fn format_world(&self, w: World) -> String {
        if w.0 == 0 {
            "∅".to_string()
        } else {
            format!("{{{}}}", self.true_atoms(w).join(","))
        }
    }
}

/// One interpretation of the vocabulary, by canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub u32);

impl World {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn holds(self, atom: usize) -> bool {
        (self.0 >> atom) & 1 == 1
    }
}

const LOW_ATOM_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// A total possible-world set `B ⊆ W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BeliefState {
    vocab: Arc<Vocabulary>,
    words: Vec<u64>,
}

fn word_count(vocab: &Vocabulary) -> usize {
    vocab.num_worlds().div_ceil(64)
}

fn last_word_mask(vocab: &Vocabulary) -> u64 {
    let n = vocab.num_worlds();
    if n.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (n % 64)) - 1
    }
}

impl BeliefState {
    pub fn empty(vocab: &Arc<Vocabulary>) -> Self {
        BeliefState {
            vocab: Arc::clone(vocab),
            words: vec![0; word_count(vocab)],
        }
    }

    /// The full world set `W`.
    pub fn full(vocab: &Arc<Vocabulary>) -> Self {
        let mut words = vec![u64::MAX; word_count(vocab)];
        *words.last_mut().expect("at least one word") &= last_word_mask(vocab);
        BeliefState {
            vocab: Arc::clone(vocab),
            words,
        }
    }

    pub fn from_worlds<I: IntoIterator<Item = World>>(vocab: &Arc<Vocabulary>, worlds: I) -> Self {
        let mut b = Self::empty(vocab);
        for w in worlds {
            b.insert(w);
        }
        b
    }

    /// Builds a state from worlds written as lists of true atoms.
    pub fn from_atom_lists(vocab: &Arc<Vocabulary>, worlds: &[&[&str]]) -> Result<Self> {
        let mut b = Self::empty(vocab);
        for atoms in worlds {
            b.insert(vocab.world_of(atoms)?);
        }
        Ok(b)
    }

    /// Worlds in which atom `k` is true.
    pub fn atom(vocab: &Arc<Vocabulary>, k: usize) -> Self {
        let mut b = Self::empty(vocab);
        for (j, word) in b.words.iter_mut().enumerate() {
            *word = if k < 6 {
                LOW_ATOM_PATTERNS[k]
            } else if (j >> (k - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
        }
        *b.words.last_mut().expect("at least one word") &= last_word_mask(vocab);
        b
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn same_vocabulary(&self, other: &BeliefState) -> bool {
        Arc::ptr_eq(&self.vocab, &other.vocab) || self.vocab == other.vocab
    }

    pub(crate) fn check_vocabulary(&self, other: &BeliefState) -> Result<()> {
        if self.same_vocabulary(other) {
            Ok(())
        } else {
            Err(Error::VocabularyMismatch)
        }
    }

    fn assert_compatible(&self, other: &BeliefState) {
        assert!(self.same_vocabulary(other), "belief states over different vocabularies");
    }

    pub fn contains(&self, w: World) -> bool {
        let i = w.index();
        i < self.vocab.num_worlds() && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn insert(&mut self, w: World) {
        let i = w.index();
        assert!(i < self.vocab.num_worlds(), "world index out of range");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, w: World) {
        let i = w.index();
        if i < self.vocab.num_worlds() {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(&self.vocab)
    }

    pub fn is_subset(&self, other: &BeliefState) -> bool {
        self.assert_compatible(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BeliefState) -> bool {
        self.assert_compatible(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn zip_with(&self, other: &BeliefState, op: impl Fn(u64, u64) -> u64) -> BeliefState {
        self.assert_compatible(other);
        BeliefState {
            vocab: Arc::clone(&self.vocab),
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &BeliefState) -> BeliefState {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &BeliefState) -> BeliefState {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &BeliefState) -> BeliefState {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> BeliefState {
        Self::full(&self.vocab).difference(self)
    }

    /// Worlds in ascending canonical order.
    pub fn iter(&self) -> impl Iterator<Item = World> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(World(j as u32 * 64 + bit))
            })
        })
    }

    pub fn worlds(&self) -> Vec<World> {
        self.iter().collect()
    }
}

impl Ord for BeliefState {
    /// Canonical order: the numeric value of the world bitmask.
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
            .then_with(|| self.vocab.names.cmp(&other.vocab.names))
    }
}

impl PartialOrd for BeliefState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BeliefState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worlds: Vec<String> = self.iter().map(|w| self.vocab.format_world(w)).collect();
        write!(f, "{{{}}}", worlds.join(", "))
    }
}

/// A partial possible-world set as the consistent pair `(pp, cp)` of
/// potentially and certainly possible worlds, `cp ⊆ pp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialBeliefState {
    pp: BeliefState,
    cp: BeliefState,
}

impl PartialBeliefState {
    pub fn new(pp: BeliefState, cp: BeliefState) -> Result<Self> {
        pp.check_vocabulary(&cp)?;
        if !cp.is_subset(&pp) {
            return Err(Error::internal(format!(
                "inconsistent pair: certainly possible {cp} not within potentially possible {pp}"
            )));
        }
        Ok(PartialBeliefState { pp, cp })
    }

    pub fn total(b: BeliefState) -> Self {
        PartialBeliefState { pp: b.clone(), cp: b }
    }

    pub fn pp(&self) -> &BeliefState {
        &self.pp
    }

    pub fn cp(&self) -> &BeliefState {
        &self.cp
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        self.pp.vocabulary()
    }

    pub fn is_total(&self) -> bool {
        self.pp == self.cp
    }

    /// The total state this pair denotes, if it is total.
    pub fn as_total(&self) -> Option<&BeliefState> {
        self.is_total().then_some(&self.pp)
    }

    /// Worlds of unknown status, `pp \ cp`.
    pub fn unknown(&self) -> BeliefState {
        self.pp.difference(&self.cp)
    }

    pub fn status(&self, w: World) -> TruthValue {
        if self.cp.contains(w) {
            TruthValue::True
        } else if self.pp.contains(w) {
            TruthValue::Unknown
        } else {
            TruthValue::False
        }
    }

    /// Copy with the worlds of `u` made certainly possible.
    pub fn with_possible(&self, u: &BeliefState) -> Result<Self> {
        Self::new(self.pp.clone(), self.cp.union(u))
    }
}

impl fmt::Display for PartialBeliefState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pp, self.cp)
    }
}

/// All `2^n` worlds of `v`, subject to the atom cap.
pub fn enumerate_worlds(v: &Arc<Vocabulary>, max_atoms: usize) -> Result<BeliefState> {
    check_atom_cap(v, max_atoms)?;
    Ok(BeliefState::full(v))
}

pub(crate) fn check_atom_cap(v: &Vocabulary, max_atoms: usize) -> Result<()> {
    if v.len() > max_atoms {
        return Err(Error::ResourceCap {
            what: "number of atoms",
            actual: v.len(),
            limit: max_atoms,
        });
    }
    Ok(())
}

/// The totally unknown partial state `(W, ∅)`.
pub fn bottom_p(v: &Arc<Vocabulary>) -> PartialBeliefState {
    PartialBeliefState {
        pp: BeliefState::full(v),
        cp: BeliefState::empty(v),
    }
}

/// Knowledge order: `b1 ≤k b2` iff `b2 ⊆ b1`.
pub fn leq_k(b1: &BeliefState, b2: &BeliefState) -> Result<bool> {
    b1.check_vocabulary(b2)?;
    Ok(b2.is_subset(b1))
}

/// Precision order on pairs: `pp1 ⊇ pp2` and `cp1 ⊆ cp2`.
pub fn leq_p(p1: &PartialBeliefState, p2: &PartialBeliefState) -> Result<bool> {
    p1.pp.check_vocabulary(&p2.pp)?;
    Ok(p2.pp.is_subset(&p1.pp) && p1.cp.is_subset(&p2.cp))
}

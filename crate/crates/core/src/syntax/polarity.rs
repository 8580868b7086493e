use std::fmt;
use std::ops::BitOr;

use super::{Formula, Theory};

/// Sign of a `K` occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
    Both,
}

impl Polarity {
    fn flip(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            Polarity::Both => Polarity::Both,
        }
    }
}

impl BitOr for Polarity {
    type Output = Polarity;

    fn bitor(self, rhs: Polarity) -> Polarity {
        if self == rhs {
            self
        } else {
            Polarity::Both
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Both => "both",
        })
    }
}

/// A `K` node located by formula index and child path from the root
/// (`0` = first/only child, `1` = second child).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KOccurrence {
    pub formula: usize,
    pub path: Vec<u8>,
}

fn walk(f: &Formula, sign: Polarity, index: usize, path: &mut Vec<u8>, out: &mut Vec<(KOccurrence, Polarity)>) {
    let child = |g: &Formula, step: u8, sign: Polarity, path: &mut Vec<u8>, out: &mut Vec<_>| {
        path.push(step);
        walk(g, sign, index, path, out);
        path.pop();
    };
    match f {
        Formula::Atom(_) | Formula::Top | Formula::Bottom => {}
        Formula::Not(g) => child(g, 0, sign.flip(), path, out),
        Formula::And(a, b) | Formula::Or(a, b) => {
            child(a, 0, sign, path, out);
            child(b, 1, sign, path, out);
        }
        Formula::Implies(a, b) => {
            child(a, 0, sign.flip(), path, out);
            child(b, 1, sign, path, out);
        }
        Formula::Iff(a, b) => {
            child(a, 0, Polarity::Both, path, out);
            child(b, 1, Polarity::Both, path, out);
        }
        Formula::Knows(g) => {
            let occurrence = KOccurrence {
                formula: index,
                path: path.clone(),
            };
            out.push((occurrence, sign));
            child(g, 0, sign, path, out);
        }
    }
}

/// Polarity of every `K` occurrence in `t`, in pre-order.
pub fn modal_polarities(t: &Theory) -> Vec<(KOccurrence, Polarity)> {
    let mut out = Vec::new();
    for (i, f) in t.formulas().iter().enumerate() {
        walk(f, Polarity::Positive, i, &mut Vec::new(), &mut out);
    }
    out
}

/// True iff every `K` occurrence in `t` is negative.
pub fn only_negative(t: &Theory) -> bool {
    modal_polarities(t).iter().all(|(_, p)| *p == Polarity::Negative)
}

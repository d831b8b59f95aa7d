//! Propositional modal formulas.
//!
//! The concrete syntax is ASCII: `~`, `[]`, `<>`, `&`, `|`, `->`, `<->`.
//! `<>` is kept as its own node so that printed output reads the way it was
//! written; [`Formula::desugar`] rewrites it away for the proof kernel and the
//! model search.

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("formula contains `<>`; desugar it first")]
    DiamondPresent,
}

/// Whether `name` is a legal atom name: `[a-z][a-zA-Z0-9_]*`.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Formula {
    /// Builds an atom. Panics on an illegal name; use [`parse`] for
    /// untrusted input.
    pub fn atom(name: &str) -> Formula {
        assert!(is_atom_name(name), "illegal atom name {name:?}");
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Formula {
        Formula::Diamond(Box::new(f))
    }

    /// Rewrites every `<>A` to `~[]~A`, innermost first.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.desugar()),
            Formula::And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Formula::Or(a, b) => Formula::or(a.desugar(), b.desugar()),
            Formula::Implies(a, b) => Formula::implies(a.desugar(), b.desugar()),
            Formula::Iff(a, b) => Formula::iff(a.desugar(), b.desugar()),
            Formula::Box(a) => Formula::boxed(a.desugar()),
            Formula::Diamond(a) => Formula::not(Formula::boxed(Formula::not(a.desugar()))),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => a.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Distinct subformulas headed by `[]`. The input must be `<>`-free.
    pub fn box_subformulas(&self) -> Result<BTreeSet<Formula>, FormulaError> {
        let mut out = BTreeSet::new();
        self.collect_boxes(&mut out)?;
        Ok(out)
    }

    pub(crate) fn collect_boxes(&self, out: &mut BTreeSet<Formula>) -> Result<(), FormulaError> {
        match self {
            Formula::Atom(_) => Ok(()),
            Formula::Diamond(_) => Err(FormulaError::DiamondPresent),
            Formula::Not(a) => a.collect_boxes(out),
            Formula::Box(a) => {
                a.collect_boxes(out)?;
                out.insert(self.clone());
                Ok(())
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_boxes(out)?;
                b.collect_boxes(out)
            }
        }
    }

    pub fn contains_diamond(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Diamond(_) => true,
            Formula::Not(a) | Formula::Box(a) => a.contains_diamond(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.contains_diamond() || b.contains_diamond(),
        }
    }

    /// Height of the syntax tree; an atom has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Maximum nesting of `[]` and `<>`.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Box(a) | Formula::Diamond(a) => 1 + a.modal_depth(),
            Formula::Not(a) => a.modal_depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.modal_depth().max(b.modal_depth()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Set of atom names occurring in `f`.
pub fn atoms_of(f: &Formula) -> BTreeSet<String> {
    f.atoms()
}

/// Minimal-parenthesis concrete syntax.
pub fn print(f: &Formula) -> String {
    print::print(f)
}

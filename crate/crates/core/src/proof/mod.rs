//! Two-part Hilbert derivations.
//!
//! A derivation has a global section followed by a local section. Premises of
//! the global section are assumed at every world, those of the local section
//! at one world only. Necessitation is sound only over the former, so the
//! checker accepts `nec` lines only in the global section and only over
//! global lines.

mod check;
mod schema;
mod script;
mod taut;

use std::fmt;

use crate::formula::Formula;
use crate::semantics::Logic;

pub use check::{check, CheckReport, ErrorKind, LineError, Status};
pub use schema::{match_axiom_schema, Axiom, Binding, Metavar};
pub use script::MpfError;
pub use taut::{is_tautology_instance, TooManyVariables, MAX_TAUT_VARIABLES};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    Premise,
    Taut,
    Axiom(Axiom),
    /// Modus ponens: the implication's label, then the antecedent's.
    Mp(String, String),
    Nec(String),
}

impl Justification {
    pub fn cited(&self) -> Vec<&str> {
        match self {
            Justification::Mp(i, a) => vec![i, a],
            Justification::Nec(l) => vec![l],
            _ => vec![],
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Premise => f.write_str("premise"),
            Justification::Taut => f.write_str("taut"),
            Justification::Axiom(Axiom::K) => f.write_str("axK"),
            Justification::Axiom(Axiom::T) => f.write_str("axT"),
            Justification::Axiom(Axiom::Four) => f.write_str("ax4"),
            Justification::Axiom(Axiom::Five) => f.write_str("ax5"),
            Justification::Mp(i, a) => write!(f, "mp {i} {a}"),
            Justification::Nec(l) => write!(f, "nec {l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub label: String,
    pub formula: Formula,
    pub justification: Justification,
}

impl Line {
    pub fn new(label: &str, formula: Formula, justification: Justification) -> Line {
        Line {
            label: label.to_string(),
            formula,
            justification,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Section {
    Global,
    Local,
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Section::Global => "global",
            Section::Local => "local",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub system: Logic,
    pub global_lines: Vec<Line>,
    pub local_lines: Vec<Line>,
}

impl Derivation {
    pub fn new(system: Logic) -> Derivation {
        Derivation {
            system,
            global_lines: Vec::new(),
            local_lines: Vec::new(),
        }
    }

    /// All lines in order, tagged with their section.
    pub fn lines(&self) -> impl Iterator<Item = (Section, &Line)> {
        self.global_lines
            .iter()
            .map(|l| (Section::Global, l))
            .chain(self.local_lines.iter().map(|l| (Section::Local, l)))
    }

    pub fn global_premises(&self) -> Vec<Formula> {
        premises(&self.global_lines)
    }

    pub fn local_premises(&self) -> Vec<Formula> {
        premises(&self.local_lines)
    }

    /// Formula of the last line.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.local_lines
            .last()
            .or_else(|| self.global_lines.last())
            .map(|l| &l.formula)
    }

    pub fn parse(text: &str) -> Result<Derivation, MpfError> {
        script::parse_mpf(text)
    }

    pub fn to_mpf(&self) -> String {
        script::print_mpf(self)
    }
}

fn premises(lines: &[Line]) -> Vec<Formula> {
    lines
        .iter()
        .filter(|l| l.justification == Justification::Premise)
        .map(|l| l.formula.clone())
        .collect()
}

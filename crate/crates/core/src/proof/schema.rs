use std::collections::BTreeMap;
use std::fmt;

use crate::formula::Formula;
use crate::semantics::Logic;

/// The modal axiom schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `[](A -> B) -> []A -> []B`
    K,
    /// `[]A -> A`
    T,
    /// `[]A -> [][]A`
    Four,
    /// `<>[]A -> []A`
    Five,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::K, Axiom::T, Axiom::Four, Axiom::Five];

    /// Whether the schema belongs to the axiomatization of `logic`.
    pub fn available_in(self, logic: Logic) -> bool {
        match self {
            Axiom::K => true,
            Axiom::T => logic != Logic::K,
            Axiom::Four => matches!(logic, Logic::S4 | Logic::S5),
            Axiom::Five => logic == Logic::S5,
        }
    }

    fn pattern(self) -> Pattern {
        use Pattern::*;
        let a = || Meta(Metavar::A);
        let b = || Meta(Metavar::B);
        let bx = |p: Pattern| Box(std::boxed::Box::new(p));
        let imp =
            |p: Pattern, q: Pattern| Implies(std::boxed::Box::new(p), std::boxed::Box::new(q));
        let not = |p: Pattern| Not(std::boxed::Box::new(p));
        match self {
            Axiom::K => imp(bx(imp(a(), b())), imp(bx(a()), bx(b()))),
            Axiom::T => imp(bx(a()), a()),
            Axiom::Four => imp(bx(a()), bx(bx(a()))),
            Axiom::Five => imp(not(bx(not(bx(a())))), bx(a())),
        }
    }

    /// Instantiates the (desugared) schema.
    pub fn instance(self, a: &Formula, b: &Formula) -> Formula {
        self.pattern().instantiate(a, b)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::K => "K",
            Axiom::T => "T",
            Axiom::Four => "4",
            Axiom::Five => "5",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metavar {
    A,
    B,
}

pub type Binding = BTreeMap<Metavar, Formula>;

enum Pattern {
    Meta(Metavar),
    Not(Box<Pattern>),
    Implies(Box<Pattern>, Box<Pattern>),
    Box(Box<Pattern>),
}

impl Pattern {
    fn matches(&self, f: &Formula, binding: &mut Binding) -> bool {
        match (self, f) {
            (Pattern::Meta(m), _) => match binding.get(m) {
                Some(bound) => bound == f,
                None => {
                    binding.insert(*m, f.clone());
                    true
                }
            },
            (Pattern::Not(p), Formula::Not(g)) | (Pattern::Box(p), Formula::Box(g)) => {
                p.matches(g, binding)
            }
            (Pattern::Implies(p, q), Formula::Implies(g, h)) => {
                p.matches(g, binding) && q.matches(h, binding)
            }
            _ => false,
        }
    }

    fn instantiate(&self, a: &Formula, b: &Formula) -> Formula {
        match self {
            Pattern::Meta(Metavar::A) => a.desugar(),
            Pattern::Meta(Metavar::B) => b.desugar(),
            Pattern::Not(p) => Formula::not(p.instantiate(a, b)),
            Pattern::Box(p) => Formula::boxed(p.instantiate(a, b)),
            Pattern::Implies(p, q) => Formula::implies(p.instantiate(a, b), q.instantiate(a, b)),
        }
    }
}

/// Matches `desugar(f)` against the desugared schema and returns the
/// metavariable assignment.
pub fn match_axiom_schema(axiom: Axiom, f: &Formula) -> Option<Binding> {
    let mut binding = Binding::new();
    axiom
        .pattern()
        .matches(&f.desugar(), &mut binding)
        .then_some(binding)
}

use std::collections::HashMap;

use crate::formula::Formula;

/// Most propositional variables the truth table will enumerate.
pub const MAX_TAUT_VARIABLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("abstraction has {count} variables; the limit is {MAX_TAUT_VARIABLES}")]
pub struct TooManyVariables {
    pub count: usize,
}

enum Prop {
    Var(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

impl Prop {
    fn eval(&self, assignment: u32) -> bool {
        match self {
            Prop::Var(i) => assignment >> i & 1 == 1,
            Prop::Not(a) => !a.eval(assignment),
            Prop::And(a, b) => a.eval(assignment) && b.eval(assignment),
            Prop::Or(a, b) => a.eval(assignment) || b.eval(assignment),
            Prop::Implies(a, b) => !a.eval(assignment) || b.eval(assignment),
            Prop::Iff(a, b) => a.eval(assignment) == b.eval(assignment),
        }
    }
}

// Maximal atom- and box-headed subformulas become variables; equal
// subformulas share one.
fn abstract_formula(f: &Formula, vars: &mut HashMap<Formula, usize>) -> Prop {
    let bin = |a: &Formula, b: &Formula, vars: &mut HashMap<Formula, usize>| {
        (
            Box::new(abstract_formula(a, vars)),
            Box::new(abstract_formula(b, vars)),
        )
    };
    match f {
        Formula::Atom(_) | Formula::Box(_) | Formula::Diamond(_) => {
            let next = vars.len();
            Prop::Var(*vars.entry(f.clone()).or_insert(next))
        }
        Formula::Not(a) => Prop::Not(Box::new(abstract_formula(a, vars))),
        Formula::And(a, b) => {
            let (a, b) = bin(a, b, vars);
            Prop::And(a, b)
        }
        Formula::Or(a, b) => {
            let (a, b) = bin(a, b, vars);
            Prop::Or(a, b)
        }
        Formula::Implies(a, b) => {
            let (a, b) = bin(a, b, vars);
            Prop::Implies(a, b)
        }
        Formula::Iff(a, b) => {
            let (a, b) = bin(a, b, vars);
            Prop::Iff(a, b)
        }
    }
}

/// Whether `f` is a substitution instance of a classical tautology.
///
/// The formula is desugared first, so `<>A` and `~[]~A` abstract to the same
/// variable.
pub fn is_tautology_instance(f: &Formula) -> Result<bool, TooManyVariables> {
    let mut vars = HashMap::new();
    let prop = abstract_formula(&f.desugar(), &mut vars);
    let count = vars.len();
    if count > MAX_TAUT_VARIABLES {
        return Err(TooManyVariables { count });
    }
    Ok((0..1u32 << count).all(|a| prop.eval(a)))
}

//! Test-only oracles and generators.
//!
//! The oracles here re-implement Kripke truth and countermodel search in the
//! most direct way (every valuation, every world, every relation) so they stay
//! independent of the library's search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use modal::formula::Formula;
use modal::proof::{Axiom, Derivation, Justification, Line};
use modal::semantics::Logic;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn f(s: &str) -> Formula {
    modal::formula::parse(s).unwrap()
}

pub fn fs(xs: &[&str]) -> Vec<Formula> {
    xs.iter().map(|s| f(s)).collect()
}

// ---------------------------------------------------------------------------
// Naive semantics

/// A model given as explicit tables.
pub struct Table {
    pub n: usize,
    pub succ: Vec<Vec<bool>>,
    pub atoms: Vec<String>,
    /// `val[atom][world]`
    pub val: Vec<Vec<bool>>,
}

impl Table {
    pub fn truth(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Atom(a) => match self.atoms.iter().position(|x| x == a) {
                Some(i) => self.val[i][w],
                None => false,
            },
            Formula::Not(a) => !self.truth(w, a),
            Formula::And(a, b) => self.truth(w, a) && self.truth(w, b),
            Formula::Or(a, b) => self.truth(w, a) || self.truth(w, b),
            Formula::Implies(a, b) => !self.truth(w, a) || self.truth(w, b),
            Formula::Iff(a, b) => self.truth(w, a) == self.truth(w, b),
            Formula::Box(a) => (0..self.n).all(|v| !self.succ[w][v] || self.truth(v, a)),
            Formula::Diamond(a) => (0..self.n).any(|v| self.succ[w][v] && self.truth(v, a)),
        }
    }

    /// Some world refutes the query.
    pub fn refutes(&self, globals: &[Formula], locals: &[Formula], goal: &Formula) -> bool {
        if !globals
            .iter()
            .all(|g| (0..self.n).all(|w| self.truth(w, g)))
        {
            return false;
        }
        (0..self.n).any(|w| locals.iter().all(|l| self.truth(w, l)) && !self.truth(w, goal))
    }
}

pub fn query_atoms(globals: &[Formula], locals: &[Formula], goal: &Formula) -> Vec<String> {
    let mut atoms = BTreeSet::new();
    for x in globals.iter().chain(locals).chain(std::iter::once(goal)) {
        atoms.extend(x.atoms());
    }
    atoms.into_iter().collect()
}

fn valuations(k: usize, n: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    (0u64..1 << (k * n)).map(move |bits| {
        (0..k)
            .map(|i| (0..n).map(|w| bits >> (i * n + w) & 1 == 1).collect())
            .collect()
    })
}

/// Every relation on `n` worlds, as adjacency matrices.
pub fn all_relations(n: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    (0u64..1 << (n * n)).map(move |bits| {
        (0..n)
            .map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect())
            .collect()
    })
}

pub fn reflexive(r: &[Vec<bool>]) -> bool {
    (0..r.len()).all(|i| r[i][i])
}

pub fn symmetric(r: &[Vec<bool>]) -> bool {
    (0..r.len()).all(|i| (0..r.len()).all(|j| r[i][j] == r[j][i]))
}

pub fn transitive(r: &[Vec<bool>]) -> bool {
    let n = r.len();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r[i][j] && r[j][k]) || r[i][k])))
}

pub fn in_frame_class(logic: Logic, r: &[Vec<bool>]) -> bool {
    match logic {
        Logic::K => true,
        Logic::T => reflexive(r),
        Logic::S4 => reflexive(r) && transitive(r),
        Logic::S5 => reflexive(r) && transitive(r) && symmetric(r),
    }
}

/// Brute force over universal models with 1..=max_worlds worlds.
pub fn universal_countermodel_exists(
    globals: &[Formula],
    locals: &[Formula],
    goal: &Formula,
    max_worlds: usize,
) -> bool {
    let atoms = query_atoms(globals, locals, goal);
    (1..=max_worlds).any(|n| {
        valuations(atoms.len(), n).any(|val| {
            let t = Table {
                n,
                succ: vec![vec![true; n]; n],
                atoms: atoms.clone(),
                val,
            };
            t.refutes(globals, locals, goal)
        })
    })
}

/// Brute force over every relation in `logic`'s frame class.
pub fn relational_countermodel_exists(
    logic: Logic,
    globals: &[Formula],
    locals: &[Formula],
    goal: &Formula,
    max_worlds: usize,
) -> bool {
    let atoms = query_atoms(globals, locals, goal);
    (1..=max_worlds).any(|n| {
        let frames: Vec<_> = all_relations(n)
            .filter(|r| in_frame_class(logic, r))
            .collect();
        valuations(atoms.len(), n).any(|val| {
            frames.iter().any(|succ| {
                let t = Table {
                    n,
                    succ: succ.clone(),
                    atoms: atoms.clone(),
                    val: val.clone(),
                };
                t.refutes(globals, locals, goal)
            })
        })
    })
}

// ---------------------------------------------------------------------------
// Random formulas

pub const ATOMS: [&str; 4] = ["p", "q", "r", "s"];

/// Proptest strategy for formulas of depth at most `depth` over the first
/// `atoms` names of [`ATOMS`].
pub fn formula_strategy(depth: u32, atoms: usize) -> BoxedStrategy<Formula> {
    let leaf = proptest::sample::select(ATOMS[..atoms].to_vec()).prop_map(Formula::atom);
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
    .boxed()
}

/// Uniform-ish random formula of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, atoms: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::atom(ATOMS[rng.gen_range(0..atoms)]);
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, atoms);
    match rng.gen_range(0..7) {
        0 => Formula::not(sub(rng)),
        1 => Formula::boxed(sub(rng)),
        2 => Formula::diamond(sub(rng)),
        3 => Formula::and(sub(rng), sub(rng)),
        4 => Formula::or(sub(rng), sub(rng)),
        5 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::iff(sub(rng), sub(rng)),
    }
}

#[derive(Debug, Clone)]
pub struct RandomQuery {
    pub globals: Vec<Formula>,
    pub locals: Vec<Formula>,
    pub goal: Formula,
}

/// A random S5 query. A third of the goals are built from the premises so
/// that valid queries show up alongside refutable ones.
pub fn random_query<R: Rng>(rng: &mut R, depth: usize, atoms: usize) -> RandomQuery {
    let globals: Vec<Formula> = (0..rng.gen_range(0..=2))
        .map(|_| random_formula(rng, depth, atoms))
        .collect();
    let locals: Vec<Formula> = (0..rng.gen_range(0..=2))
        .map(|_| random_formula(rng, depth, atoms))
        .collect();
    let premises: Vec<&Formula> = globals.iter().chain(&locals).collect();
    let goal = if !premises.is_empty() && rng.gen_bool(0.35) {
        let p = (*premises.choose(rng).unwrap()).clone();
        match rng.gen_range(0..4) {
            0 => Formula::boxed(p),
            1 => Formula::diamond(p),
            2 => Formula::or(p, random_formula(rng, 1, atoms)),
            _ => p,
        }
    } else {
        random_formula(rng, depth, atoms)
    };
    RandomQuery {
        globals,
        locals,
        goal,
    }
}

// ---------------------------------------------------------------------------
// Random accepted derivations

fn small<R: Rng>(rng: &mut R, pool: &[Formula]) -> Formula {
    let usable: Vec<&Formula> = pool.iter().filter(|f| f.size() <= 9).collect();
    if !usable.is_empty() && rng.gen_bool(0.7) {
        (*usable.choose(rng).unwrap()).clone()
    } else {
        random_formula(rng, 2, 2)
    }
}

fn tautology<R: Rng>(rng: &mut R, pool: &[Formula]) -> Formula {
    let a = small(rng, pool);
    let b = small(rng, pool);
    let c = small(rng, pool);
    use Formula as F;
    match rng.gen_range(0..7) {
        0 => F::implies(a.clone(), a),
        1 => F::implies(a.clone(), F::implies(b, a)),
        2 => F::implies(
            F::implies(a.clone(), F::implies(b.clone(), c.clone())),
            F::implies(F::implies(a.clone(), b), F::implies(a, c)),
        ),
        3 => F::implies(F::not(F::not(a.clone())), a),
        4 => F::implies(F::and(a.clone(), b), a),
        5 => F::implies(a.clone(), F::or(a, b)),
        _ => F::implies(
            F::implies(a.clone(), b.clone()),
            F::implies(F::not(b), F::not(a)),
        ),
    }
}

struct Builder {
    d: Derivation,
    next: usize,
}

impl Builder {
    fn label(&mut self) -> String {
        self.next += 1;
        format!("n{}", self.next)
    }

    fn push(&mut self, global: bool, formula: Formula, j: Justification) {
        let label = self.label();
        let line = Line {
            label,
            formula,
            justification: j,
        };
        if global {
            self.d.global_lines.push(line);
        } else {
            self.d.local_lines.push(line);
        }
    }

    fn pool(&self) -> Vec<Formula> {
        self.d.lines().map(|(_, l)| l.formula.clone()).collect()
    }

    /// (implication, antecedent, consequent, both global)
    fn mp_candidates(&self) -> Vec<(String, String, Formula, bool)> {
        let lines: Vec<_> = self.d.lines().collect();
        let mut out = Vec::new();
        for (si, li) in &lines {
            if let Formula::Implies(x, y) = li.formula.desugar() {
                for (sa, la) in &lines {
                    if la.formula.desugar() == *x {
                        let global = *si == modal::proof::Section::Global
                            && *sa == modal::proof::Section::Global;
                        out.push((li.label.clone(), la.label.clone(), (*y).clone(), global));
                    }
                }
            }
        }
        out
    }
}

/// A random S5 derivation over atoms `p`, `q` that the kernel accepts by
/// construction. Contains at least one `nec` line in the global section.
pub fn random_accepted_derivation<R: Rng>(rng: &mut R) -> Derivation {
    let mut b = Builder {
        d: Derivation::new(Logic::S5),
        next: 0,
    };
    for _ in 0..rng.gen_range(1..=2) {
        let g = random_formula(rng, 2, 2);
        b.push(true, g, Justification::Premise);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let l = random_formula(rng, 2, 2);
        b.push(false, l, Justification::Premise);
    }
    let steps = rng.gen_range(6..=14);
    for step in 0..steps {
        let pool = b.pool();
        let choice = if step == 0 { 3 } else { rng.gen_range(0..5) };
        match choice {
            0 => {
                let t = tautology(rng, &pool);
                b.push(rng.gen_bool(0.5), t, Justification::Taut);
            }
            1 => {
                let ax = *Axiom::ALL.choose(rng).unwrap();
                let x = small(rng, &pool);
                let y = small(rng, &pool);
                let inst = ax.instance(&x, &y);
                b.push(rng.gen_bool(0.5), inst, Justification::Axiom(ax));
            }
            2 => {
                let cands = b.mp_candidates();
                if let Some((i, a, y, global)) = cands.choose(rng).cloned() {
                    b.push(global && rng.gen_bool(0.6), y, Justification::Mp(i, a));
                }
            }
            _ => {
                let globals: Vec<(String, Formula)> =
                    b.d.global_lines
                        .iter()
                        .filter(|l| l.formula.size() <= 12)
                        .map(|l| (l.label.clone(), l.formula.clone()))
                        .collect();
                if let Some((label, formula)) = globals.choose(rng).cloned() {
                    b.push(true, Formula::boxed(formula), Justification::Nec(label));
                }
            }
        }
    }
    // End on a derived line where possible.
    if let Some((i, a, y, global)) = b.mp_candidates().choose(rng).cloned() {
        b.push(global && rng.gen_bool(0.3), y, Justification::Mp(i, a));
    }
    b.d
}

/// Rewrites every `~[]~X` to `<>X`.
pub fn resugar(f: &Formula) -> Formula {
    use Formula as F;
    match f {
        F::Not(inner) => {
            if let F::Box(b) = &**inner {
                if let F::Not(x) = &**b {
                    return F::diamond(resugar(x));
                }
            }
            F::not(resugar(inner))
        }
        F::Atom(_) => f.clone(),
        F::And(a, b) => F::and(resugar(a), resugar(b)),
        F::Or(a, b) => F::or(resugar(a), resugar(b)),
        F::Implies(a, b) => F::implies(resugar(a), resugar(b)),
        F::Iff(a, b) => F::iff(resugar(a), resugar(b)),
        F::Box(a) => F::boxed(resugar(a)),
        F::Diamond(a) => F::diamond(resugar(a)),
    }
}

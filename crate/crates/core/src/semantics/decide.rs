//! Countermodel search for local and global consequence.
//!
//! A query `globals ; locals => goal` fails when some model of the logic's
//! frame class makes every global premise true at all worlds, every local
//! premise true at one world `w`, and the goal false at `w`. Frame classes are
//! closed under renaming worlds, so the search only tries `w = 0`.
//!
//! S5 is searched over universal models. Truth in a universal model only
//! depends on which valuation types (sets of true atoms) occur, so at `n`
//! worlds the search visits one model per choice of world-0 type plus a set of
//! `n - 1` further distinct types. Models that repeat a type are bisimilar to a
//! smaller model that was already tried.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::formula::Formula;

use super::model::{universal_relation, KripkeModel};
use super::{Logic, SemanticsError};

/// Search budget in candidate models.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// World bound for K, T and S4 when the caller gives none.
pub const DEFAULT_MAX_WORLDS: usize = 3;

/// Most atoms [`enumerate_models`] accepts.
pub const MAX_ENUMERATION_ATOMS: usize = 6;

/// Bitmask evaluation caps models at 64 worlds.
const MAX_WORLDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No countermodel exists.
    Valid,
    /// No countermodel with at most `max_worlds` worlds exists.
    ValidUpToBound { max_worlds: usize },
    /// The goal fails at `world` while every premise holds.
    Countermodel { model: KripkeModel, world: usize },
}

impl Verdict {
    pub fn is_countermodel(&self) -> bool {
        matches!(self, Verdict::Countermodel { .. })
    }
}

/// Number of worlds that suffices to refute any refutable S5 query: one
/// witness per distinct `[]`-subformula plus the evaluation world.
pub fn small_model_bound(globals: &[Formula], locals: &[Formula], goal: &Formula) -> usize {
    let mut boxes = BTreeSet::new();
    for f in globals.iter().chain(locals).chain(std::iter::once(goal)) {
        f.desugar()
            .collect_boxes(&mut boxes)
            .expect("desugared formulas contain no diamonds");
    }
    boxes.len() + 1
}

/// Decides `globals ; locals => goal` in `logic` with the default budget.
pub fn decide(
    logic: Logic,
    globals: &[Formula],
    locals: &[Formula],
    goal: &Formula,
    max_worlds: Option<usize>,
) -> Result<Verdict, SemanticsError> {
    decide_with_budget(logic, globals, locals, goal, max_worlds, DEFAULT_BUDGET)
}

pub fn decide_with_budget(
    logic: Logic,
    globals: &[Formula],
    locals: &[Formula],
    goal: &Formula,
    max_worlds: Option<usize>,
    budget: u64,
) -> Result<Verdict, SemanticsError> {
    if max_worlds == Some(0) {
        return Err(SemanticsError::InvalidBound);
    }
    let mut atoms = BTreeSet::new();
    for f in globals.iter().chain(locals).chain(std::iter::once(goal)) {
        f.collect_atoms(&mut atoms);
    }
    let atoms: Vec<String> = atoms.into_iter().collect();
    let mut program = Program::default();
    let globals: Vec<usize> = globals
        .iter()
        .map(|f| program.compile(&f.desugar(), &atoms))
        .collect();
    let locals: Vec<usize> = locals
        .iter()
        .map(|f| program.compile(&f.desugar(), &atoms))
        .collect();
    let goal = program.compile(&goal.desugar(), &atoms);
    let search = Search {
        program: &program,
        atoms: &atoms,
        globals: &globals,
        locals: &locals,
        goal,
    };

    match logic {
        Logic::S5 => {
            let bound = program.box_count + 1;
            let limit = max_worlds.map_or(bound, |m| m.min(bound));
            match search.s5(limit, budget)? {
                Some(v) => Ok(v),
                None if limit == bound => Ok(Verdict::Valid),
                None => Ok(Verdict::ValidUpToBound { max_worlds: limit }),
            }
        }
        _ => {
            let limit = max_worlds.unwrap_or(DEFAULT_MAX_WORLDS);
            Ok(search
                .relational(logic, limit, budget)?
                .unwrap_or(Verdict::ValidUpToBound { max_worlds: limit }))
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Box(usize),
}

/// Hash-consed subformula DAG in evaluation order.
#[derive(Default)]
struct Program {
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
    box_count: usize,
}

impl Program {
    fn compile(&mut self, f: &Formula, atoms: &[String]) -> usize {
        if let Some(&id) = self.index.get(f) {
            return id;
        }
        let node = match f {
            Formula::Atom(name) => Node::Atom(atoms.binary_search(name).expect("atom collected")),
            Formula::Not(a) => Node::Not(self.compile(a, atoms)),
            Formula::And(a, b) => Node::And(self.compile(a, atoms), self.compile(b, atoms)),
            Formula::Or(a, b) => Node::Or(self.compile(a, atoms), self.compile(b, atoms)),
            Formula::Implies(a, b) => Node::Implies(self.compile(a, atoms), self.compile(b, atoms)),
            Formula::Iff(a, b) => Node::Iff(self.compile(a, atoms), self.compile(b, atoms)),
            Formula::Box(a) => {
                self.box_count += 1;
                Node::Box(self.compile(a, atoms))
            }
            Formula::Diamond(_) => unreachable!("compiled formulas are desugared"),
        };
        self.nodes.push(node);
        let id = self.nodes.len() - 1;
        self.index.insert(f.clone(), id);
        id
    }

    /// Truth sets of every node. `succ` is `None` for the universal relation.
    fn eval(&self, all: u64, atom_masks: &[u64], succ: Option<&[u64]>, out: &mut Vec<u64>) {
        out.clear();
        for node in &self.nodes {
            let v = match *node {
                Node::Atom(i) => atom_masks[i],
                Node::Not(a) => !out[a] & all,
                Node::And(a, b) => out[a] & out[b],
                Node::Or(a, b) => out[a] | out[b],
                Node::Implies(a, b) => (!out[a] | out[b]) & all,
                Node::Iff(a, b) => !(out[a] ^ out[b]) & all,
                Node::Box(a) => {
                    let holds = out[a];
                    match succ {
                        None => {
                            if holds == all {
                                all
                            } else {
                                0
                            }
                        }
                        Some(succ) => succ
                            .iter()
                            .enumerate()
                            .filter(|(_, s)| **s & !holds == 0)
                            .fold(0, |m, (w, _)| m | (1 << w)),
                    }
                }
            };
            out.push(v);
        }
    }
}

fn world_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn pow2(bits: usize) -> u128 {
    if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

struct Search<'a> {
    program: &'a Program,
    atoms: &'a [String],
    globals: &'a [usize],
    locals: &'a [usize],
    goal: usize,
}

impl Search<'_> {
    fn refutes(&self, truth: &[u64], all: u64) -> bool {
        self.globals.iter().all(|&g| truth[g] == all)
            && self.locals.iter().all(|&l| truth[l] & 1 == 1)
            && truth[self.goal] & 1 == 0
    }

    fn countermodel(
        &self,
        n: usize,
        atom_masks: &[u64],
        relation: BTreeSet<(usize, usize)>,
    ) -> Verdict {
        let valuation: BTreeMap<String, BTreeSet<usize>> = self
            .atoms
            .iter()
            .zip(atom_masks)
            .map(|(a, mask)| (a.clone(), (0..n).filter(|w| mask >> w & 1 == 1).collect()))
            .collect();
        let model = KripkeModel::new(n, relation, valuation, Some(0))
            .expect("search builds in-range models");
        Verdict::Countermodel { model, world: 0 }
    }

    fn s5(&self, limit: usize, budget: u64) -> Result<Option<Verdict>, SemanticsError> {
        let k = self.atoms.len();
        let types = pow2(k);
        let top = (limit as u128).min(types) as usize;
        let candidates = (1..=top)
            .map(|n| types.saturating_mul(binomial(types - 1, n as u128 - 1)))
            .fold(0u128, u128::saturating_add);
        if candidates > budget as u128 || top > MAX_WORLDS {
            return Err(SemanticsError::BoundTooLarge { candidates, budget });
        }
        let types = types as u64;
        let mut truth = Vec::with_capacity(self.program.nodes.len());
        let mut atom_masks = vec![0u64; k];
        for n in 1..=top {
            let all = world_mask(n);
            for first in 0..types {
                let rest: Vec<u64> = (0..types).filter(|t| *t != first).collect();
                let mut combo: Vec<usize> = (0..n - 1).collect();
                loop {
                    let world_types = std::iter::once(first).chain(combo.iter().map(|&i| rest[i]));
                    atom_masks.iter_mut().for_each(|m| *m = 0);
                    for (w, t) in world_types.enumerate() {
                        for (j, mask) in atom_masks.iter_mut().enumerate() {
                            if t >> j & 1 == 1 {
                                *mask |= 1 << w;
                            }
                        }
                    }
                    self.program.eval(all, &atom_masks, None, &mut truth);
                    if self.refutes(&truth, all) {
                        return Ok(Some(self.countermodel(
                            n,
                            &atom_masks,
                            universal_relation(n),
                        )));
                    }
                    if !next_combination(&mut combo, rest.len()) {
                        break;
                    }
                }
            }
        }
        Ok(None)
    }

    fn relational(
        &self,
        logic: Logic,
        limit: usize,
        budget: u64,
    ) -> Result<Option<Verdict>, SemanticsError> {
        let k = self.atoms.len();
        let candidates = relational_candidates(k, limit);
        if candidates > budget as u128 || limit > 8 {
            return Err(SemanticsError::BoundTooLarge { candidates, budget });
        }
        let mut truth = Vec::with_capacity(self.program.nodes.len());
        for n in 1..=limit {
            let all = world_mask(n);
            let frames = frames(logic, n);
            for v in 0..1u64 << (k * n) {
                let atom_masks = valuation_masks(v, k, n);
                for succ in &frames {
                    self.program.eval(all, &atom_masks, Some(succ), &mut truth);
                    if self.refutes(&truth, all) {
                        return Ok(Some(self.countermodel(n, &atom_masks, succ_to_pairs(succ))));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Advances `combo` to the next increasing `combo.len()`-subset of `0..n`.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn relational_candidates(atoms: usize, limit: usize) -> u128 {
    (1..=limit)
        .map(|n| pow2(n * n).saturating_mul(pow2(atoms * n)))
        .fold(0u128, u128::saturating_add)
}

/// Atom `j` is true at world `w` iff bit `j * n + w` of `v` is set.
fn valuation_masks(v: u64, k: usize, n: usize) -> Vec<u64> {
    let all = world_mask(n);
    (0..k).map(|j| (v >> (j * n)) & all).collect()
}

/// Successor masks of every relation on `n` worlds in `logic`'s frame class,
/// in bitmask order; pair `(i, j)` is bit `i * n + j`.
fn frames(logic: Logic, n: usize) -> Vec<Vec<u64>> {
    if logic == Logic::S5 {
        return vec![vec![world_mask(n); n]];
    }
    let row = world_mask(n);
    (0..1u64 << (n * n))
        .map(|bits| {
            (0..n)
                .map(|i| (bits >> (i * n)) & row)
                .collect::<Vec<u64>>()
        })
        .filter(|succ| frame_ok(logic, succ))
        .collect()
}

fn frame_ok(logic: Logic, succ: &[u64]) -> bool {
    let n = succ.len();
    let reflexive = || (0..n).all(|i| succ[i] >> i & 1 == 1);
    let transitive = || {
        (0..n).all(|i| {
            (0..n)
                .filter(|j| succ[i] >> j & 1 == 1)
                .all(|j| succ[j] & !succ[i] == 0)
        })
    };
    let symmetric = || (0..n).all(|i| (0..n).all(|j| (succ[i] >> j & 1) == (succ[j] >> i & 1)));
    match logic {
        Logic::K => true,
        Logic::T => reflexive(),
        Logic::S4 => reflexive() && transitive(),
        Logic::S5 => reflexive() && transitive() && symmetric(),
    }
}

fn succ_to_pairs(succ: &[u64]) -> BTreeSet<(usize, usize)> {
    let n = succ.len();
    (0..n)
        .flat_map(|i| {
            (0..n)
                .filter(move |j| succ[i] >> j & 1 == 1)
                .map(move |j| (i, j))
        })
        .collect()
}

/// Every model with exactly `n` worlds over `atoms` in `logic`'s frame class.
///
/// Valuations vary slowest, relations fastest (in bitmask order). For S5 only
/// the universal relation is produced.
pub fn enumerate_models(
    atoms: &BTreeSet<String>,
    logic: Logic,
    n: usize,
) -> Result<impl Iterator<Item = KripkeModel>, SemanticsError> {
    if n == 0 {
        return Err(SemanticsError::InvalidBound);
    }
    if atoms.len() > MAX_ENUMERATION_ATOMS {
        return Err(SemanticsError::TooManyAtoms {
            count: atoms.len(),
            max: MAX_ENUMERATION_ATOMS,
        });
    }
    let k = atoms.len();
    let candidates = if logic == Logic::S5 {
        pow2(k * n)
    } else {
        pow2(n * n).saturating_mul(pow2(k * n))
    };
    if candidates > DEFAULT_BUDGET as u128 {
        return Err(SemanticsError::BoundTooLarge {
            candidates,
            budget: DEFAULT_BUDGET,
        });
    }
    let atoms: Vec<String> = atoms.iter().cloned().collect();
    let frames: Vec<BTreeSet<(usize, usize)>> =
        frames(logic, n).iter().map(|s| succ_to_pairs(s)).collect();
    Ok((0..1u64 << (k * n)).flat_map(move |v| {
        let masks = valuation_masks(v, k, n);
        let valuation: BTreeMap<String, BTreeSet<usize>> = atoms
            .iter()
            .zip(&masks)
            .map(|(a, mask)| (a.clone(), (0..n).filter(|w| mask >> w & 1 == 1).collect()))
            .collect();
        frames
            .clone()
            .into_iter()
            .map(move |rel| KripkeModel::new(n, rel, valuation.clone(), None).expect("in range"))
    }))
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::formula::{is_atom_name, Formula};

use super::{Logic, SemanticsError};

/// A finite Kripke model. Worlds are `0..world_count`.
///
/// Atoms missing from the valuation are false at every world.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KripkeModel {
    world_count: usize,
    relation: BTreeSet<(usize, usize)>,
    valuation: BTreeMap<String, BTreeSet<usize>>,
    designated: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("pair ({0} {1}) mentions a world outside the model")]
    PairOutOfRange(usize, usize),
    #[error("atom `{atom}` is true at world {world}, which is outside the model")]
    ValuationOutOfRange { atom: String, world: usize },
    #[error("designated world {0} is outside the model")]
    DesignatedOutOfRange(usize),
    #[error("`{0}` is not a legal atom name")]
    BadAtomName(String),
}

impl KripkeModel {
    pub fn new(
        world_count: usize,
        relation: BTreeSet<(usize, usize)>,
        valuation: BTreeMap<String, BTreeSet<usize>>,
        designated: Option<usize>,
    ) -> Result<Self, ModelError> {
        if world_count == 0 {
            return Err(ModelError::NoWorlds);
        }
        if let Some(&(a, b)) = relation
            .iter()
            .find(|(a, b)| *a >= world_count || *b >= world_count)
        {
            return Err(ModelError::PairOutOfRange(a, b));
        }
        for (atom, worlds) in &valuation {
            if !is_atom_name(atom) {
                return Err(ModelError::BadAtomName(atom.clone()));
            }
            if let Some(&w) = worlds.iter().find(|w| **w >= world_count) {
                return Err(ModelError::ValuationOutOfRange {
                    atom: atom.clone(),
                    world: w,
                });
            }
        }
        if let Some(d) = designated {
            if d >= world_count {
                return Err(ModelError::DesignatedOutOfRange(d));
            }
        }
        Ok(KripkeModel {
            world_count,
            relation,
            valuation,
            designated,
        })
    }

    /// A model whose relation relates every world to every world.
    pub fn universal(
        world_count: usize,
        valuation: BTreeMap<String, BTreeSet<usize>>,
        designated: Option<usize>,
    ) -> Result<Self, ModelError> {
        Self::new(
            world_count,
            universal_relation(world_count),
            valuation,
            designated,
        )
    }

    pub fn world_count(&self) -> usize {
        self.world_count
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.valuation
    }

    pub fn designated(&self) -> Option<usize> {
        self.designated
    }

    pub fn with_designated(mut self, world: usize) -> Result<Self, ModelError> {
        if world >= self.world_count {
            return Err(ModelError::DesignatedOutOfRange(world));
        }
        self.designated = Some(world);
        Ok(self)
    }

    pub fn is_universal(&self) -> bool {
        self.relation.len() == self.world_count * self.world_count
    }

    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.relation
            .range((w, 0)..=(w, usize::MAX))
            .map(|&(_, v)| v)
    }

    /// Atoms of `f` that the valuation does not mention. They read as false
    /// everywhere; callers surface them as warnings.
    pub fn unvalued_atoms(&self, f: &Formula) -> Vec<String> {
        f.atoms()
            .into_iter()
            .filter(|a| !self.valuation.contains_key(a))
            .collect()
    }

    fn truth(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Atom(name) => self
                .valuation
                .get(name)
                .is_some_and(|worlds| worlds.contains(&w)),
            Formula::Not(a) => !self.truth(w, a),
            Formula::And(a, b) => self.truth(w, a) && self.truth(w, b),
            Formula::Or(a, b) => self.truth(w, a) || self.truth(w, b),
            Formula::Implies(a, b) => !self.truth(w, a) || self.truth(w, b),
            Formula::Iff(a, b) => self.truth(w, a) == self.truth(w, b),
            Formula::Box(a) => self.successors(w).all(|v| self.truth(v, a)),
            Formula::Diamond(a) => self.successors(w).any(|v| self.truth(v, a)),
        }
    }

    /// Writes the model in `.km` syntax.
    pub fn to_km(&self) -> String {
        let mut out = format!("worlds {}\n", self.world_count);
        if self.is_universal() {
            out.push_str("relation universal\n");
        } else {
            out.push_str("relation pairs");
            for (a, b) in &self.relation {
                out.push_str(&format!(" ({a} {b})"));
            }
            out.push('\n');
        }
        if let Some(d) = self.designated {
            out.push_str(&format!("designated {d}\n"));
        }
        for (atom, worlds) in &self.valuation {
            out.push_str("val ");
            out.push_str(atom);
            for w in worlds {
                out.push_str(&format!(" {w}"));
            }
            out.push('\n');
        }
        out
    }

    /// Reads a model in `.km` syntax.
    pub fn from_km(text: &str) -> Result<Self, KmError> {
        parse_km(text)
    }
}

pub(crate) fn universal_relation(n: usize) -> BTreeSet<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

/// Truth of `f` at world `w`.
pub fn eval(m: &KripkeModel, w: usize, f: &Formula) -> Result<bool, SemanticsError> {
    if w >= m.world_count {
        return Err(SemanticsError::WorldOutOfRange {
            world: w,
            world_count: m.world_count,
        });
    }
    Ok(m.truth(w, f))
}

/// Whether `f` is true at every world of `m`.
pub fn holds_globally(m: &KripkeModel, f: &Formula) -> bool {
    (0..m.world_count).all(|w| m.truth(w, f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameCondition {
    Reflexivity,
    Transitivity,
    Symmetry,
}

impl fmt::Display for FrameCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameCondition::Reflexivity => "reflexivity",
            FrameCondition::Transitivity => "transitivity",
            FrameCondition::Symmetry => "symmetry",
        })
    }
}

/// A frame condition that fails, with the worlds that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: FrameCondition,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worlds: Vec<String> = self.witness.iter().map(|w| w.to_string()).collect();
        write!(f, "{} violated at ({})", self.condition, worlds.join(","))
    }
}

/// Lists every frame-condition failure of `m` for `logic`; empty iff the
/// relation belongs to the logic's frame class.
pub fn check_frame(m: &KripkeModel, logic: Logic) -> Vec<Violation> {
    let n = m.world_count;
    let rel = &m.relation;
    let mut out = Vec::new();
    for &condition in logic.frame_conditions() {
        match condition {
            FrameCondition::Reflexivity => {
                for w in (0..n).filter(|w| !rel.contains(&(*w, *w))) {
                    out.push(Violation {
                        condition,
                        witness: vec![w],
                    });
                }
            }
            FrameCondition::Symmetry => {
                for &(a, b) in rel.iter().filter(|(a, b)| !rel.contains(&(*b, *a))) {
                    out.push(Violation {
                        condition,
                        witness: vec![a, b],
                    });
                }
            }
            FrameCondition::Transitivity => {
                for &(a, b) in rel {
                    for c in m.successors(b) {
                        if !rel.contains(&(a, c)) {
                            out.push(Violation {
                                condition,
                                witness: vec![a, b, c],
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// A `.km` syntax or consistency error, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct KmError {
    pub line: usize,
    pub message: String,
}

fn km_err(line: usize, message: impl Into<String>) -> KmError {
    KmError {
        line,
        message: message.into(),
    }
}

fn parse_world(tok: &str, line: usize) -> Result<usize, KmError> {
    tok.parse()
        .map_err(|_| km_err(line, format!("expected a world index, found `{tok}`")))
}

fn parse_pairs(text: &str, line: usize) -> Result<BTreeSet<(usize, usize)>, KmError> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let mut toks = spaced.split_whitespace();
    let mut pairs = BTreeSet::new();
    while let Some(open) = toks.next() {
        if open != "(" {
            return Err(km_err(line, format!("expected `(`, found `{open}`")));
        }
        let a = parse_world(toks.next().unwrap_or(")"), line)?;
        let b = parse_world(toks.next().unwrap_or(")"), line)?;
        match toks.next() {
            Some(")") => {}
            other => {
                return Err(km_err(
                    line,
                    format!("expected `)`, found `{}`", other.unwrap_or("end of line")),
                ))
            }
        }
        pairs.insert((a, b));
    }
    Ok(pairs)
}

enum RelationSpec {
    Universal,
    Pairs(BTreeSet<(usize, usize)>),
}

fn parse_km(text: &str) -> Result<KripkeModel, KmError> {
    let mut worlds: Option<(usize, usize)> = None;
    let mut relation: Option<(usize, RelationSpec)> = None;
    let mut designated: Option<(usize, usize)> = None;
    let mut valuation: BTreeMap<String, (usize, BTreeSet<usize>)> = BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .map_or((content, ""), |(k, r)| (k, r.trim()));
        match key {
            "worlds" => {
                if worlds.is_some() {
                    return Err(km_err(line, "duplicate `worlds` line"));
                }
                let n = rest
                    .parse()
                    .map_err(|_| km_err(line, format!("expected a world count, found `{rest}`")))?;
                worlds = Some((line, n));
            }
            "relation" => {
                if relation.is_some() {
                    return Err(km_err(line, "duplicate `relation` line"));
                }
                let spec = if rest == "universal" {
                    RelationSpec::Universal
                } else if let Some(pairs) = rest.strip_prefix("pairs") {
                    if !pairs.is_empty() && !pairs.starts_with(char::is_whitespace) {
                        return Err(km_err(line, "expected `universal` or `pairs`"));
                    }
                    RelationSpec::Pairs(parse_pairs(pairs, line)?)
                } else {
                    return Err(km_err(line, "expected `universal` or `pairs`"));
                };
                relation = Some((line, spec));
            }
            "designated" => {
                if designated.is_some() {
                    return Err(km_err(line, "duplicate `designated` line"));
                }
                designated = Some((line, parse_world(rest, line)?));
            }
            "val" => {
                let mut toks = rest.split_whitespace();
                let atom = toks
                    .next()
                    .ok_or_else(|| km_err(line, "expected an atom name after `val`"))?;
                if !is_atom_name(atom) {
                    return Err(km_err(line, format!("`{atom}` is not a legal atom name")));
                }
                let set = toks
                    .map(|t| parse_world(t, line))
                    .collect::<Result<BTreeSet<_>, _>>()?;
                if valuation.insert(atom.to_string(), (line, set)).is_some() {
                    return Err(km_err(line, format!("duplicate `val` line for `{atom}`")));
                }
            }
            other => return Err(km_err(line, format!("unknown key `{other}`"))),
        }
    }

    let (worlds_line, n) =
        worlds.ok_or_else(|| km_err(last_line.max(1), "missing `worlds` line"))?;
    if n == 0 {
        return Err(km_err(worlds_line, "a model needs at least one world"));
    }
    let (relation_line, spec) =
        relation.ok_or_else(|| km_err(last_line.max(1), "missing `relation` line"))?;
    let relation = match spec {
        RelationSpec::Universal => universal_relation(n),
        RelationSpec::Pairs(pairs) => {
            if let Some((a, b)) = pairs.iter().find(|(a, b)| *a >= n || *b >= n) {
                return Err(km_err(
                    relation_line,
                    format!("pair ({a} {b}) mentions a world outside 0..{n}"),
                ));
            }
            pairs
        }
    };
    let designated = match designated {
        Some((line, d)) if d >= n => {
            return Err(km_err(
                line,
                format!("designated world {d} is outside 0..{n}"),
            ))
        }
        Some((_, d)) => d,
        None => 0,
    };
    let mut vals = BTreeMap::new();
    for (atom, (line, set)) in valuation {
        if let Some(w) = set.iter().find(|w| **w >= n) {
            return Err(km_err(line, format!("world {w} is outside 0..{n}")));
        }
        vals.insert(atom, set);
    }
    KripkeModel::new(n, relation, vals, Some(designated))
        .map_err(|e| km_err(worlds_line, e.to_string()))
}

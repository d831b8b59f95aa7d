use std::fmt;

use crate::formula::{parse, Formula};

use super::{decide, Logic, SemanticsError, Verdict};

/// A consequence query: `globals ; locals => goal` in `logic`.
///
/// Text form, one item per line:
///
/// ```text
/// logic S5
/// global q -> []q
/// local <>q
/// goal []q
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub logic: Logic,
    pub globals: Vec<Formula>,
    pub locals: Vec<Formula>,
    pub goal: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct QueryError {
    pub line: usize,
    pub message: String,
}

impl Query {
    pub fn decide(&self, max_worlds: Option<usize>) -> Result<Verdict, SemanticsError> {
        decide(
            self.logic,
            &self.globals,
            &self.locals,
            &self.goal,
            max_worlds,
        )
    }

    pub fn parse(text: &str) -> Result<Query, QueryError> {
        let mut logic = None;
        let mut goal = None;
        let mut globals = Vec::new();
        let mut locals = Vec::new();
        let mut last = 1;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let err = |message: String| QueryError { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content
                .split_once(char::is_whitespace)
                .map_or((content, ""), |(k, r)| (k, r.trim()));
            let formula = || parse(rest).map_err(|e| err(e.to_string()));
            match key {
                "logic" => {
                    if logic.is_some() {
                        return Err(err("duplicate `logic` line".into()));
                    }
                    logic = Some(rest.parse::<Logic>().map_err(|e| err(e.to_string()))?);
                }
                "global" => globals.push(formula()?),
                "local" => locals.push(formula()?),
                "goal" => {
                    if goal.is_some() {
                        return Err(err("duplicate `goal` line".into()));
                    }
                    goal = Some(formula()?);
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let missing = |what: &str| QueryError {
            line: last,
            message: format!("missing `{what}` line"),
        };
        Ok(Query {
            logic: logic.ok_or_else(|| missing("logic"))?,
            globals,
            locals,
            goal: goal.ok_or_else(|| missing("goal"))?,
        })
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic {}", self.logic)?;
        for g in &self.globals {
            writeln!(f, "global {g}")?;
        }
        for l in &self.locals {
            writeln!(f, "local {l}")?;
        }
        writeln!(f, "goal {}", self.goal)
    }
}

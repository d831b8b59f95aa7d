//! The `.mpf` proof script format.
//!
//! ```text
//! system S5
//! global:
//! g1: [](q -> []q) ; premise
//! local:
//! l1: <>q ; premise
//! ```

use crate::formula::parse;
use crate::semantics::Logic;

use super::{Axiom, Derivation, Justification, Line, Section};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct MpfError {
    pub line: usize,
    pub message: String,
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let label = |s: &str| {
        if is_label(s) {
            Ok(s.to_string())
        } else {
            Err(format!("`{s}` is not a label"))
        }
    };
    match toks.as_slice() {
        ["premise"] => Ok(Justification::Premise),
        ["taut"] => Ok(Justification::Taut),
        ["axK"] => Ok(Justification::Axiom(Axiom::K)),
        ["axT"] => Ok(Justification::Axiom(Axiom::T)),
        ["ax4"] => Ok(Justification::Axiom(Axiom::Four)),
        ["ax5"] => Ok(Justification::Axiom(Axiom::Five)),
        ["mp", i, a] => Ok(Justification::Mp(label(i)?, label(a)?)),
        ["nec", l] => Ok(Justification::Nec(label(l)?)),
        _ => Err(format!(
            "expected premise | taut | axK | axT | ax4 | ax5 | mp <label> <label> | nec <label>, found `{text}`"
        )),
    }
}

pub(super) fn parse_mpf(text: &str) -> Result<Derivation, MpfError> {
    let mut system = None;
    let mut section: Option<Section> = None;
    let mut seen_global = false;
    let mut seen_local = false;
    let mut global_lines = Vec::new();
    let mut local_lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| MpfError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("system") {
            if rest.starts_with(char::is_whitespace) {
                if system.is_some() {
                    return Err(err("duplicate `system` line".into()));
                }
                if section.is_some() {
                    return Err(err("`system` must come before the sections".into()));
                }
                system = Some(
                    rest.trim()
                        .parse::<Logic>()
                        .map_err(|e| err(e.to_string()))?,
                );
                continue;
            }
        }
        match content {
            "global:" => {
                if seen_global {
                    return Err(err("duplicate `global:` header".into()));
                }
                if seen_local {
                    return Err(err("`global:` must precede `local:`".into()));
                }
                seen_global = true;
                section = Some(Section::Global);
                continue;
            }
            "local:" => {
                if seen_local {
                    return Err(err("duplicate `local:` header".into()));
                }
                seen_local = true;
                section = Some(Section::Local);
                continue;
            }
            _ => {}
        }
        let Some(current) = section else {
            return Err(err(
                "expected `system`, `global:` or `local:` before proof lines".into(),
            ));
        };
        if system.is_none() {
            return Err(err("missing `system` line".into()));
        }
        let (label, rest) = content
            .split_once(':')
            .ok_or_else(|| err("expected `<label>: <formula> ; <justification>`".into()))?;
        let label = label.trim();
        if !is_label(label) {
            return Err(err(format!("`{label}` is not a label")));
        }
        let (formula, justification) = rest
            .rsplit_once(';')
            .ok_or_else(|| err("missing `;` before the justification".into()))?;
        let formula = parse(formula).map_err(|e| err(e.to_string()))?;
        let justification = parse_justification(justification.trim()).map_err(err)?;
        let entry = Line::new(label, formula, justification);
        match current {
            Section::Global => global_lines.push(entry),
            Section::Local => local_lines.push(entry),
        }
    }

    let system = system.ok_or(MpfError {
        line: text.lines().count().max(1),
        message: "missing `system` line".into(),
    })?;
    Ok(Derivation {
        system,
        global_lines,
        local_lines,
    })
}

pub(super) fn print_mpf(d: &Derivation) -> String {
    let mut out = format!("system {}\n", d.system);
    for (header, lines) in [("global:", &d.global_lines), ("local:", &d.local_lines)] {
        out.push_str(header);
        out.push('\n');
        for l in lines {
            out.push_str(&format!(
                "{}: {} ; {}\n",
                l.label, l.formula, l.justification
            ));
        }
    }
    out
}

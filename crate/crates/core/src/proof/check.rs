use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::formula::Formula;

use super::{is_tautology_instance, match_axiom_schema, Derivation, Justification, Line, Section};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ErrorKind {
    UnknownLabel,
    ForwardReference,
    NotATautology,
    SchemaMismatch,
    MpMismatch,
    /// The line's formula is not `[]` of the cited line's formula.
    NecMismatch,
    NecessitationInLocalSection,
    NecessitationOfLocalLine,
    GlobalCitesLocal,
    DuplicateLabel,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 10] = [
        ErrorKind::UnknownLabel,
        ErrorKind::ForwardReference,
        ErrorKind::NotATautology,
        ErrorKind::SchemaMismatch,
        ErrorKind::MpMismatch,
        ErrorKind::NecMismatch,
        ErrorKind::NecessitationInLocalSection,
        ErrorKind::NecessitationOfLocalLine,
        ErrorKind::GlobalCitesLocal,
        ErrorKind::DuplicateLabel,
    ];
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for ErrorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ErrorKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| format!("unknown error kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineError {
    pub label: String,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Accepted,
    Rejected,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Accepted => "accepted",
            Status::Rejected => "rejected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub status: Status,
    pub errors: Vec<LineError>,
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn is_accepted(&self) -> bool {
        self.status == Status::Accepted
    }

    pub fn error_kinds(&self) -> Vec<ErrorKind> {
        self.errors.iter().map(|e| e.kind).collect()
    }
}

struct Entry {
    position: usize,
    section: Section,
    desugared: Formula,
}

struct Checker<'d> {
    entries: HashMap<&'d str, Entry>,
    errors: Vec<LineError>,
}

impl<'d> Checker<'d> {
    fn error(&mut self, line: &Line, kind: ErrorKind, message: String) {
        self.errors.push(LineError {
            label: line.label.clone(),
            kind,
            message,
        });
    }

    /// Looks up a cited label on behalf of the line at `position`.
    fn cite(
        &mut self,
        line: &Line,
        position: usize,
        section: Section,
        cited: &str,
    ) -> Option<(Section, Formula)> {
        let Some(entry) = self.entries.get(cited) else {
            self.error(
                line,
                ErrorKind::UnknownLabel,
                format!("no line is labelled `{cited}`"),
            );
            return None;
        };
        let found = (entry.section, entry.desugared.clone());
        if section == Section::Global && entry.section == Section::Local {
            self.error(
                line,
                ErrorKind::GlobalCitesLocal,
                format!("global line cites local line `{cited}`"),
            );
            return None;
        }
        if entry.position >= position {
            self.error(
                line,
                ErrorKind::ForwardReference,
                format!("`{cited}` is not an earlier line"),
            );
            return None;
        }
        Some(found)
    }

    fn check_line(&mut self, d: &Derivation, position: usize, section: Section, line: &'d Line) {
        let desugared = line.formula.desugar();
        match &line.justification {
            Justification::Premise => {}
            Justification::Taut => match is_tautology_instance(&line.formula) {
                Ok(true) => {}
                Ok(false) => self.error(
                    line,
                    ErrorKind::NotATautology,
                    format!("`{}` is not a tautology instance", line.formula),
                ),
                Err(e) => self.error(line, ErrorKind::NotATautology, e.to_string()),
            },
            Justification::Axiom(axiom) => {
                if !axiom.available_in(d.system) {
                    self.error(
                        line,
                        ErrorKind::SchemaMismatch,
                        format!("axiom {axiom} is not part of {}", d.system),
                    );
                } else if match_axiom_schema(*axiom, &line.formula).is_none() {
                    self.error(
                        line,
                        ErrorKind::SchemaMismatch,
                        format!("`{}` is not an instance of axiom {axiom}", line.formula),
                    );
                }
            }
            Justification::Mp(imp, ante) => {
                let imp_f = self.cite(line, position, section, imp);
                let ante_f = self.cite(line, position, section, ante);
                if let (Some((_, imp_f)), Some((_, ante_f))) = (imp_f, ante_f) {
                    let ok = matches!(&imp_f, Formula::Implies(x, y) if **x == ante_f && **y == desugared);
                    if !ok {
                        self.error(
                            line,
                            ErrorKind::MpMismatch,
                            format!("`{imp}` is not `{ante}` -> `{}`", line.label),
                        );
                    }
                }
            }
            Justification::Nec(cited) => {
                if section == Section::Local {
                    self.error(
                        line,
                        ErrorKind::NecessitationInLocalSection,
                        "necessitation is not allowed in the local section".into(),
                    );
                    return;
                }
                if let Some(entry) = self.entries.get(cited.as_str()) {
                    if entry.section == Section::Local {
                        self.error(
                            line,
                            ErrorKind::NecessitationOfLocalLine,
                            format!("`{cited}` is a local line"),
                        );
                        return;
                    }
                }
                if let Some((_, cited_f)) = self.cite(line, position, section, cited) {
                    if desugared != Formula::boxed(cited_f) {
                        self.error(
                            line,
                            ErrorKind::NecMismatch,
                            format!("`{}` is not [] of `{cited}`", line.label),
                        );
                    }
                }
            }
        }
    }
}

/// Checks every line of `d` and collects all errors.
pub fn check(d: &Derivation) -> CheckReport {
    let mut checker = Checker {
        entries: HashMap::new(),
        errors: Vec::new(),
    };
    for (position, (section, line)) in d.lines().enumerate() {
        checker
            .entries
            .entry(line.label.as_str())
            .or_insert_with(|| Entry {
                position,
                section,
                desugared: line.formula.desugar(),
            });
    }
    for (position, (section, line)) in d.lines().enumerate() {
        if checker.entries[line.label.as_str()].position != position {
            checker.error(
                line,
                ErrorKind::DuplicateLabel,
                format!("label `{}` is already used", line.label),
            );
        }
        checker.check_line(d, position, section, line);
    }

    let mut warnings = Vec::new();
    if d.global_lines.is_empty() && d.local_lines.is_empty() {
        warnings.push("derivation has no lines".to_string());
    }
    let status = if checker.errors.is_empty() {
        Status::Accepted
    } else {
        Status::Rejected
    };
    CheckReport {
        status,
        errors: checker.errors,
        warnings,
    }
}

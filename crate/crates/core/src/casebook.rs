//! Bundled encodings of the local/global necessitation problem in the modal
//! ontological argument.
//!
//! Each case is a `.mpf` proof script or a `.query` consequence query under
//! `cases/`, plus a `.expected` file. The files are compiled into the binary
//! and read through the same parsers as user input.

use std::fmt;

use serde::Serialize;

use crate::proof::{check, Derivation, ErrorKind, Justification, Status};
use crate::semantics::{decide, Query, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    ProofAccept,
    ProofReject,
    SemanticValid,
    SemanticCountermodel,
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseKind::ProofAccept => "proof-accept",
            CaseKind::ProofReject => "proof-reject",
            CaseKind::SemanticValid => "semantic-valid",
            CaseKind::SemanticCountermodel => "semantic-countermodel",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Case {
    pub name: &'static str,
    pub kind: CaseKind,
    pub summary: &'static str,
    pub narrative: &'static str,
    /// For rejected scripts: the accepted script it differs from only in
    /// premise placement or a `nec` line.
    pub twin: Option<&'static str>,
    /// `.mpf` text for proof cases, `.query` text for semantic ones.
    pub source: &'static str,
    pub expected: &'static str,
}

macro_rules! case_file {
    ($name:literal, $ext:literal) => {
        include_str!(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/cases/",
            $name,
            ".",
            $ext
        ))
    };
}

static CATALOG: [Case; 7] = [
    Case {
        name: "anselm_local_faulty",
        kind: CaseKind::ProofReject,
        summary: "Anselm's principle assumed locally, then necessitated",
        narrative: "The usual proof of []q from <>q and q -> []q necessitates Anselm's principle \
                    to reach <>q -> <>[]q. When the principle is only a local assumption that step \
                    is illegal, and the kernel rejects the script at the nec line.",
        twin: Some("hartshorne_valid"),
        source: case_file!("anselm_local_faulty", "mpf"),
        expected: case_file!("anselm_local_faulty", "expected"),
    },
    Case {
        name: "anselm_local_countermodel",
        kind: CaseKind::SemanticCountermodel,
        summary: "<>q, q -> []q assumed locally do not entail []q",
        narrative:
            "With both premises local, a two-world S5 model where q holds only at the other \
                    world satisfies <>q and (vacuously) q -> []q at the actual world while []q \
                    fails there. The rejected proof step is not merely unprovable but unsound.",
        twin: None,
        source: case_file!("anselm_local_countermodel", "query"),
        expected: case_file!("anselm_local_countermodel", "expected"),
    },
    Case {
        name: "hartshorne_valid",
        kind: CaseKind::ProofAccept,
        summary: "Hartshorne's argument with [](q -> []q) as a global premise",
        narrative: "Stating Anselm's principle in necessitated form, [](q -> []q), repairs the \
                    argument: the K axiom turns it into <>q -> <>[]q, the S5 axiom gives \
                    <>q -> []q, and the local premise <>q yields []q. No necessitation touches a \
                    local line.",
        twin: None,
        source: case_file!("hartshorne_valid", "mpf"),
        expected: case_file!("hartshorne_valid", "expected"),
    },
    Case {
        name: "hartshorne_semantic",
        kind: CaseKind::SemanticValid,
        summary: "q -> []q assumed globally with <>q locally entails []q",
        narrative:
            "Read as a global assumption, Anselm's principle holds at every world, which in \
                    S5 is the same as assuming its necessitation. Under that reading []q follows \
                    from <>q and the search finds no countermodel up to the small-model bound.",
        twin: None,
        source: case_file!("hartshorne_semantic", "query"),
        expected: case_file!("hartshorne_semantic", "expected"),
    },
    Case {
        name: "goedel_steps_faulty",
        kind: CaseKind::ProofReject,
        summary: "Goedel's second step necessitates the local premise e -> []e",
        narrative:
            "Collapsing 'something godlike exists' to the atom e, the closing steps go from \
                    e -> []e to <>e -> <>[]e by necessitation and then to <>e -> []e by the S5 \
                    axiom. With e -> []e as an unnecessitated, local axiom the necessitation step \
                    is rejected.",
        twin: Some("goedel_steps_repaired"),
        source: case_file!("goedel_steps_faulty", "mpf"),
        expected: case_file!("goedel_steps_faulty", "expected"),
    },
    Case {
        name: "goedel_steps_repaired",
        kind: CaseKind::ProofAccept,
        summary: "The same steps with e -> []e as a global premise",
        narrative: "Moving e -> []e into the global section makes the necessitation legal. The \
                    script derives ~[]~e -> []e and, with the possibility premise ~[]~e taken as \
                    given, concludes []e.",
        twin: None,
        source: case_file!("goedel_steps_repaired", "mpf"),
        expected: case_file!("goedel_steps_repaired", "expected"),
    },
    Case {
        name: "nec_local_failure",
        kind: CaseKind::SemanticCountermodel,
        summary: "q assumed locally does not entail []q",
        narrative: "Necessitation is unsound over local assumptions: q can hold at the actual \
                    world and fail at another, so []q fails where q was assumed.",
        twin: None,
        source: case_file!("nec_local_failure", "query"),
        expected: case_file!("nec_local_failure", "expected"),
    },
];

pub fn catalog() -> &'static [Case] {
    &CATALOG
}

/// `(name, kind, summary)` in catalog order.
pub fn list_cases() -> Vec<(&'static str, CaseKind, &'static str)> {
    CATALOG
        .iter()
        .map(|c| (c.name, c.kind, c.summary))
        .collect()
}

pub fn find_case(name: &str) -> Option<&'static Case> {
    CATALOG.iter().find(|c| c.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CasebookError {
    #[error("no case named `{0}`")]
    UnknownCase(String),
    #[error("case `{case}`: {message}")]
    Malformed { case: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Proof(Derivation),
    Query(Query),
}

/// What a case's `.expected` file asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Proof {
        status: Status,
        errors: Vec<ErrorKind>,
    },
    Valid,
    Countermodel {
        world: usize,
        km: String,
    },
}

impl Expected {
    pub fn parse(text: &str) -> Result<Expected, String> {
        let mut lines = text.lines();
        let first = lines.next().ok_or("empty expectation")?;
        match first.split_once(' ') {
            Some(("status", status)) => {
                let status = match status {
                    "accepted" => Status::Accepted,
                    "rejected" => Status::Rejected,
                    other => return Err(format!("unknown status `{other}`")),
                };
                let mut errors = Vec::new();
                for line in lines {
                    match line.split_once(' ') {
                        Some(("error", kind)) => errors.push(kind.parse()?),
                        Some(("twin", _)) => {}
                        _ => return Err(format!("unexpected line `{line}`")),
                    }
                }
                Ok(Expected::Proof { status, errors })
            }
            Some(("verdict", "valid")) => Ok(Expected::Valid),
            Some(("verdict", "countermodel")) => {
                let world = lines
                    .next()
                    .and_then(|l| l.strip_prefix("world "))
                    .and_then(|w| w.parse().ok())
                    .ok_or("expected `world <i>`")?;
                if lines.next() != Some("model") {
                    return Err("expected `model`".into());
                }
                let km: String = lines.map(|l| format!("{l}\n")).collect();
                Ok(Expected::Countermodel { world, km })
            }
            _ => Err(format!("unexpected line `{first}`")),
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Proof { status, errors } => {
                write!(f, "{status}")?;
                if !errors.is_empty() {
                    let kinds: Vec<String> = errors.iter().map(|k| k.to_string()).collect();
                    write!(f, " [{}]", kinds.join(", "))?;
                }
                Ok(())
            }
            Expected::Valid => f.write_str("valid"),
            Expected::Countermodel { world, km } => {
                write!(
                    f,
                    "countermodel at world {world}: {}",
                    km.trim_end().replace('\n', "; ")
                )
            }
        }
    }
}

impl Case {
    pub fn payload(&self) -> Result<Payload, CasebookError> {
        let malformed = |message: String| CasebookError::Malformed {
            case: self.name.to_string(),
            message,
        };
        match self.kind {
            CaseKind::ProofAccept | CaseKind::ProofReject => Derivation::parse(self.source)
                .map(Payload::Proof)
                .map_err(|e| malformed(e.to_string())),
            CaseKind::SemanticValid | CaseKind::SemanticCountermodel => Query::parse(self.source)
                .map(Payload::Query)
                .map_err(|e| malformed(e.to_string())),
        }
    }

    pub fn expectation(&self) -> Result<Expected, CasebookError> {
        let expected =
            Expected::parse(self.expected).map_err(|message| CasebookError::Malformed {
                case: self.name.to_string(),
                message,
            })?;
        let consistent = matches!(
            (self.kind, &expected),
            (
                CaseKind::ProofAccept,
                Expected::Proof {
                    status: Status::Accepted,
                    ..
                }
            ) | (
                CaseKind::ProofReject,
                Expected::Proof {
                    status: Status::Rejected,
                    ..
                }
            ) | (CaseKind::SemanticValid, Expected::Valid)
                | (
                    CaseKind::SemanticCountermodel,
                    Expected::Countermodel { .. }
                )
        );
        if !consistent {
            return Err(CasebookError::Malformed {
                case: self.name.to_string(),
                message: format!("expectation `{expected}` does not fit kind {}", self.kind),
            });
        }
        Ok(expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub name: String,
    pub kind: CaseKind,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn outcome(case: &Case, expected: &Expected, actual: String, pass: bool) -> CaseOutcome {
    CaseOutcome {
        name: case.name.to_string(),
        kind: case.kind,
        expected: expected.to_string(),
        actual,
        pass,
    }
}

/// Runs one case and compares it with its expectation.
///
/// Accepted proofs are also confirmed semantically: their conclusion must be
/// S5-valid from their global and local premises.
pub fn run_case(name: &str) -> Result<CaseOutcome, CasebookError> {
    let case = find_case(name).ok_or_else(|| CasebookError::UnknownCase(name.to_string()))?;
    let expected = case.expectation()?;
    let semantics_err = |e: crate::semantics::SemanticsError| CasebookError::Malformed {
        case: case.name.to_string(),
        message: e.to_string(),
    };
    match case.payload()? {
        Payload::Proof(d) => {
            let report = check(&d);
            let actual = Expected::Proof {
                status: report.status,
                errors: report.error_kinds(),
            };
            let mut actual_text = actual.to_string();
            let mut pass = actual == expected;
            if report.is_accepted() {
                let confirmed = match d.conclusion() {
                    Some(goal) => {
                        decide(
                            d.system,
                            &d.global_premises(),
                            &d.local_premises(),
                            goal,
                            None,
                        )
                        .map_err(semantics_err)?
                            == Verdict::Valid
                    }
                    None => false,
                };
                actual_text.push_str(if confirmed {
                    "; conclusion semantically valid"
                } else {
                    "; conclusion NOT semantically valid"
                });
                pass &= confirmed;
            }
            Ok(outcome(case, &expected, actual_text, pass))
        }
        Payload::Query(q) => {
            let actual = match q.decide(None).map_err(semantics_err)? {
                Verdict::Valid => Expected::Valid,
                Verdict::ValidUpToBound { max_worlds } => {
                    let text = format!("valid up to {max_worlds} worlds");
                    return Ok(outcome(case, &expected, text, false));
                }
                Verdict::Countermodel { model, world } => Expected::Countermodel {
                    world,
                    km: model.to_km(),
                },
            };
            let pass = actual == expected;
            Ok(outcome(case, &expected, actual.to_string(), pass))
        }
    }
}

/// Runs every case in catalog order.
pub fn run_all() -> Vec<Result<CaseOutcome, CasebookError>> {
    CATALOG.iter().map(|c| run_case(c.name)).collect()
}

/// Whether `name`'s script differs from its twin only in premise lines, `nec`
/// lines, and the section each line sits in.
pub fn differs_from_twin_only_in_placement(case: &Case) -> Result<bool, CasebookError> {
    let Some(twin) = case.twin else {
        return Ok(false);
    };
    let twin = find_case(twin).ok_or_else(|| CasebookError::UnknownCase(twin.to_string()))?;
    let core = |c: &Case| -> Result<Vec<_>, CasebookError> {
        let Payload::Proof(d) = c.payload()? else {
            return Err(CasebookError::Malformed {
                case: c.name.to_string(),
                message: "not a proof case".into(),
            });
        };
        let mut lines: Vec<_> = d
            .lines()
            .map(|(_, l)| l.clone())
            .filter(|l| {
                !matches!(
                    l.justification,
                    Justification::Premise | Justification::Nec(_)
                )
            })
            .map(|l| (l.label, l.formula.to_string(), l.justification.to_string()))
            .collect();
        lines.sort();
        Ok(lines)
    };
    Ok(core(case)? == core(twin)?)
}

//! The `modal` command line.
//!
//! Exit codes: 0 for success, acceptance or validity; 1 when a proof is
//! rejected, a countermodel is found or a case fails; 2 for usage, parse and
//! I/O errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::casebook::{self, CaseOutcome};
use crate::formula::{parse, Formula};
use crate::proof::{check, CheckReport, Derivation};
use crate::semantics::{
    decide, eval, small_model_bound, KripkeModel, Logic, Verdict, DEFAULT_MAX_WORLDS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

const FORMULA_GRAMMAR: &str = "\
formula grammar:
  formula := iff
  iff     := imp ( \"<->\" imp )*        right-associative
  imp     := or ( \"->\" imp )?
  or      := and ( \"|\" and )*
  and     := unary ( \"&\" unary )*
  unary   := \"~\" unary | \"[]\" unary | \"<>\" unary | atom | \"(\" formula \")\"
  atom    := [a-z][a-zA-Z0-9_]*
  `#` starts a comment";

const MPF_GRAMMAR: &str = "\
proof script (.mpf):
  system K|T|S4|S5
  global:
  <label>: <formula> ; <justification>
  local:
  <label>: <formula> ; <justification>
  justification := premise | taut | axK | axT | ax4 | ax5 | mp <impl> <antecedent> | nec <label>";

const KM_GRAMMAR: &str = "\
model file (.km):
  worlds <n>
  relation universal | relation pairs (i j) (i j) ...
  designated <i>          optional, default 0
  val <atom> <i> <i> ...  one line per atom";

#[derive(Parser, Debug)]
#[command(
    name = "modal",
    version,
    about = "S5 modal logic with local and global assumptions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it in canonical form.
    Fmt { formula: String },
    /// Evaluate a formula at a world of a model file.
    Eval {
        model: PathBuf,
        /// World to evaluate at; defaults to the designated world.
        #[arg(long)]
        world: Option<usize>,
        formula: String,
    },
    /// Decide local/global consequence, or print a countermodel.
    Decide {
        #[arg(long, value_parser = parse_logic)]
        logic: Logic,
        /// Premise assumed at every world (repeatable).
        #[arg(long = "global", value_name = "FORMULA")]
        globals: Vec<String>,
        /// Premise assumed at the evaluation world (repeatable).
        #[arg(long = "local", value_name = "FORMULA")]
        locals: Vec<String>,
        #[arg(long)]
        goal: String,
        #[arg(long)]
        max_worlds: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check a two-section proof script.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List or run the bundled cases.
    Casebook {
        #[command(subcommand)]
        action: CasebookAction,
    },
}

#[derive(Subcommand, Debug)]
enum CasebookAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Run {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Usage of the subcommand named in `args`, plus the syntax of the inputs it
/// reads.
fn command_grammar(args: &[OsString]) -> String {
    use clap::CommandFactory;
    let mut root = Cli::command();
    root.build();
    let mut names = args.iter().skip(1).filter_map(|a| a.to_str());
    let Some(name) = names.next() else {
        return format!("\n{}\n", root.render_usage());
    };
    let Some(sub) = root.find_subcommand_mut(name) else {
        return format!("\n{}\n", root.render_usage());
    };
    let mut text = format!("\n{}\n", sub.render_usage());
    let extra = match name {
        "fmt" | "decide" => Some(FORMULA_GRAMMAR.to_string()),
        "eval" => Some(format!("{KM_GRAMMAR}\n\n{FORMULA_GRAMMAR}")),
        "check" => Some(MPF_GRAMMAR.to_string()),
        _ => None,
    };
    if let Some(extra) = extra {
        text.push_str(&format!("\n{extra}\n"));
    }
    text
}

fn parse_logic(s: &str) -> Result<Logic, String> {
    s.parse::<Logic>().map_err(|e| e.to_string())
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Io<'_> {
    fn paint(&self, text: &str, good: bool) -> String {
        if self.color {
            let code = if good { "32" } else { "31" };
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn fail(&mut self, message: &str, grammar: Option<&str>) -> i32 {
        let _ = writeln!(self.err, "error: {message}");
        if let Some(g) = grammar {
            let _ = writeln!(self.err, "\n{g}");
        }
        EXIT_ERROR
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let mut io = Io { out, err, color };
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(io.err, "{e}");
                let _ = write!(io.err, "{}", command_grammar(&args));
                EXIT_ERROR
            } else {
                let _ = write!(io.out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match cli.command {
        Command::Fmt { formula } => fmt_cmd(&mut io, &formula),
        Command::Eval {
            model,
            world,
            formula,
        } => eval_cmd(&mut io, &model, world, &formula),
        Command::Decide {
            logic,
            globals,
            locals,
            goal,
            max_worlds,
            json,
        } => decide_cmd(&mut io, logic, &globals, &locals, &goal, max_worlds, json),
        Command::Check { file, json } => check_cmd(&mut io, &file, json),
        Command::Casebook { action } => casebook_cmd(&mut io, action),
    }
}

fn parse_arg(io: &mut Io, text: &str) -> Result<Formula, i32> {
    parse(text).map_err(|e| {
        io.fail(
            &format!("cannot parse `{text}`: {e}"),
            Some(FORMULA_GRAMMAR),
        )
    })
}

fn fmt_cmd(io: &mut Io, text: &str) -> i32 {
    match parse_arg(io, text) {
        Ok(f) => {
            let _ = writeln!(io.out, "{f}");
            EXIT_OK
        }
        Err(code) => code,
    }
}

fn read(io: &mut Io, path: &Path) -> Result<String, i32> {
    std::fs::read_to_string(path)
        .map_err(|e| io.fail(&format!("cannot read {}: {e}", path.display()), None))
}

fn eval_cmd(io: &mut Io, path: &Path, world: Option<usize>, text: &str) -> i32 {
    let source = match read(io, path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let model = match KripkeModel::from_km(&source) {
        Ok(m) => m,
        Err(e) => return io.fail(&format!("{}: {e}", path.display()), Some(KM_GRAMMAR)),
    };
    let f = match parse_arg(io, text) {
        Ok(f) => f,
        Err(code) => return code,
    };
    for atom in model.unvalued_atoms(&f) {
        let _ = writeln!(
            io.err,
            "warning: atom `{atom}` has no `val` line; it is false everywhere"
        );
    }
    let world = world.or(model.designated()).unwrap_or(0);
    match eval(&model, world, &f) {
        Ok(value) => {
            let _ = writeln!(io.out, "{value}");
            EXIT_OK
        }
        Err(e) => io.fail(&e.to_string(), None),
    }
}

fn verdict_json(verdict: &Verdict, bound: usize) -> serde_json::Value {
    match verdict {
        Verdict::Valid => json!({ "verdict": "valid", "bound": bound }),
        Verdict::ValidUpToBound { max_worlds } => {
            json!({ "verdict": "valid_up_to_bound", "bound": max_worlds })
        }
        Verdict::Countermodel { model, world } => {
            let relation: Vec<[usize; 2]> = model.relation().iter().map(|&(a, b)| [a, b]).collect();
            let valuation: BTreeMap<&str, Vec<usize>> = model
                .valuation()
                .iter()
                .map(|(a, ws)| (a.as_str(), ws.iter().copied().collect()))
                .collect();
            json!({
                "verdict": "countermodel",
                "bound": bound,
                "model": {
                    "worlds": model.world_count(),
                    "relation": relation,
                    "valuation": valuation,
                    "world": world,
                },
            })
        }
    }
}

fn decide_cmd(
    io: &mut Io,
    logic: Logic,
    globals: &[String],
    locals: &[String],
    goal: &str,
    max_worlds: Option<usize>,
    json: bool,
) -> i32 {
    let parse_all = |io: &mut Io, xs: &[String]| {
        xs.iter()
            .map(|x| parse_arg(io, x))
            .collect::<Result<Vec<_>, _>>()
    };
    let globals = match parse_all(io, globals) {
        Ok(fs) => fs,
        Err(code) => return code,
    };
    let locals = match parse_all(io, locals) {
        Ok(fs) => fs,
        Err(code) => return code,
    };
    let goal = match parse_arg(io, goal) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let verdict = match decide(logic, &globals, &locals, &goal, max_worlds) {
        Ok(v) => v,
        Err(e) => return io.fail(&e.to_string(), None),
    };
    let bound = match logic {
        Logic::S5 => {
            let b = small_model_bound(&globals, &locals, &goal);
            max_worlds.map_or(b, |m| m.min(b))
        }
        _ => max_worlds.unwrap_or(DEFAULT_MAX_WORLDS),
    };
    if json {
        let _ = writeln!(io.out, "{}", verdict_json(&verdict, bound));
    } else {
        match &verdict {
            Verdict::Valid => {
                let text = io.paint("valid", true);
                let _ = writeln!(io.out, "{text} (no {logic} countermodel up to the small-model bound of {bound} worlds)");
            }
            Verdict::ValidUpToBound { max_worlds } => {
                let text = io.paint("valid up to bound", true);
                let _ = writeln!(
                    io.out,
                    "{text}: no {logic} countermodel with at most {max_worlds} worlds"
                );
            }
            Verdict::Countermodel { model, world } => {
                let _ = writeln!(io.out, "# countermodel: the goal fails at world {world}");
                let _ = write!(io.out, "{}", model.to_km());
            }
        }
    }
    if verdict.is_countermodel() {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

fn report_json(report: &CheckReport) -> serde_json::Value {
    json!({
        "status": report.status,
        "errors": report.errors,
        "warnings": report.warnings,
    })
}

fn check_cmd(io: &mut Io, path: &Path, json: bool) -> i32 {
    let source = match read(io, path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let derivation = match Derivation::parse(&source) {
        Ok(d) => d,
        Err(e) => {
            let grammar = format!("{MPF_GRAMMAR}\n\n{FORMULA_GRAMMAR}");
            return io.fail(&format!("{}: {e}", path.display()), Some(&grammar));
        }
    };
    let report = check(&derivation);
    if json {
        let _ = writeln!(io.out, "{}", report_json(&report));
    } else {
        let status = io.paint(&report.status.to_string(), report.is_accepted());
        let _ = writeln!(io.out, "{status}");
        for e in &report.errors {
            let _ = writeln!(io.out, "  {}: {}: {}", e.label, e.kind, e.message);
        }
        for w in &report.warnings {
            let _ = writeln!(io.err, "warning: {w}");
        }
    }
    if report.is_accepted() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn print_outcome(io: &mut Io, o: &CaseOutcome) {
    let tag = io.paint(if o.pass { "PASS" } else { "FAIL" }, o.pass);
    let _ = writeln!(io.out, "{tag} {} ({})", o.name, o.kind);
    let _ = writeln!(io.out, "  expected: {}", o.expected);
    let _ = writeln!(io.out, "  actual:   {}", o.actual);
}

fn casebook_cmd(io: &mut Io, action: CasebookAction) -> i32 {
    match action {
        CasebookAction::List { json } => {
            let cases = casebook::list_cases();
            if json {
                let items: Vec<_> = cases
                    .iter()
                    .map(|(name, kind, summary)| json!({ "name": name, "kind": kind, "summary": summary }))
                    .collect();
                let _ = writeln!(io.out, "{}", serde_json::Value::Array(items));
            } else {
                for (name, kind, summary) in cases {
                    let _ = writeln!(io.out, "{name:<26} {:<22} {summary}", kind.to_string());
                }
            }
            EXIT_OK
        }
        CasebookAction::Run { name, all, json } => {
            let results = if all {
                casebook::run_all()
            } else {
                vec![casebook::run_case(name.as_deref().unwrap_or_default())]
            };
            let mut outcomes = Vec::new();
            for r in results {
                match r {
                    Ok(o) => outcomes.push(o),
                    Err(e) => return io.fail(&e.to_string(), None),
                }
            }
            if json {
                let items: Vec<_> = outcomes
                    .iter()
                    .map(|o| json!({ "name": o.name, "expected": o.expected, "actual": o.actual, "pass": o.pass }))
                    .collect();
                let doc = if all {
                    serde_json::Value::Array(items)
                } else {
                    items.into_iter().next().unwrap_or_default()
                };
                let _ = writeln!(io.out, "{doc}");
            } else {
                for o in &outcomes {
                    print_outcome(io, o);
                }
                if all {
                    let passed = outcomes.iter().filter(|o| o.pass).count();
                    let _ = writeln!(io.out, "{passed}/{} cases passed", outcomes.len());
                }
            }
            if outcomes.iter().all(|o| o.pass) {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
    }
}

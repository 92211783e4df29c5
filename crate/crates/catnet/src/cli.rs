//! The `catnet` command line.
//!
//! Exit codes: 0 success or "true", 1 "false" or a counterexample, 2 usage,
//! parse or type errors, 3 an exhausted budget, 4 disagreement between the
//! canonicalizer and the oracle.

use std::io::Write;
use std::path::{Path, PathBuf};

use catnet_core::canon::CanonicalProcess;
use catnet_core::network::{eq_groth, GrothMorphism};
use catnet_core::oracle::{
    check_padding_functor, swap_closure_eq, Counterexample, EnumerationBudget, PaddingStatus,
};
use catnet_core::premonoidal::{check_premonoidal_laws, find_interchange_witness};
use catnet_core::term::serialize;
use catnet_core::{eq_fp, Error as CoreError, Grade, Marking, PetriNet, ProcessTerm};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::dot::{net_dot, process_dot};
use crate::dsl::{marking_text, parse_net, NetDocument};
use crate::expr::{
    layer_names, parse_catalyst_list, parse_marking, parse_permutation, parse_typed_term, process_text, term_text,
};
use crate::syntax::Diagnostic;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "catnet", version, about = "Petri nets with catalysts and their processes")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a net description.
    Validate { file: PathBuf },
    /// List the species unchanged by every transition.
    Catalysts { file: PathBuf },
    /// Fire one transition.
    Fire {
        file: PathBuf,
        #[arg(short = 'm', long)]
        marking: String,
        #[arg(short = 't', long)]
        transition: String,
    },
    /// Markings reachable from a start marking.
    Reach {
        file: PathBuf,
        #[arg(short = 'm', long)]
        marking: String,
        #[arg(long, default_value_t = 100)]
        max_states: usize,
        #[arg(long, default_value_t = 100)]
        max_depth: usize,
    },
    /// Type of a process expression.
    Typecheck {
        file: PathBuf,
        #[arg(short = 'e', long)]
        expr: String,
    },
    /// Canonical form of a process expression.
    Normalize {
        file: PathBuf,
        #[arg(short = 'e', long)]
        expr: String,
    },
    /// Equality of two process expressions.
    Eq {
        file: PathBuf,
        #[arg(short = 'e', long = "expr", required = true)]
        exprs: Vec<String>,
        /// Cross-check against the swap-closure oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Equality of two morphisms with individual catalysts.
    GrothEq {
        file: PathBuf,
        #[arg(short = 'x', long)]
        x: String,
        #[arg(short = 'p', long)]
        p: String,
        #[arg(short = 'e', long)]
        e: String,
        #[arg(long)]
        x2: String,
        #[arg(long)]
        p2: String,
        #[arg(long)]
        e2: String,
    },
    /// Exhaustive check of the premonoidal laws on one grade.
    PremonoidalCheck {
        file: PathBuf,
        #[arg(short = 'i', long)]
        grade: String,
        #[arg(short = 'm', long = "dom", required = true)]
        doms: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_firings: usize,
        #[arg(long, default_value_t = EnumerationBudget::default().max_states)]
        max_states: usize,
    },
    /// Search for a pair on which the two sequential tensors differ.
    InterchangeWitness {
        file: PathBuf,
        #[arg(short = 'i', long)]
        grade: String,
        #[arg(short = 'm', long = "dom", required = true)]
        doms: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_firings: usize,
        #[arg(long, default_value_t = EnumerationBudget::default().max_states)]
        max_states: usize,
    },
    /// Compare bounded hom-sets before and after adding idle catalysts.
    PaddingCheck {
        file: PathBuf,
        #[arg(short = 'i', long)]
        grade: String,
        #[arg(short = 'j', long)]
        extra: String,
        #[arg(short = 'm', long)]
        dom: String,
        #[arg(long, default_value_t = 2)]
        max_firings: usize,
        #[arg(long, default_value_t = EnumerationBudget::default().max_states)]
        max_states: usize,
    },
    /// Graphviz rendering of the net, or of a process with `-e`.
    ExportDot {
        file: PathBuf,
        #[arg(short = 'e', long)]
        expr: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}", join_diagnostics(.0))]
    Parse(Vec<Diagnostic>),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n")
}

impl From<Diagnostic> for CliError {
    fn from(d: Diagnostic) -> Self {
        CliError::Parse(vec![d])
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                CoreError::BudgetExceeded { .. }
                | CoreError::BoundsTooLarge { .. }
                | CoreError::ClassBudgetExceeded { .. }
                | CoreError::TooManyFirings { .. },
            ) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Usage(_) => "usage",
            CliError::Core(_) if self.exit_code() == EXIT_BUDGET => "budget",
            CliError::Core(_) => "invalid",
        }
    }

    fn to_json(&self) -> Value {
        let mut error = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Parse(diags) = self {
            error["diagnostics"] = diags
                .iter()
                .map(|d| json!({ "line": d.location.line, "column": d.location.column, "message": d.message }))
                .collect();
        }
        json!({ "schema": 1, "error": error })
    }
}

/// What a command produced: an exit code, the JSON document and the human
/// rendering of the same content.
struct Output {
    code: i32,
    json: Value,
    text: String,
}

impl Output {
    fn new(code: i32, mut json: Value, text: impl Into<String>) -> Self {
        if let Value::Object(map) = &mut json {
            let mut with_schema = Map::new();
            with_schema.insert("schema".into(), json!(1));
            with_schema.append(map);
            *map = with_schema;
        }
        Output {
            code,
            json,
            text: text.into(),
        }
    }
}

/// Rewrites `-x2`, `-p2` and `-e2` to their long forms.
fn normalize_args(args: impl IntoIterator<Item = String>) -> Vec<String> {
    args.into_iter()
        .map(|a| match a.as_str() {
            "-x2" | "-p2" | "-e2" => format!("-{a}"),
            _ => a,
        })
        .collect()
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`, and returns the exit code.
pub fn run(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(normalize_args(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", o.json);
            } else {
                let _ = writeln!(out, "{}", o.text.trim_end());
            }
            o.code
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", e.to_json());
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<NetDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_net(&text).map_err(CliError::Parse)
}

fn marking_json(net: &PetriNet, m: &Marking) -> Value {
    m.iter()
        .map(|(s, n)| (net.species_name(s).unwrap_or("?").to_string(), json!(n)))
        .collect::<Map<_, _>>()
        .into()
}

fn process_json(net: &PetriNet, p: &CanonicalProcess) -> Value {
    json!({
        "dom": marking_json(net, p.dom()),
        "cod": marking_json(net, p.cod()),
        "layers": layer_names(net, p),
    })
}

fn counterexample_json(net: &PetriNet, c: &Counterexample) -> Value {
    match c {
        Counterexample::Processes(a, b) => json!([process_json(net, a), process_json(net, b)]),
        Counterexample::Terms(a, b) => json!([term_text(net, a), term_text(net, b)]),
        Counterexample::Sequences(a, b) => {
            let names = |s: &catnet_core::FiringSequence| {
                s.steps
                    .iter()
                    .map(|t| net.transition(*t).map(|t| t.name.clone()).unwrap_or_default())
                    .collect::<Vec<_>>()
            };
            json!([
                { "dom": marking_json(net, &a.dom), "steps": names(a) },
                { "dom": marking_json(net, &b.dom), "steps": names(b) },
            ])
        }
    }
}

fn names<'a>(net: &'a PetriNet, ids: impl IntoIterator<Item = &'a catnet_core::SpeciesId>) -> Vec<String> {
    ids.into_iter()
        .map(|s| net.species_name(*s).unwrap_or("?").to_string())
        .collect()
}

fn grade_arg(doc: &NetDocument, text: &str) -> Result<Grade, CliError> {
    let m = parse_marking(text, doc.net())?;
    Grade::new(m, &doc.cnet).ok_or_else(|| CliError::Usage(format!("grade `{text}` mentions a species that is not a catalyst")))
}

fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Validate { file } => {
            let doc = load(file)?;
            let net = doc.net();
            let problems: Vec<String> = net.validate().iter().map(|d| d.to_string()).collect();
            if !problems.is_empty() {
                return Err(CliError::Usage(problems.join("\n")));
            }
            Ok(Output::new(
                EXIT_OK,
                json!({
                    "valid": true,
                    "name": doc.name,
                    "species": net.species_count(),
                    "transitions": net.transition_count(),
                }),
                format!(
                    "valid: net {} with {} species and {} transitions",
                    doc.name,
                    net.species_count(),
                    net.transition_count()
                ),
            ))
        }
        Command::Catalysts { file } => {
            let doc = load(file)?;
            let net = doc.net();
            let found = names(net, &net.find_catalysts());
            let declared = names(net, doc.cnet.catalysts());
            Ok(Output::new(
                EXIT_OK,
                json!({ "catalysts": found, "declared": declared }),
                format!("catalysts: {}\ndeclared: {}", found.join(", "), declared.join(", ")),
            ))
        }
        Command::Fire {
            file,
            marking,
            transition,
        } => {
            let doc = load(file)?;
            let net = doc.net();
            let m = parse_marking(marking, net)?;
            let t = net
                .transition_id(transition)
                .ok_or_else(|| CliError::Usage(format!("unknown transition `{transition}`")))?;
            match net.fire(&m, t) {
                Ok(next) => Ok(Output::new(
                    EXIT_OK,
                    json!({ "enabled": true, "marking": marking_json(net, &next) }),
                    marking_text(net, &next),
                )),
                Err(CoreError::NotEnabled { .. }) => Ok(Output::new(
                    EXIT_FALSE,
                    json!({ "enabled": false }),
                    format!("{transition} is not enabled at {}", marking_text(net, &m)),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Reach {
            file,
            marking,
            max_states,
            max_depth,
        } => {
            let doc = load(file)?;
            let net = doc.net();
            let m = parse_marking(marking, net)?;
            let r = net.reachable_bounded(&m, *max_states, *max_depth);
            let mut text: Vec<String> = r.markings.iter().map(|m| marking_text(net, m)).collect();
            text.push(format!("{} markings, truncated: {}", r.markings.len(), r.truncated));
            Ok(Output::new(
                EXIT_OK,
                json!({
                    "markings": r.markings.iter().map(|m| marking_json(net, m)).collect::<Vec<_>>(),
                    "count": r.markings.len(),
                    "truncated": r.truncated,
                }),
                text.join("\n"),
            ))
        }
        Command::Typecheck { file, expr } => {
            let doc = load(file)?;
            let net = doc.net();
            let (_, ty) = parse_typed_term(expr, net)?;
            Ok(Output::new(
                EXIT_OK,
                json!({ "dom": marking_json(net, &ty.dom), "cod": marking_json(net, &ty.cod) }),
                format!("{} -> {}", marking_text(net, &ty.dom), marking_text(net, &ty.cod)),
            ))
        }
        Command::Normalize { file, expr } => {
            let doc = load(file)?;
            let net = doc.net();
            let (term, _) = parse_typed_term(expr, net)?;
            let p = CanonicalProcess::of_term(net, &term)?;
            Ok(Output::new(
                EXIT_OK,
                process_json(net, &p),
                format!("{}\ncod: {}", process_text(net, &p), marking_text(net, p.cod())),
            ))
        }
        Command::Eq { file, exprs, oracle } => {
            let [e1, e2] = exprs.as_slice() else {
                return Err(CliError::Usage(format!("eq takes exactly two -e expressions, got {}", exprs.len())));
            };
            let doc = load(file)?;
            let net = doc.net();
            let (t1, _) = parse_typed_term(e1, net)?;
            let (t2, _) = parse_typed_term(e2, net)?;
            let equal = eq_fp(net, &t1, &t2)?;
            let word = |b: bool| if b { "equal" } else { "not equal" };
            if !oracle {
                let code = if equal { EXIT_OK } else { EXIT_FALSE };
                return Ok(Output::new(code, json!({ "equal": equal }), word(equal)));
            }
            let slow = oracle_eq(net, &t1, &t2)?;
            let code = match (equal == slow, equal) {
                (false, _) => EXIT_DISAGREE,
                (true, true) => EXIT_OK,
                (true, false) => EXIT_FALSE,
            };
            Ok(Output::new(
                code,
                json!({ "equal": equal, "oracle": slow, "agree": equal == slow }),
                format!("{}\noracle: {}", word(equal), word(slow)),
            ))
        }
        Command::GrothEq { file, x, p, e, x2, p2, e2 } => {
            let doc = load(file)?;
            let net = doc.net();
            let build = |x: &str, p: &str, e: &str| -> Result<GrothMorphism, CliError> {
                let list = parse_catalyst_list(x, &doc.cnet)?;
                let sigma = parse_permutation(p)?;
                let (term, _) = parse_typed_term(e, net)?;
                let f = CanonicalProcess::of_term(net, &term)?;
                Ok(GrothMorphism::from_parts(list, sigma, f, &doc.cnet)?)
            };
            let m1 = build(x, p, e)?;
            let m2 = build(x2, p2, e2)?;
            let equal = eq_groth(&m1, &m2);
            let same_sigma = m1.sigma() == m2.sigma();
            let same_f = m1.process() == m2.process();
            Ok(Output::new(
                if equal { EXIT_OK } else { EXIT_FALSE },
                json!({
                    "equal": equal,
                    "permutations_equal": same_sigma,
                    "processes_equal": same_f,
                }),
                format!(
                    "{}\npermutations equal: {same_sigma}\nprocesses equal: {same_f}",
                    if equal { "equal" } else { "not equal" }
                ),
            ))
        }
        Command::PremonoidalCheck {
            file,
            grade,
            doms,
            max_firings,
            max_states,
        } => {
            let doc = load(file)?;
            let net = doc.net();
            let i = grade_arg(&doc, grade)?;
            let pool = doms.iter().map(|d| parse_marking(d, net)).collect::<Result<Vec<_>, _>>()?;
            let report = check_premonoidal_laws(&doc.cnet, &i, &pool, &budget(*max_firings, *max_states))?;
            let mut text = Vec::new();
            let laws: Vec<Value> = report
                .laws
                .iter()
                .map(|l| {
                    text.push(format!("{}: {} ({} instances)", l.law, l.status.as_str(), l.checked));
                    let mut v = json!({ "law": l.law, "status": l.status.as_str(), "checked": l.checked });
                    if let Some(c) = &l.counterexample {
                        v["counterexample"] = counterexample_json(net, c);
                    }
                    v
                })
                .collect();
            let passed = report.passed();
            Ok(Output::new(
                if passed { EXIT_OK } else { EXIT_FALSE },
                json!({ "status": if passed { "pass" } else { "fail" }, "laws": laws }),
                text.join("\n"),
            ))
        }
        Command::InterchangeWitness {
            file,
            grade,
            doms,
            max_firings,
            max_states,
        } => {
            let doc = load(file)?;
            let net = doc.net();
            let i = grade_arg(&doc, grade)?;
            let pool = doms.iter().map(|d| parse_marking(d, net)).collect::<Result<Vec<_>, _>>()?;
            let budget = budget(*max_firings, *max_states);
            match find_interchange_witness(&doc.cnet, &i, &pool, &budget)? {
                None => Ok(Output::new(EXIT_OK, json!({ "witness": null }), "no witness")),
                Some((f, g)) => Ok(Output::new(
                    EXIT_FALSE,
                    json!({ "witness": { "f": process_json(net, &f), "g": process_json(net, &g) } }),
                    format!("witness\nf: {}\ng: {}", process_text(net, &f), process_text(net, &g)),
                )),
            }
        }
        Command::PaddingCheck {
            file,
            grade,
            extra,
            dom,
            max_firings,
            max_states,
        } => {
            let doc = load(file)?;
            let net = doc.net();
            let i = grade_arg(&doc, grade)?;
            let j = grade_arg(&doc, extra)?;
            let dom = parse_marking(dom, net)?;
            let r = check_padding_functor(&doc.cnet, &i, &j, &dom, &budget(*max_firings, *max_states))?;
            let (status, witness, text) = match &r.status {
                PaddingStatus::Bijective => ("bijective", Value::Null, String::new()),
                PaddingStatus::NotInjective { first, second } => (
                    "not-injective",
                    json!([process_json(net, first), process_json(net, second)]),
                    format!("\n{}\n{}", process_text(net, first), process_text(net, second)),
                ),
                PaddingStatus::NotSurjective { missing } => (
                    "not-surjective",
                    json!([process_json(net, missing)]),
                    format!("\n{}", process_text(net, missing)),
                ),
            };
            Ok(Output::new(
                if r.status == PaddingStatus::Bijective { EXIT_OK } else { EXIT_FALSE },
                json!({
                    "status": status,
                    "source_count": r.source_count,
                    "target_count": r.target_count,
                    "witness": witness,
                }),
                format!("{status}: {} -> {} processes{text}", r.source_count, r.target_count),
            ))
        }
        Command::ExportDot { file, expr } => {
            let doc = load(file)?;
            let dot = match expr {
                None => net_dot(&doc.name, &doc.cnet),
                Some(e) => {
                    let (term, _) = parse_typed_term(e, doc.net())?;
                    process_dot(&doc.cnet, &CanonicalProcess::of_term(doc.net(), &term)?)
                }
            };
            Ok(Output::new(EXIT_OK, json!({ "dot": dot }), dot))
        }
    }
}

fn budget(max_firings: usize, max_states: usize) -> EnumerationBudget {
    EnumerationBudget {
        max_firings,
        max_states,
        ..EnumerationBudget::default()
    }
}

/// Equality decided by the swap-closure oracle on serializations.
fn oracle_eq(net: &PetriNet, t1: &ProcessTerm, t2: &ProcessTerm) -> Result<bool, CliError> {
    let (s1, s2) = (serialize(net, t1)?, serialize(net, t2)?);
    Ok(swap_closure_eq(net, &s1, &s2, &EnumerationBudget::default())?)
}

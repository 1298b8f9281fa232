//! The `nbe` command-line driver.
//!
//! Every command produces a [`Report`]; `--format json` prints it as one
//! line of JSON, text mode prints the interesting field. Exit codes: 0
//! success or property true, 1 property false, 2 parse or usage error,
//! 3 type error, 4 fuel exhausted, 5 internal invariant violation.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::fuel::Fuel;
use crate::mltt::{self, check::d_normalize_inferred, enumerate::DEnumerator, CheckError, DCanonicityError, DContext};
use crate::set_model::consistency_check;
use crate::stlc::{self, oracle, CanonicityError, Context, NormalizeError, Verdict};
use crate::surface::lexer::SourceSpan;
use crate::surface::parse::{
    parse_expr, parse_mltt, parse_mltt_context, parse_stlc_context, parse_stlc_term, parse_stlc_type, parse_sysf_term,
    parse_sysf_type, parse_sysf_type_open, relocate, ExprKind,
};
use crate::surface::{pretty, Calculus, ParseError};
use crate::systemf::{
    self, enumerate::enumerate_closed, f_infer, f_normalize, free_theorem_check, free_theorem_print_with, FTerm, FType,
    FreeTheoremVerdict, RelEnv, RelError, RelInstance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nbe", version, about = "Normalization by evaluation for three small typed calculi")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Calculus::Stlc, global = true)]
    pub calculus: Calculus,
    /// Step budget for rewriting-based commands
    #[arg(long, default_value_t = Fuel::DEFAULT.0, global = true)]
    pub fuel: usize,
    /// Largest term size for `enumerate`
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// A type for the input (required by `enumerate` and `free-theorem`)
    #[arg(long = "type", global = true)]
    pub ty: Option<String>,
    /// Typing context, `x : A, y : B` (stlc and mltt)
    #[arg(long, global = true)]
    pub ctx: Option<String>,
    /// Relation file for `free-theorem`, one per quantifier in order
    #[arg(long = "rel", global = true)]
    pub rel: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check a term and print its type
    Check { term: String },
    /// Print the normal form of a term
    Normalize { term: String },
    /// Decide whether a closed answer is `yes` or `no`
    Canonicity { term: String },
    /// Check that `yes` and `no` are not equal
    Consistency,
    /// Decide equality of two terms by rewriting
    OracleEq { left: String, right: String },
    /// List the terms of a type up to a size
    Enumerate,
    /// Print the free theorem of a type, or check a term against it
    FreeTheorem { term: Option<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Normalize { .. } => "normalize",
            Command::Canonicity { .. } => "canonicity",
            Command::Consistency => "consistency",
            Command::OracleEq { .. } => "oracle-eq",
            Command::Enumerate => "enumerate",
            Command::FreeTheorem { .. } => "free-theorem",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub span: Option<SourceSpan>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub status: &'static str,
    pub command: &'static str,
    pub result: Value,
    pub normal_form: Option<String>,
    pub verdict: Option<String>,
    pub error: Option<ErrorReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed command: exit code plus error report.
struct Failure {
    code: i32,
    error: ErrorReport,
}

type Outcome<T> = Result<T, Failure>;

fn failure(code: i32, kind: &'static str, span: Option<SourceSpan>, message: impl Into<String>) -> Failure {
    Failure { code, error: ErrorReport { kind, span, message: message.into() } }
}

fn usage(message: impl Into<String>) -> Failure {
    failure(2, "usage", None, message)
}

fn type_error(src: &str, message: impl ToString) -> Failure {
    failure(3, "type", Some(SourceSpan::whole(src)), message.to_string())
}

fn internal(message: impl ToString) -> Failure {
    failure(5, "internal", None, message.to_string())
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        failure(2, "parse", Some(e.span()), e.message())
    }
}

/// The successful part of a report, and the exit code (0 or 1).
struct Success {
    code: i32,
    result: Value,
    normal_form: Option<String>,
    verdict: Option<String>,
    /// What text mode prints.
    text: String,
}

impl Success {
    fn text(text: String, result: Value) -> Success {
        Success { code: 0, result, normal_form: None, verdict: None, text }
    }
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => CliOutput { code: 0, stdout: text, stderr: String::new() },
                _ => CliOutput { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let command = cli.command.name();
    let outcome = execute(&cli, stdin);
    let report = match &outcome {
        Ok(s) => Report {
            status: "ok",
            command,
            result: s.result.clone(),
            normal_form: s.normal_form.clone(),
            verdict: s.verdict.clone(),
            error: None,
        },
        Err(f) => Report {
            status: "error",
            command,
            result: Value::Null,
            normal_form: None,
            verdict: None,
            error: Some(f.error.clone()),
        },
    };
    let code = match &outcome {
        Ok(s) => s.code,
        Err(f) => f.code,
    };
    match cli.format {
        Format::Json => {
            let line = serde_json::to_string(&report).expect("reports serialize");
            CliOutput { code, stdout: format!("{line}\n"), stderr: String::new() }
        }
        Format::Text => match outcome {
            Ok(s) if s.text.is_empty() => CliOutput { code, stdout: String::new(), stderr: String::new() },
            Ok(s) => CliOutput { code, stdout: format!("{}\n", s.text), stderr: String::new() },
            Err(f) => {
                let at = f.error.span.map(|s| format!(" at {s}")).unwrap_or_default();
                let stderr = format!("error[{}]{at}: {}\n", f.error.kind, f.error.message);
                CliOutput { code, stdout: String::new(), stderr }
            }
        },
    }
}

fn read_input(arg: &str, stdin: &mut dyn Read) -> Outcome<String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    stdin.read_to_string(&mut buf).map_err(|e| usage(format!("cannot read standard input: {e}")))?;
    Ok(buf.trim_end().to_string())
}

/// Reject options that the chosen command would ignore.
fn validate(cli: &Cli) -> Outcome<()> {
    if cli.ctx.is_some() && cli.calculus == Calculus::Sysf {
        return Err(usage("--ctx is not supported for sysf; terms must be closed"));
    }
    if !cli.rel.is_empty() && !matches!(cli.command, Command::FreeTheorem { term: Some(_) }) {
        return Err(usage("--rel is only used by `free-theorem` with a term"));
    }
    if cli.max_size.is_some() && !matches!(cli.command, Command::Enumerate) {
        return Err(usage("--max-size is only used by `enumerate`"));
    }
    Ok(())
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome<Success> {
    validate(cli)?;
    let fuel = Fuel(cli.fuel);
    match &cli.command {
        Command::Check { term } => {
            let src = read_input(term, stdin)?;
            match cli.calculus {
                Calculus::Stlc => stlc_check(cli, &src),
                Calculus::Mltt => mltt_check(cli, &src),
                Calculus::Sysf => sysf_check(cli, &src),
            }
        }
        Command::Normalize { term } => {
            let src = read_input(term, stdin)?;
            let nf = match cli.calculus {
                Calculus::Stlc => stlc_normalize(cli, &src)?,
                Calculus::Mltt => mltt_normalize(cli, &src)?,
                Calculus::Sysf => sysf_normalize(&src, fuel)?,
            };
            Ok(Success { code: 0, result: json!(nf), normal_form: Some(nf.clone()), verdict: None, text: nf })
        }
        Command::Canonicity { term } => {
            let src = read_input(term, stdin)?;
            let verdict = match cli.calculus {
                Calculus::Stlc => stlc_canonicity(&src)?,
                Calculus::Mltt => mltt_canonicity(cli, &src)?,
                Calculus::Sysf => return Err(usage("canonicity is defined for stlc and mltt")),
            };
            let word = match verdict {
                Verdict::IsYes => "yes",
                Verdict::IsNo => "no",
            };
            Ok(Success {
                code: 0,
                result: json!(word),
                normal_form: Some(word.into()),
                verdict: Some(word.into()),
                text: word.into(),
            })
        }
        Command::Consistency => consistency(fuel),
        Command::OracleEq { left, right } => {
            let (l, r) = (read_input(left, stdin)?, read_input(right, stdin)?);
            let equal = match cli.calculus {
                Calculus::Stlc => stlc_oracle_eq(cli, &l, &r, fuel)?,
                Calculus::Mltt => mltt_convert(cli, &l, &r)?,
                Calculus::Sysf => sysf_equal(&l, &r, fuel)?,
            };
            Ok(Success {
                code: if equal { 0 } else { 1 },
                result: json!(equal),
                normal_form: None,
                verdict: None,
                text: equal.to_string(),
            })
        }
        Command::Enumerate => {
            let max_size = cli.max_size.unwrap_or(3);
            let terms = match cli.calculus {
                Calculus::Stlc => stlc_enumerate(cli, max_size)?,
                Calculus::Mltt => mltt_enumerate(cli, max_size)?,
                Calculus::Sysf => {
                    let ty = parse_sysf_type(required_type(cli)?)?;
                    enumerate_closed(&ty, max_size).iter().map(pretty::sysf_term).collect()
                }
            };
            Ok(Success::text(terms.join("\n"), json!(terms)))
        }
        Command::FreeTheorem { term } => {
            if cli.calculus != Calculus::Sysf {
                return Err(usage("free theorems are defined for sysf; pass --calculus sysf"));
            }
            match term {
                None => {
                    let (ty, free) = parse_sysf_type_open(required_type(cli)?)?;
                    let text = free_theorem_print_with(&ty, &free);
                    Ok(Success::text(text.clone(), json!(text)))
                }
                Some(term) => {
                    let src = read_input(term, stdin)?;
                    free_theorem(cli, &src, fuel)
                }
            }
        }
    }
}

fn required_type(cli: &Cli) -> Outcome<&str> {
    cli.ty.as_deref().ok_or_else(|| usage("this command needs --type"))
}

// Simply typed.

fn stlc_context(cli: &Cli) -> Outcome<(Vec<String>, Context)> {
    match &cli.ctx {
        Some(src) => Ok(parse_stlc_context(src)?),
        None => Ok((Vec::new(), Context::empty())),
    }
}

fn stlc_check(cli: &Cli, src: &str) -> Outcome<Success> {
    let (names, ctx) = stlc_context(cli)?;
    let t = parse_stlc_term(src, &names)?;
    let ty = stlc::infer(&ctx, &t).map_err(|e| type_error(src, e))?;
    if let Some(expected) = &cli.ty {
        let expected = parse_stlc_type(expected)?;
        if expected != ty {
            return Err(type_error(src, format!("term has type {ty}, expected {expected}")));
        }
    }
    let text = pretty::stlc_type(&ty);
    Ok(Success::text(text.clone(), json!(text)))
}

fn stlc_normalize(cli: &Cli, src: &str) -> Outcome<String> {
    let (names, ctx) = stlc_context(cli)?;
    let t = parse_stlc_term(src, &names)?;
    let nf = stlc::normalize(&ctx, &t).map_err(|e| match e {
        NormalizeError::Type(e) => type_error(src, e),
        NormalizeError::Nbe(e) => internal(e),
    })?;
    let term = stlc::embed_nf(&nf, ctx.len()).map_err(internal)?;
    Ok(pretty::stlc_term(&term, &names))
}

fn stlc_canonicity(src: &str) -> Outcome<Verdict> {
    let t = parse_stlc_term(src, &[])?;
    stlc::canonicity(&t).map_err(|e| match e {
        CanonicityError::Nbe(e) => internal(e),
        other => type_error(src, other),
    })
}

fn oracle_failure(src: &str, e: oracle::OracleError) -> Failure {
    match e {
        oracle::OracleError::FuelExhausted(_) => failure(4, "fuel", Some(SourceSpan::whole(src)), e.to_string()),
        oracle::OracleError::NotBetaNormal(_) => internal(e),
        other => type_error(src, other),
    }
}

fn stlc_oracle_eq(cli: &Cli, l: &str, r: &str, fuel: Fuel) -> Outcome<bool> {
    let (names, ctx) = stlc_context(cli)?;
    let (lt, rt) = (parse_stlc_term(l, &names)?, parse_stlc_term(r, &names)?);
    if let Err(e) = stlc::infer(&ctx, &rt) {
        return Err(type_error(r, e));
    }
    oracle::oracle_equal(&ctx, &lt, &rt, fuel).map_err(|e| oracle_failure(l, e))
}

fn stlc_enumerate(cli: &Cli, max_size: usize) -> Outcome<Vec<String>> {
    let (names, ctx) = stlc_context(cli)?;
    let ty = parse_stlc_type(required_type(cli)?)?;
    Ok(oracle::enumerate_terms(&ctx, &ty, max_size).iter().map(|t| pretty::stlc_term(t, &names)).collect())
}

fn consistency(fuel: Fuel) -> Outcome<Success> {
    let ctx = Context::empty();
    let (yes, no) = (stlc::Term::Yes, stlc::Term::No);
    let model = consistency_check();
    let oracle = !oracle::oracle_equal(&ctx, &yes, &no, fuel).map_err(|e| oracle_failure("yes", e))?;
    let nbe = stlc::normalize(&ctx, &yes).map_err(internal)? != stlc::normalize(&ctx, &no).map_err(internal)?;
    let consistent = model && oracle && nbe;
    Ok(Success {
        code: if consistent { 0 } else { 1 },
        result: json!(consistent),
        normal_form: None,
        verdict: None,
        text: if consistent { "consistent".into() } else { "inconsistent".into() },
    })
}

// Dependent.

struct MlttScope {
    names: Vec<String>,
    ctx: DContext,
}

fn mltt_scope(cli: &Cli) -> Outcome<MlttScope> {
    match &cli.ctx {
        None => Ok(MlttScope { names: Vec::new(), ctx: DContext::empty() }),
        Some(src) => {
            let (names, types) = parse_mltt_context(src)?;
            let ctx = DContext::from_telescope(&types).map_err(|e| check_failure(src, e))?;
            Ok(MlttScope { names, ctx })
        }
    }
}

fn check_failure(src: &str, e: CheckError) -> Failure {
    match e {
        CheckError::Nbe(e) => internal(e),
        other => type_error(src, other),
    }
}

/// The term, and its type when `--type` is given.
fn mltt_input(cli: &Cli, scope: &MlttScope, src: &str) -> Outcome<(mltt::DTerm, Option<mltt::DTerm>)> {
    let t = parse_mltt(src, &scope.names)?;
    let ty = match &cli.ty {
        Some(ty_src) => Some(parse_mltt(ty_src, &scope.names)?),
        None => None,
    };
    Ok((t, ty))
}

fn mltt_check(cli: &Cli, src: &str) -> Outcome<Success> {
    let scope = mltt_scope(cli)?;
    let (t, ty) = mltt_input(cli, &scope, src)?;
    let ty_value = match ty {
        Some(ty) => {
            mltt::check_type(&scope.ctx, &ty).map_err(|e| check_failure(src, e))?;
            let value = scope.ctx.eval(&ty).map_err(internal)?;
            mltt::check(&scope.ctx, &t, &value).map_err(|e| check_failure(src, e))?;
            value
        }
        None => mltt::infer(&scope.ctx, &t).map_err(|e| check_failure(src, e))?,
    };
    let quoted = scope.ctx.quote_ty(&ty_value).map_err(|e| check_failure(src, e))?;
    let text = pretty::mltt_term(&quoted, &scope.names);
    Ok(Success::text(text.clone(), json!(text)))
}

fn mltt_normalize(cli: &Cli, src: &str) -> Outcome<String> {
    let scope = mltt_scope(cli)?;
    let (t, ty) = mltt_input(cli, &scope, src)?;
    let nf = match ty {
        Some(ty) => mltt::d_normalize(&scope.ctx, &t, &ty),
        None => d_normalize_inferred(&scope.ctx, &t).map(|(nf, _)| nf),
    }
    .map_err(|e| check_failure(src, e))?;
    let term = nf.embed(scope.ctx.len()).map_err(internal)?;
    Ok(pretty::mltt_term(&term, &scope.names))
}

fn mltt_canonicity(cli: &Cli, src: &str) -> Outcome<Verdict> {
    let (mut t, ty) = mltt_input(cli, &MlttScope { names: Vec::new(), ctx: DContext::empty() }, src)?;
    if let Some(ty) = ty {
        t = mltt::DTerm::ann(t, ty);
    }
    mltt::d_canonicity(&t).map_err(|e| match e {
        DCanonicityError::Check(e) => check_failure(src, e),
        other => type_error(src, other),
    })
}

fn mltt_convert(cli: &Cli, l: &str, r: &str) -> Outcome<bool> {
    let scope = mltt_scope(cli)?;
    let ty_src = required_type(cli)?;
    let ty = parse_mltt(ty_src, &scope.names)?;
    let (lt, rt) = (parse_mltt(l, &scope.names)?, parse_mltt(r, &scope.names)?);
    let ln = mltt::d_normalize(&scope.ctx, &lt, &ty).map_err(|e| check_failure(l, e))?;
    let rn = mltt::d_normalize(&scope.ctx, &rt, &ty).map_err(|e| check_failure(r, e))?;
    Ok(ln == rn)
}

fn mltt_enumerate(cli: &Cli, max_size: usize) -> Outcome<Vec<String>> {
    let scope = mltt_scope(cli)?;
    let ty_src = required_type(cli)?;
    let ty = parse_mltt(ty_src, &scope.names)?;
    mltt::check_type(&scope.ctx, &ty).map_err(|e| check_failure(ty_src, e))?;
    let goal = scope.ctx.eval(&ty).map_err(internal)?;
    let mut e = DEnumerator::new().map_err(internal)?;
    let terms = e.check_up_to(&scope.ctx, &goal, max_size).map_err(internal)?;
    Ok(terms.iter().map(|t| pretty::mltt_term(t, &scope.names)).collect())
}

// System F.

fn sysf_typed(src: &str) -> Outcome<(FTerm, FType)> {
    let t = parse_sysf_term(src)?;
    let ty = f_infer(0, &[], &t).map_err(|e| type_error(src, e))?;
    Ok((t, ty))
}

fn sysf_check(cli: &Cli, src: &str) -> Outcome<Success> {
    let (_, ty) = sysf_typed(src)?;
    if let Some(expected) = &cli.ty {
        let expected = parse_sysf_type(expected)?;
        if expected != ty {
            let (e, a) = (pretty::sysf_type(&expected, &[]), pretty::sysf_type(&ty, &[]));
            return Err(type_error(src, format!("term has type {a}, expected {e}")));
        }
    }
    let text = pretty::sysf_type(&ty, &[]);
    Ok(Success::text(text.clone(), json!(text)))
}

fn fuel_failure(src: &str, e: systemf::FuelExhausted) -> Failure {
    failure(4, "fuel", Some(SourceSpan::whole(src)), e.to_string())
}

fn sysf_normalize(src: &str, fuel: Fuel) -> Outcome<String> {
    let (t, _) = sysf_typed(src)?;
    let nf = f_normalize(&t, fuel).map_err(|e| fuel_failure(src, e))?;
    Ok(pretty::sysf_term(&nf))
}

fn sysf_equal(l: &str, r: &str, fuel: Fuel) -> Outcome<bool> {
    let (lt, lty) = sysf_typed(l)?;
    let (rt, rty) = sysf_typed(r)?;
    if lty != rty {
        let (a, b) = (pretty::sysf_type(&lty, &[]), pretty::sysf_type(&rty, &[]));
        return Err(type_error(l, format!("the two sides have different types: {a} and {b}")));
    }
    let ln = f_normalize(&lt, fuel).map_err(|e| fuel_failure(l, e))?;
    let rn = f_normalize(&rt, fuel).map_err(|e| fuel_failure(r, e))?;
    Ok(ln == rn)
}

fn rel_failure(src: &str, e: RelError) -> Failure {
    match e {
        RelError::FuelExhausted(e) => fuel_failure(src, e),
        other => type_error(src, other),
    }
}

/// Names of the leading quantifiers of a type, outermost first.
fn quantifier_names(ty_src: &str) -> Outcome<Vec<String>> {
    let mut e = parse_expr(ty_src, Calculus::Sysf)?;
    let mut names = Vec::new();
    while let ExprKind::Forall(binder, body) = e.kind {
        names.push(binder.name);
        e = *body;
    }
    Ok(names)
}

fn free_theorem(cli: &Cli, src: &str, fuel: Fuel) -> Outcome<Success> {
    let ty_src = required_type(cli)?;
    let ty = parse_sysf_type(ty_src)?;
    let t = parse_sysf_term(src)?;
    let quantifiers = quantifier_names(ty_src)?;
    if cli.rel.len() != quantifiers.len() {
        return Err(usage(format!(
            "the type has {} quantifier(s) but {} --rel file(s) were given",
            quantifiers.len(),
            cli.rel.len()
        )));
    }
    let mut relations = Vec::new();
    let mut candidates = Vec::new();
    for path in &cli.rel {
        let (rel, cands) = read_rel_file(path, &quantifiers, fuel)?;
        relations.push(rel);
        candidates.extend(cands);
    }
    let mut env = RelEnv::new(relations);
    for (domain, pairs, file_src) in candidates {
        env = env.with_candidates(domain, pairs, fuel).map_err(|e| rel_failure(&file_src, e))?;
    }
    let verdict = free_theorem_check(&t, &ty, &[env], fuel).map_err(|e| rel_failure(src, e))?;
    let note = "checked over the listed relation pairs and candidate arguments only";
    match verdict {
        FreeTheoremVerdict::Pass => Ok(Success {
            code: 0,
            result: json!({"outcome": "pass", "witness": null, "note": note}),
            normal_form: None,
            verdict: Some("pass".into()),
            text: format!("pass ({note})"),
        }),
        FreeTheoremVerdict::Fail(w) => {
            let show = |(l, r): &(FTerm, FTerm)| [pretty::sysf_term(l), pretty::sysf_term(r)];
            let arguments: Vec<[String; 2]> = w.arguments.iter().map(show).collect();
            let results = show(&w.results);
            let args_text: Vec<String> = arguments.iter().map(|[l, r]| format!("({l}, {r})")).collect();
            Ok(Success {
                code: 1,
                result: json!({
                    "outcome": "fail",
                    "witness": {"arguments": arguments, "results": results},
                    "note": note,
                }),
                normal_form: None,
                verdict: Some("fail".into()),
                text: format!(
                    "fail: related arguments [{}] give unrelated results ({}, {})",
                    args_text.join(", "),
                    results[0],
                    results[1]
                ),
            })
        }
    }
}

type CandidateLine = (FType, Vec<(FTerm, FTerm)>, String);

/// Read a relation file:
///
/// ```text
/// # comment
/// left: <type>
/// right: <type>
/// pair: <term> | <term>
/// candidate: <type> => <term> | <term>
/// ```
///
/// Candidate types may mention the quantified variables by name.
fn read_rel_file(path: &Path, quantifiers: &[String], fuel: Fuel) -> Outcome<(RelInstance, Vec<CandidateLine>)> {
    let src = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let at = |e: ParseError, offset: usize| -> Failure {
        let e = relocate(e, &src, offset);
        failure(2, "parse", Some(e.span()), format!("{}: {}", path.display(), e.message()))
    };
    let bad = |start: usize, end: usize, message: &str| -> Failure {
        failure(2, "parse", Some(span_in(&src, start, end)), format!("{}: {message}", path.display()))
    };
    let (mut left, mut right, mut pairs, mut candidates) = (None, None, Vec::new(), Vec::new());
    let mut offset = 0;
    for line in src.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let lead = start + (line.len() - trimmed.len());
        let line_end = start + line.trim_end().len();
        let Some(colon) = trimmed.find(':') else {
            return Err(bad(lead, line_end, "expected `key: value`"));
        };
        let (key, value) = (trimmed[..colon].trim(), &trimmed[colon + 1..]);
        let value_at = lead + colon + 1;
        let term_pair = |text: &str, base: usize| -> Outcome<(FTerm, FTerm)> {
            let Some(bar) = text.find('|') else {
                return Err(bad(base, line_end, "expected `<term> | <term>`"));
            };
            let l = parse_sysf_term(&text[..bar]).map_err(|e| at(e, base))?;
            let r = parse_sysf_term(&text[bar + 1..]).map_err(|e| at(e, base + bar + 1))?;
            Ok((l, r))
        };
        match key {
            "left" => left = Some(parse_sysf_type(value).map_err(|e| at(e, value_at))?),
            "right" => right = Some(parse_sysf_type(value).map_err(|e| at(e, value_at))?),
            "pair" => pairs.push(term_pair(value, value_at)?),
            "candidate" => {
                let Some(arrow) = value.find("=>") else {
                    return Err(bad(value_at, line_end, "expected `<type> => <term> | <term>`"));
                };
                let ty_expr = parse_expr(&value[..arrow], Calculus::Sysf).map_err(|e| at(e, value_at))?;
                let domain = resolve_candidate_type(&ty_expr, quantifiers).map_err(|e| at(e, value_at))?;
                let pair = term_pair(&value[arrow + 2..], value_at + arrow + 2)?;
                candidates.push((domain, vec![pair], src.clone()));
            }
            other => {
                return Err(bad(lead, lead + colon, &format!("unknown key `{other}`")));
            }
        }
    }
    let (Some(left), Some(right)) = (left, right) else {
        return Err(bad(0, src.len(), "needs both `left:` and `right:`"));
    };
    let rel = RelInstance::new(left, right, pairs, fuel).map_err(|e| rel_failure(&src, e))?;
    Ok((rel, candidates))
}

fn span_in(src: &str, start: usize, end: usize) -> SourceSpan {
    let before = &src[..start];
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    SourceSpan { start, end, line: before.matches('\n').count() + 1, col: src[line_start..start].chars().count() + 1 }
}

fn resolve_candidate_type(e: &crate::surface::parse::Expr, quantifiers: &[String]) -> Result<FType, ParseError> {
    crate::surface::parse::resolve_sysf_type(e, quantifiers)
}

/// Entry point for the binary.
pub fn main_with_stdio() -> i32 {
    let out = run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

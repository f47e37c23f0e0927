//! The `recmix` command line.
//!
//! Exit status is 0 on success, 1 when the answer is negative (a subtyping
//! that fails, a term with no derivation found, an invalid derivation, a
//! reduction that runs out of fuel, a failing demo) and 2 on usage or input
//! errors. Diagnostics go to the error stream.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::assign::{
    check_with, derivation_from_json, derivation_to_json, enumerate_types, term_labels, verify, Context, Hints,
    Universe, UniverseConfig,
};
use crate::oop::{demo, stdlib};
use crate::reduce::{normalize_with, Strategy, DEFAULT_FUEL};
use crate::syntax::{Name, Term};
use crate::types::{parse_type, subtype, Type};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "recmix", version, about = "Records, merge and intersection types for mixins")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    /// Leftmost-outermost (normal order).
    #[default]
    Lo,
    /// Rightmost-innermost.
    Ri,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce a term to normal form.
    Eval {
        /// A file holding the term, or the term itself with `-e`.
        term: String,
        #[arg(short = 'e', long = "expr")]
        inline: bool,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Print every reduction step.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t)]
        strategy: StrategyArg,
    },
    /// Decide whether the first type is a subtype of the second.
    Sub { left: String, right: String },
    /// Search for a derivation of `term : type`.
    Check {
        term: String,
        #[arg(name = "TYPE")]
        ty: String,
        #[arg(short = 'e', long = "expr")]
        inline: bool,
        /// JSON object mapping variables to types.
        #[arg(long)]
        ctx: Option<String>,
        /// JSON file with `terms` (a list of `{term, type}`) and `binders`.
        #[arg(long)]
        hints: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a derivation stored as JSON.
    Verify { file: String },
    /// List the types of a term over a finite universe.
    Enum {
        term: String,
        #[arg(short = 'e', long = "expr")]
        inline: bool,
        /// Comma-separated type constants.
        #[arg(long, default_value = "Int")]
        atoms: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long)]
        ctx: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run a named demonstration, `all` of them, or list them.
    Demo {
        name: Option<String>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
}

#[derive(Deserialize)]
struct HintsFile {
    #[serde(default)]
    terms: Vec<TermHint>,
    #[serde(default)]
    binders: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct TermHint {
    term: String,
    #[serde(rename = "type")]
    ty: String,
}

enum Outcome {
    Yes,
    No,
}

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(Outcome::Yes) => 0,
        Ok(Outcome::No) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_source(arg: &str, inline: bool) -> Result<String> {
    if inline {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::Input(format!("{arg}: {e}")))
    }
}

/// Parses a term; library names not bound in `ctx` stand for the library
/// terms.
fn load_term(src: &str, ctx: &Context) -> Result<Term> {
    let mut t = crate::syntax::parse_term(src)?;
    for x in t.free_vars() {
        if let Some(def) = stdlib::library(x.as_str()).filter(|_| !ctx.contains(&x)) {
            t = t.subst(&x, &def);
        }
    }
    Ok(t)
}

fn load_ctx(path: Option<&str>) -> Result<Context> {
    let Some(path) = path else { return Ok(Context::new()) };
    let text = read_source(path, false)?;
    let map: BTreeMap<String, String> = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{path}: {e}")))?;
    let mut ctx = Context::new();
    for (x, t) in map {
        ctx = ctx.extend(&Name::new(&x), parse_type(&t)?);
    }
    Ok(ctx)
}

fn load_hints(path: Option<&str>, ctx: &Context) -> Result<Hints> {
    let Some(path) = path else { return Ok(Hints::new()) };
    let text = read_source(path, false)?;
    let file: HintsFile = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{path}: {e}")))?;
    let mut hints = Hints::new();
    for h in file.terms {
        hints = hints.term(&load_term(&h.term, ctx)?, parse_type(&h.ty)?);
    }
    for (x, t) in file.binders {
        hints = hints.binder(&x, parse_type(&t)?);
    }
    Ok(hints)
}

fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Eval { term, inline, fuel, trace, strategy } => {
            let t = load_term(&read_source(term, *inline)?, &Context::new())?;
            let strategy = match strategy {
                StrategyArg::Lo => Strategy::LeftmostOutermost,
                StrategyArg::Ri => Strategy::RightmostInnermost,
            };
            let mut lines = Vec::new();
            let r = normalize_with(&t, *fuel, strategy, |k, s| {
                if *trace {
                    lines.push(format!("step {k} [{}]: {}", s.redex, s.term));
                }
            });
            for l in lines {
                writeln!(out, "{l}")?;
            }
            writeln!(out, "{}", r.term())?;
            if r.is_normal_form() {
                Ok(Outcome::Yes)
            } else {
                writeln!(err, "fuel exhausted after {} steps", r.steps())?;
                Ok(Outcome::No)
            }
        }
        Command::Sub { left, right } => {
            let holds = subtype(&parse_type(left)?, &parse_type(right)?);
            writeln!(out, "{holds}")?;
            Ok(if holds { Outcome::Yes } else { Outcome::No })
        }
        Command::Check { term, ty, inline, ctx, hints, format } => {
            let ctx = load_ctx(ctx.as_deref())?;
            let hints = load_hints(hints.as_deref(), &ctx)?;
            let t = load_term(&read_source(term, *inline)?, &ctx)?;
            let goal: Type = parse_type(ty)?;
            match check_with(&ctx, &t, &goal, &hints) {
                Some(d) => {
                    match format {
                        Format::Plain => write!(out, "{}", d.render())?,
                        Format::Json => writeln!(out, "{}", pretty(&derivation_to_json(&d))?)?,
                    }
                    Ok(Outcome::Yes)
                }
                None => {
                    writeln!(out, "not found")?;
                    Ok(Outcome::No)
                }
            }
        }
        Command::Verify { file } => {
            let text = read_source(file, false)?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{file}: {e}")))?;
            let d = derivation_from_json(&v)?;
            match verify(&d) {
                Ok(j) => {
                    writeln!(out, "{j}")?;
                    Ok(Outcome::Yes)
                }
                Err(e) => {
                    writeln!(out, "invalid")?;
                    writeln!(err, "{e}")?;
                    Ok(Outcome::No)
                }
            }
        }
        Command::Enum { term, inline, atoms, depth, ctx, limit } => {
            let ctx = load_ctx(ctx.as_deref())?;
            let t = load_term(&read_source(term, *inline)?, &ctx)?;
            let atoms: Vec<&str> = atoms.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
            let types = match limit {
                None => enumerate_types(&ctx, &t, &atoms, *depth)?,
                Some(n) => {
                    let labels = term_labels(&t);
                    let labels: Vec<&str> = labels.iter().map(|l| l.as_str()).collect();
                    let cfg = UniverseConfig::new(&atoms, &labels, *depth).with_limit(*n);
                    Universe::build(&cfg)?.typeset(&ctx, &t).types().cloned().collect()
                }
            };
            for ty in types {
                writeln!(out, "{ty}")?;
            }
            Ok(Outcome::Yes)
        }
        Command::Demo { name, fuel } => match name.as_deref() {
            None => {
                write!(out, "{}", demo::manifest())?;
                Ok(Outcome::Yes)
            }
            Some("all") => {
                let mut all_ok = true;
                for n in demo::names() {
                    let r = demo::run(&n, *fuel).expect("listed demo")?;
                    all_ok &= r.ok;
                    let mark = if r.ok { "ok" } else { "FAILED" };
                    writeln!(out, "{n}: {mark}: {}", r.output)?;
                }
                Ok(if all_ok { Outcome::Yes } else { Outcome::No })
            }
            Some(n) => {
                let r = demo::run(n, *fuel).ok_or_else(|| Error::Input(format!("no demo named `{n}`")))??;
                writeln!(out, "{}", r.output)?;
                Ok(if r.ok { Outcome::Yes } else { Outcome::No })
            }
        },
    }
}

fn pretty(v: &serde_json::Value) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Json(e.to_string()))
}

//! `gpla`: batch driver for evaluating, normalising and comparing
//! piecewise-linear relations.
//!
//! Exit codes: 0 when a check holds, 1 when it fails, 2 on usage, parse or
//! type errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gpla::axioms::{all_axioms, check_axiom, check_derived_laws, default_scalars};
use gpla::circuits::CircuitTerm;
use gpla::rat::{self, Rat};
use gpla::{equal, eval, pl_nf, subset, PLRelation, Term, Verdict};

#[derive(Parser)]
#[command(
    name = "gpla",
    version,
    about = "Exact piecewise-linear relation engine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Inputs naming an existing file are read from it; anything else is taken
/// as literal text. Text starting with `{` is a relation document, other
/// text is a term.
#[derive(Subcommand)]
enum Command {
    /// Print the relation denoted by a term as a JSON document.
    Eval { input: String },
    /// Print the shared-hyperplane normal form.
    Nf { input: String },
    /// Decide whether the first relation is included in the second.
    Leq { left: String, right: String },
    /// Decide whether two relations are equal.
    Eq { left: String, right: String },
    /// Test whether a rational point lies in a relation.
    Member {
        input: String,
        /// Coordinates: left ports, then right ports.
        #[arg(last = true, allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Check every axiom instance and the derived laws.
    AxiomsCheck {
        /// Comma-separated scalars for the scalar families.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        scalars: Option<Vec<String>>,
    },
    /// Compile a circuit and print its relation.
    CircuitSolve {
        input: String,
        /// Print the normal form instead of the relation document.
        #[arg(long)]
        nf: bool,
    },
}

enum Outcome {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    // a closed pipe on the reader's side is not an error of ours
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_source(arg: &str) -> Result<String, String> {
    if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))
    } else {
        Ok(arg.to_string())
    }
}

fn load(arg: &str) -> Result<PLRelation, String> {
    let text = read_source(arg)?;
    if text.trim_start().starts_with('{') {
        PLRelation::from_json(&text).map_err(|e| e.to_string())
    } else {
        let t = Term::parse(&text).map_err(|e| e.to_string())?;
        eval(&t).map_err(|e| e.to_string())
    }
}

fn report(v: Verdict, out: &mut String) -> Outcome {
    let _ = writeln!(out, "{v}");
    if v.holds() {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

fn parse_rats(items: &[String]) -> Result<Vec<Rat>, String> {
    items
        .iter()
        .map(|s| rat::parse(s).ok_or_else(|| format!("not a rational number: {s}")))
        .collect()
}

fn run(cmd: Command, out: &mut String) -> Result<Outcome, String> {
    match cmd {
        Command::Eval { input } => {
            let _ = writeln!(out, "{}", load(&input)?.to_json());
            Ok(Outcome::Holds)
        }
        Command::Nf { input } => {
            let nf = pl_nf(&load(&input)?).map_err(|e| e.to_string())?;
            let _ = write!(out, "{nf}");
            Ok(Outcome::Holds)
        }
        Command::Leq { left, right } => {
            let v = subset(&load(&left)?, &load(&right)?).map_err(|e| e.to_string())?;
            Ok(report(v, out))
        }
        Command::Eq { left, right } => {
            let v = equal(&load(&left)?, &load(&right)?).map_err(|e| e.to_string())?;
            Ok(report(v, out))
        }
        Command::Member { input, point } => {
            let r = load(&input)?;
            let x = parse_rats(&point)?;
            let inside = r.member(&x).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{}", if inside { "member" } else { "not a member" });
            Ok(if inside {
                Outcome::Holds
            } else {
                Outcome::Fails
            })
        }
        Command::AxiomsCheck { scalars } => {
            let scalars = match scalars {
                Some(s) => parse_rats(&s)?,
                None => default_scalars(),
            };
            let mut failures = 0;
            let axioms = all_axioms(&scalars);
            for a in &axioms {
                let v = check_axiom(a).map_err(|e| format!("{}: {e}", a.label()))?;
                if !v.holds() {
                    failures += 1;
                }
                let _ = writeln!(out, "{}: {v}", a.label());
            }
            let laws = check_derived_laws().map_err(|e| e.to_string())?;
            for law in &laws {
                if !law.passed {
                    failures += 1;
                }
                let status = if law.passed { "ok" } else { "violated" };
                let _ = writeln!(out, "{}: {status} [{}]", law.name, law.detail);
            }
            let _ = writeln!(
                out,
                "{} axiom instances, {} derived laws, {failures} failures",
                axioms.len(),
                laws.len()
            );
            Ok(if failures == 0 {
                Outcome::Holds
            } else {
                Outcome::Fails
            })
        }
        Command::CircuitSolve { input, nf } => {
            let text = read_source(&input)?;
            let c = CircuitTerm::parse(&text).map_err(|e| e.to_string())?;
            let r = c.solve().map_err(|e| e.to_string())?;
            if nf {
                let _ = write!(out, "{}", pl_nf(&r).map_err(|e| e.to_string())?);
            } else {
                let _ = writeln!(out, "{}", r.to_json());
            }
            Ok(Outcome::Holds)
        }
    }
}

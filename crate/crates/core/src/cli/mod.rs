//! The `cohera` command-line front end.
//!
//! Exit codes: 0 true/success, 1 false/negative, 2 usage error or size
//! limit exceeded, 3 model or library error.

pub mod model;
pub mod verify;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{combine, extract, support_of};
use crate::atoms::{at_of, atom_partition, enum_lex_atoms, LexAtomFamily};
use crate::desirability::{is_coherent_extension, lift_event, set_member};
use crate::embeddings::saturate;
use crate::error::{Error, Result};
use crate::partition::{cond_independent, independent};
use crate::space::{anonymous_space, Event, Gamble};

pub use model::{load_model, parse_model, LoadedModel, ModelFile};
pub use verify::{run_verify, RunReport, Suite, VerifyOptions};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cohera", version, about = "Coherent sets of gambles as an information algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArg {
    /// Model file (JSON).
    #[arg(long)]
    model: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct EventArg {
    /// Named event from the model.
    #[arg(long)]
    event: Option<String>,
    /// Comma-separated world names.
    #[arg(long, allow_hyphen_values = true)]
    worlds: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Whether assertions (or a named set) are coherent.
    Coherent {
        #[arg(long)]
        model: Option<PathBuf>,
        /// Semicolon-separated gambles, each comma-separated.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "set", conflicts_with = "set")]
        assertions: Option<String>,
        #[arg(long, requires = "model")]
        set: Option<String>,
    },
    /// Whether a gamble belongs to a named set.
    Member {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        gamble: String,
    },
    /// Combination of two or more named sets.
    Combine {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long = "set", num_args = 1, required = true)]
        sets: Vec<String>,
    },
    /// Extraction of a named set to a question.
    Extract {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        set: String,
        #[arg(long)]
        question: String,
    },
    /// Coarsest lattice question supporting a named set.
    Support {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        set: String,
    },
    /// Saturation of an event by a question.
    Saturate {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        event: EventArg,
        #[arg(long)]
        question: String,
    },
    /// Unconditional independence of two or more questions.
    Independent {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long = "question", num_args = 1, required = true)]
        questions: Vec<String>,
    },
    /// Conditional independence of questions given another.
    CondIndependent {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long = "question", num_args = 1, required = true)]
        questions: Vec<String>,
        #[arg(long)]
        given: String,
    },
    /// The event set of an event.
    Lift {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        event: EventArg,
    },
    /// Lexicographic atoms, optionally grouped by a question.
    Atoms {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        question: Option<String>,
    },
    /// Lexicographic atoms containing a named set.
    AtOf {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        set: String,
    },
    /// Run property suites and write a report.
    Verify {
        #[arg(long)]
        model: Option<PathBuf>,
        /// Comma-separated suites, or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 3)]
        size_limit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Outcome of a command before it is printed.
struct Outcome {
    value: Option<Value>,
    code: i32,
}

impl Outcome {
    fn truth(b: bool) -> Self {
        Outcome {
            value: Some(Value::Bool(b)),
            code: if b { EXIT_TRUE } else { EXIT_FALSE },
        }
    }

    fn ok(value: Value) -> Self {
        Outcome {
            value: Some(value),
            code: EXIT_TRUE,
        }
    }
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(outcome) => {
            if let Some(value) = &outcome.value {
                let _ = writeln!(out, "{}", render(value));
            }
            outcome.code
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Library(e)) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::LimitExceeded { max, .. } = e {
                let _ = writeln!(err, "hint: reduce the size to at most {max}");
            }
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LimitExceeded { .. } => EXIT_USAGE,
        _ => EXIT_ERROR,
    }
}

const COMPACT_WIDTH: usize = 100;

fn render(value: &Value) -> String {
    let compact = serde_json::to_string(value).expect("json values serialize");
    if compact.len() <= COMPACT_WIDTH {
        compact
    } else {
        serde_json::to_string_pretty(value).expect("json values serialize")
    }
}

fn resolve_event(m: &LoadedModel, arg: &EventArg) -> Result<Event> {
    match (&arg.event, &arg.worlds) {
        (Some(name), _) => m.event(name).cloned(),
        (None, Some(worlds)) => {
            let names: Vec<&str> = worlds.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            Event::from_names(m.space(), &names)
        }
        (None, None) => unreachable!("clap requires --event or --worlds"),
    }
}

fn order_names(family: &LexAtomFamily, atoms: impl IntoIterator<Item = usize>) -> Value {
    json!(atoms.into_iter().map(|i| family.names(i)).collect::<Vec<_>>())
}

fn execute(command: Command, out: &mut dyn Write) -> std::result::Result<Outcome, Failure> {
    match command {
        Command::Coherent { model, assertions, set } => {
            let loaded = model.as_deref().map(load_model).transpose()?;
            if let Some(name) = set {
                let m = loaded.expect("clap enforces --model with --set");
                return Ok(Outcome::truth(!m.model.set(&name)?.is_top()));
            }
            let text = assertions.expect("clap enforces --assertions or --set");
            let parts: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
            if parts.is_empty() {
                return Err(Failure::Usage("no gambles given".into()));
            }
            let space = match &loaded {
                Some(m) => m.space().clone(),
                None => anonymous_space(parts[0].split(',').count())?,
            };
            let k = parts
                .iter()
                .map(|p| Gamble::parse(&space, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::truth(is_coherent_extension(&k)?))
        }
        Command::Member { model, set, gamble } => {
            let m = load_model(&model.model)?;
            let f = Gamble::parse(m.space(), &gamble)?;
            Ok(Outcome::truth(set_member(m.model.set(&set)?, &f)?))
        }
        Command::Combine { model, sets } => {
            let m = load_model(&model.model)?;
            let mut acc = m.model.set(&sets[0])?.clone();
            for name in &sets[1..] {
                acc = combine(&acc, m.model.set(name)?)?;
            }
            Ok(Outcome::ok(model::set_to_json(&acc)))
        }
        Command::Extract { model, set, question } => {
            let m = load_model(&model.model)?;
            let d = m.model.set(&set)?;
            let x = m.model.lattice().get(&question)?;
            Ok(Outcome::ok(model::set_to_json(&extract(d, x)?)))
        }
        Command::Support { model, set } => {
            let m = load_model(&model.model)?;
            let lattice = m.model.lattice();
            Ok(match support_of(m.model.set(&set)?, lattice)? {
                Some(s) => Outcome::ok(json!({"question": lattice.question(s.question).name, "least": s.least})),
                None => Outcome {
                    value: Some(Value::Null),
                    code: EXIT_FALSE,
                },
            })
        }
        Command::Saturate { model, event, question } => {
            let m = load_model(&model.model)?;
            let s = resolve_event(&m, &event)?;
            let x = m.model.lattice().get(&question)?;
            Ok(Outcome::ok(json!(saturate(&s, x)?.names())))
        }
        Command::Independent { model, questions } => {
            let m = load_model(&model.model)?;
            let ps = questions
                .iter()
                .map(|q| m.model.lattice().get(q))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::truth(independent(&ps)?))
        }
        Command::CondIndependent { model, questions, given } => {
            let m = load_model(&model.model)?;
            let lattice = m.model.lattice();
            let ps = questions.iter().map(|q| lattice.get(q)).collect::<Result<Vec<_>>>()?;
            Ok(Outcome::truth(cond_independent(&ps, lattice.get(&given)?)?))
        }
        Command::Lift { model, event } => {
            let m = load_model(&model.model)?;
            Ok(Outcome::ok(model::set_to_json(&lift_event(&resolve_event(&m, &event)?))))
        }
        Command::Atoms { model, question } => {
            let m = load_model(&model.model)?;
            let family = enum_lex_atoms(m.space())?;
            Ok(Outcome::ok(match question {
                None => order_names(&family, 0..family.len()),
                Some(q) => {
                    let p = atom_partition(m.model.lattice().get(&q)?, &family)?;
                    Value::Array(p.blocks().iter().map(|b| order_names(&family, b.iter().copied())).collect())
                }
            }))
        }
        Command::AtOf { model, set } => {
            let m = load_model(&model.model)?;
            let family = enum_lex_atoms(m.space())?;
            let atoms: BTreeSet<usize> = at_of(m.model.set(&set)?, &family)?;
            Ok(Outcome::ok(order_names(&family, atoms)))
        }
        Command::Verify {
            model,
            suites,
            size_limit,
            seed,
            samples,
            output,
        } => {
            let suites = verify::parse_suites(&suites).map_err(|e| Failure::Usage(e.to_string()))?;
            let opts = VerifyOptions {
                suites,
                size_limit,
                seed,
                samples,
            };
            verify::check_limits(&opts)?;
            let loaded = model.as_deref().map(load_model).transpose()?;
            let report = run_verify(&opts, loaded.as_ref())?;
            let text = report.to_json();
            match output {
                Some(path) => std::fs::write(&path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?,
            }
            Ok(Outcome {
                value: None,
                code: report.exit_status,
            })
        }
    }
}

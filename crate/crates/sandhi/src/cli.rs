//! Command-line surface: joining, tokenizing, table generation, count
//! verification, corpus runs.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 verification or
//! corpus failure, 4 engine cycle error. Data goes to stdout; trace lines
//! are prefixed `#`; diagnostics go to stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::alphabet::{detokenize, tokenize, CodeSeq};
use crate::corpus;
use crate::engine::{self, JoinResult, JunctionKind};
use crate::error::LexError;
use crate::rulebase::{count_report, RuleSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CYCLE: i32 = 4;

/// Environment variable naming an alternative rules file; `--rules` wins.
pub const RULES_ENV: &str = "SANDHI_RULES";

#[derive(Parser)]
#[command(name = "sandhi", version, about = "Sanskrit euphonic-conjunction engine")]
struct Cli {
    /// Rules file to use instead of the builtin set.
    #[arg(long, global = true, value_name = "PATH")]
    rules: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Join two words at an euphonic junction.
    Join(JoinArgs),
    /// Print the letter codes of an IAST string.
    Tokenize { text: String },
    /// Stream the exhaustive single-application pair table.
    Table {
        /// Also iterate the declared u and w context letters.
        #[arg(long)]
        contexts: bool,
    },
    /// Check expansion counts against the published tallies.
    VerifyCounts,
    /// Golden-corpus operations.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Args)]
struct JoinArgs {
    left: String,
    right: String,
    /// Print trace lines (prefixed `#`) for each applied rule.
    #[arg(long)]
    trace: bool,
    /// Enumerate optional-rule variants, one surface per line.
    #[arg(long)]
    variants: bool,
    /// Treat the junction as word-internal.
    #[arg(long)]
    internal: bool,
    /// Apply the word-final rules to the result.
    #[arg(long)]
    finalize: bool,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run a corpus file and report per-entry pass/fail.
    Run { file: PathBuf },
}

/// Run the CLI against explicit argv and streams. `argv[0]` is the
/// program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let stream: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(stream, "{e}");
            return code;
        }
    };

    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn load_rules(flag: Option<&PathBuf>, err: &mut dyn Write) -> Result<RuleSet, i32> {
    let path = flag.cloned().or_else(|| std::env::var_os(RULES_ENV).map(PathBuf::from));
    match path {
        Some(p) => RuleSet::load(&p).map_err(|e| {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }),
        None => Ok(RuleSet::builtin().clone()),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let rules = match load_rules(cli.rules.as_ref(), err) {
        Ok(rs) => rs,
        Err(code) => return Ok(code),
    };

    match cli.command {
        Command::Join(args) => cmd_join(&args, &rules, out, err),
        Command::Tokenize { text } => match tokenize(&text) {
            Ok(codes) => {
                let joined: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{}", joined.join(" "))?;
                Ok(EXIT_OK)
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(EXIT_USAGE)
            }
        },
        Command::Table { contexts } => {
            let table = corpus::gen_pair_table(&rules, contexts);
            table.write_tsv(out)?;
            Ok(EXIT_OK)
        }
        Command::VerifyCounts => {
            let report = count_report(&rules);
            write!(out, "{report}")?;
            Ok(if report.ok() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Corpus { action } => match action {
            CorpusAction::Run { file } => {
                let text = std::fs::read_to_string(&file)?;
                match corpus::run_corpus(&text, &rules) {
                    Ok(report) => {
                        write!(out, "{report}")?;
                        Ok(if report.all_passed() { EXIT_OK } else { EXIT_VERIFY })
                    }
                    Err(e) => {
                        writeln!(err, "error: {e}")?;
                        Ok(EXIT_USAGE)
                    }
                }
            }
        },
    }
}

fn lex_fail(e: LexError, side: &str, err: &mut dyn Write) -> std::io::Result<i32> {
    writeln!(err, "error: {side} word: {e}")?;
    Ok(EXIT_USAGE)
}

fn cmd_join(
    args: &JoinArgs,
    rules: &RuleSet,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let left = match tokenize(&args.left) {
        Ok(c) => c,
        Err(e) => return lex_fail(e, "left", err),
    };
    let right = match tokenize(&args.right) {
        Ok(c) => c,
        Err(e) => return lex_fail(e, "right", err),
    };
    let kind = if args.internal {
        JunctionKind::Internal
    } else {
        JunctionKind::External
    };

    let results: Vec<JoinResult> = if args.variants {
        match engine::join_variants(&left, &right, kind, rules) {
            Ok(rs) => rs,
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_CYCLE);
            }
        }
    } else {
        match engine::join(&left, &right, kind, rules) {
            Ok(r) => vec![r],
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_CYCLE);
            }
        }
    };

    for mut result in results {
        let mut extra_steps = Vec::new();
        if args.finalize {
            let (finalized, trace) = engine::finalize_pada(&result.surface, rules);
            result.surface = finalized;
            extra_steps = trace.steps;
        }
        writeln!(out, "{}", show(&result.surface))?;
        if args.trace {
            for step in result.trace.steps.iter().chain(extra_steps.iter()) {
                writeln!(
                    out,
                    "# {} {} {}|{} -> {}|{}",
                    step.rule,
                    step.sutra,
                    show(&step.before.0),
                    show(&step.before.1),
                    show(&step.after.0),
                    show(&step.after.1),
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn show(codes: &CodeSeq) -> String {
    detokenize(codes).unwrap_or_else(|_| format!("{codes:?}"))
}

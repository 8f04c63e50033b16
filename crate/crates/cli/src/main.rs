//! `ocbv`: evaluate, translate and compare terms across the Open
//! Call-by-Value calculi, and run the property harness.
//!
//! Exit status: 0 on success, 1 when a check fails or two inputs are not
//! equivalent, 2 on parse or usage errors, 3 when the input is outside the
//! language of the requested calculus, 4 when an equivalence search gives up.

mod compare;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ocbv_engines::{evaluate, Calculus, Derivation, Status, Strategy};
use ocbv_equiv::{seq_struct_equiv, struct_equiv_fast};
use ocbv_harness::{check_exhaustive, check_property, GenConfig, PropertyId, Report};
use ocbv_sequent::{evaluate_seq, SeqDerivation, SeqStrategy};
use ocbv_term::unfold;
use ocbv_translate::{from_sequent, to_kernel, to_sequent};
use thiserror::Error;

use input::{read_input, Input};
use output::Out;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("language error: {0}")]
    Language(String),
    #[error("{0}")]
    Usage(String),
    #[error("undecided: {0}")]
    Undecided(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Language(_) => 3,
            CliError::Undecided(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ocbv", version, about = "Open Call-by-Value rewriting laboratory")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

/// Calculi accepted by `eval`: the term calculi plus the sequent calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalCalc {
    Plot,
    Fire,
    Vsub,
    Vsubk,
    Shuf,
    Vseq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    /// The leftmost-outermost redex of the calculus' evaluation order.
    Det,
}

/// Source and target languages for `translate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lang {
    /// Terms without explicit substitutions.
    Pure,
    Vsub,
    Vsubk,
    Vseq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Relation {
    /// Structural equivalence of terms.
    Struct,
    /// Structural equivalence of commands.
    Structseq,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a term (or a command, for vseq) and print the result and step counts.
    Eval {
        #[arg(long, value_enum)]
        calc: EvalCalc,
        #[arg(long, value_enum, default_value_t = StrategyArg::Det)]
        strategy: StrategyArg,
        /// Maximum number of steps.
        #[arg(long, env = "OCBV_FUEL", default_value_t = ocbv_engines::DEFAULT_FUEL,
              value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        fuel: usize,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        /// Term text, or "-" to read standard input.
        term: String,
    },
    /// Translate between the term, kernel and sequent languages.
    Translate {
        #[arg(long, value_enum)]
        from: Lang,
        #[arg(long, value_enum)]
        to: Lang,
        term: String,
    },
    /// Decide whether two inputs are structurally equivalent.
    Equiv {
        #[arg(long, value_enum, default_value_t = Relation::Struct)]
        rel: Relation,
        left: String,
        right: String,
    },
    /// Evaluate a pure term in every calculus and check the count relations.
    Compare {
        #[arg(long, env = "OCBV_FUEL", default_value_t = ocbv_engines::DEFAULT_FUEL,
              value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        fuel: usize,
        term: String,
    },
    /// Run a named property, or "all" of them, and report failures.
    Check {
        property: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest input size; defaults to 25 for random and 7 for exhaustive runs.
        #[arg(long)]
        max_size: Option<usize>,
        /// Check every input up to the size bound instead of random ones.
        #[arg(long)]
        exhaustive: bool,
    },
    /// List the registered properties.
    Properties,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out::new(cli.format);
    match run(cli.command, &mut out) {
        Ok(code) => {
            out.flush();
            ExitCode::from(code)
        }
        Err(e) => {
            out.flush();
            eprintln!("ocbv: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command, out: &mut Out) -> Result<u8, CliError> {
    match command {
        Command::Eval { calc, strategy: StrategyArg::Det, fuel, trace, term } => {
            run_eval(&read_input(&term)?, calc, fuel, trace, out)?;
            Ok(0)
        }
        Command::Translate { from, to, term } => {
            run_translate(&read_input(&term)?, from, to, out)?;
            Ok(0)
        }
        Command::Equiv { rel, left, right } => run_equiv(&read_input(&left)?, &read_input(&right)?, rel, out),
        Command::Compare { fuel, term } => {
            let t = input::pure_term(&read_input(&term)?)?;
            Ok(if compare::run(&t, fuel, out) { 0 } else { 1 })
        }
        Command::Check { property, trials, seed, max_size, exhaustive } => {
            run_check(&property, trials, seed, max_size, exhaustive, out)
        }
        Command::Properties => {
            for id in PropertyId::ALL {
                out.field(id.name(), id.summary());
            }
            Ok(0)
        }
    }
}

fn run_eval(text: &str, calc: EvalCalc, fuel: usize, trace: bool, out: &mut Out) -> Result<(), CliError> {
    let calc = match calc {
        EvalCalc::Plot => Calculus::Plot,
        EvalCalc::Fire => Calculus::Fire,
        EvalCalc::Vsub => Calculus::Vsub,
        EvalCalc::Vsubk => Calculus::Vsubk,
        EvalCalc::Shuf => Calculus::Shuf,
        EvalCalc::Vseq => {
            let c = input::command(text)?;
            print_seq_derivation(&evaluate_seq(&c, SeqStrategy::Deterministic, fuel), trace, out);
            return Ok(());
        }
    };
    let t = input::term(text)?;
    let d = evaluate(&t, calc, Strategy::Deterministic, fuel).map_err(|e| CliError::Language(e.to_string()))?;
    print_derivation(&d, trace, out);
    Ok(())
}

fn print_derivation(d: &Derivation, trace: bool, out: &mut Out) {
    out.field("calc", d.calc);
    out.field("start", &d.start);
    if trace {
        for (i, line) in d.trace_lines().iter().enumerate() {
            out.indexed("step", i + 1, line);
        }
    }
    print_status(d.status, d.len(), out);
    out.field("result", d.end());
    out.field("counts", d.counts.render(d.calc.rules()));
}

fn print_seq_derivation(d: &SeqDerivation, trace: bool, out: &mut Out) {
    out.field("calc", "vseq");
    out.field("start", &d.start);
    if trace {
        for (i, line) in d.trace_lines().iter().enumerate() {
            out.indexed("step", i + 1, line);
        }
    }
    print_status(d.status, d.len(), out);
    out.field("result", d.end());
    out.field("counts", format!("lambar={} mutilde={}", d.counts.lambar, d.counts.mutilde));
}

fn print_status(status: Status, steps: usize, out: &mut Out) {
    match status {
        Status::Normal => out.field("status", "normal"),
        Status::Fuelled => out.field("status", "FUEL-EXHAUSTED"),
    }
    out.field("steps", steps);
}

fn run_translate(text: &str, from: Lang, to: Lang, out: &mut Out) -> Result<(), CliError> {
    let source: Input = match from {
        Lang::Pure => Input::Term(input::pure_term(text)?),
        Lang::Vsub => Input::Term(input::term(text)?),
        Lang::Vsubk => Input::Term(input::kernel_term(text)?),
        Lang::Vseq => Input::Command(input::command_only(text)?),
    };
    let result = match (source, to) {
        (Input::Term(t), Lang::Pure) => unfold(&t).to_string(),
        (Input::Term(t), Lang::Vsub) => t.to_string(),
        (Input::Term(t), Lang::Vsubk) => to_kernel(&t).to_string(),
        (Input::Term(t), Lang::Vseq) => {
            let k = if t.is_kernel() { t } else { to_kernel(&t) };
            to_sequent(&k).map_err(|e| CliError::Language(e.to_string()))?.to_string()
        }
        (Input::Command(c), Lang::Vseq) => c.to_string(),
        (Input::Command(c), Lang::Vsub | Lang::Vsubk) => from_sequent(&c).to_string(),
        (Input::Command(c), Lang::Pure) => unfold(&from_sequent(&c)).to_string(),
    };
    out.field("result", result);
    Ok(())
}

fn run_equiv(left: &str, right: &str, rel: Relation, out: &mut Out) -> Result<u8, CliError> {
    let equivalent = match rel {
        Relation::Struct => struct_equiv_fast(&input::term(left)?, &input::term(right)?),
        Relation::Structseq => seq_struct_equiv(&input::command(left)?, &input::command(right)?)
            .map_err(|e| CliError::Undecided(e.to_string()))?,
    };
    out.field("result", if equivalent { "EQUIV" } else { "NOT-EQUIV" });
    Ok(if equivalent { 0 } else { 1 })
}

fn run_check(
    property: &str,
    trials: usize,
    seed: u64,
    max_size: Option<usize>,
    exhaustive: bool,
    out: &mut Out,
) -> Result<u8, CliError> {
    let ids: Vec<PropertyId> = if property == "all" {
        PropertyId::ALL.to_vec()
    } else {
        vec![property.parse().map_err(|e: ocbv_harness::HarnessError| CliError::Usage(e.to_string()))?]
    };
    let mut failed = false;
    for id in ids {
        let report = if exhaustive {
            check_exhaustive(id, max_size.unwrap_or(7))
        } else {
            let cfg = GenConfig::default().with_seed(seed).with_max_size(max_size.unwrap_or(25));
            check_property(id, &cfg, trials).map_err(|e| CliError::Usage(e.to_string()))?
        };
        failed |= !report.passed();
        print_report(&report, out);
    }
    Ok(u8::from(failed))
}

fn print_report(r: &Report, out: &mut Out) {
    match out.format() {
        Format::Records => {
            for line in r.records() {
                out.raw(line);
            }
        }
        Format::Text => {
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            out.raw(format!(
                "{verdict} {} trials={} skipped={} failures={} ({} ms)",
                r.property,
                r.trials,
                r.skipped,
                r.failures.len(),
                r.elapsed.as_millis()
            ));
            for (k, v) in &r.notes {
                out.raw(format!("  note {k}={v}"));
            }
            for f in r.failures.iter().take(3) {
                let origin = match (f.seed, f.index) {
                    (Some(s), _) => format!("seed {s}"),
                    (None, Some(i)) => format!("input #{i}"),
                    (None, None) => "coverage".to_string(),
                };
                out.raw(format!("  {origin}: {}", f.counterexample));
                out.raw(format!("    expected: {}", f.expected));
                out.raw(format!("    actual:   {}", f.actual));
            }
        }
    }
}

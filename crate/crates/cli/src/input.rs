//! Reading and classifying command-line inputs.

use std::io::Read;

use ocbv_sequent::{parse_command, Command};
use ocbv_term::{parse_term, Term};
use ocbv_translate::{to_kernel, to_sequent};

use crate::CliError;

pub enum Input {
    Term(Term),
    Command(Command),
}

/// Returns `arg`, or all of standard input when `arg` is "-".
pub fn read_input(arg: &str) -> Result<String, CliError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
    Ok(s)
}

pub fn term(text: &str) -> Result<Term, CliError> {
    parse_term(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn pure_term(text: &str) -> Result<Term, CliError> {
    let t = term(text)?;
    if t.has_es() {
        return Err(CliError::Language("expected a term without explicit substitutions".into()));
    }
    Ok(t)
}

pub fn kernel_term(text: &str) -> Result<Term, CliError> {
    let t = term(text)?;
    if !t.is_kernel() {
        return Err(CliError::Language("expected a kernel term: application arguments must be values".into()));
    }
    Ok(t)
}

pub fn command_only(text: &str) -> Result<Command, CliError> {
    parse_command(text).map_err(|e| CliError::Parse(e.to_string()))
}

/// A command given directly (text starting with `<`), or the sequent image
/// of a term, passing through the kernel translation when needed.
pub fn command(text: &str) -> Result<Command, CliError> {
    if text.trim_start().starts_with('<') {
        return command_only(text);
    }
    let t = term(text)?;
    let k = if t.is_kernel() { t } else { to_kernel(&t) };
    to_sequent(&k).map_err(|e| CliError::Language(e.to_string()))
}

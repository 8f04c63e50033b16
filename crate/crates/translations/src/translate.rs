//! The kernel translation into administrative normal form, the translation
//! of kernel terms into sequent commands, and its converse.

use ocbv_sequent::{append_cmd, Command, Environment, SeqValue};
use ocbv_term::{Name, Term};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("term is not in the kernel language: the argument `{arg}` of an application is not a value")]
pub struct NotKernel {
    pub arg: String,
}

/// Largest `n` such that `#n` occurs in `t` as a variable or binder.
fn max_reserved(t: &Term) -> Option<u64> {
    fn parse(x: &str) -> Option<u64> {
        x.strip_prefix('#').and_then(|n| n.parse().ok())
    }
    match t {
        Term::Var(x) => parse(x),
        Term::Abs(x, b) => parse(x).max(max_reserved(b)),
        Term::App(f, a) => max_reserved(f).max(max_reserved(a)),
        Term::Es(b, x, d) => parse(x).max(max_reserved(b)).max(max_reserved(d)),
    }
}

/// `(t u)k = (tk z)[z:=uk]` with `z` fresh, homomorphic elsewhere.
///
/// The fresh variables are named `#0`, `#1`, … starting above any such name
/// already present in `t`.
pub fn to_kernel(t: &Term) -> Term {
    let mut next = max_reserved(t).map_or(0, |n| n + 1);
    kernel(t, &mut next)
}

fn kernel(t: &Term, next: &mut u64) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Abs(x, b) => Term::Abs(x.clone(), Box::new(kernel(b, next))),
        Term::App(f, a) => {
            let z = Name::from(format!("#{next}"));
            *next += 1;
            let f = kernel(f, next);
            let a = kernel(a, next);
            Term::Es(Box::new(Term::App(Box::new(f), Box::new(Term::Var(z.clone())))), z, Box::new(a))
        }
        Term::Es(b, x, d) => Term::Es(Box::new(kernel(b, next)), x.clone(), Box::new(kernel(d, next))),
    }
}

/// Translates a kernel term into a command:
///
/// ```text
/// v       ↦ <v̄ | ε>
/// t v     ↦ t̄ @ (v̄·ε)
/// t[x:=u] ↦ ū @ μ̃x.t̄
/// ```
pub fn to_sequent(t: &Term) -> Result<Command, NotKernel> {
    if t.is_value() {
        return Ok(Command::new(to_sequent_value(t)?, Environment::Eps));
    }
    match t {
        Term::App(f, a) => {
            if !a.is_value() {
                return Err(NotKernel { arg: a.to_string() });
            }
            let e = Environment::Stack(to_sequent_value(a)?, Box::new(Environment::Eps));
            Ok(append_cmd(&to_sequent(f)?, &e))
        }
        Term::Es(b, x, d) => {
            let e = Environment::MuTilde(x.clone(), Box::new(to_sequent(b)?));
            Ok(append_cmd(&to_sequent(d)?, &e))
        }
        Term::Var(_) | Term::Abs(..) => unreachable!("values are handled above"),
    }
}

/// Translates a kernel value. Non-values are rejected.
pub fn to_sequent_value(v: &Term) -> Result<SeqValue, NotKernel> {
    match v {
        Term::Var(x) => Ok(SeqValue::SVar(x.clone())),
        Term::Abs(x, b) => Ok(SeqValue::SAbs(x.clone(), Box::new(to_sequent(b)?))),
        _ => Err(NotKernel { arg: v.to_string() }),
    }
}

/// The converse translation. Environments denote evaluation contexts:
/// `ε` is the hole, `v·e` is `e<[·] v>` and `μ̃x.c` is `c[x:=[·]]`.
pub fn from_sequent(c: &Command) -> Term {
    from_env(&c.env, from_value(&c.value))
}

fn from_value(v: &SeqValue) -> Term {
    match v {
        SeqValue::SVar(x) => Term::Var(x.clone()),
        SeqValue::SAbs(x, c) => Term::Abs(x.clone(), Box::new(from_sequent(c))),
    }
}

fn from_env(e: &Environment, filler: Term) -> Term {
    match e {
        Environment::Eps => filler,
        Environment::Stack(v, rest) => from_env(rest, Term::app(filler, from_value(v))),
        Environment::MuTilde(x, c) => Term::Es(Box::new(from_sequent(c)), x.clone(), Box::new(filler)),
    }
}

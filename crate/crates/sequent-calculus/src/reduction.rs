//! The βvμ (λ̄) and μ̃ rules under command evaluation contexts.
//!
//! Command evaluation contexts are `C ::= [] | D<μ̃x.C>` with
//! `D ::= <v|[]> | D<v·[]>`, so a position is the number of μ̃-binders
//! crossed at the tail of successive environment stacks.

use std::fmt;

use ocbv_engines::Status;
use thiserror::Error;

use crate::syntax::{append_env, subst_cmd, Command, Environment, SeqValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqRule {
    /// `<λx.c | v·e> → <v | (μ̃x.c)@e>`.
    LamBar,
    /// `<v | μ̃x.c> → c{x:=v}`.
    MuTilde,
}

impl SeqRule {
    pub fn label(self) -> &'static str {
        match self {
            SeqRule::LamBar => "lambar",
            SeqRule::MuTilde => "mutilde",
        }
    }
}

impl fmt::Display for SeqRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A redex: the number of μ̃ tails crossed to reach it, and its rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeqSite {
    pub depth: usize,
    pub rule: SeqRule,
}

impl fmt::Display for SeqSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ [mu^{}]", self.rule, self.depth)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("stale redex site {0}")]
pub struct StaleSeqSite(pub String);

/// Per-rule step counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SeqCounts {
    pub lambar: usize,
    pub mutilde: usize,
}

impl SeqCounts {
    pub fn add(&mut self, r: SeqRule) {
        match r {
            SeqRule::LamBar => self.lambar += 1,
            SeqRule::MuTilde => self.mutilde += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.lambar + self.mutilde
    }
}

/// The rule applicable at the root of `c`, if any.
pub fn root_rule(c: &Command) -> Option<SeqRule> {
    match (&c.value, &c.env) {
        (_, Environment::MuTilde(..)) => Some(SeqRule::MuTilde),
        (SeqValue::SAbs(..), Environment::Stack(..)) => Some(SeqRule::LamBar),
        _ => None,
    }
}

/// The command under the μ̃ at the tail of the environment of `c`, if any.
pub fn tail_command(c: &Command) -> Option<&Command> {
    let mut e = &c.env;
    loop {
        match e {
            Environment::Eps => return None,
            Environment::MuTilde(_, c) => return Some(c),
            Environment::Stack(_, rest) => e = rest,
        }
    }
}

/// All redex sites, outermost first.
pub fn enumerate_seq_redexes(c: &Command) -> Vec<SeqSite> {
    let mut out = Vec::new();
    let mut cur = Some(c);
    let mut depth = 0;
    while let Some(c) = cur {
        if let Some(rule) = root_rule(c) {
            out.push(SeqSite { depth, rule });
        }
        cur = tail_command(c);
        depth += 1;
    }
    out
}

/// Contracts the root redex of `c` with `rule`.
pub fn contract_seq(c: &Command, rule: SeqRule) -> Option<Command> {
    match (rule, &c.value, &c.env) {
        (SeqRule::LamBar, SeqValue::SAbs(x, body), Environment::Stack(v, e)) => {
            let mu = Environment::MuTilde(x.clone(), body.clone());
            Some(Command { value: v.clone(), env: append_env(&mu, e) })
        }
        (SeqRule::MuTilde, v, Environment::MuTilde(x, body)) => Some(subst_cmd(body, x, v)),
        _ => None,
    }
}

/// Contracts the redex at `site`.
pub fn step_seq(c: &Command, site: &SeqSite) -> Result<Command, StaleSeqSite> {
    let out = rebuild(c, site.depth, &|c| contract_seq(c, site.rule)).ok_or_else(|| StaleSeqSite(site.to_string()))?;
    debug_assert!(crate::syntax::validate(&out), "single-output invariant broken by {site}");
    Ok(out)
}

/// Rebuilds `c` with the command at μ̃-depth `depth` replaced by `f(old)`.
pub fn rebuild(c: &Command, depth: usize, f: &dyn Fn(&Command) -> Option<Command>) -> Option<Command> {
    if depth == 0 {
        return f(c);
    }
    fn env(e: &Environment, depth: usize, f: &dyn Fn(&Command) -> Option<Command>) -> Option<Environment> {
        match e {
            Environment::Eps => None,
            Environment::MuTilde(x, c) => Some(Environment::MuTilde(x.clone(), Box::new(rebuild(c, depth - 1, f)?))),
            Environment::Stack(v, rest) => Some(Environment::Stack(v.clone(), Box::new(env(rest, depth, f)?))),
        }
    }
    Some(Command { value: c.value.clone(), env: env(&c.env, depth, f)? })
}

/// One step of a sequent derivation.
#[derive(Debug, Clone)]
pub struct SeqStep {
    pub site: SeqSite,
    pub cmd: Command,
}

/// A finite sequence of λ̄ and μ̃ steps.
#[derive(Debug, Clone)]
pub struct SeqDerivation {
    pub start: Command,
    pub steps: Vec<SeqStep>,
    pub counts: SeqCounts,
    pub status: Status,
}

impl SeqDerivation {
    pub fn empty(start: Command) -> Self {
        SeqDerivation { start, steps: Vec::new(), counts: SeqCounts::default(), status: Status::Normal }
    }

    pub fn end(&self) -> &Command {
        self.steps.last().map(|s| &s.cmd).unwrap_or(&self.start)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, site: SeqSite, cmd: Command) {
        self.counts.add(site.rule);
        self.steps.push(SeqStep { site, cmd });
    }

    /// Trace lines of the form `<label> @ <path> : <command>`.
    pub fn trace_lines(&self) -> Vec<String> {
        self.steps.iter().map(|s| format!("{} @ [mu^{}] : {}", s.site.rule, s.site.depth, s.cmd)).collect()
    }
}

/// How to pick the next redex.
pub enum SeqStrategy<'a> {
    Deterministic,
    Choose(&'a mut dyn FnMut(&Command, &[SeqSite]) -> usize),
}

/// Evaluates `c` for at most `fuel` steps.
pub fn evaluate_seq(c: &Command, strategy: SeqStrategy<'_>, fuel: usize) -> SeqDerivation {
    evaluate_seq_rules(c, &[SeqRule::LamBar, SeqRule::MuTilde], strategy, fuel)
}

/// Like [`evaluate_seq`], restricted to the rules in `allowed`.
pub fn evaluate_seq_rules(
    c: &Command,
    allowed: &[SeqRule],
    mut strategy: SeqStrategy<'_>,
    fuel: usize,
) -> SeqDerivation {
    let mut d = SeqDerivation::empty(c.clone());
    let mut cur = c.clone();
    loop {
        let mut sites = enumerate_seq_redexes(&cur);
        sites.retain(|s| allowed.contains(&s.rule));
        if sites.is_empty() {
            d.status = Status::Normal;
            return d;
        }
        if d.len() >= fuel {
            d.status = Status::Fuelled;
            return d;
        }
        let i = match &mut strategy {
            SeqStrategy::Deterministic => 0,
            SeqStrategy::Choose(f) => f(&cur, &sites).min(sites.len() - 1),
        };
        let site = sites[i];
        cur = step_seq(&cur, &site).expect("enumerated sites are contractible");
        d.push(site, cur.clone());
    }
}

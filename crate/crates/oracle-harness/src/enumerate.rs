//! Exhaustive enumeration of small terms and commands, one representative
//! per alpha-equivalence class.
//!
//! A binder is named after the number of binders enclosing it, so distinct
//! binders in scope always have distinct names and each variable occurrence
//! chooses among the binders in scope and a fixed pool of free names.

use std::collections::HashMap;

use ocbv_sequent::{Command, Environment, SeqValue};
use ocbv_term::{Name, Term};

use crate::gen::Language;

/// Free names used by the enumerators.
pub const ENUM_FREE: [&str; 2] = ["a", "b"];

fn binder(depth: usize) -> Name {
    const NAMES: [&str; 8] = ["x", "y", "z", "u", "v", "w", "p", "q"];
    match NAMES.get(depth) {
        Some(n) => Name::from(*n),
        None => Name::from(format!("x{depth}")),
    }
}

fn vars(depth: usize) -> impl Iterator<Item = Name> {
    ENUM_FREE.iter().map(|s| Name::from(*s)).chain((0..depth).map(binder))
}

struct TermEnum {
    lang: Language,
    memo: HashMap<(usize, usize), Vec<Term>>,
}

impl TermEnum {
    fn of_size(&mut self, n: usize, depth: usize) -> Vec<Term> {
        if let Some(v) = self.memo.get(&(n, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.extend(vars(depth).map(Term::Var));
        } else {
            let x = binder(depth);
            for b in self.of_size(n - 1, depth + 1) {
                out.push(Term::Abs(x.clone(), Box::new(b)));
            }
            for k in 1..n - 1 {
                let args = match self.lang {
                    Language::Vsubk => self.values(k, depth),
                    _ => self.of_size(k, depth),
                };
                let funs = self.of_size(n - 1 - k, depth);
                for f in &funs {
                    for a in &args {
                        out.push(Term::App(Box::new(f.clone()), Box::new(a.clone())));
                    }
                }
                if matches!(self.lang, Language::WithEs | Language::Vsubk) {
                    let defs = self.of_size(k, depth);
                    for b in self.of_size(n - 1 - k, depth + 1) {
                        for d in &defs {
                            out.push(Term::Es(Box::new(b.clone()), x.clone(), Box::new(d.clone())));
                        }
                    }
                }
            }
        }
        self.memo.insert((n, depth), out.clone());
        out
    }

    fn values(&mut self, n: usize, depth: usize) -> Vec<Term> {
        if n == 1 {
            return vars(depth).map(Term::Var).collect();
        }
        let x = binder(depth);
        self.of_size(n - 1, depth + 1).into_iter().map(|b| Term::Abs(x.clone(), Box::new(b))).collect()
    }
}

/// One representative per alpha-equivalence class of the language, with
/// `1 ..= max_size` nodes, smallest first. [`Language::Sequent`] is treated
/// as [`Language::Vsubk`].
pub fn enumerate_terms(max_size: usize, lang: Language) -> Vec<Term> {
    let lang = if lang == Language::Sequent { Language::Vsubk } else { lang };
    let mut e = TermEnum { lang, memo: HashMap::new() };
    (1..=max_size).flat_map(|n| e.of_size(n, 0)).collect()
}

#[derive(Default)]
struct CmdEnum {
    cmds: HashMap<(usize, usize), Vec<Command>>,
    envs: HashMap<(usize, usize), Vec<Environment>>,
}

impl CmdEnum {
    fn values(&mut self, n: usize, depth: usize) -> Vec<SeqValue> {
        if n == 1 {
            return vars(depth).map(SeqValue::SVar).collect();
        }
        let x = binder(depth);
        self.commands(n - 1, depth + 1).into_iter().map(|c| SeqValue::SAbs(x.clone(), Box::new(c))).collect()
    }

    fn envs(&mut self, n: usize, depth: usize) -> Vec<Environment> {
        if let Some(v) = self.envs.get(&(n, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.push(Environment::Eps);
        } else {
            let x = binder(depth);
            for c in self.commands(n - 1, depth + 1) {
                out.push(Environment::MuTilde(x.clone(), Box::new(c)));
            }
            for k in 1..n - 1 {
                let vs = self.values(k, depth);
                for e in self.envs(n - 1 - k, depth) {
                    for v in &vs {
                        out.push(Environment::Stack(v.clone(), Box::new(e.clone())));
                    }
                }
            }
        }
        self.envs.insert((n, depth), out.clone());
        out
    }

    fn commands(&mut self, n: usize, depth: usize) -> Vec<Command> {
        if n < 3 {
            return Vec::new();
        }
        if let Some(v) = self.cmds.get(&(n, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for k in 1..n - 1 {
            let vs = self.values(k, depth);
            for e in self.envs(n - 1 - k, depth) {
                for v in &vs {
                    out.push(Command::new(v.clone(), e.clone()));
                }
            }
        }
        self.cmds.insert((n, depth), out.clone());
        out
    }
}

/// All well-formed commands with at most `max_size` nodes, one per
/// alpha-equivalence class, smallest first.
pub fn enumerate_commands(max_size: usize) -> Vec<Command> {
    let mut e = CmdEnum::default();
    (3..=max_size).flat_map(|n| e.commands(n, 0)).collect()
}

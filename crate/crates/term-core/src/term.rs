//! The term type, free variables, fresh names and capture-avoiding substitution.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Variable and binder names. Cheap to clone and shareable across threads.
pub type Name = Arc<str>;

/// A λ-term possibly containing explicit substitutions.
///
/// `Es(body, x, def)` is the explicit substitution `body[x:=def]`; it binds
/// `x` in `body` only. The type deliberately does not implement `PartialEq`:
/// terms are compared with [`crate::alpha_eq`], never by raw binder names.
#[derive(Clone, Debug)]
pub enum Term {
    Var(Name),
    Abs(Name, Box<Term>),
    App(Box<Term>, Box<Term>),
    Es(Box<Term>, Name, Box<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(Name::from(x))
    }

    pub fn abs(x: &str, body: Term) -> Term {
        Term::Abs(Name::from(x), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn es(body: Term, x: &str, def: Term) -> Term {
        Term::Es(Box::new(body), Name::from(x), Box::new(def))
    }

    /// Node count: every constructor counts one plus its children.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Es(b, _, d) => 1 + b.size() + d.size(),
        }
    }

    /// Variables and abstractions are values.
    pub fn is_value(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Abs(..))
    }

    /// True iff some explicit substitution occurs anywhere in the term.
    pub fn has_es(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Abs(_, b) => b.has_es(),
            Term::App(f, a) => f.has_es() || a.has_es(),
            Term::Es(..) => true,
        }
    }

    /// Membership in the kernel sublanguage: every application argument is a value.
    pub fn is_kernel(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Abs(_, b) => b.is_kernel(),
            Term::App(f, a) => a.is_value() && f.is_kernel() && a.is_kernel(),
            Term::Es(b, _, d) => b.is_kernel() && d.is_kernel(),
        }
    }

    /// Number of nodes of each constructor, in the order Var, Abs, App, Es.
    pub fn constructor_counts(&self) -> [usize; 4] {
        let mut out = [0; 4];
        fn go(t: &Term, out: &mut [usize; 4]) {
            match t {
                Term::Var(_) => out[0] += 1,
                Term::Abs(_, b) => {
                    out[1] += 1;
                    go(b, out);
                }
                Term::App(f, a) => {
                    out[2] += 1;
                    go(f, out);
                    go(a, out);
                }
                Term::Es(b, _, d) => {
                    out[3] += 1;
                    go(b, out);
                    go(d, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print_term(self))
    }
}

static FRESH: AtomicU64 = AtomicU64::new(0);

/// Returns a name of the form `stem#n` that no parser-produced name and no
/// earlier call can equal. The stem is `base` with any `#` suffix removed.
pub fn fresh(base: &str) -> Name {
    let stem = base.split('#').next().unwrap_or("");
    let stem = if stem.is_empty() { "k" } else { stem };
    let n = FRESH.fetch_add(1, Ordering::Relaxed);
    Name::from(format!("{stem}#{n}"))
}

/// The set of free variables.
pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    collect_free(t, &mut bound, &mut out);
    out
}

fn collect_free<'a>(t: &'a Term, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var(x) => {
            if !bound.iter().any(|b| *b == &**x) {
                out.insert(x.clone());
            }
        }
        Term::Abs(x, b) => {
            bound.push(x);
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Es(b, x, d) => {
            collect_free(d, bound, out);
            bound.push(x);
            collect_free(b, bound, out);
            bound.pop();
        }
    }
}

/// True iff `x` occurs free in `t`.
pub fn occurs_free(t: &Term, x: &str) -> bool {
    match t {
        Term::Var(y) => &**y == x,
        Term::Abs(y, b) => &**y != x && occurs_free(b, x),
        Term::App(f, a) => occurs_free(f, x) || occurs_free(a, x),
        Term::Es(b, y, d) => occurs_free(d, x) || (&**y != x && occurs_free(b, x)),
    }
}

/// Capture-avoiding substitution `t{x:=u}`. Binders of `t` that would
/// capture a free variable of `u` are renamed to fresh names.
pub fn substitute(t: &Term, x: &str, u: &Term) -> Term {
    let fvu = free_vars(u);
    subst(t, x, u, &fvu)
}

/// Renames the free occurrences of `x` in `t` to `y`, which must be fresh.
pub fn rename(t: &Term, x: &str, y: &Name) -> Term {
    let mut fv = BTreeSet::new();
    fv.insert(y.clone());
    subst(t, x, &Term::Var(y.clone()), &fv)
}

fn subst(t: &Term, x: &str, u: &Term, fvu: &BTreeSet<Name>) -> Term {
    match t {
        Term::Var(y) => {
            if &**y == x {
                u.clone()
            } else {
                t.clone()
            }
        }
        Term::Abs(y, b) => {
            let (y, b) = under_binder(y, b, x, u, fvu);
            Term::Abs(y, Box::new(b))
        }
        Term::App(f, a) => Term::App(Box::new(subst(f, x, u, fvu)), Box::new(subst(a, x, u, fvu))),
        Term::Es(b, y, d) => {
            let d = subst(d, x, u, fvu);
            let (y, b) = under_binder(y, b, x, u, fvu);
            Term::Es(Box::new(b), y, Box::new(d))
        }
    }
}

fn under_binder(y: &Name, body: &Term, x: &str, u: &Term, fvu: &BTreeSet<Name>) -> (Name, Term) {
    if &**y == x || !occurs_free(body, x) {
        return (y.clone(), body.clone());
    }
    if fvu.contains(y) {
        let y2 = fresh(y);
        let renamed = rename(body, y, &y2);
        let b = subst(&renamed, x, u, fvu);
        (y2, b)
    } else {
        (y.clone(), subst(body, x, u, fvu))
    }
}

//! Syntactic classes: fireballs and inert terms, unfolding, clean terms and
//! harmless terms.

use thiserror::Error;

use crate::term::{occurs_free, substitute, Name, Term};

/// Classification of an ES-free term with respect to fireballs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FireClass {
    AbsFireball,
    Inert,
    NotFireball,
}

/// Raised when a classifier that is only defined on pure terms meets an
/// explicit substitution.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("term contains an explicit substitution")]
pub struct ContainsEs;

/// Classifies a pure term: abstractions are fireballs, `x f1 .. fn` with every
/// `fk` a fireball is inert, anything else is not a fireball.
pub fn classify_fire(t: &Term) -> Result<FireClass, ContainsEs> {
    if t.has_es() {
        return Err(ContainsEs);
    }
    Ok(match t {
        Term::Abs(..) => FireClass::AbsFireball,
        _ if is_inert(t) => FireClass::Inert,
        _ => FireClass::NotFireball,
    })
}

/// Inert terms: `i ::= x | i f`. ES nodes make a term non-inert.
pub fn is_inert(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::App(f, a) => is_inert(f) && is_fireball(a),
        _ => false,
    }
}

/// Fireballs: abstractions and inert terms.
pub fn is_fireball(t: &Term) -> bool {
    matches!(t, Term::Abs(..)) || is_inert(t)
}

/// Executes every explicit substitution as a meta-level substitution.
pub fn unfold(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Abs(x, b) => Term::Abs(x.clone(), Box::new(unfold(b))),
        Term::App(f, a) => Term::app(unfold(f), unfold(a)),
        Term::Es(b, x, d) => substitute(&unfold(b), x, &unfold(d)),
    }
}

/// A clean term `body[x1:=i1]..[xn:=in]`: `bindings[0]` is the innermost.
#[derive(Debug, Clone)]
pub struct CleanDecomposition {
    pub body: Term,
    pub bindings: Vec<(Name, Term)>,
}

impl CleanDecomposition {
    /// Rebuilds the term, wrapping the body innermost binding first.
    pub fn reassemble(&self) -> Term {
        let mut t = self.body.clone();
        for (x, i) in &self.bindings {
            t = Term::Es(Box::new(t), x.clone(), Box::new(i.clone()));
        }
        t
    }

    /// The body with the bindings substituted innermost first.
    pub fn unfolded(&self) -> Term {
        let mut t = self.body.clone();
        for (x, i) in &self.bindings {
            t = substitute(&t, x, i);
        }
        t
    }
}

/// Splits a clean term into its body and inert bindings, or returns `None`
/// when the term is not clean.
pub fn clean_decompose(t: &Term) -> Option<CleanDecomposition> {
    let mut bindings = Vec::new();
    let mut cur = t;
    let mut outer_first = Vec::new();
    while let Term::Es(b, x, d) = cur {
        if d.has_es() || !is_inert(d) {
            return None;
        }
        outer_first.push((x.clone(), (**d).clone()));
        cur = b;
    }
    if cur.has_es() {
        return None;
    }
    while let Some(p) = outer_first.pop() {
        bindings.push(p);
    }
    Some(CleanDecomposition { body: cur.clone(), bindings })
}

/// Splits `L<core>` into its substitution context, listed innermost first,
/// and the core that is not an explicit substitution.
pub fn strip_subst_ctx(t: &Term) -> (Vec<(&Name, &Term)>, &Term) {
    let mut outer_first = Vec::new();
    let mut cur = t;
    while let Term::Es(b, x, d) = cur {
        outer_first.push((x, &**d));
        cur = b;
    }
    outer_first.reverse();
    (outer_first, cur)
}

/// Harmlessness, checked on subterms out of abstractions: for every
/// `u[x:=L<v>]` with `v` a value, `u` has the shape `s v'` with `v'` a value
/// and `x` not free in `s`.
pub fn is_harmless(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Abs(..) => true,
        Term::App(f, a) => is_harmless(f) && is_harmless(a),
        Term::Es(b, x, d) => {
            if strip_subst_ctx(d).1.is_value() {
                match &**b {
                    Term::App(s, v) if v.is_value() && !occurs_free(s, x) => {}
                    _ => return false,
                }
            }
            is_harmless(b) && is_harmless(d)
        }
    }
}

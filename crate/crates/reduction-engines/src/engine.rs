//! Redex enumeration, contraction and fuelled evaluation.

use ocbv_term::{fresh, is_inert, occurs_free, rename, replace_at, strip_subst_ctx, substitute, Dir, Path, Term};
use thiserror::Error;

use crate::rules::{Calculus, Counts, RedexSite, Rule};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("term is outside the language of {calc}: {reason}")]
    Language { calc: Calculus, reason: &'static str },
    #[error("stale redex site {0}")]
    StaleSite(String),
}

/// Checks that `t` belongs to the term language of `calc`.
pub fn check_language(t: &Term, calc: Calculus) -> Result<(), EngineError> {
    match calc {
        Calculus::Plot | Calculus::Fire | Calculus::Shuf if t.has_es() => {
            Err(EngineError::Language { calc, reason: "explicit substitutions are not part of the syntax" })
        }
        Calculus::Vsubk if !t.is_kernel() => {
            Err(EngineError::Language { calc, reason: "an application argument is not a value" })
        }
        _ => Ok(()),
    }
}

/// All redexes of `t` in `calc`, in leftmost-outermost order.
pub fn enumerate_redexes(t: &Term, calc: Calculus) -> Result<Vec<RedexSite>, EngineError> {
    check_language(t, calc)?;
    Ok(redexes(t, calc))
}

/// Redex enumeration without the language check.
pub fn redexes(t: &Term, calc: Calculus) -> Vec<RedexSite> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    match calc {
        Calculus::Plot | Calculus::Fire => walk_weak(t, calc, &mut path, &mut out),
        Calculus::Vsub | Calculus::Vsubk => walk_vsub(t, &mut path, &mut out),
        Calculus::Shuf => walk_shuf(t, &mut path, &mut out),
    }
    out
}

fn push(out: &mut Vec<RedexSite>, path: &[Dir], rule: Rule) {
    out.push(RedexSite { path: Path(path.to_vec()), rule });
}

fn walk_weak(t: &Term, calc: Calculus, path: &mut Vec<Dir>, out: &mut Vec<RedexSite>) {
    if let Term::App(f, a) = t {
        if let Some(rule) = weak_rule(f, a, calc) {
            push(out, path, rule);
        }
        path.push(Dir::FunOf);
        walk_weak(f, calc, path, out);
        path.pop();
        path.push(Dir::ArgOf);
        walk_weak(a, calc, path, out);
        path.pop();
    }
}

fn weak_rule(f: &Term, a: &Term, calc: Calculus) -> Option<Rule> {
    if !matches!(f, Term::Abs(..)) {
        return None;
    }
    match (calc, a) {
        (_, Term::Abs(..)) => Some(Rule::BetaAbs),
        (Calculus::Plot, Term::Var(_)) => Some(Rule::BetaVar),
        (Calculus::Fire, _) if is_inert(a) => Some(Rule::BetaInert),
        _ => None,
    }
}

fn walk_vsub(t: &Term, path: &mut Vec<Dir>, out: &mut Vec<RedexSite>) {
    match t {
        Term::App(f, a) => {
            if matches!(strip_subst_ctx(f).1, Term::Abs(..)) {
                push(out, path, Rule::Mult);
            }
            path.push(Dir::FunOf);
            walk_vsub(f, path, out);
            path.pop();
            path.push(Dir::ArgOf);
            walk_vsub(a, path, out);
            path.pop();
        }
        Term::Es(b, _, d) => {
            match strip_subst_ctx(d).1 {
                Term::Abs(..) => push(out, path, Rule::ExpAbs),
                Term::Var(_) => push(out, path, Rule::ExpVar),
                _ => {}
            }
            path.push(Dir::BodyOfEs);
            walk_vsub(b, path, out);
            path.pop();
            path.push(Dir::DefOfEs);
            walk_vsub(d, path, out);
            path.pop();
        }
        _ => {}
    }
}

fn walk_shuf(t: &Term, path: &mut Vec<Dir>, out: &mut Vec<RedexSite>) {
    if let Term::App(f, a) = t {
        if let Some(rule) = shuf_rule(f, a) {
            push(out, path, rule);
        }
        path.push(Dir::FunOf);
        if let Term::Abs(_, body) = &**f {
            path.push(Dir::BodyOfAbs);
            walk_shuf(body, path, out);
            path.pop();
        } else {
            walk_shuf(f, path, out);
        }
        path.pop();
        path.push(Dir::ArgOf);
        walk_shuf(a, path, out);
        path.pop();
    }
}

fn shuf_rule(f: &Term, a: &Term) -> Option<Rule> {
    match f {
        Term::Abs(..) if a.is_value() => Some(Rule::BetaShuf),
        Term::App(g, _) if matches!(**g, Term::Abs(..)) => Some(Rule::SigmaL),
        _ if f.is_value() => match a {
            Term::App(g, _) if matches!(**g, Term::Abs(..)) => Some(Rule::SigmaR),
            _ => None,
        },
        _ => None,
    }
}

/// Whether `path` is a legal context position for `rule`.
fn legal_path(rule: Rule, path: &[Dir]) -> bool {
    match rule {
        Rule::BetaAbs | Rule::BetaVar | Rule::BetaInert => path.iter().all(|d| matches!(d, Dir::FunOf | Dir::ArgOf)),
        Rule::Mult | Rule::ExpAbs | Rule::ExpVar => path.iter().all(|d| *d != Dir::BodyOfAbs),
        Rule::BetaShuf | Rule::SigmaL | Rule::SigmaR => path.iter().enumerate().all(|(i, d)| match d {
            Dir::FunOf | Dir::ArgOf => true,
            Dir::BodyOfAbs => i > 0 && path[i - 1] == Dir::FunOf,
            _ => false,
        }),
    }
}

/// Contracts the redex at `site`.
pub fn step(t: &Term, site: &RedexSite) -> Result<Term, EngineError> {
    let stale = || EngineError::StaleSite(site.to_string());
    if !legal_path(site.rule, &site.path.0) {
        return Err(stale());
    }
    replace_at(t, &site.path.0, &mut |r| contract(r, site.rule)).ok_or_else(stale)
}

/// Applies `rule` at the root of `t`, or returns `None` if `t` is not a redex
/// for it.
pub fn contract(t: &Term, rule: Rule) -> Option<Term> {
    match rule {
        Rule::BetaAbs | Rule::BetaVar | Rule::BetaInert | Rule::BetaShuf => {
            let Term::App(f, a) = t else { return None };
            let Term::Abs(x, body) = &**f else { return None };
            let ok = match rule {
                Rule::BetaAbs => matches!(**a, Term::Abs(..)),
                Rule::BetaVar => matches!(**a, Term::Var(_)),
                Rule::BetaInert => is_inert(a),
                _ => a.is_value(),
            };
            ok.then(|| substitute(body, x, a))
        }
        Rule::Mult => {
            let Term::App(f, u) = t else { return None };
            matches!(strip_subst_ctx(f).1, Term::Abs(..)).then(|| mult(f, u))
        }
        Rule::ExpAbs | Rule::ExpVar => {
            let Term::Es(body, x, d) = t else { return None };
            let ok = match strip_subst_ctx(d).1 {
                Term::Abs(..) => rule == Rule::ExpAbs,
                Term::Var(_) => rule == Rule::ExpVar,
                _ => false,
            };
            ok.then(|| exp(body, x, d))
        }
        Rule::SigmaL => {
            let Term::App(f, s) = t else { return None };
            let Term::App(g, u) = &**f else { return None };
            let Term::Abs(x, body) = &**g else { return None };
            let (x, body) = avoid(x, body, s);
            Some(Term::app(Term::Abs(x, Box::new(Term::app(body, (**s).clone()))), (**u).clone()))
        }
        Rule::SigmaR => {
            let Term::App(v, a) = t else { return None };
            if !v.is_value() {
                return None;
            }
            let Term::App(g, u) = &**a else { return None };
            let Term::Abs(x, body) = &**g else { return None };
            let (x, body) = avoid(x, body, v);
            Some(Term::app(Term::Abs(x, Box::new(Term::app((**v).clone(), body))), (**u).clone()))
        }
    }
}

/// Renames binder `x` of `body` if it occurs free in `other`.
fn avoid(x: &ocbv_term::Name, body: &Term, other: &Term) -> (ocbv_term::Name, Term) {
    if occurs_free(other, x) {
        let y = fresh(x);
        let b = rename(body, x, &y);
        (y, b)
    } else {
        (x.clone(), body.clone())
    }
}

/// `L<λx.t> u → L<t[x:=u]>`, renaming binders of `L` that occur free in `u`.
fn mult(f: &Term, u: &Term) -> Term {
    match f {
        Term::Abs(x, body) => Term::Es(body.clone(), x.clone(), Box::new(u.clone())),
        Term::Es(b, y, d) => {
            let (y, b) = avoid(y, b, u);
            Term::Es(Box::new(mult(&b, u)), y, d.clone())
        }
        _ => unreachable!("mult called on a non-abstraction"),
    }
}

/// `t[x:=L<v>] → L<t{x:=v}>`, renaming binders of `L` that occur free in `t`.
fn exp(t: &Term, x: &str, d: &Term) -> Term {
    match d {
        Term::Es(b, y, e) => {
            let (y, b) = avoid(y, b, t);
            Term::Es(Box::new(exp(t, x, &b)), y, e.clone())
        }
        v => substitute(t, x, v),
    }
}

/// Outcome of a fuelled evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The last term has no redex among the allowed rules.
    Normal,
    /// Fuel ran out while redexes remained.
    Fuelled,
}

/// One step of a derivation: the contracted site and the resulting term.
#[derive(Debug, Clone)]
pub struct Step {
    pub site: RedexSite,
    pub term: Term,
}

/// A finite reduction sequence with per-rule counters.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub calc: Calculus,
    pub start: Term,
    pub steps: Vec<Step>,
    pub counts: Counts,
    pub status: Status,
}

impl Derivation {
    pub fn empty(calc: Calculus, start: Term) -> Self {
        Derivation { calc, start, steps: Vec::new(), counts: Counts::default(), status: Status::Normal }
    }

    /// The last term of the derivation.
    pub fn end(&self) -> &Term {
        self.steps.last().map(|s| &s.term).unwrap_or(&self.start)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, site: RedexSite, term: Term) {
        self.counts.add(site.rule);
        self.steps.push(Step { site, term });
    }

    /// Removes and returns the last step.
    pub fn pop(&mut self) -> Option<Step> {
        let s = self.steps.pop()?;
        self.counts.remove(s.site.rule);
        Some(s)
    }

    /// Appends the steps of `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: Derivation) {
        for s in other.steps {
            self.push(s.site, s.term);
        }
        self.status = other.status;
    }

    /// Trace lines of the form `<label> @ <path> : <term>`.
    pub fn trace_lines(&self) -> Vec<String> {
        self.steps.iter().map(|s| format!("{} @ {} : {}", s.site.rule, s.site.path, s.term)).collect()
    }
}

/// How to pick the next redex among the enumerated ones.
pub enum Strategy<'a> {
    /// Always the first site in enumeration order.
    Deterministic,
    /// A caller-provided chooser returning an index into the site list.
    Choose(&'a mut dyn FnMut(&Term, &[RedexSite]) -> usize),
}

/// Evaluates `t` in `calc` for at most `fuel` steps.
pub fn evaluate(t: &Term, calc: Calculus, strategy: Strategy<'_>, fuel: usize) -> Result<Derivation, EngineError> {
    evaluate_rules(t, calc, calc.rules(), strategy, fuel)
}

/// Like [`evaluate`], but only contracts redexes whose rule is in `allowed`.
pub fn evaluate_rules(
    t: &Term,
    calc: Calculus,
    allowed: &[Rule],
    mut strategy: Strategy<'_>,
    fuel: usize,
) -> Result<Derivation, EngineError> {
    check_language(t, calc)?;
    let mut d = Derivation::empty(calc, t.clone());
    let mut cur = t.clone();
    loop {
        let mut sites = redexes(&cur, calc);
        sites.retain(|s| allowed.contains(&s.rule));
        if sites.is_empty() {
            d.status = Status::Normal;
            return Ok(d);
        }
        if d.len() >= fuel {
            d.status = Status::Fuelled;
            return Ok(d);
        }
        let i = match &mut strategy {
            Strategy::Deterministic => 0,
            Strategy::Choose(f) => f(&cur, &sites).min(sites.len() - 1),
        };
        let site = sites.swap_remove(i);
        cur = step(&cur, &site)?;
        d.push(site, cur.clone());
    }
}

/// The multiplicative normal form, which exists and is unique.
pub fn m_normal_form(t: &Term) -> Term {
    restricted_normal_form(t, &[Rule::Mult])
}

/// The exponential normal form, which exists and is unique.
pub fn e_normal_form(t: &Term) -> Term {
    restricted_normal_form(t, &[Rule::ExpAbs, Rule::ExpVar])
}

fn restricted_normal_form(t: &Term, rules: &[Rule]) -> Term {
    // Each multiplicative step removes an application and each exponential
    // step removes an explicit substitution, so the size bounds the length.
    let d = evaluate_rules(t, Calculus::Vsub, rules, Strategy::Deterministic, t.size() + 1)
        .expect("every term belongs to the vsub language");
    debug_assert_eq!(d.status, Status::Normal);
    d.end().clone()
}

/// Per-rule totals of a derivation.
pub fn step_counts(d: &Derivation) -> Counts {
    let mut c = Counts::default();
    for s in &d.steps {
        c.add(s.site.rule);
    }
    c
}

//! The four axioms of ≡ on terms with explicit substitutions and the
//! breadth-first decision procedure built on them.
//!
//! ```text
//! t[y:=s][x:=u] ≡com t[x:=u][y:=s]    if y ∉ fv(u) and x ∉ fv(s)
//! t s[x:=u]     ≡@r  (t s)[x:=u]      if x ∉ fv(t)
//! t[x:=u] s     ≡@l  (t s)[x:=u]      if x ∉ fv(s)
//! t[x:=u[y:=s]] ≡[·] t[x:=u][y:=s]    if y ∉ fv(t)
//! ```
//!
//! Side conditions that only constrain the name of a binder are met by
//! renaming that binder. The remaining ones (x ∉ fv(s) for com, and the
//! right-to-left readings of @l, @r and [·]) restrict applicability.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use ocbv_term::{alpha_key, fresh, occurs_free, rename, replace_at, Dir, Name, Path, Term};
use thiserror::Error;

/// Default bound on the number of terms explored by [`struct_equiv`].
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivAxiom {
    Com,
    AppLeft,
    AppRight,
    EsAssoc,
    SeqMuMu,
}

impl EquivAxiom {
    pub fn label(self) -> &'static str {
        match self {
            EquivAxiom::Com => "com",
            EquivAxiom::AppLeft => "@l",
            EquivAxiom::AppRight => "@r",
            EquivAxiom::EsAssoc => "[.]",
            EquivAxiom::SeqMuMu => "mumu",
        }
    }
}

impl fmt::Display for EquivAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EquivError {
    #[error("equivalence class exceeds the cap of {cap} members")]
    CapExceeded { cap: usize },
}

/// One axiom application: where, which axiom, and the result.
#[derive(Debug, Clone)]
pub struct Neighbor {
    pub path: Path,
    pub axiom: EquivAxiom,
    pub term: Term,
}

/// Every term obtained from `t` by one axiom application, in either
/// direction, at a position outside all abstractions.
pub fn equiv_neighbors(t: &Term) -> Vec<Term> {
    tagged_equiv_neighbors(t).into_iter().map(|n| n.term).collect()
}

/// Like [`equiv_neighbors`], recording the position and axiom of each move.
pub fn tagged_equiv_neighbors(t: &Term) -> Vec<Neighbor> {
    let mut positions = Vec::new();
    collect_positions(t, &mut Vec::new(), &mut positions);
    let mut out = Vec::new();
    for path in positions {
        let sub = ocbv_term::subterm_at(t, &path).expect("collected position exists");
        for (axiom, local) in root_rewrites(sub) {
            let mut local = Some(local);
            let term = replace_at(t, &path, &mut |_| local.take()).expect("collected position exists");
            out.push(Neighbor { path: Path(path.clone()), axiom, term });
        }
    }
    out
}

fn collect_positions(t: &Term, path: &mut Vec<Dir>, out: &mut Vec<Vec<Dir>>) {
    match t {
        Term::App(f, a) => {
            out.push(path.clone());
            for (d, s) in [(Dir::FunOf, f), (Dir::ArgOf, a)] {
                path.push(d);
                collect_positions(s, path, out);
                path.pop();
            }
        }
        Term::Es(b, _, d) => {
            out.push(path.clone());
            for (dir, s) in [(Dir::BodyOfEs, b), (Dir::DefOfEs, d)] {
                path.push(dir);
                collect_positions(s, path, out);
                path.pop();
            }
        }
        Term::Var(_) | Term::Abs(..) => {}
    }
}

fn es(b: Term, x: Name, d: Term) -> Term {
    Term::Es(Box::new(b), x, Box::new(d))
}

/// Renames binder `x` of `body` to a fresh name when `capture` holds.
fn freshen(x: &Name, body: &Term, capture: bool) -> (Name, Term) {
    if capture {
        let y = fresh(x);
        let b = rename(body, x, &y);
        (y, b)
    } else {
        (x.clone(), body.clone())
    }
}

/// All axiom instances whose left- or right-hand side is `t` itself.
pub fn root_rewrites(t: &Term) -> Vec<(EquivAxiom, Term)> {
    let mut out = Vec::new();
    match t {
        Term::App(f, a) => {
            // t[x:=u] s  →  (t s)[x:=u]
            if let Term::Es(b, x, u) = &**f {
                let (x, b) = freshen(x, b, occurs_free(a, x));
                out.push((EquivAxiom::AppLeft, es(Term::App(Box::new(b), a.clone()), x, (**u).clone())));
            }
            // t s[x:=u]  →  (t s)[x:=u]
            if let Term::Es(s, x, u) = &**a {
                let (x, s) = freshen(x, s, occurs_free(f, x));
                out.push((EquivAxiom::AppRight, es(Term::App(f.clone(), Box::new(s)), x, (**u).clone())));
            }
        }
        Term::Es(body, x, u) => {
            if let Term::App(l, r) = &**body {
                // (t s)[x:=u]  →  t[x:=u] s
                if !occurs_free(r, x) {
                    out.push((
                        EquivAxiom::AppLeft,
                        Term::App(Box::new(es((**l).clone(), x.clone(), (**u).clone())), r.clone()),
                    ));
                }
                // (t s)[x:=u]  →  t s[x:=u]
                if !occurs_free(l, x) {
                    out.push((
                        EquivAxiom::AppRight,
                        Term::App(l.clone(), Box::new(es((**r).clone(), x.clone(), (**u).clone()))),
                    ));
                }
            }
            if let Term::Es(t0, y, s) = &**body {
                // t[y:=s][x:=u]  →  t[x:=u][y:=s]
                if !occurs_free(s, x) {
                    let (y, t0) = freshen(y, t0, y == x || occurs_free(u, y));
                    out.push((EquivAxiom::Com, es(es(t0, x.clone(), (**u).clone()), y, (**s).clone())));
                }
                // t[y:=s][x:=u]  →  t[y:=s[x:=u]]
                if y == x || !occurs_free(t0, x) {
                    out.push((
                        EquivAxiom::EsAssoc,
                        es((**t0).clone(), y.clone(), es((**s).clone(), x.clone(), (**u).clone())),
                    ));
                }
            }
            // t[x:=u[y:=s]]  →  t[x:=u][y:=s]
            if let Term::Es(u0, y, s) = &**u {
                let (y, u0) = freshen(y, u0, y != x && occurs_free(body, y));
                out.push((EquivAxiom::EsAssoc, es(es((**body).clone(), x.clone(), u0), y, (**s).clone())));
            }
        }
        Term::Var(_) | Term::Abs(..) => {}
    }
    out
}

/// The ≡-class of `t`, one representative per alpha-class, in BFS order.
pub fn equiv_class(t: &Term, cap: usize) -> Result<Vec<Term>, EquivError> {
    let mut found = Vec::new();
    bfs(t, cap, |_| false, &mut found)?;
    Ok(found)
}

/// Decides `t ≡ u` by exploring the class of `t` with the default cap.
pub fn struct_equiv(t: &Term, u: &Term) -> Result<bool, EquivError> {
    struct_equiv_with_cap(t, u, DEFAULT_CAP)
}

/// Decides `t ≡ u`, failing if the class of `t` has more than `cap` members.
pub fn struct_equiv_with_cap(t: &Term, u: &Term, cap: usize) -> Result<bool, EquivError> {
    if t.constructor_counts() != u.constructor_counts() {
        return Ok(false);
    }
    let target = alpha_key(u);
    bfs(t, cap, |k| *k == target, &mut Vec::new())
}

/// Explores the class of `t`; returns true as soon as `stop` accepts a key.
fn bfs(t: &Term, cap: usize, stop: impl Fn(&String) -> bool, found: &mut Vec<Term>) -> Result<bool, EquivError> {
    let counts = t.constructor_counts();
    let start = alpha_key(t);
    if stop(&start) {
        return Ok(true);
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(cur) = queue.pop_front() {
        for next in equiv_neighbors(&cur) {
            assert_eq!(next.constructor_counts(), counts, "an axiom changed the constructor multiset");
            let key = alpha_key(&next);
            if stop(&key) {
                return Ok(true);
            }
            if seen.insert(key) {
                if seen.len() > cap {
                    return Err(EquivError::CapExceeded { cap });
                }
                queue.push_back(next);
            }
        }
        found.push(cur);
    }
    Ok(false)
}

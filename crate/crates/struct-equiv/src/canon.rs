//! A canonical form for ≡.
//!
//! Every explicit substitution outside abstractions is floated to the top
//! level under a unique binder, leaving a skeleton without ES and a set of
//! bindings whose definitions may refer to each other. Two terms are
//! structurally equivalent iff their skeletons and binding sets agree up to a
//! renaming of the floated binders. The renaming is fixed by numbering the
//! bindings in breadth-first order of first reference from the skeleton.
//! Bindings that the skeleton cannot reach are numbered by trying every
//! ordering among equally keyed candidates and keeping the least encoding.

use ocbv_term::{Name, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Text(String),
    Ref(usize),
}

#[derive(Clone, Copy)]
enum Bound {
    Lam(usize),
    Floated(usize),
}

#[derive(Default)]
struct Flattener<'a> {
    /// Tokens of each floated definition, indexed by binding id.
    bindings: Vec<Vec<Tok>>,
    scope: Vec<(&'a str, Bound)>,
    lam_depth: usize,
}

fn text(out: &mut Vec<Tok>, s: &str) {
    if let Some(Tok::Text(prev)) = out.last_mut() {
        prev.push_str(s);
    } else {
        out.push(Tok::Text(s.to_string()));
    }
}

impl<'a> Flattener<'a> {
    fn var(&self, x: &str, out: &mut Vec<Tok>) {
        match self.scope.iter().rev().find(|(b, _)| *b == x) {
            Some((_, Bound::Lam(l))) => text(out, &format!("%{l}")),
            Some((_, Bound::Floated(id))) => out.push(Tok::Ref(*id)),
            None => text(out, &format!("${x}")),
        }
    }

    fn lam_bind(&mut self, x: &'a Name) {
        self.scope.push((x, Bound::Lam(self.lam_depth)));
        self.lam_depth += 1;
    }

    fn lam_unbind(&mut self) {
        self.scope.pop();
        self.lam_depth -= 1;
    }

    /// A position outside all abstractions: ES are floated.
    fn outer(&mut self, t: &'a Term, out: &mut Vec<Tok>) {
        match t {
            Term::Var(x) => self.var(x, out),
            Term::Abs(..) => self.inner(t, out),
            Term::App(f, a) => {
                text(out, "(");
                self.outer(f, out);
                text(out, " ");
                self.outer(a, out);
                text(out, ")");
            }
            Term::Es(b, x, d) => {
                let mut def = Vec::new();
                self.outer(d, &mut def);
                let id = self.bindings.len();
                self.bindings.push(def);
                self.scope.push((x, Bound::Floated(id)));
                self.outer(b, out);
                self.scope.pop();
            }
        }
    }

    /// A position under an abstraction: compared up to alpha only.
    fn inner(&mut self, t: &'a Term, out: &mut Vec<Tok>) {
        match t {
            Term::Var(x) => self.var(x, out),
            Term::Abs(x, b) => {
                text(out, "\\(");
                self.lam_bind(x);
                self.inner(b, out);
                self.lam_unbind();
                text(out, ")");
            }
            Term::App(f, a) => {
                text(out, "(");
                self.inner(f, out);
                text(out, " ");
                self.inner(a, out);
                text(out, ")");
            }
            Term::Es(b, x, d) => {
                text(out, "{");
                self.inner(d, out);
                text(out, "|");
                self.lam_bind(x);
                self.inner(b, out);
                self.lam_unbind();
                text(out, "}");
            }
        }
    }
}

struct Numbering {
    order: Vec<usize>,
    number: Vec<Option<usize>>,
}

impl Numbering {
    fn assign(&mut self, id: usize) -> bool {
        if self.number[id].is_some() {
            return false;
        }
        self.number[id] = Some(self.order.len());
        self.order.push(id);
        true
    }

    /// Numbers, breadth-first, every binding reachable from `roots` tokens.
    fn close(&mut self, from: usize, bindings: &[Vec<Tok>]) {
        let mut i = from;
        while i < self.order.len() {
            for tok in &bindings[self.order[i]] {
                if let Tok::Ref(r) = tok {
                    self.assign(*r);
                }
            }
            i += 1;
        }
    }
}

fn render(toks: &[Tok], number: &[Option<usize>], out: &mut String) {
    for tok in toks {
        match tok {
            Tok::Text(s) => out.push_str(s),
            Tok::Ref(id) => match number[*id] {
                Some(n) => {
                    out.push('@');
                    out.push_str(&n.to_string());
                }
                None => out.push('?'),
            },
        }
    }
}

/// A string equal for two terms iff they are structurally equivalent.
pub fn canonical_key(t: &Term) -> String {
    let mut fl = Flattener::default();
    let mut skeleton = Vec::new();
    fl.outer(t, &mut skeleton);
    let bindings = fl.bindings;

    let mut num = Numbering { order: Vec::new(), number: vec![None; bindings.len()] };
    for tok in &skeleton {
        if let Tok::Ref(r) = tok {
            num.assign(*r);
        }
    }
    num.close(0, &bindings);

    let mut head = String::new();
    render(&skeleton, &num.number, &mut head);
    number_dead(&bindings, num, &head)
}

/// Numbers the unreachable bindings and renders the full encoding, taking
/// the least encoding over all ways of breaking ties between candidates.
fn number_dead(bindings: &[Vec<Tok>], num: Numbering, head: &str) -> String {
    let remaining: Vec<usize> = (0..bindings.len()).filter(|&i| num.number[i].is_none()).collect();
    if remaining.is_empty() {
        let mut out = head.to_string();
        for &id in &num.order {
            out.push(';');
            render(&bindings[id], &num.number, &mut out);
        }
        return out;
    }
    let referenced: Vec<bool> = {
        let mut r = vec![false; bindings.len()];
        for &i in &remaining {
            for tok in &bindings[i] {
                if let Tok::Ref(j) = tok {
                    r[*j] = true;
                }
            }
        }
        r
    };
    let roots: Vec<(String, usize)> = remaining
        .iter()
        .filter(|&&i| !referenced[i])
        .map(|&i| {
            let mut k = String::new();
            render(&bindings[i], &num.number, &mut k);
            (k, i)
        })
        .collect();
    let best = roots.iter().map(|(k, _)| k).min().expect("a finite acyclic set has a root").clone();
    let tied: Vec<usize> = roots.iter().filter(|(k, _)| *k == best).map(|(_, i)| *i).collect();
    // A tied root that refers to no unnumbered binding is interchangeable
    // with the other tied roots, so a single choice suffices.
    let choices = if best.contains('?') { tied } else { vec![tied[0]] };
    choices
        .into_iter()
        .map(|root| {
            let mut n = Numbering { order: num.order.clone(), number: num.number.clone() };
            let from = n.order.len();
            n.assign(root);
            n.close(from, bindings);
            number_dead(bindings, n, head)
        })
        .min()
        .expect("at least one choice")
}

/// Decides `t ≡ u` through [`canonical_key`].
pub fn struct_equiv_fast(t: &Term, u: &Term) -> bool {
    t.constructor_counts() == u.constructor_counts() && canonical_key(t) == canonical_key(u)
}

//! Positions inside terms.

use std::fmt;

use crate::term::Term;

/// One step from a node to one of its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// Function part of an application.
    FunOf,
    /// Argument of an application.
    ArgOf,
    /// Body of an explicit substitution.
    BodyOfEs,
    /// Definition of an explicit substitution.
    DefOfEs,
    /// Body of an abstraction.
    BodyOfAbs,
}

impl Dir {
    pub fn as_str(self) -> &'static str {
        match self {
            Dir::FunOf => "FunOf",
            Dir::ArgOf => "ArgOf",
            Dir::BodyOfEs => "BodyOfES",
            Dir::DefOfEs => "DefOfES",
            Dir::BodyOfAbs => "BodyOfAbs",
        }
    }
}

/// A sequence of child selectors from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<Dir>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, d: Dir) -> Path {
        let mut v = self.0.clone();
        v.push(d);
        Path(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Dir>> for Path {
    fn from(v: Vec<Dir>) -> Self {
        Path(v)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(d.as_str())?;
        }
        f.write_str("]")
    }
}

/// The subterm at `path`, if the path fits the term's shape.
pub fn subterm_at<'a>(t: &'a Term, path: &[Dir]) -> Option<&'a Term> {
    let mut cur = t;
    for d in path {
        cur = match (cur, d) {
            (Term::App(f, _), Dir::FunOf) => f,
            (Term::App(_, a), Dir::ArgOf) => a,
            (Term::Es(b, _, _), Dir::BodyOfEs) => b,
            (Term::Es(_, _, e), Dir::DefOfEs) => e,
            (Term::Abs(_, b), Dir::BodyOfAbs) => b,
            _ => return None,
        };
    }
    Some(cur)
}

/// Rebuilds `t` with the subterm at `path` replaced by `f(old)`.
pub fn replace_at(t: &Term, path: &[Dir], f: &mut dyn FnMut(&Term) -> Option<Term>) -> Option<Term> {
    let Some((d, rest)) = path.split_first() else {
        return f(t);
    };
    Some(match (t, d) {
        (Term::App(g, a), Dir::FunOf) => Term::App(Box::new(replace_at(g, rest, f)?), a.clone()),
        (Term::App(g, a), Dir::ArgOf) => Term::App(g.clone(), Box::new(replace_at(a, rest, f)?)),
        (Term::Es(b, x, e), Dir::BodyOfEs) => Term::Es(Box::new(replace_at(b, rest, f)?), x.clone(), e.clone()),
        (Term::Es(b, x, e), Dir::DefOfEs) => Term::Es(b.clone(), x.clone(), Box::new(replace_at(e, rest, f)?)),
        (Term::Abs(x, b), Dir::BodyOfAbs) => Term::Abs(x.clone(), Box::new(replace_at(b, rest, f)?)),
        _ => return None,
    })
}

//! Alpha-equivalence and canonical alpha fingerprints.

use crate::term::Term;

/// True iff `t` and `u` are equal up to consistent renaming of bound names.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    let mut env = Vec::new();
    aeq(t, u, &mut env)
}

fn aeq<'a>(t: &'a Term, u: &'a Term, env: &mut Vec<(&'a str, &'a str)>) -> bool {
    match (t, u) {
        (Term::Var(x), Term::Var(y)) => {
            for (p, q) in env.iter().rev() {
                if *p == &**x || *q == &**y {
                    return *p == &**x && *q == &**y;
                }
            }
            x == y
        }
        (Term::Abs(x, b), Term::Abs(y, c)) => {
            env.push((x, y));
            let r = aeq(b, c, env);
            env.pop();
            r
        }
        (Term::App(f, a), Term::App(g, b)) => aeq(f, g, env) && aeq(a, b, env),
        (Term::Es(b, x, d), Term::Es(c, y, e)) => {
            if !aeq(d, e, env) {
                return false;
            }
            env.push((x, y));
            let r = aeq(b, c, env);
            env.pop();
            r
        }
        _ => false,
    }
}

/// A string that is equal for two terms iff they are alpha-equivalent.
///
/// Bound occurrences are printed as de Bruijn levels and free ones by name,
/// so the key can serve as a hash-set entry for terms modulo alpha.
pub fn alpha_key(t: &Term) -> String {
    let mut out = String::new();
    let mut scope = Vec::new();
    key_into(t, &mut scope, &mut out);
    out
}

pub(crate) fn key_into<'a>(t: &'a Term, scope: &mut Vec<&'a str>, out: &mut String) {
    use std::fmt::Write;
    match t {
        Term::Var(x) => match scope.iter().rposition(|b| *b == &**x) {
            Some(level) => {
                let _ = write!(out, "%{level}");
            }
            None => {
                out.push('$');
                out.push_str(x);
            }
        },
        Term::Abs(x, b) => {
            out.push_str("\\(");
            scope.push(x);
            key_into(b, scope, out);
            scope.pop();
            out.push(')');
        }
        Term::App(f, a) => {
            out.push('(');
            key_into(f, scope, out);
            out.push(' ');
            key_into(a, scope, out);
            out.push(')');
        }
        Term::Es(b, x, d) => {
            out.push('{');
            key_into(d, scope, out);
            out.push('|');
            scope.push(x);
            key_into(b, scope, out);
            scope.pop();
            out.push('}');
        }
    }
}

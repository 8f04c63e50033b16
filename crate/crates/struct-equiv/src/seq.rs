//! The structural equivalence ≅ on commands, generated by swapping two
//! consecutive μ̃-bindings:
//!
//! ```text
//! D<μ̃x.D'<μ̃y.c>> ≅ D'<μ̃y.D<μ̃x.c>>    if x ∉ fv(D') and y ∉ fv(D)
//! ```
//!
//! where `D = <v | v1·…·vn·[]>`. The condition on `y` is met by renaming.

use std::collections::{HashSet, VecDeque};

use ocbv_sequent::{
    cmd_key, enumerate_seq_redexes, fv_value, rebuild, rename_cmd, tail_command, Command, Environment, SeqValue,
};
use ocbv_term::{fresh, Name};

use crate::axioms::{EquivError, DEFAULT_CAP};

/// The value and the stacked values of an environment context, and the
/// μ̃-binding at its tail, if any.
fn split(c: &Command) -> (Vec<&SeqValue>, Option<(&Name, &Command)>) {
    let mut vals = vec![&c.value];
    let mut e = &c.env;
    loop {
        match e {
            Environment::Eps => return (vals, None),
            Environment::MuTilde(x, body) => return (vals, Some((x, body))),
            Environment::Stack(v, rest) => {
                vals.push(v);
                e = rest;
            }
        }
    }
}

/// Rebuilds `<vals[0] | vals[1]·…·tail>`.
fn assemble(vals: &[&SeqValue], tail: Environment) -> Command {
    let env = vals[1..].iter().rev().fold(tail, |e, v| Environment::Stack((*v).clone(), Box::new(e)));
    Command { value: vals[0].clone(), env }
}

/// The swap at the root of `c`, if it applies.
pub fn root_swap(c: &Command) -> Option<Command> {
    let (d, (x, inner)) = match split(c) {
        (d, Some(b)) => (d, b),
        _ => return None,
    };
    let (d2, (y, body)) = match split(inner) {
        (d2, Some(b)) => (d2, b),
        _ => return None,
    };
    if d2.iter().any(|v| fv_value(v).contains(x)) {
        return None;
    }
    let captures = y == x || d.iter().any(|v| fv_value(v).contains(y));
    let (y, body) = if captures {
        let y2 = fresh(y);
        let b = rename_cmd(body, y, &y2);
        (y2, b)
    } else {
        (y.clone(), body.clone())
    };
    let moved = assemble(&d, Environment::MuTilde(x.clone(), Box::new(body)));
    Some(assemble(&d2, Environment::MuTilde(y, Box::new(moved))))
}

/// Every command obtained from `c` by one swap under a command evaluation
/// context.
pub fn seq_equiv_neighbors(c: &Command) -> Vec<Command> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = Some(c);
    while let Some(sub) = cur {
        if root_swap(sub).is_some() {
            out.push(rebuild(c, depth, &root_swap).expect("depth was reached"));
        }
        cur = tail_command(sub);
        depth += 1;
    }
    out
}

/// Decides `c ≅ c2` by breadth-first search with the default cap.
pub fn seq_struct_equiv(c: &Command, c2: &Command) -> Result<bool, EquivError> {
    seq_struct_equiv_with_cap(c, c2, DEFAULT_CAP)
}

pub fn seq_struct_equiv_with_cap(c: &Command, c2: &Command, cap: usize) -> Result<bool, EquivError> {
    if c.constructor_counts() != c2.constructor_counts() {
        return Ok(false);
    }
    let target = cmd_key(c2);
    let start = cmd_key(c);
    if start == target {
        return Ok(true);
    }
    let counts = c.constructor_counts();
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(cur) = queue.pop_front() {
        for next in seq_equiv_neighbors(&cur) {
            assert_eq!(next.constructor_counts(), counts, "a swap changed the constructor multiset");
            let key = cmd_key(&next);
            if key == target {
                return Ok(true);
            }
            if seen.insert(key) {
                if seen.len() > cap {
                    return Err(EquivError::CapExceeded { cap });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// True iff `c` has no redex for the given rules; used to compare normality
/// across ≅-classes.
pub fn seq_is_normal(c: &Command, rules: &[ocbv_sequent::SeqRule]) -> bool {
    enumerate_seq_redexes(c).iter().all(|s| !rules.contains(&s.rule))
}

//! One-step reducts, local confluence checks and exhaustive derivation
//! enumeration.

use std::collections::HashSet;

use ocbv_engines::{redexes, step, Calculus, Derivation, Rule, Status};
use ocbv_sequent::{cmd_key, enumerate_seq_redexes, step_seq, Command, SeqRule};
use ocbv_term::{alpha_key, Term};

/// The results of contracting each redex of `t` whose rule is in `rules`.
pub fn reducts(t: &Term, calc: Calculus, rules: &[Rule]) -> Vec<Term> {
    redexes(t, calc)
        .into_iter()
        .filter(|s| rules.contains(&s.rule))
        .map(|s| step(t, &s).expect("enumerated sites are contractible"))
        .collect()
}

/// The sequent analogue of [`reducts`].
pub fn seq_reducts(c: &Command, rules: &[SeqRule]) -> Vec<Command> {
    enumerate_seq_redexes(c)
        .into_iter()
        .filter(|s| rules.contains(&s.rule))
        .map(|s| step_seq(c, &s).expect("enumerated sites are contractible"))
        .collect()
}

/// A peak that does not close in one step on each side.
#[derive(Debug, Clone)]
pub struct OpenPeak<T> {
    pub left: T,
    pub right: T,
}

fn keys<T>(xs: &[T], key: &dyn Fn(&T) -> String) -> HashSet<String> {
    xs.iter().map(key).collect()
}

fn diamond<T: Clone>(
    succ: &dyn Fn(&T, bool) -> Vec<T>,
    key: &dyn Fn(&T) -> String,
    t: &T,
    commute: bool,
) -> Result<usize, Box<OpenPeak<T>>> {
    // With `commute`, left steps use the first relation and right steps the
    // second; each side must close with the other relation.
    let left = succ(t, true);
    let right = if commute { succ(t, false) } else { left.clone() };
    let mut peaks = 0;
    for (i, u1) in left.iter().enumerate() {
        let next1 = keys(&succ(u1, !commute), key);
        for (j, u2) in right.iter().enumerate() {
            if !commute && j <= i {
                continue;
            }
            peaks += 1;
            if !commute && key(u1) == key(u2) {
                continue;
            }
            let next2 = succ(u2, true);
            if !next2.iter().any(|w| next1.contains(&key(w))) {
                return Err(Box::new(OpenPeak { left: u1.clone(), right: u2.clone() }));
            }
        }
    }
    Ok(peaks)
}

/// Checks one-step strong confluence of the `rules`-restricted relation at
/// `t`: two distinct reducts have a common reduct, one step each. Returns
/// the number of peaks checked.
pub fn strongly_confluent_at(t: &Term, calc: Calculus, rules: &[Rule]) -> Result<usize, Box<OpenPeak<Term>>> {
    diamond(&|u, _| reducts(u, calc, rules), &|u| alpha_key(u), t, false)
}

/// Checks strong commutation at `t`: if `t →r1 u1` and `t →r2 u2` then
/// `u1 →r2 w` and `u2 →r1 w` for some `w`.
pub fn strongly_commute_at(t: &Term, calc: Calculus, r1: &[Rule], r2: &[Rule]) -> Result<usize, Box<OpenPeak<Term>>> {
    diamond(&|u, first| reducts(u, calc, if first { r1 } else { r2 }), &|u| alpha_key(u), t, true)
}

pub fn seq_strongly_confluent_at(c: &Command, rules: &[SeqRule]) -> Result<usize, Box<OpenPeak<Command>>> {
    diamond(&|u, _| seq_reducts(u, rules), &|u| cmd_key(u), c, false)
}

pub fn seq_strongly_commute_at(c: &Command, r1: &[SeqRule], r2: &[SeqRule]) -> Result<usize, Box<OpenPeak<Command>>> {
    diamond(&|u, first| seq_reducts(u, if first { r1 } else { r2 }), &|u| cmd_key(u), c, true)
}

/// Every maximal derivation from a term, as far as fuel and cap allow.
#[derive(Debug, Clone)]
pub struct MaximalDerivations {
    /// Derivations ending in a normal form (status `Normal`) or cut at the
    /// fuel (status `Fuelled`).
    pub derivations: Vec<Derivation>,
    /// Some derivation was cut at the fuel.
    pub truncated: bool,
    /// Enumeration stopped at the cap; the set is partial.
    pub capped: bool,
}

impl MaximalDerivations {
    pub fn normalizing(&self) -> impl Iterator<Item = &Derivation> {
        self.derivations.iter().filter(|d| d.status == Status::Normal)
    }
}

/// Depth-first enumeration of all derivations following every redex
/// choice, each cut at `fuel` steps, stopping after `cap` derivations.
pub fn all_maximal_derivations(t: &Term, calc: Calculus, fuel: usize, cap: usize) -> MaximalDerivations {
    all_maximal_derivations_rules(t, calc, calc.rules(), fuel, cap)
}

/// Like [`all_maximal_derivations`], for the relation restricted to `rules`.
pub fn all_maximal_derivations_rules(
    t: &Term,
    calc: Calculus,
    rules: &[Rule],
    fuel: usize,
    cap: usize,
) -> MaximalDerivations {
    let mut out = MaximalDerivations { derivations: Vec::new(), truncated: false, capped: false };
    let mut cur = Derivation::empty(calc, t.clone());
    explore(&mut cur, rules, fuel, cap, &mut out);
    out
}

fn explore(cur: &mut Derivation, rules: &[Rule], fuel: usize, cap: usize, out: &mut MaximalDerivations) {
    if out.capped {
        return;
    }
    if out.derivations.len() >= cap {
        out.capped = true;
        return;
    }
    let end = cur.end().clone();
    let sites: Vec<_> = redexes(&end, cur.calc).into_iter().filter(|s| rules.contains(&s.rule)).collect();
    if sites.is_empty() || cur.len() >= fuel {
        let mut d = cur.clone();
        d.status = if sites.is_empty() { Status::Normal } else { Status::Fuelled };
        out.truncated |= d.status == Status::Fuelled;
        out.derivations.push(d);
        return;
    }
    for s in sites {
        let next = step(&end, &s).expect("enumerated sites are contractible");
        cur.push(s, next);
        explore(cur, rules, fuel, cap, out);
        cur.pop();
    }
}

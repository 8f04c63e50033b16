//! Strong bisimulation checks and postponement of the structural
//! equivalences with respect to reduction.

use ocbv_engines::{redexes, step, Calculus, Derivation, EngineError, RedexSite, Rule};
use ocbv_sequent::{enumerate_seq_redexes, step_seq, Command, SeqRule, SeqSite};
use ocbv_term::Term;
use thiserror::Error;

use crate::axioms::EquivError;
use crate::canon::struct_equiv_fast;
use crate::seq::seq_struct_equiv;

/// Outcome of a one-step bisimulation check between two equivalent objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimReport<S> {
    /// Number of steps of the left object that were examined.
    pub checked: usize,
    /// For each examined step, the matching step of the right object.
    pub witnesses: Vec<(S, S)>,
    /// A step of the left object that the right object cannot match.
    pub counterexample: Option<S>,
}

impl<S> BisimReport<S> {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every vsub step `t → t'` whose rule is in `rules`, searches for a
/// step `u → u'` with a rule in `rules` and `t' ≡ u'`.
pub fn check_bisim_step(t: &Term, u: &Term, rules: &[Rule]) -> BisimReport<RedexSite> {
    let mut report = BisimReport { checked: 0, witnesses: Vec::new(), counterexample: None };
    let u_steps: Vec<(RedexSite, Term)> = redexes(u, Calculus::Vsub)
        .into_iter()
        .filter(|s| rules.contains(&s.rule))
        .map(|s| {
            let r = step(u, &s).expect("enumerated sites are contractible");
            (s, r)
        })
        .collect();
    for site in redexes(t, Calculus::Vsub).into_iter().filter(|s| rules.contains(&s.rule)) {
        report.checked += 1;
        let t2 = step(t, &site).expect("enumerated sites are contractible");
        match u_steps.iter().find(|(s, u2)| s.rule == site.rule && struct_equiv_fast(&t2, u2)) {
            Some((s, _)) => report.witnesses.push((site, s.clone())),
            None => {
                report.counterexample = Some(site);
                break;
            }
        }
    }
    report
}

/// The command analogue of [`check_bisim_step`], for ≅ and the sequent rules.
pub fn check_seq_bisim_step(c0: &Command, c1: &Command, rules: &[SeqRule]) -> Result<BisimReport<SeqSite>, EquivError> {
    let mut report = BisimReport { checked: 0, witnesses: Vec::new(), counterexample: None };
    let steps1: Vec<(SeqSite, Command)> = enumerate_seq_redexes(c1)
        .into_iter()
        .filter(|s| rules.contains(&s.rule))
        .map(|s| {
            let r = step_seq(c1, &s).expect("enumerated sites are contractible");
            (s, r)
        })
        .collect();
    for site in enumerate_seq_redexes(c0).into_iter().filter(|s| rules.contains(&s.rule)) {
        report.checked += 1;
        let c2 = step_seq(c0, &site).expect("enumerated sites are contractible");
        let mut hit = None;
        for (s, c3) in &steps1 {
            if s.rule == site.rule && seq_struct_equiv(&c2, c3)? {
                hit = Some(*s);
                break;
            }
        }
        match hit {
            Some(s) => report.witnesses.push((site, s)),
            None => {
                report.counterexample = Some(site);
                break;
            }
        }
    }
    Ok(report)
}

/// A move in a derivation that interleaves reduction and ≡.
#[derive(Debug, Clone)]
pub enum MixedStep {
    /// A vsub step at the given site of the current term.
    Reduce(RedexSite),
    /// Replacement of the current term by a structurally equivalent one.
    Equiv(Term),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PostponeError {
    #[error("move {index}: {source}")]
    Engine { index: usize, source: EngineError },
    #[error("move {index}: the new term is not structurally equivalent to the current one")]
    NotEquivalent { index: usize },
    #[error("move {index}: no matching step in the postponed derivation")]
    Unmatched { index: usize },
}

/// A pure derivation obtained by postponing every ≡ move.
#[derive(Debug, Clone)]
pub struct Postponed {
    /// The vsub derivation, with the same per-rule counts as the input.
    pub derivation: Derivation,
    /// The last term of the interleaved sequence, equivalent to
    /// `derivation.end()`.
    pub mixed_end: Term,
}

/// Replays `moves` from `start`, building a pure vsub derivation whose end
/// stays structurally equivalent to the current interleaved term.
pub fn postpone(start: &Term, moves: &[MixedStep]) -> Result<Postponed, PostponeError> {
    let mut d = Derivation::empty(Calculus::Vsub, start.clone());
    let mut cur = start.clone();
    for (index, m) in moves.iter().enumerate() {
        match m {
            MixedStep::Equiv(next) => {
                if !struct_equiv_fast(&cur, next) {
                    return Err(PostponeError::NotEquivalent { index });
                }
                cur = next.clone();
            }
            MixedStep::Reduce(site) => {
                cur = step(&cur, site).map_err(|source| PostponeError::Engine { index, source })?;
                let end = d.end().clone();
                let matched = redexes(&end, Calculus::Vsub).into_iter().filter(|s| s.rule == site.rule).find_map(|s| {
                    let r = step(&end, &s).expect("enumerated sites are contractible");
                    struct_equiv_fast(&r, &cur).then_some((s, r))
                });
                let (s, r) = matched.ok_or(PostponeError::Unmatched { index })?;
                d.push(s, r);
            }
        }
    }
    Ok(Postponed { derivation: d, mixed_end: cur })
}

//! Derivation-level simulations between the calculi.
//!
//! Each simulation builds the target derivation step by step. Whenever the
//! proof of the corresponding result goes through a structurally equivalent
//! term, the construction keeps that term as a shadow and transports every
//! step onto the actual target term by searching the target's redexes for a
//! step with the same rule whose result is equivalent to the shadow's. The
//! equivalence is a strong bisimulation, so the search succeeds whenever the
//! result holds, and the per-rule counts of the built derivation are exactly
//! those of the pure derivation that postponement would produce.

use ocbv_engines::{
    evaluate_rules, m_normal_form, redexes, step, Calculus, Derivation, EngineError, RedexSite, Rule, Status, Strategy,
};
use ocbv_equiv::struct_equiv_fast;
use ocbv_sequent::{cmd_alpha_eq, enumerate_seq_redexes, step_seq, SeqDerivation, SeqRule};
use ocbv_term::{
    alpha_eq, clean_decompose, fresh, is_fireball, is_harmless, rename, replace_at, subterm_at, unfold, Dir, Path, Term,
};
use thiserror::Error;

use crate::translate::{to_kernel, to_sequent, NotKernel};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SimulationError {
    #[error("input term is not clean: {0}")]
    NotClean(String),
    #[error("source derivation is over {found}, expected {expected}")]
    WrongCalculus { expected: Calculus, found: Calculus },
    #[error("site {site} is not a redex of {term}")]
    NoRedex { site: String, term: String },
    #[error("step {index}: no matching {what} step")]
    Unmatched { index: usize, what: String },
    #[error("relation check failed: {0}")]
    Relation(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    NotKernel(#[from] NotKernel),
}

/// The outcome of a term-level simulation.
#[derive(Debug, Clone)]
pub struct SimulationWitness {
    pub source: Derivation,
    pub target: Derivation,
    /// The term the target's end is related to (see `relation`).
    pub residue: Term,
    /// The relation that was verified between target end, residue and source
    /// end.
    pub relation: &'static str,
    /// Number of structural-equivalence repairs absorbed by transport.
    pub repairs: usize,
    /// A normalizing continuation of the target, when the source ends in a
    /// normal form and the simulation requires one.
    pub completion: Option<Derivation>,
}

impl SimulationWitness {
    /// Structured text: one `key=value` line per field.
    pub fn render(&self) -> String {
        let mut lines = vec![
            format!("source_calc={}", self.source.calc),
            format!("source_start={}", self.source.start),
            format!("source_end={}", self.source.end()),
            format!("source_counts={}", self.source.counts.render(&[])),
            format!("target_calc={}", self.target.calc),
            format!("target_start={}", self.target.start),
            format!("target_end={}", self.target.end()),
            format!("target_counts={}", self.target.counts.render(&[])),
            format!("residue={}", self.residue),
            format!("relation={}", self.relation),
            format!("repairs={}", self.repairs),
        ];
        if let Some(c) = &self.completion {
            lines.push(format!("completion_end={}", c.end()));
            lines.push(format!("completion_counts={}", c.counts.render(&[])));
        }
        lines.join("\n")
    }

    /// Target followed by its completion, if any.
    pub fn completed(&self) -> Derivation {
        let mut d = self.target.clone();
        if let Some(c) = &self.completion {
            d.extend(c.clone());
        }
        d
    }
}

/// The image of a kernel derivation in the sequent calculus.
#[derive(Debug, Clone)]
pub struct SeqSimulation {
    pub source: Derivation,
    pub target: SeqDerivation,
}

impl SeqSimulation {
    /// Structured text: one `key=value` line per field.
    pub fn render(&self) -> String {
        let t = &self.target;
        [
            format!("source_start={}", self.source.start),
            format!("source_end={}", self.source.end()),
            format!("source_counts={}", self.source.counts.render(&[])),
            format!("target_start={}", t.start),
            format!("target_end={}", t.end()),
            format!("target_counts=lambar={} mutilde={}", t.counts.lambar, t.counts.mutilde),
        ]
        .join("\n")
    }
}

fn expect_calc(d: &Derivation, expected: Calculus) -> Result<(), SimulationError> {
    if d.calc != expected {
        return Err(SimulationError::WrongCalculus { expected, found: d.calc });
    }
    Ok(())
}

/// Searches the sites of `from` with rule `rule` for a step whose result is
/// structurally equivalent to `shadow`.
fn transport(from: &Term, calc: Calculus, rule: Rule, shadow: &Term) -> Option<(RedexSite, Term)> {
    redexes(from, calc).into_iter().filter(|s| s.rule == rule).find_map(|s| {
        let r = step(from, &s).ok()?;
        struct_equiv_fast(&r, shadow).then_some((s, r))
    })
}

fn vsub_normal(t: &Term, calc: Calculus, rules: &[Rule]) -> bool {
    redexes(t, calc).iter().all(|s| !rules.contains(&s.rule))
}

const EXP: [Rule; 2] = [Rule::ExpAbs, Rule::ExpVar];
const VSUB: [Rule; 3] = [Rule::Mult, Rule::ExpAbs, Rule::ExpVar];

// Fireball calculus into value substitution.

/// The simulation of one fireball step on a clean term.
#[derive(Debug, Clone)]
pub struct FireStepSimulation {
    /// The vsub steps applied to the input term: `m` then `eλ` for a
    /// `βλ`-step, a single `m` for a `βi`-step.
    pub steps: Vec<(RedexSite, Term)>,
    /// Clean term equivalent to the last term of `steps`, unfolding to the
    /// fireball contractum.
    pub clean: Term,
}

/// Simulates the fireball step at `site` of `unfold(t)` on the clean term `t`.
pub fn simulate_fire_step(t: &Term, site: &RedexSite) -> Result<FireStepSimulation, SimulationError> {
    let dec = clean_decompose(t).ok_or_else(|| SimulationError::NotClean(t.to_string()))?;
    let unfolded = dec.unfolded();
    let no_redex = || SimulationError::NoRedex { site: site.to_string(), term: unfolded.to_string() };
    if !matches!(site.rule, Rule::BetaAbs | Rule::BetaInert) {
        return Err(no_redex());
    }
    let expected = step(&unfolded, site).map_err(|_| no_redex())?;
    // Unfolding substitutes inert terms, which neither create nor move
    // redexes, so the redex sits at the same path in the body.
    if !redexes(&dec.body, Calculus::Fire).contains(site) {
        return Err(no_redex());
    }
    let mut path = vec![Dir::BodyOfEs; dec.bindings.len()];
    path.extend_from_slice(&site.path.0);
    let m_site = RedexSite { path: Path(path.clone()), rule: Rule::Mult };
    let after_m = step(t, &m_site)?;
    let mut steps = vec![(m_site, after_m.clone())];
    let clean = match site.rule {
        Rule::BetaAbs => {
            let e_site = RedexSite { path: Path(path), rule: Rule::ExpAbs };
            let after_e = step(&after_m, &e_site)?;
            steps.push((e_site, after_e.clone()));
            after_e
        }
        _ => {
            // Float the new substitution t0[x:=i] out of the body to the
            // innermost binding position, under a fresh name.
            let Some(Term::Es(t0, x, i)) = subterm_at(&after_m, &path) else {
                unreachable!("a multiplicative step on a pure redex leaves an ES at the redex");
            };
            let x2 = fresh(x);
            let renamed = rename(t0, x, &x2);
            let mut replacement = Some(renamed);
            let body = replace_at(&dec.body, &site.path.0, &mut |_| replacement.take())
                .expect("the redex path exists in the body");
            let mut out = ocbv_term::CleanDecomposition { body, bindings: dec.bindings.clone() };
            out.bindings.insert(0, (x2, (**i).clone()));
            let clean = out.reassemble();
            if !struct_equiv_fast(&after_m, &clean) {
                return Err(SimulationError::Relation(format!("{after_m} is not equivalent to {clean}")));
            }
            clean
        }
    };
    if clean_decompose(&clean).is_none() {
        return Err(SimulationError::NotClean(clean.to_string()));
    }
    if !alpha_eq(&unfold(&clean), &expected) {
        return Err(SimulationError::Relation(format!("unfolding of {clean} differs from {expected}")));
    }
    Ok(FireStepSimulation { steps, clean })
}

/// Builds a vsub derivation simulating the fireball derivation `d`.
///
/// The residue is a clean term `s` with `unfold(s)` equal to the end of `d`
/// and equivalent to the end of the target. When `d` ends in a fireball the
/// completion evaluates the target's end with `e_var` steps only to a vsub
/// normal form.
pub fn simulate_fire_derivation(d: &Derivation) -> Result<SimulationWitness, SimulationError> {
    expect_calc(d, Calculus::Fire)?;
    let mut target = Derivation::empty(Calculus::Vsub, d.start.clone());
    let mut shadow = d.start.clone();
    let mut repairs = 0;
    for (index, st) in d.steps.iter().enumerate() {
        let sim = simulate_fire_step(&shadow, &st.site)?;
        for (site, term) in &sim.steps {
            let cur = target.end().clone();
            let (s, r) = transport(&cur, Calculus::Vsub, site.rule, term)
                .ok_or_else(|| SimulationError::Unmatched { index, what: site.rule.to_string() })?;
            target.push(s, r);
        }
        if st.site.rule == Rule::BetaInert {
            repairs += 1;
        }
        if !alpha_eq(&unfold(&sim.clean), &st.term) {
            return Err(SimulationError::Relation(format!("step {index}: unfolding mismatch")));
        }
        shadow = sim.clean;
    }
    if !struct_equiv_fast(target.end(), &shadow) {
        return Err(SimulationError::Relation("target end is not equivalent to the clean residue".into()));
    }
    let completion = if is_fireball(d.end()) {
        let end = target.end().clone();
        let g = evaluate_rules(&end, Calculus::Vsub, &[Rule::ExpVar], Strategy::Deterministic, end.size() + 1)?;
        if !vsub_normal(g.end(), Calculus::Vsub, &VSUB) {
            return Err(SimulationError::Relation(format!("{} is not vsub-normal", g.end())));
        }
        let bound = target.counts.m() - target.counts.get(Rule::ExpAbs);
        if g.len() > bound {
            return Err(SimulationError::Relation(format!("completion has {} e_var steps, bound {bound}", g.len())));
        }
        Some(g)
    } else {
        None
    };
    Ok(SimulationWitness {
        source: d.clone(),
        target,
        residue: shadow,
        relation: "target end ≡ residue, residue clean, unfold(residue) = source end",
        repairs,
        completion,
    })
}

/// Evaluates with `m` and `eλ` steps to exhaustion, then with `e_var` steps.
pub fn staged_vsub_eval(t: &Term, fuel: usize) -> Result<Derivation, EngineError> {
    let mut d = evaluate_rules(t, Calculus::Vsub, &[Rule::Mult, Rule::ExpAbs], Strategy::Deterministic, fuel)?;
    if d.status == Status::Fuelled {
        return Ok(d);
    }
    let rest = evaluate_rules(d.end(), Calculus::Vsub, &[Rule::ExpVar], Strategy::Deterministic, fuel - d.len())?;
    d.extend(rest);
    if d.status == Status::Normal && !vsub_normal(d.end(), Calculus::Vsub, &VSUB) {
        // Never expected: e_var steps do not create m or eλ redexes.
        d.status = Status::Fuelled;
    }
    Ok(d)
}

/// Given `t →e_var s →m u`, finds `t →m t1 →e_var u`.
pub fn swap_evar_m(t: &Term, u: &Term) -> Option<(RedexSite, RedexSite)> {
    for m in redexes(t, Calculus::Vsub).into_iter().filter(|s| s.rule == Rule::Mult) {
        let t1 = step(t, &m).ok()?;
        for e in redexes(&t1, Calculus::Vsub).into_iter().filter(|s| s.rule == Rule::ExpVar) {
            if alpha_eq(&step(&t1, &e).ok()?, u) {
                return Some((m, e));
            }
        }
    }
    None
}

// Shuffling calculus into value substitution.

/// How a single shuffling step projects on multiplicative normal forms.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum ShufProjection {
    /// A σ-step: the two m-normal forms are structurally equivalent.
    Equiv { from: Term, to: Term },
    /// A βshuf-step: one exponential step then multiplicative steps lead
    /// from one m-normal form to the other.
    Exp { exp: Derivation, mult: Derivation, exact: bool },
}

/// Projects the shuffling step at `site` of `t` onto m-normal forms.
pub fn project_shuf_step(t: &Term, site: &RedexSite) -> Result<ShufProjection, SimulationError> {
    let u = step(t, site)?;
    let (a, b) = (m_normal_form(t), m_normal_form(&u));
    if site.rule.is_sigma() {
        return if struct_equiv_fast(&a, &b) {
            Ok(ShufProjection::Equiv { from: a, to: b })
        } else {
            Err(SimulationError::Relation(format!("m-normal forms {a} and {b} are not equivalent")))
        };
    }
    let mut fallback = None;
    for s in redexes(&a, Calculus::Vsub).into_iter().filter(|s| s.rule.is_exponential()) {
        let a1 = step(&a, &s)?;
        let mut exp = Derivation::empty(Calculus::Vsub, a.clone());
        exp.push(s, a1.clone());
        let mult = evaluate_rules(&a1, Calculus::Vsub, &[Rule::Mult], Strategy::Deterministic, a1.size() + 1)?;
        if alpha_eq(mult.end(), &b) {
            return Ok(ShufProjection::Exp { exp, mult, exact: true });
        }
        if fallback.is_none() && struct_equiv_fast(mult.end(), &b) {
            fallback = Some(ShufProjection::Exp { exp, mult, exact: false });
        }
    }
    fallback.ok_or(SimulationError::Unmatched { index: 0, what: "exponential".into() })
}

/// Builds a vsub derivation projecting the shuffling derivation `d`.
///
/// The target starts with the m-normalization of the start term; the residue
/// is the m-normal form of the end of `d`, equivalent to the target's end.
pub fn project_shuf_derivation(d: &Derivation) -> Result<SimulationWitness, SimulationError> {
    expect_calc(d, Calculus::Shuf)?;
    let start = &d.start;
    let mut target = evaluate_rules(start, Calculus::Vsub, &[Rule::Mult], Strategy::Deterministic, start.size() + 1)?;
    let mut repairs = 0;
    for (index, st) in d.steps.iter().enumerate() {
        let goal = m_normal_form(&st.term);
        let cur = target.end().clone();
        if st.site.rule.is_sigma() {
            if !struct_equiv_fast(&cur, &goal) {
                return Err(SimulationError::Unmatched { index, what: "structural".into() });
            }
            repairs += 1;
            continue;
        }
        let found = redexes(&cur, Calculus::Vsub).into_iter().filter(|s| s.rule.is_exponential()).find_map(|s| {
            let r1 = step(&cur, &s).ok()?;
            let m = evaluate_rules(&r1, Calculus::Vsub, &[Rule::Mult], Strategy::Deterministic, r1.size() + 1).ok()?;
            struct_equiv_fast(m.end(), &goal).then_some((s, r1, m))
        });
        let (s, r1, m) = found.ok_or_else(|| SimulationError::Unmatched { index, what: "exponential".into() })?;
        target.push(s, r1);
        target.extend(m);
    }
    target.status = Status::Normal;
    let residue = m_normal_form(d.end());
    if !struct_equiv_fast(target.end(), &residue) {
        return Err(SimulationError::Relation("target end is not equivalent to the m-normal form".into()));
    }
    if redexes(d.end(), Calculus::Shuf).is_empty()
        && !(vsub_normal(target.end(), Calculus::Vsub, &VSUB) && vsub_normal(&residue, Calculus::Vsub, &VSUB))
    {
        return Err(SimulationError::Relation("shuf-normal end projects to a non-normal term".into()));
    }
    Ok(SimulationWitness {
        source: d.clone(),
        target,
        residue,
        relation: "target end ≡ m-nf(source end)",
        repairs,
        completion: None,
    })
}

// Value substitution into its kernel, and the kernel into the sequent calculus.

/// Builds a kernel derivation from `to_kernel(d.start)` simulating `d`.
///
/// A multiplicative step becomes an `m` step followed by an `e_var` step;
/// exponential steps keep their rule. When `d` ends in a vsub normal form,
/// the completion is the exponential normalization of the target's end.
pub fn simulate_vsub_in_kernel(d: &Derivation) -> Result<SimulationWitness, SimulationError> {
    expect_calc(d, Calculus::Vsub)?;
    let mut target = Derivation::empty(Calculus::Vsubk, to_kernel(&d.start));
    for (index, st) in d.steps.iter().enumerate() {
        let goal = to_kernel(&st.term);
        let cur = target.end().clone();
        let unmatched = || SimulationError::Unmatched { index, what: st.site.rule.to_string() };
        if st.site.rule == Rule::Mult {
            let pair = redexes(&cur, Calculus::Vsubk).into_iter().filter(|s| s.rule == Rule::Mult).find_map(|m| {
                let r1 = step(&cur, &m).ok()?;
                let (e, r2) = transport(&r1, Calculus::Vsubk, Rule::ExpVar, &goal)?;
                Some((m, r1, e, r2))
            });
            let (m, r1, e, r2) = pair.ok_or_else(unmatched)?;
            target.push(m, r1);
            target.push(e, r2);
        } else {
            let (s, r) = transport(&cur, Calculus::Vsubk, st.site.rule, &goal).ok_or_else(unmatched)?;
            target.push(s, r);
        }
    }
    let residue = to_kernel(d.end());
    if !struct_equiv_fast(target.end(), &residue) {
        return Err(SimulationError::Relation("target end is not equivalent to the translated end".into()));
    }
    let completion = if vsub_normal(d.end(), Calculus::Vsub, &VSUB) {
        // Harmlessness holds for the translation itself; the simulated end is
        // only equivalent to it, and equivalence does not preserve it.
        if !vsub_normal(&residue, Calculus::Vsubk, &[Rule::Mult]) || !is_harmless(&residue) {
            return Err(SimulationError::Relation(format!("{residue} is not m-normal and harmless")));
        }
        let end = target.end().clone();
        let g = evaluate_rules(&end, Calculus::Vsubk, &EXP, Strategy::Deterministic, end.size() + 1)?;
        if !vsub_normal(g.end(), Calculus::Vsubk, &VSUB) {
            return Err(SimulationError::Relation(format!("{} is not vsubk-normal", g.end())));
        }
        Some(g)
    } else {
        None
    };
    Ok(SimulationWitness {
        source: d.clone(),
        target,
        residue,
        relation: "target end ≡ to_kernel(source end)",
        repairs: d.counts.m(),
        completion,
    })
}

/// Maps each step of the kernel derivation `d` to exactly one sequent step
/// whose result is alpha-equal to the translation of the kernel result.
pub fn simulate_kernel_in_seq(d: &Derivation) -> Result<SeqSimulation, SimulationError> {
    expect_calc(d, Calculus::Vsubk)?;
    let mut target = SeqDerivation::empty(to_sequent(&d.start)?);
    for (index, st) in d.steps.iter().enumerate() {
        let goal = to_sequent(&st.term)?;
        let rule = if st.site.rule == Rule::Mult { SeqRule::LamBar } else { SeqRule::MuTilde };
        let cur = target.end().clone();
        let (s, c) = enumerate_seq_redexes(&cur)
            .into_iter()
            .filter(|s| s.rule == rule)
            .find_map(|s| {
                let c = step_seq(&cur, &s).ok()?;
                cmd_alpha_eq(&c, &goal).then_some((s, c))
            })
            .ok_or_else(|| SimulationError::Unmatched { index, what: rule.to_string() })?;
        target.push(s, c);
    }
    target.status = d.status;
    if vsub_normal(d.end(), Calculus::Vsubk, &VSUB) && !enumerate_seq_redexes(target.end()).is_empty() {
        return Err(SimulationError::Relation(format!("{} is not vseq-normal", target.end())));
    }
    Ok(SeqSimulation { source: d.clone(), target })
}

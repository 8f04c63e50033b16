//! The registry of named properties and the drivers that run them over
//! random or exhaustively enumerated inputs.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use ocbv_engines::{
    evaluate, evaluate_rules, redexes, step, Calculus, Derivation, Rule, Status, Strategy, DEFAULT_FUEL,
};
use ocbv_equiv::{
    check_bisim_step, check_seq_bisim_step, equiv_neighbors, postpone, seq_equiv_neighbors, seq_is_normal,
    seq_struct_equiv, MixedStep,
};
use ocbv_sequent::{append_cmd, append_env, cmd_alpha_eq, cmd_key, enumerate_seq_redexes, step_seq, Command, SeqRule};
use ocbv_term::{alpha_eq, alpha_key, is_fireball, is_harmless, unfold, Term};
use ocbv_translate::{
    from_sequent, project_shuf_derivation, simulate_fire_derivation, simulate_kernel_in_seq, simulate_vsub_in_kernel,
    staged_vsub_eval, to_kernel, to_sequent,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::derivations::{
    all_maximal_derivations, all_maximal_derivations_rules, seq_reducts, seq_strongly_commute_at,
    seq_strongly_confluent_at, strongly_commute_at, strongly_confluent_at, OpenPeak,
};
use crate::enumerate::{enumerate_commands, enumerate_terms};
use crate::gen::{gen_command, gen_term, trial_seed, GenConfig, Language};
use crate::report::{Failure, Mode, Report};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("unknown property '{0}'")]
    UnknownProperty(String),
    #[error("invalid generator configuration: {0}")]
    Config(String),
}

macro_rules! properties {
    ($($id:ident => $name:literal, $lang:expr, $summary:literal;)*) => {
        /// A named, executable property.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum PropertyId { $($id),* }

        impl PropertyId {
            pub const ALL: &'static [PropertyId] = &[$(PropertyId::$id),*];

            pub fn name(self) -> &'static str {
                match self { $(PropertyId::$id => $name),* }
            }

            /// The language inputs are drawn from; `None` for fixed checks.
            pub fn language(self) -> Option<Language> {
                match self { $(PropertyId::$id => $lang),* }
            }

            pub fn summary(self) -> &'static str {
                match self { $(PropertyId::$id => $summary),* }
            }
        }
    };
}

const PURE: Option<Language> = Some(Language::Pure);
const ES: Option<Language> = Some(Language::WithEs);
const KERNEL: Option<Language> = Some(Language::Vsubk);
const SEQ: Option<Language> = Some(Language::Sequent);

properties! {
    OpenHarmony => "open-harmony", PURE, "a term is fire-normal iff it is a fireball";
    PlotDiamond => "plot-diamond", PURE, "beta_var, beta_abs and their union are strongly confluent";
    FireDiamond => "fire-diamond", PURE, "fire steps and inert steps are strongly confluent";
    FireCommute => "fire-commute", PURE, "beta_abs and beta_i strongly commute";
    FireInertSn => "fire-inert-SN", PURE, "beta_i terminates under any strategy";
    VsubDiamond => "vsub-diamond", ES, "m, e and vsub steps are strongly confluent";
    VsubMECommute => "vsub-m-e-commute", ES, "m and e steps strongly commute";
    VsubMSn => "vsub-m-SN", ES, "m steps terminate within the size bound under any strategy";
    VsubESn => "vsub-e-SN", ES, "e steps terminate within the size bound under any strategy";
    VsubELeM => "vsub-e-le-m", PURE, "every vsub derivation from a pure term has no more e than m steps";
    EqstructBisim => "eqstruct-bisim", ES, "structural equivalence is a strong bisimulation";
    EqstructPostpone => "eqstruct-postpone", ES, "structural equivalence postpones with identical counts";
    EqstructNormalPres => "eqstruct-normal-pres", ES, "structural equivalence preserves normal forms";
    ShufDisjoint => "shuf-disjoint", PURE, "beta_shuf and sigma steps never reach the same term";
    ShufSigmaSn => "shuf-sigma-SN", PURE, "sigma steps terminate under any strategy";
    ShufWeakEqStrong => "shuf-weak-eq-strong", PURE, "a shuf-normalizable term has no derivation longer than ten times the shortest";
    ShufBetaCountInvariant => "shuf-beta-count-invariant", PURE, "normalizing shuf derivations agree on the beta_shuf count";
    FireVsubCounts => "fire-vsub-counts", PURE, "the vsub simulation of a fire derivation has m = |d| and e_abs = |d|beta_abs";
    FireVsubLinear => "fire-vsub-linear", PURE, "the completed vsub derivation has length between |d| and 2|d|";
    ShufVsubCounts => "shuf-vsub-counts", PURE, "the projection of a shuf derivation has e = |d|beta_shuf";
    VsubKernelCounts => "vsub-kernel-counts", ES, "the kernel simulation has m = |d|m and e_var = |d|e_var + |d|m";
    KernelSeqBisim => "kernel-seq-bisim", KERNEL, "the sequent translation is a step-for-step bisimulation";
    SeqDiamond => "seq-diamond", SEQ, "lambar, mutilde and vseq steps are strongly confluent";
    SeqCommute => "seq-commute", SEQ, "lambar and mutilde steps strongly commute";
    SeqbarBisim => "seqbar-bisim", SEQ, "command equivalence is a strong bisimulation";
    KernelRoundtrip => "kernel-roundtrip", KERNEL, "translating a kernel term to a command and back is the identity";
    KernelImageRoundtrip => "kernel-image-roundtrip", KERNEL, "translating back and forth is the identity on commands in the image";
    EquivToSeqbar => "equiv-to-seqbar", KERNEL, "equivalent kernel terms translate to equivalent commands";
    AppendAssoc => "append-assoc", SEQ, "append is associative";
    AppendCommutesReduction => "append-commutes-reduction", SEQ, "a step from c gives a step of the same rule from c@e";
    UnfoldEquiv => "unfold-equiv", ES, "equivalent terms have the same unfolding";
    HarmlessPreserved => "harmless-preserved", ES, "kernel images of vsub normal forms stay harmless and m-normal under e steps";
    StagedVsubCounts => "staged-vsub-counts", ES, "staged evaluation has the same m, e and total counts as any order";
    StuckTermsDiverge => "stuck-terms-diverge", None, "the stuck terms are plot-normal and diverge in the other calculi";
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = if s == "vseq-diamond" { "seq-diamond" } else { s };
        PropertyId::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| HarnessError::UnknownProperty(s.to_string()))
    }
}

/// An input to a property check.
#[derive(Debug, Clone)]
pub enum Sample {
    Term(Term),
    Command(Command),
    Fixed,
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sample::Term(t) => write!(f, "{t}"),
            Sample::Command(c) => write!(f, "{c}"),
            Sample::Fixed => f.write_str("(fixed inputs)"),
        }
    }
}

/// The result of one trial.
#[derive(Debug, Clone)]
pub enum Outcome {
    Pass,
    /// The input is outside the property's precondition.
    Skip,
    /// A measurement to aggregate into the report notes, with a pass.
    PassWith(Vec<(&'static str, usize)>),
    Fail {
        expected: String,
        actual: String,
    },
}

fn fail(expected: impl Into<String>, actual: impl Into<String>) -> Outcome {
    Outcome::Fail { expected: expected.into(), actual: actual.into() }
}

fn check(ok: bool, expected: impl FnOnce() -> String, actual: impl FnOnce() -> String) -> Option<Outcome> {
    (!ok).then(|| fail(expected(), actual()))
}

/// Short-circuits with the failure of a check.
macro_rules! ensure {
    ($ok:expr, $exp:expr, $act:expr) => {
        if let Some(o) = check($ok, || $exp.to_string(), || $act.to_string()) {
            return o;
        }
    };
}

/// Fuel for derivations whose precondition is "normalizes within fuel".
const FUEL: usize = DEFAULT_FUEL;
/// Fuel for derivations that are only inspected, not required to end.
const SHORT_FUEL: usize = 200;
/// Cap on enumerated derivations per term.
const DERIVATION_CAP: usize = 5_000;

const EXP: [Rule; 2] = [Rule::ExpAbs, Rule::ExpVar];
const VSUB: [Rule; 3] = [Rule::Mult, Rule::ExpAbs, Rule::ExpVar];
const SEQ_ALL: [SeqRule; 2] = [SeqRule::LamBar, SeqRule::MuTilde];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_0FC0_FFEE)
}

fn random_eval(t: &Term, calc: Calculus, rules: &[Rule], fuel: usize, r: &mut ChaCha8Rng) -> Derivation {
    let mut choose = |_: &Term, sites: &[ocbv_engines::RedexSite]| r.gen_range(0..sites.len());
    evaluate_rules(t, calc, rules, Strategy::Choose(&mut choose), fuel).expect("input is in the language")
}

fn det(t: &Term, calc: Calculus, fuel: usize) -> Derivation {
    evaluate(t, calc, Strategy::Deterministic, fuel).expect("input is in the language")
}

fn is_normal(t: &Term, calc: Calculus, rules: &[Rule]) -> bool {
    redexes(t, calc).iter().all(|s| !rules.contains(&s.rule))
}

fn equiv_walk(t: &Term, steps: usize, r: &mut ChaCha8Rng, keep: &dyn Fn(&Term) -> bool) -> Term {
    let mut cur = t.clone();
    for _ in 0..steps {
        let ns: Vec<Term> = equiv_neighbors(&cur).into_iter().filter(|n| keep(n)).collect();
        if ns.is_empty() {
            break;
        }
        cur = ns[r.gen_range(0..ns.len())].clone();
    }
    cur
}

fn seq_walk(c: &Command, steps: usize, r: &mut ChaCha8Rng) -> Command {
    let mut cur = c.clone();
    for _ in 0..steps {
        let ns = seq_equiv_neighbors(&cur);
        if ns.is_empty() {
            break;
        }
        cur = ns[r.gen_range(0..ns.len())].clone();
    }
    cur
}

fn peak<T: fmt::Display>(rules: &str, p: &OpenPeak<T>) -> Outcome {
    fail(format!("{rules} peak closes in one step"), format!("open peak {} / {}", p.left, p.right))
}

fn diamonds(t: &Term, calc: Calculus, families: &[&[Rule]]) -> Outcome {
    for rules in families {
        if let Err(p) = strongly_confluent_at(t, calc, rules) {
            return peak(&format!("{rules:?}"), &p);
        }
    }
    Outcome::Pass
}

fn commute(t: &Term, calc: Calculus, r1: &[Rule], r2: &[Rule]) -> Outcome {
    match strongly_commute_at(t, calc, r1, r2) {
        Ok(_) => Outcome::Pass,
        Err(p) => peak(&format!("{r1:?}/{r2:?}"), &p),
    }
}

fn shortest_normalizing(t: &Term) -> Option<usize> {
    let d = det(t, Calculus::Shuf, SHORT_FUEL);
    (d.status == Status::Normal).then_some(d.len())
}

/// Runs `id` on a single input. `seed` drives any auxiliary randomness.
pub fn check_sample(id: PropertyId, sample: &Sample, seed: u64) -> Outcome {
    use PropertyId::*;
    let mut r = rng(seed);
    let (t, c) = match sample {
        Sample::Term(t) => (Some(t), None),
        Sample::Command(c) => (None, Some(c)),
        Sample::Fixed => (None, None),
    };
    let term = || t.expect("term property given a term");
    let cmd = || c.expect("command property given a command");
    match id {
        OpenHarmony => {
            let t = term();
            let normal = redexes(t, Calculus::Fire).is_empty();
            ensure!(normal == is_fireball(t), format!("fire-normal={normal}"), format!("fireball={}", is_fireball(t)));
            Outcome::Pass
        }
        PlotDiamond => {
            diamonds(term(), Calculus::Plot, &[&[Rule::BetaVar], &[Rule::BetaAbs], &[Rule::BetaVar, Rule::BetaAbs]])
        }
        FireDiamond => {
            diamonds(term(), Calculus::Fire, &[&[Rule::BetaInert], &[Rule::BetaAbs], &[Rule::BetaAbs, Rule::BetaInert]])
        }
        FireCommute => commute(term(), Calculus::Fire, &[Rule::BetaAbs], &[Rule::BetaInert]),
        FireInertSn => {
            let d = random_eval(term(), Calculus::Fire, &[Rule::BetaInert], FUEL, &mut r);
            ensure!(d.status == Status::Normal, "inert-normal form", format!("no normal form in {FUEL} steps"));
            Outcome::Pass
        }
        VsubDiamond => diamonds(term(), Calculus::Vsub, &[&[Rule::Mult], &EXP, &VSUB]),
        VsubMECommute => commute(term(), Calculus::Vsub, &[Rule::Mult], &EXP),
        VsubMSn | VsubESn => {
            let t = term();
            let rules: &[Rule] = if id == VsubMSn { &[Rule::Mult] } else { &EXP };
            let d = random_eval(t, Calculus::Vsub, rules, t.size(), &mut r);
            ensure!(d.status == Status::Normal, format!("normal within {} steps", t.size()), d.end());
            Outcome::Pass
        }
        VsubELeM => {
            let d = random_eval(term(), Calculus::Vsub, &VSUB, SHORT_FUEL, &mut r);
            let (mut m, mut e) = (0, 0);
            for s in &d.steps {
                match s.site.rule {
                    Rule::Mult => m += 1,
                    _ => e += 1,
                }
                ensure!(e <= m, "e <= m on every prefix", format!("e={e} m={m}"));
            }
            Outcome::Pass
        }
        EqstructBisim => {
            let t = term();
            let u = equiv_walk(t, r.gen_range(1..=4), &mut r, &|_| true);
            for rules in [&[Rule::Mult][..], &EXP, &VSUB] {
                let rep = check_bisim_step(t, &u, rules);
                ensure!(
                    rep.passed(),
                    format!("every {rules:?} step of {t} matched from {u}"),
                    format!("{:?}", rep.counterexample)
                );
                let rep = check_bisim_step(&u, t, rules);
                ensure!(
                    rep.passed(),
                    format!("every {rules:?} step of {u} matched from {t}"),
                    format!("{:?}", rep.counterexample)
                );
            }
            Outcome::Pass
        }
        EqstructPostpone => {
            let t = term();
            let mut moves = Vec::new();
            let mut cur = t.clone();
            for _ in 0..r.gen_range(1..8) {
                if r.gen_bool(0.5) {
                    let sites = redexes(&cur, Calculus::Vsub);
                    if sites.is_empty() {
                        continue;
                    }
                    let s = sites[r.gen_range(0..sites.len())].clone();
                    cur = step(&cur, &s).expect("enumerated sites are contractible");
                    moves.push(MixedStep::Reduce(s));
                } else {
                    cur = equiv_walk(&cur, 1, &mut r, &|_| true);
                    moves.push(MixedStep::Equiv(cur.clone()));
                }
            }
            let out = match postpone(t, &moves) {
                Ok(o) => o,
                Err(e) => return fail("postponement succeeds", e.to_string()),
            };
            let reduce: Vec<Rule> = moves
                .iter()
                .filter_map(|m| match m {
                    MixedStep::Reduce(s) => Some(s.rule),
                    MixedStep::Equiv(_) => None,
                })
                .collect();
            for rule in VSUB {
                let want = reduce.iter().filter(|x| **x == rule).count();
                ensure!(
                    out.derivation.counts.get(rule) == want,
                    format!("{rule}={want}"),
                    format!("{rule}={}", out.derivation.counts.get(rule))
                );
            }
            ensure!(
                ocbv_equiv::struct_equiv_fast(out.derivation.end(), &cur),
                format!("end equivalent to {cur}"),
                out.derivation.end()
            );
            Outcome::Pass
        }
        EqstructNormalPres => {
            let t = term();
            let u = equiv_walk(t, r.gen_range(1..=4), &mut r, &|_| true);
            for rules in [&[Rule::Mult][..], &EXP, &VSUB] {
                let (a, b) = (is_normal(t, Calculus::Vsub, rules), is_normal(&u, Calculus::Vsub, rules));
                ensure!(a == b, format!("{rules:?}-normal={a} for {u}"), format!("{rules:?}-normal={b}"));
            }
            Outcome::Pass
        }
        ShufDisjoint => {
            let t = term();
            let beta: std::collections::HashSet<String> =
                crate::derivations::reducts(t, Calculus::Shuf, &[Rule::BetaShuf]).iter().map(alpha_key).collect();
            for s in crate::derivations::reducts(t, Calculus::Shuf, &[Rule::SigmaL, Rule::SigmaR]) {
                ensure!(!beta.contains(&alpha_key(&s)), "no common reduct", format!("both reach {s}"));
            }
            Outcome::Pass
        }
        ShufSigmaSn => {
            let d = random_eval(term(), Calculus::Shuf, &[Rule::SigmaL, Rule::SigmaR], FUEL, &mut r);
            ensure!(d.status == Status::Normal, "sigma-normal form", format!("no normal form in {FUEL} steps"));
            Outcome::Pass
        }
        ShufWeakEqStrong => {
            let t = term();
            let Some(l0) = shortest_normalizing(t) else { return Outcome::Skip };
            if l0 == 0 {
                return Outcome::Pass;
            }
            let all = all_maximal_derivations(t, Calculus::Shuf, 10 * l0, DERIVATION_CAP);
            if all.capped {
                return Outcome::Skip;
            }
            let lmin = all.normalizing().map(|d| d.len()).min().expect("the deterministic derivation is found");
            for d in &all.derivations {
                ensure!(
                    d.status == Status::Normal && d.len() <= 10 * lmin,
                    format!("every derivation normalizes within {} steps", 10 * lmin),
                    format!("{:?} derivation of length {}", d.status, d.len())
                );
            }
            Outcome::Pass
        }
        ShufBetaCountInvariant => {
            let t = term();
            let Some(l0) = shortest_normalizing(t) else { return Outcome::Skip };
            let all = all_maximal_derivations(t, Calculus::Shuf, 10 * l0.max(1), DERIVATION_CAP);
            if all.capped {
                return Outcome::Skip;
            }
            let mut betas = all.normalizing().map(|d| d.counts.get(Rule::BetaShuf));
            let first = betas.next().expect("the deterministic derivation is found");
            for b in betas {
                ensure!(b == first, format!("beta_shuf={first}"), format!("beta_shuf={b}"));
            }
            let lengths: std::collections::BTreeSet<usize> = all.normalizing().map(|d| d.len()).collect();
            let varies = usize::from(lengths.len() > 1);
            Outcome::PassWith(vec![("length_variance_terms", varies), ("derivations", all.derivations.len())])
        }
        FireVsubCounts | FireVsubLinear => {
            let d = det(term(), Calculus::Fire, FUEL);
            if d.status != Status::Normal {
                return Outcome::Skip;
            }
            let w = match simulate_fire_derivation(&d) {
                Ok(w) => w,
                Err(e) => return fail("simulation succeeds", e.to_string()),
            };
            let (m, ea, ev) =
                (w.target.counts.m(), w.target.counts.get(Rule::ExpAbs), w.target.counts.get(Rule::ExpVar));
            let ba = d.counts.get(Rule::BetaAbs);
            ensure!(m == d.len(), format!("m={}", d.len()), format!("m={m}"));
            ensure!(ea == ba, format!("e_abs={ba}"), format!("e_abs={ea}"));
            ensure!(ev == 0, "e_var=0", format!("e_var={ev}"));
            ensure!(alpha_eq(&unfold(&w.residue), d.end()), d.end(), unfold(&w.residue));
            if id == FireVsubLinear {
                let full = w.completed();
                let n = full.len();
                ensure!(
                    d.len() <= n && n <= 2 * d.len(),
                    format!("{} <= |e| <= {}", d.len(), 2 * d.len()),
                    format!("|e|={n}")
                );
                ensure!(is_normal(full.end(), Calculus::Vsub, &VSUB), "vsub-normal end", full.end());
            }
            Outcome::Pass
        }
        ShufVsubCounts => {
            let d = det(term(), Calculus::Shuf, FUEL);
            if d.status != Status::Normal {
                return Outcome::Skip;
            }
            let w = match project_shuf_derivation(&d) {
                Ok(w) => w,
                Err(e) => return fail("projection succeeds", e.to_string()),
            };
            let b = d.counts.get(Rule::BetaShuf);
            ensure!(w.target.counts.e() == b, format!("e={b}"), format!("e={}", w.target.counts.e()));
            ensure!(is_normal(&w.residue, Calculus::Vsub, &VSUB), "vsub-normal residue", &w.residue);
            Outcome::Pass
        }
        VsubKernelCounts => {
            let d = random_eval(term(), Calculus::Vsub, &VSUB, SHORT_FUEL, &mut r);
            let w = match simulate_vsub_in_kernel(&d) {
                Ok(w) => w,
                Err(e) => return fail("simulation succeeds", e.to_string()),
            };
            let (dm, dv) = (d.counts.m(), d.counts.get(Rule::ExpVar));
            let (em, ev) = (w.target.counts.m(), w.target.counts.get(Rule::ExpVar));
            ensure!(em == dm, format!("m={dm}"), format!("m={em}"));
            ensure!(ev == dv + dm, format!("e_var={}", dv + dm), format!("e_var={ev}"));
            Outcome::Pass
        }
        KernelSeqBisim => {
            let k = term();
            let d = random_eval(k, Calculus::Vsubk, &VSUB, SHORT_FUEL, &mut r);
            let s = match simulate_kernel_in_seq(&d) {
                Ok(s) => s,
                Err(e) => return fail("simulation succeeds", e.to_string()),
            };
            ensure!(s.target.len() == d.len(), format!("{} steps", d.len()), format!("{} steps", s.target.len()));
            ensure!(
                s.target.counts.lambar == d.counts.m(),
                format!("lambar={}", d.counts.m()),
                format!("lambar={}", s.target.counts.lambar)
            );
            ensure!(
                s.target.counts.mutilde == d.counts.e(),
                format!("mutilde={}", d.counts.e()),
                format!("mutilde={}", s.target.counts.mutilde)
            );
            // Reflection: each sequent step from an image is the image of a
            // kernel step with the corresponding rule.
            for t in std::iter::once(&d.start).chain(d.steps.iter().map(|s| &s.term)).take(10) {
                let image = to_sequent(t).expect("kernel derivations stay in the kernel");
                for (rules, seq_rule) in [(&[Rule::Mult][..], SeqRule::LamBar), (&EXP[..], SeqRule::MuTilde)] {
                    let from_kernel: std::collections::BTreeSet<String> =
                        crate::derivations::reducts(t, Calculus::Vsubk, rules)
                            .iter()
                            .map(|u| cmd_key(&to_sequent(u).expect("kernel derivations stay in the kernel")))
                            .collect();
                    let from_seq: std::collections::BTreeSet<String> =
                        seq_reducts(&image, &[seq_rule]).iter().map(cmd_key).collect();
                    ensure!(
                        from_kernel == from_seq,
                        format!("{seq_rule} reducts of {image} are images"),
                        format!("{} vs {} reducts", from_seq.len(), from_kernel.len())
                    );
                }
            }
            Outcome::Pass
        }
        SeqDiamond => {
            let c = cmd();
            for rules in [&[SeqRule::LamBar][..], &[SeqRule::MuTilde], &SEQ_ALL] {
                if let Err(p) = seq_strongly_confluent_at(c, rules) {
                    return peak(&format!("{rules:?}"), &p);
                }
            }
            Outcome::Pass
        }
        SeqCommute => match seq_strongly_commute_at(cmd(), &[SeqRule::LamBar], &[SeqRule::MuTilde]) {
            Ok(_) => Outcome::Pass,
            Err(p) => peak("lambar/mutilde", &p),
        },
        SeqbarBisim => {
            let c = cmd();
            let c1 = seq_walk(c, r.gen_range(1..=4), &mut r);
            for rules in [&[SeqRule::LamBar][..], &[SeqRule::MuTilde], &SEQ_ALL] {
                for (a, b) in [(c, &c1), (&c1, c)] {
                    match check_seq_bisim_step(a, b, rules) {
                        Ok(rep) => ensure!(
                            rep.passed(),
                            format!("every step of {a} matched from {b}"),
                            format!("{:?}", rep.counterexample)
                        ),
                        Err(e) => return fail("bisimulation check completes", e.to_string()),
                    }
                }
                let (n0, n1) = (seq_is_normal(c, rules), seq_is_normal(&c1, rules));
                ensure!(n0 == n1, format!("{rules:?}-normal={n0} for {c1}"), format!("{rules:?}-normal={n1}"));
            }
            Outcome::Pass
        }
        KernelRoundtrip => {
            let t = term();
            let back = from_sequent(&to_sequent(t).expect("generated kernel term"));
            ensure!(alpha_eq(&back, t), t, back);
            Outcome::Pass
        }
        KernelImageRoundtrip => {
            let t = term();
            let c = to_sequent(t).expect("generated kernel term");
            let back = from_sequent(&c);
            let c2 = match to_sequent(&back) {
                Ok(c2) => c2,
                Err(e) => return fail("back-translation is a kernel term", e.to_string()),
            };
            ensure!(cmd_alpha_eq(&c, &c2), &c, &c2);
            ensure!(alpha_eq(&from_sequent(&c2), &back), &back, from_sequent(&c2));
            Outcome::Pass
        }
        EquivToSeqbar => {
            let t = term();
            let u = equiv_walk(t, r.gen_range(1..=4), &mut r, &|n| n.is_kernel());
            let (a, b) = (to_sequent(t).expect("kernel"), to_sequent(&u).expect("kernel"));
            match seq_struct_equiv(&a, &b) {
                Ok(true) => Outcome::Pass,
                Ok(false) => fail(format!("{a} equivalent to {b}"), "not equivalent"),
                Err(e) => fail("equivalence decided", e.to_string()),
            }
        }
        AppendAssoc | AppendCommutesReduction => {
            let c = cmd();
            let side = |k: u64| {
                let cfg = GenConfig { max_size: 9, language: Language::Sequent, ..GenConfig::default() };
                gen_command(&cfg.with_seed(trial_seed(seed, k))).env
            };
            let (e1, e2) = (side(1), side(2));
            if id == AppendAssoc {
                let lhs = append_cmd(&append_cmd(c, &e1), &e2);
                let rhs = append_cmd(c, &append_env(&e1, &e2));
                ensure!(cmd_alpha_eq(&lhs, &rhs), &lhs, &rhs);
                return Outcome::Pass;
            }
            let appended = append_cmd(c, &e1);
            for site in enumerate_seq_redexes(c) {
                let next = step_seq(c, &site).expect("enumerated sites are contractible");
                let want = append_cmd(&next, &e1);
                let found = seq_reducts(&appended, &[site.rule]).iter().any(|x| cmd_alpha_eq(x, &want));
                ensure!(found, format!("{appended} -{}-> {want}", site.rule), "no such step");
            }
            Outcome::Pass
        }
        UnfoldEquiv => {
            let t = term();
            let u = equiv_walk(t, r.gen_range(1..=4), &mut r, &|_| true);
            ensure!(alpha_eq(&unfold(t), &unfold(&u)), unfold(t), unfold(&u));
            Outcome::Pass
        }
        HarmlessPreserved => {
            let d = det(term(), Calculus::Vsub, SHORT_FUEL);
            if d.status != Status::Normal {
                return Outcome::Skip;
            }
            let k = to_kernel(d.end());
            let mut cur = k;
            loop {
                ensure!(is_harmless(&cur), "harmless", &cur);
                ensure!(is_normal(&cur, Calculus::Vsubk, &[Rule::Mult]), "m-normal", &cur);
                let sites: Vec<_> =
                    redexes(&cur, Calculus::Vsubk).into_iter().filter(|s| s.rule.is_exponential()).collect();
                if sites.is_empty() {
                    break;
                }
                let s = &sites[r.gen_range(0..sites.len())];
                cur = step(&cur, s).expect("enumerated sites are contractible");
            }
            Outcome::Pass
        }
        StagedVsubCounts => {
            let t = term();
            let d = det(t, Calculus::Vsub, FUEL);
            if d.status != Status::Normal {
                return Outcome::Skip;
            }
            let staged = staged_vsub_eval(t, FUEL).expect("input is in the language");
            let any = random_eval(t, Calculus::Vsub, &VSUB, FUEL, &mut r);
            for other in [&staged, &any] {
                ensure!(other.status == Status::Normal, "normalizes", format!("{:?}", other.status));
                let got = (other.len(), other.counts.m(), other.counts.e());
                let want = (d.len(), d.counts.m(), d.counts.e());
                ensure!(got == want, format!("(total, m, e)={want:?}"), format!("{got:?}"));
            }
            Outcome::Pass
        }
        StuckTermsDiverge => stuck_terms_diverge(),
    }
}

const DELTA: &str = "\\x.x x";

/// The two stuck terms that motivate the calculi.
pub fn stuck_terms() -> [Term; 2] {
    let p = |s: &str| ocbv_term::parse_term(s).expect("fixed term parses");
    [p(&format!("((\\y.{DELTA}) (z z)) ({DELTA})")), p(&format!("({DELTA}) ((\\y.{DELTA}) (z z))"))]
}

fn stuck_terms_diverge() -> Outcome {
    for t in stuck_terms() {
        ensure!(redexes(&t, Calculus::Plot).is_empty(), format!("{t} plot-normal"), "has a plot redex");
        for calc in [Calculus::Fire, Calculus::Vsub, Calculus::Shuf] {
            let d = det(&t, calc, 100);
            ensure!(d.status == Status::Fuelled, format!("{t} fuelled in {calc}"), format!("{:?}", d.status));
        }
        let k = det(&to_kernel(&t), Calculus::Vsubk, 100);
        let s = match simulate_kernel_in_seq(&k) {
            Ok(s) => s,
            Err(e) => return fail("sequent simulation succeeds", e.to_string()),
        };
        let still = !enumerate_seq_redexes(s.target.end()).is_empty();
        ensure!(k.status == Status::Fuelled && still, format!("{t} fuelled in vseq"), "normalized");
    }
    Outcome::Pass
}

fn sample_of(lang: Option<Language>, cfg: &GenConfig) -> Sample {
    match lang {
        None => Sample::Fixed,
        Some(Language::Sequent) => Sample::Command(gen_command(cfg)),
        Some(l) => Sample::Term(gen_term(&cfg.with_language(l))),
    }
}

fn merge(notes: &mut Vec<(String, String)>, extra: &[(&'static str, usize)]) {
    for (k, v) in extra {
        match notes.iter_mut().find(|(n, _)| n == k) {
            Some((_, old)) => *old = (old.parse::<usize>().unwrap_or(0) + v).to_string(),
            None => notes.push((k.to_string(), v.to_string())),
        }
    }
}

fn tally(report: &mut Report, outcome: Outcome, seed: Option<u64>, index: Option<usize>, sample: &Sample) {
    match outcome {
        Outcome::Pass => report.trials += 1,
        Outcome::PassWith(extra) => {
            report.trials += 1;
            merge(&mut report.notes, &extra);
        }
        Outcome::Skip => report.skipped += 1,
        Outcome::Fail { expected, actual } => {
            report.trials += 1;
            report.failures.push(Failure { seed, index, counterexample: sample.to_string(), expected, actual });
        }
    }
}

/// Runs `id` on random inputs until `trials` of them meet the property's
/// precondition. Gives up after `20 * trials` draws (at least 100), and
/// records a coverage failure if too few inputs qualified.
pub fn check_property(id: PropertyId, cfg: &GenConfig, trials: usize) -> Result<Report, HarnessError> {
    cfg.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
    let start = Instant::now();
    let mut report = Report {
        property: id.name().to_string(),
        mode: Mode::Random { seed: cfg.seed, max_size: cfg.max_size },
        trials: 0,
        skipped: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        elapsed: Default::default(),
    };
    let trials = if id.language().is_none() { 1 } else { trials };
    let budget = (20 * trials).max(100) as u64;
    let mut next = 0u64;
    while report.trials < trials && next < budget {
        let batch = ((trials - report.trials) as u64 * 2).clamp(16, 4096).min(budget - next);
        let outcomes: Vec<(u64, Sample, Outcome)> = (next..next + batch)
            .into_par_iter()
            .map(|i| {
                let seed = trial_seed(cfg.seed, i);
                let sample = sample_of(id.language(), &cfg.with_seed(seed));
                let outcome = check_sample(id, &sample, seed);
                (seed, sample, outcome)
            })
            .collect();
        next += batch;
        for (seed, sample, outcome) in outcomes {
            if report.trials >= trials {
                break;
            }
            tally(&mut report, outcome, Some(seed), None, &sample);
        }
    }
    if report.trials < trials {
        report.failures.push(Failure {
            seed: None,
            index: None,
            counterexample: format!("{next} draws"),
            expected: format!("{trials} qualifying inputs"),
            actual: format!("{} qualifying inputs", report.trials),
        });
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs `id` on every input of its language up to `max_size` nodes.
pub fn check_exhaustive(id: PropertyId, max_size: usize) -> Report {
    let start = Instant::now();
    let samples: Vec<Sample> = match id.language() {
        None => vec![Sample::Fixed],
        Some(Language::Sequent) => enumerate_commands(max_size).into_iter().map(Sample::Command).collect(),
        Some(l) => enumerate_terms(max_size, l).into_iter().map(Sample::Term).collect(),
    };
    let outcomes: Vec<Outcome> =
        samples.par_iter().enumerate().map(|(i, s)| check_sample(id, s, trial_seed(0, i as u64))).collect();
    let mut report = Report {
        property: id.name().to_string(),
        mode: Mode::Exhaustive { max_size },
        trials: 0,
        skipped: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        elapsed: Default::default(),
    };
    for (i, (o, s)) in outcomes.into_iter().zip(&samples).enumerate() {
        tally(&mut report, o, None, Some(i), s);
    }
    report.elapsed = start.elapsed();
    report
}

/// Enumerates every maximal derivation of the pure terms up to `max_size`
/// in the restricted relation and reports those that do not terminate
/// within `fuel`. Used for the termination properties in exhaustive form.
pub fn exhaustive_termination(calc: Calculus, rules: &[Rule], max_size: usize, fuel: usize) -> Vec<Term> {
    enumerate_terms(max_size, Language::Pure)
        .into_par_iter()
        .filter(|t| {
            let all = all_maximal_derivations_rules(t, calc, rules, fuel, DERIVATION_CAP);
            all.truncated
        })
        .collect()
}

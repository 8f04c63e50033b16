//! Side-by-side evaluation of a pure term in every calculus, with the count
//! relations between them.

use ocbv_engines::{evaluate, Calculus, Derivation, Rule, Status, Strategy};
use ocbv_sequent::{evaluate_seq, SeqDerivation, SeqStrategy};
use ocbv_term::Term;
use ocbv_translate::{staged_vsub_eval, to_kernel, to_sequent};

use crate::output::Out;
use crate::Format;

/// Fuel multiplier for the calculi with explicit substitutions, whose
/// derivations are up to twice as long as the fireball one plus the extra
/// variable substitutions of the kernel.
const ES_FUEL_FACTOR: usize = 4;

struct Row {
    name: &'static str,
    fuel: usize,
    status: Status,
    steps: usize,
    counts: String,
}

impl Row {
    fn of(d: &Derivation, name: &'static str, fuel: usize) -> Self {
        Row { name, fuel, status: d.status, steps: d.len(), counts: d.counts.render(d.calc.rules()) }
    }

    fn of_seq(d: &SeqDerivation, fuel: usize) -> Self {
        Row {
            name: "vseq",
            fuel,
            status: d.status,
            steps: d.len(),
            counts: format!("lambar={} mutilde={}", d.counts.lambar, d.counts.mutilde),
        }
    }
}

enum Verdict {
    Holds,
    Violated(String),
    /// One side did not normalize within fuel.
    NotApplicable,
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Normal => "normal",
        Status::Fuelled => "FUEL-EXHAUSTED",
    }
}

fn det(t: &Term, calc: Calculus, fuel: usize) -> Derivation {
    evaluate(t, calc, Strategy::Deterministic, fuel).expect("pure terms and their kernel images are in every language")
}

fn relation(normal: bool, ok: bool, detail: impl FnOnce() -> String) -> Verdict {
    match (normal, ok) {
        (false, _) => Verdict::NotApplicable,
        (true, true) => Verdict::Holds,
        (true, false) => Verdict::Violated(detail()),
    }
}

/// Prints the table and relations; returns whether no relation is violated.
pub fn run(t: &Term, fuel: usize, out: &mut Out) -> bool {
    let es_fuel = fuel.saturating_mul(ES_FUEL_FACTOR);
    let plot = det(t, Calculus::Plot, fuel);
    let fire = det(t, Calculus::Fire, fuel);
    let vsub = staged_vsub_eval(t, es_fuel).expect("pure terms are vsub terms");
    let shuf = det(t, Calculus::Shuf, fuel);
    let k = to_kernel(t);
    let vsubk = det(&k, Calculus::Vsubk, es_fuel);
    let seq = evaluate_seq(&to_sequent(&k).expect("kernel image"), SeqStrategy::Deterministic, es_fuel);

    let rows = [
        Row::of(&plot, "plot", fuel),
        Row::of(&fire, "fire", fuel),
        Row::of(&vsub, "vsub", es_fuel),
        Row::of(&shuf, "shuf", fuel),
        Row::of(&vsubk, "vsubk", es_fuel),
        Row::of_seq(&seq, es_fuel),
    ];

    let normal = |s: Status| s == Status::Normal;
    let statuses = [fire.status, vsub.status, shuf.status, vsubk.status, seq.status];
    let (f, v, s) = (fire.len(), vsub.len(), &shuf.counts);
    let relations = [
        (
            "termination",
            if statuses.iter().all(|x| *x == statuses[0]) {
                Verdict::Holds
            } else {
                Verdict::Violated("fire, vsub, shuf, vsubk and vseq disagree on normalization within fuel".into())
            },
        ),
        (
            "fire-vsub-mult",
            relation(normal(fire.status) && normal(vsub.status), vsub.counts.m() == f, || {
                format!("m={} but fire steps={f}", vsub.counts.m())
            }),
        ),
        (
            "fire-vsub-linear",
            relation(normal(fire.status) && normal(vsub.status), f <= v && v <= 2 * f, || {
                format!("vsub steps={v} outside [{f}, {}]", 2 * f)
            }),
        ),
        (
            "shuf-vsub-exp",
            relation(normal(shuf.status) && normal(vsub.status), vsub.counts.e() == s.get(Rule::BetaShuf), || {
                format!("e={} but beta_shuf={}", vsub.counts.e(), s.get(Rule::BetaShuf))
            }),
        ),
        (
            "vsub-vsubk-mult",
            relation(normal(vsub.status) && normal(vsubk.status), vsub.counts.m() == vsubk.counts.m(), || {
                format!("vsub m={} but vsubk m={}", vsub.counts.m(), vsubk.counts.m())
            }),
        ),
        (
            "vsubk-vseq",
            relation(
                normal(vsubk.status) && normal(seq.status),
                vsubk.len() == seq.len()
                    && vsubk.counts.m() == seq.counts.lambar
                    && vsubk.counts.e() == seq.counts.mutilde,
                || {
                    format!(
                        "vsubk (steps={}, m={}, e={}) vs vseq (steps={}, lambar={}, mutilde={})",
                        vsubk.len(),
                        vsubk.counts.m(),
                        vsubk.counts.e(),
                        seq.len(),
                        seq.counts.lambar,
                        seq.counts.mutilde
                    )
                },
            ),
        ),
    ];

    match out.format() {
        Format::Text => {
            out.raw(format!("{:<6} {:<15} {:>6} {:>6}  counts", "calc", "status", "fuel", "steps"));
            for r in &rows {
                out.raw(format!(
                    "{:<6} {:<15} {:>6} {:>6}  {}",
                    r.name,
                    status_text(r.status),
                    r.fuel,
                    r.steps,
                    r.counts
                ));
            }
        }
        Format::Records => {
            for r in &rows {
                out.raw(format!("{}.status={}", r.name, status_text(r.status)));
                out.raw(format!("{}.fuel={}", r.name, r.fuel));
                out.raw(format!("{}.steps={}", r.name, r.steps));
                out.raw(format!("{}.counts={}", r.name, r.counts));
            }
        }
    }
    let mut ok = true;
    for (name, verdict) in relations {
        let text = match verdict {
            Verdict::Holds => "holds".to_string(),
            Verdict::NotApplicable => "n/a".to_string(),
            Verdict::Violated(why) => {
                ok = false;
                format!("VIOLATED ({why})")
            }
        };
        match out.format() {
            Format::Text => out.raw(format!("relation {name}: {text}")),
            Format::Records => out.raw(format!("relation.{name}={text}")),
        }
    }
    ok
}

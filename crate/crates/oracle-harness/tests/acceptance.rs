//! Acceptance suite: runs the eight acceptance criteria and prints one
//! `PASS` or `FAIL` line per criterion.
//!
//! The process exits with a nonzero status when a criterion fails for a
//! reason not listed in [`KNOWN_UNATTAINABLE`].

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ocbv_engines::{evaluate, Calculus, Derivation, Rule, Strategy};
use ocbv_harness::{check_exhaustive, check_property, stuck_terms, GenConfig, PropertyId, Report};
use ocbv_term::{alpha_eq, parse_term, Term};

const SEED: u64 = 20_240_101;

/// Properties that cannot hold as stated, with the reason printed when they
/// fail. A failure of one of these does not fail the process.
const KNOWN_UNATTAINABLE: &[(PropertyId, &str)] = &[(
    PropertyId::KernelRoundtrip,
    "the sequent translation sends t[x:=v] s and (t s)[x:=v] to the same command \
     whenever x is not free in s, e.g. x[x:=y] z and (x z)[x:=y], so no inverse \
     returns both; the round trip is the identity on the image instead \
     (kernel-image-roundtrip)",
)];

struct Outcome {
    failures: Vec<String>,
    known: Vec<String>,
    info: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), known: Vec::new(), info: Vec::new() }
    }

    fn report(&mut self, r: &Report) {
        if r.passed() {
            return;
        }
        let lines = r.records().join("\n    ");
        let known = KNOWN_UNATTAINABLE.iter().find(|(id, _)| id.name() == r.property);
        match known {
            Some((_, why)) => self.known.push(format!("{lines}\n    known unattainable: {why}")),
            None => self.failures.push(lines),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty() && self.known.is_empty()
    }
}

fn random(id: PropertyId, trials: usize) -> Report {
    let cfg = GenConfig::default().with_seed(SEED);
    check_property(id, &cfg, trials).expect("default configuration is valid")
}

fn p(s: &str) -> Term {
    parse_term(s).expect("fixed term parses")
}

fn criterion_1(o: &mut Outcome) {
    let start = Instant::now();
    o.report(&random(PropertyId::OpenHarmony, 10_000));
    o.require(start.elapsed() < Duration::from_secs(60), format!("took {:?}, limit 60s", start.elapsed()));
}

fn prefix(o: &mut Outcome, t: &Term, calc: Calculus, expected: &[(Rule, &str)]) {
    let d: Derivation = evaluate(t, calc, Strategy::Deterministic, 100).expect("pure term");
    for (i, (rule, term)) in expected.iter().enumerate() {
        let ok = d.steps.get(i).is_some_and(|s| s.site.rule == *rule && alpha_eq(&s.term, &p(term)));
        let got = d.steps.get(i).map(|s| format!("{} {}", s.site.rule, s.term)).unwrap_or_else(|| "nothing".into());
        o.require(ok, format!("{calc} step {i}: expected {rule} {term}, got {got}"));
    }
}

fn criterion_2(o: &mut Outcome) {
    let [t, _] = stuck_terms();
    let dd = "(\\x.x x) (\\x.x x)";
    prefix(o, &t, Calculus::Fire, &[(Rule::BetaInert, dd), (Rule::BetaAbs, dd)]);
    prefix(
        o,
        &t,
        Calculus::Vsub,
        &[
            (Rule::Mult, "(\\x.x x)[y:=z z] (\\x.x x)"),
            (Rule::Mult, "(x x)[x:=\\x.x x][y:=z z]"),
            (Rule::ExpAbs, "((\\x.x x) (\\x.x x))[y:=z z]"),
        ],
    );
    let shuf = "(\\y.(\\x.x x) (\\x.x x)) (z z)";
    prefix(o, &t, Calculus::Shuf, &[(Rule::SigmaL, shuf), (Rule::BetaShuf, shuf)]);
    o.report(&random(PropertyId::StuckTermsDiverge, 1));
}

fn criterion_3(o: &mut Outcome) {
    let start = Instant::now();
    for id in [
        PropertyId::PlotDiamond,
        PropertyId::FireDiamond,
        PropertyId::FireCommute,
        PropertyId::VsubDiamond,
        PropertyId::VsubMECommute,
        PropertyId::SeqDiamond,
        PropertyId::SeqCommute,
    ] {
        o.report(&check_exhaustive(id, 9));
    }
    o.require(start.elapsed() < Duration::from_secs(600), format!("took {:?}, limit 10min", start.elapsed()));
}

fn criterion_4(o: &mut Outcome) {
    o.report(&random(PropertyId::FireVsubCounts, 2_000));
    o.report(&random(PropertyId::FireVsubLinear, 2_000));
}

fn criterion_5(o: &mut Outcome) {
    o.report(&random(PropertyId::ShufVsubCounts, 2_000));
    let r = check_exhaustive(PropertyId::ShufBetaCountInvariant, 8);
    o.report(&r);
    let varying: usize = r.note("length_variance_terms").and_then(|v| v.parse().ok()).unwrap_or(0);
    o.require(varying > 0, "low coverage: no enumerated term has normalizing derivations of different lengths");
    o.info.push(format!(
        "{varying} of {} enumerated terms have normalizing shuf derivations of different lengths",
        r.trials
    ));
}

fn criterion_6(o: &mut Outcome) {
    o.report(&random(PropertyId::VsubKernelCounts, 2_000));
    o.report(&random(PropertyId::KernelSeqBisim, 2_000));
    o.report(&random(PropertyId::KernelRoundtrip, 10_000));
}

fn criterion_7(o: &mut Outcome) {
    for id in [
        PropertyId::EqstructBisim,
        PropertyId::EqstructNormalPres,
        PropertyId::UnfoldEquiv,
        PropertyId::SeqbarBisim,
        PropertyId::EquivToSeqbar,
        PropertyId::VsubELeM,
    ] {
        o.report(&random(id, 10_000));
    }
}

fn criterion_8(o: &mut Outcome) {
    let r = random(PropertyId::StagedVsubCounts, 2_000);
    o.report(&r);
}

type Criterion = (&'static str, fn(&mut Outcome));

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("open harmony on 10,000 random pure terms", criterion_1),
        ("worked reduction prefixes and divergence of the stuck terms", criterion_2),
        ("exhaustive diamonds and commutations up to size 9", criterion_3),
        ("fire to vsub simulation counts on 2,000 terms", criterion_4),
        ("shuf to vsub projection counts and beta_shuf invariance", criterion_5),
        ("kernel and sequent simulations and the kernel round trip", criterion_6),
        ("structural equivalences on 10,000 trials each", criterion_7),
        ("staged evaluation counts on 2,000 terms", criterion_8),
    ];
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::new();
        run(&mut o);
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {title} ({} ms)", i + 1, start.elapsed().as_millis());
        for f in o.info.iter().chain(&o.failures).chain(&o.known) {
            println!("    {f}");
        }
        if !o.failures.is_empty() {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use ocbv_engines::Strategy as Pick;
use ocbv_engines::*;
use ocbv_term::*;
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn p(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

const T: &str = "((\\y.\\x.x x) (z z)) (\\x.x x)";
const U: &str = "(\\x.x x) ((\\y.\\x.x x) (z z))";
const DELTA: &str = "(\\x.x x)";

fn det(t: &Term, calc: Calculus, fuel: usize) -> Derivation {
    evaluate(t, calc, Pick::Deterministic, fuel).unwrap()
}

fn assert_prefix(d: &Derivation, expected: &[(Rule, &str)]) {
    assert!(d.len() >= expected.len(), "derivation too short: {}", d.len());
    for (i, (rule, term)) in expected.iter().enumerate() {
        assert_eq!(d.steps[i].site.rule, *rule, "rule of step {i}");
        assert!(alpha_eq(&d.steps[i].term, &p(term)), "step {i}: got {}, expected {term}", d.steps[i].term);
    }
}

#[test]
fn running_example_is_plot_normal() {
    for s in [T, U] {
        let t = p(s);
        assert!(enumerate_redexes(&t, Calculus::Plot).unwrap().is_empty());
        let d = det(&t, Calculus::Plot, 100);
        assert_eq!(d.status, Status::Normal);
        assert_eq!(d.len(), 0);
    }
}

#[test]
fn fire_sites_of_running_example() {
    let sites = enumerate_redexes(&p(T), Calculus::Fire).unwrap();
    assert_eq!(sites, vec![RedexSite { path: Path(vec![Dir::FunOf]), rule: Rule::BetaInert }]);
}

#[test]
fn fire_reproduces_worked_prefix() {
    let dd = format!("{DELTA} {DELTA}");
    let d = det(&p(T), Calculus::Fire, 50);
    assert_prefix(&d, &[(Rule::BetaInert, &dd), (Rule::BetaAbs, &dd), (Rule::BetaAbs, &dd)]);
    assert_eq!(d.status, Status::Fuelled);
    let d = det(&p(U), Calculus::Fire, 50);
    assert_prefix(&d, &[(Rule::BetaInert, &dd), (Rule::BetaAbs, &dd)]);
    assert_eq!(d.status, Status::Fuelled);
}

#[test]
fn vsub_reproduces_worked_prefix() {
    let d = det(&p(T), Calculus::Vsub, 100);
    assert_prefix(
        &d,
        &[
            (Rule::Mult, "(\\x.x x)[y:=z z] (\\x.x x)"),
            (Rule::Mult, "(x x)[x:=\\x.x x][y:=z z]"),
            (Rule::ExpAbs, "((\\x.x x) (\\x.x x))[y:=z z]"),
        ],
    );
    assert_eq!(d.status, Status::Fuelled);
}

#[test]
fn shuf_reproduces_worked_prefix() {
    let d = det(&p(T), Calculus::Shuf, 100);
    assert_prefix(
        &d,
        &[(Rule::SigmaL, "(\\y.(\\x.x x) (\\x.x x)) (z z)"), (Rule::BetaShuf, "(\\y.(\\x.x x) (\\x.x x)) (z z)")],
    );
    assert_eq!(d.steps[1].site.path, Path(vec![Dir::FunOf, Dir::BodyOfAbs]));
    assert_eq!(d.status, Status::Fuelled);
    let d = det(&p(U), Calculus::Shuf, 100);
    assert_prefix(&d, &[(Rule::SigmaR, "(\\y.(\\x.x x) (\\x.x x)) (z z)")]);
    assert_eq!(d.status, Status::Fuelled);
}

#[test]
fn identity_applied_to_identity_in_vsub() {
    let t = p("(\\x.x) (\\y.y)");
    assert_eq!(
        enumerate_redexes(&t, Calculus::Vsub).unwrap(),
        vec![RedexSite { path: Path::root(), rule: Rule::Mult }]
    );
    let d = det(&t, Calculus::Vsub, 10);
    assert_eq!(d.status, Status::Normal);
    assert_eq!(d.counts.get(Rule::Mult), 1);
    assert_eq!(d.counts.get(Rule::ExpAbs), 1);
    assert_eq!(d.counts.total(), 2);
    assert!(alpha_eq(d.end(), &p("\\y.y")));
    assert_eq!(step_counts(&d), d.counts);
}

#[test]
fn step_examples() {
    let t = p(T);
    let r = step(&t, &RedexSite { path: Path(vec![Dir::FunOf]), rule: Rule::Mult }).unwrap();
    assert!(alpha_eq(&r, &p("(\\x.x x)[y:=z z] (\\x.x x)")));
    let t2 = p("(x x)[x:=\\x.x x][y:=z z]");
    let r = step(&t2, &RedexSite { path: Path(vec![Dir::BodyOfEs]), rule: Rule::ExpAbs }).unwrap();
    assert!(alpha_eq(&r, &p("((\\x.x x) (\\x.x x))[y:=z z]")));
    let r = step(&t, &RedexSite { path: Path::root(), rule: Rule::SigmaL }).unwrap();
    assert!(alpha_eq(&r, &p("(\\y.(\\x.x x) (\\x.x x)) (z z)")));
    assert!(matches!(step(&t, &RedexSite { path: Path::root(), rule: Rule::Mult }), Err(EngineError::StaleSite(_))));
    assert!(step(
        &p("(\\x.(\\y.y) x) z"),
        &RedexSite { path: Path(vec![Dir::FunOf, Dir::BodyOfAbs]), rule: Rule::BetaAbs }
    )
    .is_err());
}

#[test]
fn fire_normal_examples() {
    let d = det(&p("x (\\y.y)"), Calculus::Fire, 10);
    assert_eq!(d.status, Status::Normal);
    assert_eq!(d.len(), 0);
}

#[test]
fn distance_rules_rename_substitution_context() {
    // The binder y of L occurs free in the argument and must not capture it.
    let t = p("((\\x.x y)[y:=z]) y");
    let r = step(&t, &RedexSite { path: Path::root(), rule: Rule::Mult }).unwrap();
    assert!(alpha_eq(&r, &p("(x w)[x:=y][w:=z]")));
    let t = p("(x y)[x:=(\\a.a)[y:=z]]");
    let r = step(&t, &RedexSite { path: Path::root(), rule: Rule::ExpAbs }).unwrap();
    assert!(alpha_eq(&r, &p("((\\a.a) y)[w:=z]")));
    // The variable may be bound by L itself.
    let t = p("(x x)[x:=y[y:=z w]]");
    let r = step(&t, &RedexSite { path: Path::root(), rule: Rule::ExpVar }).unwrap();
    assert!(alpha_eq(&r, &p("(y y)[y:=z w]")));
}

#[test]
fn sigma_rules_rename_when_needed() {
    let t = p("((\\x.x) y) x");
    let r = step(&t, &RedexSite { path: Path::root(), rule: Rule::SigmaL }).unwrap();
    assert!(alpha_eq(&r, &p("(\\w.w x) y")));
    let t = p("x ((\\x.x) y)");
    let r = step(&t, &RedexSite { path: Path::root(), rule: Rule::SigmaR }).unwrap();
    assert!(alpha_eq(&r, &p("(\\w.x w) y")));
}

#[test]
fn language_guards() {
    assert!(matches!(enumerate_redexes(&p("x[y:=z]"), Calculus::Fire), Err(EngineError::Language { .. })));
    assert!(matches!(enumerate_redexes(&p("x (y z)"), Calculus::Vsubk), Err(EngineError::Language { .. })));
    assert!(enumerate_redexes(&p("(x z)[z:=y z]"), Calculus::Vsubk).is_ok());
}

#[test]
fn normal_forms() {
    assert!(alpha_eq(&e_normal_form(&p("x[y:=z]")), &p("x")));
    assert!(alpha_eq(&e_normal_form(&p("(x y)[x:=z]")), &p("z y")));
    let t = p("((\\x.x) y) z");
    assert!(alpha_eq(&m_normal_form(&t), &p("x[x:=y] z")));
    let n = p("x y");
    assert!(alpha_eq(&m_normal_form(&n), &n));
    assert!(alpha_eq(&e_normal_form(&n), &n));
}

#[test]
fn nested_balanced_abstractions() {
    // A redex two balanced abstractions deep.
    let t = p("(\\a.(\\b.(\\c.c) b) a) z");
    let sites = enumerate_redexes(&t, Calculus::Shuf).unwrap();
    let deepest = Path(vec![Dir::FunOf, Dir::BodyOfAbs, Dir::FunOf, Dir::BodyOfAbs]);
    assert!(sites.iter().any(|s| s.path == deepest && s.rule == Rule::BetaShuf));
    let d = det(&t, Calculus::Shuf, 10);
    assert_eq!(d.status, Status::Normal);
    assert!(alpha_eq(d.end(), &p("z")));
}

fn arb_term(with_es: bool) -> impl proptest::strategy::Strategy<Value = Term> {
    let leaf = prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var);
    leaf.prop_recursive(4, 14, 2, move |inner| {
        let binder = prop::sample::select(vec!["x", "y", "z"]);
        let mut options = vec![
            (binder.clone(), inner.clone()).prop_map(|(x, b)| Term::abs(x, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)).boxed(),
        ];
        if with_es {
            options.push((inner.clone(), binder, inner).prop_map(|(b, x, d)| Term::es(b, x, d)).boxed());
        }
        prop::strategy::Union::new(options)
    })
}

fn one_step(t: &Term, calc: Calculus, rules: &[Rule]) -> Vec<Term> {
    redexes(t, calc).into_iter().filter(|s| rules.contains(&s.rule)).map(|s| step(t, &s).unwrap()).collect()
}

fn joinable(u: &Term, s: &Term, calc: Calculus, rules: &[Rule]) -> bool {
    let a: std::collections::HashSet<String> = one_step(u, calc, rules).iter().map(alpha_key).collect();
    one_step(s, calc, rules).iter().any(|r| a.contains(&alpha_key(r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn every_enumerated_site_steps(t in arb_term(true)) {
        for calc in [Calculus::Vsub] {
            for s in redexes(&t, calc) {
                prop_assert!(step(&t, &s).is_ok());
            }
        }
    }

    #[test]
    fn fire_and_vsub_diamonds(t in arb_term(false), e in arb_term(true)) {
        for (term, calc) in [(&t, Calculus::Fire), (&e, Calculus::Vsub), (&t, Calculus::Plot)] {
            let rules = calc.rules();
            let reducts = one_step(term, calc, rules);
            for i in 0..reducts.len() {
                for j in i + 1..reducts.len() {
                    if !alpha_eq(&reducts[i], &reducts[j]) {
                        prop_assert!(joinable(&reducts[i], &reducts[j], calc, rules), "{} in {}", term, calc);
                    }
                }
            }
        }
    }

    #[test]
    fn exponential_steps_bounded_by_multiplicative(t in arb_term(false)) {
        let d = evaluate(&t, Calculus::Vsub, Pick::Deterministic, 200).unwrap();
        prop_assert!(d.counts.e() <= d.counts.m());
    }

    #[test]
    fn fire_normal_iff_fireball(t in arb_term(false)) {
        let normal = redexes(&t, Calculus::Fire).is_empty();
        prop_assert_eq!(normal, classify_fire(&t).unwrap() != FireClass::NotFireball);
    }
}

use ocbv_term::*;
use proptest::prelude::*;

fn p(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn delta() -> Term {
    p("\\x.x x")
}

#[test]
fn parse_abstraction_body_extends_right() {
    let t = p("\\x.x x");
    assert!(alpha_eq(&t, &Term::abs("x", Term::app(Term::var("x"), Term::var("x")))));
}

#[test]
fn parse_explicit_substitution() {
    let t = p("(x z)[z:=y]");
    assert!(alpha_eq(&t, &Term::es(Term::app(Term::var("x"), Term::var("z")), "z", Term::var("y"))));
}

#[test]
fn parse_running_example() {
    let t = p("((\\y.\\x.x x) (z z)) (\\x.x x)");
    let expected = Term::app(Term::app(Term::abs("y", delta()), Term::app(Term::var("z"), Term::var("z"))), delta());
    assert!(alpha_eq(&t, &expected));
}

#[test]
fn parse_multi_binder_and_application_associativity() {
    let t = p("\\x y.x y z");
    let expected = Term::abs("x", Term::abs("y", Term::app(Term::app(Term::var("x"), Term::var("y")), Term::var("z"))));
    assert!(alpha_eq(&t, &expected));
}

#[test]
fn parse_errors_report_offset_and_expectations() {
    let e = parse_term("(x y").unwrap_err();
    assert_eq!(e.offset, 4);
    assert!(e.expected.iter().any(|s| s.contains(')')));
    let e = parse_term("x [y:=]").unwrap_err();
    assert_eq!(e.offset, 6);
    let e = parse_term("").unwrap_err();
    assert_eq!(e.offset, 0);
    assert!(parse_term("\\.x").is_err());
    assert!(parse_term("x#1").is_err());
    assert!(parse_term("1x").is_err());
}

#[test]
fn print_examples() {
    assert_eq!(print_term(&Term::abs("x", Term::var("x"))), "\\x.x");
    assert_eq!(print_term(&Term::es(Term::var("x"), "y", Term::var("z"))), "x[y:=z]");
    assert_eq!(print_term(&p("(\\x.x) (\\y.y)")), "(\\x.x) (\\y.y)");
    assert_eq!(print_term(&p("(x y)[y:=z] w")), "(x y)[y:=z] w");
    assert_eq!(print_term(&p("x (y z)")), "x (y z)");
}

#[test]
fn free_variable_examples() {
    let names = |t: &Term| free_vars(t).into_iter().map(|n| n.to_string()).collect::<Vec<_>>();
    assert_eq!(names(&Term::var("x")), vec!["x"]);
    assert_eq!(names(&Term::es(Term::var("x"), "x", Term::var("y"))), vec!["y"]);
    assert_eq!(names(&p("(\\x.x) z")), vec!["z"]);
}

#[test]
fn substitution_examples() {
    assert!(alpha_eq(&substitute(&Term::var("x"), "x", &delta()), &delta()));
    let captured = substitute(&Term::abs("y", Term::var("x")), "x", &Term::var("y"));
    match &captured {
        Term::Abs(b, body) => {
            assert_ne!(&**b, "y");
            assert!(matches!(&**body, Term::Var(v) if &**v == "y"));
        }
        _ => panic!("expected an abstraction"),
    }
    assert!(alpha_eq(&substitute(&delta(), "y", &p("z z")), &delta()));
    let es = substitute(&p("(x y)[y:=x]"), "x", &p("y"));
    assert!(alpha_eq(&es, &p("(y w)[w:=y]")));
}

#[test]
fn alpha_examples() {
    assert!(alpha_eq(&p("\\x.x"), &p("\\y.y")));
    assert!(alpha_eq(&p("x[y:=z]"), &p("x[w:=z]")));
    assert!(!alpha_eq(&p("\\x.x y"), &p("\\y.y y")));
    assert!(!alpha_eq(&p("x[x:=z]"), &p("x[y:=z]")));
    assert_eq!(alpha_key(&p("\\x.\\y.x")), alpha_key(&p("\\a.\\b.a")));
    assert_ne!(alpha_key(&p("\\x.\\y.x")), alpha_key(&p("\\a.\\b.b")));
}

#[test]
fn fire_classification_examples() {
    assert_eq!(classify_fire(&p("x (\\y.y)")), Ok(FireClass::Inert));
    assert_eq!(classify_fire(&p("(z (\\x.x)) (z z) (\\y.z y)")), Ok(FireClass::Inert));
    assert_eq!(classify_fire(&p("(\\x.x) y")), Ok(FireClass::NotFireball));
    assert_eq!(classify_fire(&p("\\x.(\\y.y) x")), Ok(FireClass::AbsFireball));
    assert_eq!(classify_fire(&p("x y")), Ok(FireClass::Inert));
    assert_eq!(classify_fire(&p("x[y:=z]")), Err(ContainsEs));
}

#[test]
fn unfold_examples() {
    assert!(alpha_eq(&unfold(&p("(x x)[x:=\\y.y]")), &p("(\\y.y) (\\y.y)")));
    let pure = p("(\\x.x y) z");
    assert!(alpha_eq(&unfold(&pure), &pure));
    assert!(alpha_eq(&unfold(&p("x[y:=(\\x.x x) (\\x.x x)]")), &p("x")));
    assert!(alpha_eq(&unfold(&p("(x y)[x:=y][y:=z]")), &p("z z")));
}

#[test]
fn clean_examples() {
    let d = clean_decompose(&p("(x x)[x:=z w]")).expect("clean");
    assert!(alpha_eq(&d.body, &p("x x")));
    assert_eq!(d.bindings.len(), 1);
    assert_eq!(&*d.bindings[0].0, "x");
    assert!(alpha_eq(&d.bindings[0].1, &p("z w")));
    let pure = p("(\\x.x) y");
    let d = clean_decompose(&pure).expect("pure terms are clean");
    assert!(d.bindings.is_empty() && alpha_eq(&d.body, &pure));
    assert!(clean_decompose(&p("x[y:=(\\z.z) w]")).is_none());
    let d = clean_decompose(&p("(x y)[x:=a][y:=b x]")).expect("clean");
    assert_eq!(&*d.bindings[0].0, "x");
    assert!(alpha_eq(&d.reassemble(), &p("(x y)[x:=a][y:=b x]")));
}

#[test]
fn harmless_examples() {
    assert!(is_harmless(&p("(x y)[y:=\\z.z]")));
    assert!(!is_harmless(&p("(y x)[y:=\\z.z]")));
    assert!(is_harmless(&p("(\\x.x) (y z)")));
    assert!(is_harmless(&p("(x y)[y:=z w]")));
}

#[test]
fn paths_address_and_replace() {
    let t = p("((\\y.y) (z z)) w");
    let sub = subterm_at(&t, &[Dir::FunOf, Dir::ArgOf]).unwrap();
    assert!(alpha_eq(sub, &p("z z")));
    let r = replace_at(&t, &[Dir::FunOf, Dir::ArgOf], &mut |_| Some(Term::var("q"))).unwrap();
    assert!(alpha_eq(&r, &p("((\\y.y) q) w")));
    assert!(subterm_at(&t, &[Dir::BodyOfEs]).is_none());
    assert_eq!(Path::from(vec![Dir::FunOf, Dir::ArgOf]).to_string(), "[FunOf,ArgOf]");
}

fn arb_term(with_es: bool) -> impl Strategy<Value = Term> {
    let leaf = prop::sample::select(vec!["x", "y", "z", "w"]).prop_map(Term::var);
    leaf.prop_recursive(5, 24, 2, move |inner| {
        let binder = prop::sample::select(vec!["x", "y", "z", "w"]);
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

fn arb_value() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        (prop::sample::select(vec!["x", "y", "z"]), arb_term(false)).prop_map(|(x, b)| Term::abs(x, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn print_parse_round_trip(t in arb_term(true)) {
        let back = parse_term(&print_term(&t)).unwrap();
        prop_assert!(alpha_eq(&back, &t));
        prop_assert_eq!(alpha_key(&back), alpha_key(&t));
    }

    #[test]
    fn substitution_composes(t in arb_term(true), v in arb_value(), w in arb_value()) {
        prop_assume!(!occurs_free(&w, "x"));
        let lhs = substitute(&substitute(&t, "x", &v), "y", &w);
        let rhs = substitute(&substitute(&t, "y", &w), "x", &substitute(&v, "y", &w));
        prop_assert!(alpha_eq(&lhs, &rhs));
    }

    #[test]
    fn unfold_commutes_with_substitution(t in arb_term(true), v in arb_value()) {
        let lhs = unfold(&substitute(&t, "x", &v));
        let rhs = substitute(&unfold(&t), "x", &unfold(&v));
        prop_assert!(alpha_eq(&lhs, &rhs));
    }

    #[test]
    fn unfold_is_identity_exactly_on_pure_terms(t in arb_term(true)) {
        let u = unfold(&t);
        prop_assert!(!u.has_es());
        if !t.has_es() {
            prop_assert!(alpha_eq(&u, &t));
        }
    }

    #[test]
    fn clean_decomposition_unfolds_consistently(t in arb_term(true)) {
        if let Some(d) = clean_decompose(&t) {
            prop_assert!(alpha_eq(&d.unfolded(), &unfold(&t)));
            prop_assert!(alpha_eq(&d.reassemble(), &t));
        }
    }

    #[test]
    fn alpha_key_agrees_with_alpha_eq(t in arb_term(true), u in arb_term(true)) {
        prop_assert_eq!(alpha_eq(&t, &u), alpha_key(&t) == alpha_key(&u));
        let renamed = substitute(&Term::abs("q", Term::app(t.clone(), Term::var("q"))), "zz", &Term::var("q"));
        prop_assert!(alpha_eq(&renamed, &Term::abs("q", Term::app(t.clone(), Term::var("q")))));
    }
}

#[test]
fn nesting_limit_rejects_deep_inputs() {
    let n = MAX_NESTING;
    let ok = format!("{}x{}", "(".repeat(n - 1), ")".repeat(n - 1));
    assert!(parse_term(&ok).is_ok());
    let deep_parens = format!("{}x{}", "(".repeat(n + 1), ")".repeat(n + 1));
    let long_app = vec!["x"; n + 2].join(" ");
    let many_binders = format!("\\{}.x", vec!["x"; n + 1].join(" "));
    let es_chain = format!("x{}", "[y:=z]".repeat(n + 1));
    for input in [deep_parens, long_app, many_binders, es_chain] {
        let e = parse_term(&input).unwrap_err();
        assert_eq!(e.found, "deeper nesting", "{}", &input[..20]);
    }
    let fine = vec!["x"; n - 1].join(" ");
    assert_eq!(p(&fine).size(), 2 * (n - 1) - 1);
}

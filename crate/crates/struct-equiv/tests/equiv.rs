use ocbv_engines::{redexes, step, Calculus, Rule};
use ocbv_equiv::*;
use ocbv_sequent::{parse_command, Command, SeqRule};
use ocbv_term::{alpha_eq, parse_term, unfold, Term};
use proptest::prelude::*;

fn p(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn c(s: &str) -> Command {
    parse_command(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn contains(ns: &[Term], s: &str) -> bool {
    let t = p(s);
    ns.iter().any(|n| alpha_eq(n, &t))
}

fn both(t: &str, u: &str) -> bool {
    let (t, u) = (p(t), p(u));
    let slow = struct_equiv(&t, &u).unwrap();
    assert_eq!(slow, struct_equiv_fast(&t, &u), "procedures disagree on {t} vs {u}");
    slow
}

#[test]
fn neighbor_examples() {
    let ns = equiv_neighbors(&p("a[y:=b][x:=c]"));
    assert!(contains(&ns, "a[x:=c][y:=b]"));
    assert!(equiv_neighbors(&p("x y")).is_empty());
    let ns = equiv_neighbors(&p("a[x:=b] c"));
    assert!(contains(&ns, "(a c)[x:=b]"));
    let ns = equiv_neighbors(&p("a (c[x:=b])"));
    assert!(contains(&ns, "(a c)[x:=b]"));
    let ns = equiv_neighbors(&p("a[x:=b[y:=c]]"));
    assert!(contains(&ns, "a[x:=b][y:=c]"));
}

#[test]
fn neighbors_rename_avoidable_side_conditions() {
    // x is free in the argument, so the binder is renamed.
    let ns = equiv_neighbors(&p("x[x:=b] x"));
    assert!(contains(&ns, "(w x)[w:=b]"));
    // y is free in the body, so the inner binder is renamed.
    let ns = equiv_neighbors(&p("(x y)[x:=y[y:=c]]"));
    assert!(contains(&ns, "(x y)[x:=w][w:=c]"));
}

#[test]
fn genuine_side_conditions_block_moves() {
    // x occurs in the definition of y: com does not apply.
    let t = p("a[y:=x][x:=c]");
    let ns = tagged_equiv_neighbors(&t);
    assert!(ns.iter().all(|n| n.axiom != EquivAxiom::Com));
    assert!(!both("a[y:=x][x:=c]", "a[x:=c][y:=x]"));
    // x is used by both sides of the application.
    assert!(!both("(x x)[x:=c]", "x[x:=c] x"));
}

#[test]
fn struct_equiv_examples() {
    assert!(both("(x y)[y:=z]", "(x y)[y:=z]"));
    let delta = "(\\x.x x)";
    assert!(both(&format!("{delta}[y:=z z] {delta}"), &format!("({delta} {delta})[y:=z z]")));
    assert!(both("(a b)[x:=c][y:=d]", "a[y:=d] (b[x:=c])"));
    assert!(!both("x y", "y x"));
    // No equivalence under abstractions.
    assert!(!both("\\w.(a[x:=b] c)", "\\w.((a c)[x:=b])"));
}

#[test]
fn cap_is_reported() {
    let t = p("(a b c d)[x1:=e][x2:=f][x3:=g][x4:=h]");
    assert!(matches!(struct_equiv_with_cap(&t, &p("q"), 3), Ok(false)));
    let same_shape = p("(a b c d)[x1:=e][x2:=f][x3:=g][x4:=q]");
    assert_eq!(struct_equiv_with_cap(&t, &same_shape, 3), Err(EquivError::CapExceeded { cap: 3 }));
}

#[test]
fn dead_bindings_with_shared_structure() {
    // Two unreachable bindings refer to a third; sharing must be respected.
    assert!(both("x[a:=z][b:=a][c:=a]", "x[a:=z][c:=a][b:=a]"));
    assert!(!both("x[a:=z][b:=a][c:=b]", "x[a:=z][b:=a][c:=a]"));
    assert!(both("x[a:=z][b:=z]", "x[b:=z][a:=z]"));
}

#[test]
fn seq_examples() {
    let x = c("<x | #>");
    assert!(seq_struct_equiv(&x, &x).unwrap());
    assert!(!seq_struct_equiv(&x, &c("<y | #>")).unwrap());
    let a = c("<u | mu~x.<v | mu~y.<x | y . #>>>");
    let b = c("<v | mu~y.<u | mu~x.<x | y . #>>>");
    assert!(seq_struct_equiv(&a, &b).unwrap());
    // x is used by the inner context: no swap.
    let a = c("<u | mu~x.<x | mu~y.<y | #>>>");
    assert!(seq_equiv_neighbors(&a).is_empty());
    // The inner binder is renamed when the outer context mentions it.
    let a = c("<y | mu~x.<v | mu~y.<x | y . #>>>");
    let ns = seq_equiv_neighbors(&a);
    assert_eq!(ns.len(), 1);
    assert!(ocbv_sequent::cmd_alpha_eq(&ns[0], &c("<v | mu~w.<y | mu~x.<x | w . #>>>")));
}

#[test]
fn bisim_examples() {
    let t = p("((\\x.x) y)[z:=w] v");
    let u = p("(((\\x.x) y) v)[z:=w]");
    assert!(struct_equiv(&t, &u).unwrap());
    for rules in [&[Rule::Mult][..], &[Rule::ExpAbs, Rule::ExpVar], &[Rule::Mult, Rule::ExpAbs, Rule::ExpVar]] {
        assert!(check_bisim_step(&t, &u, rules).passed());
        assert!(check_bisim_step(&u, &t, rules).passed());
    }
    let r = check_bisim_step(&t, &t, &[Rule::Mult]);
    assert!(r.passed());
    assert_eq!(r.checked, 1);

    let a = c("<\\q.<q | #> | mu~x.<v | mu~y.<x | y . #>>>");
    let b = c("<v | mu~y.<\\q.<q | #> | mu~x.<x | y . #>>>");
    let r = check_seq_bisim_step(&a, &b, &[SeqRule::LamBar, SeqRule::MuTilde]).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked, 2);
}

#[test]
fn postponement_example() {
    let t = p("(\\x.x) y z");
    let moves = vec![
        MixedStep::Reduce(redexes(&t, Calculus::Vsub)[0].clone()),
        MixedStep::Equiv(p("(x z)[x:=y]")),
        MixedStep::Reduce(ocbv_engines::RedexSite { path: ocbv_term::Path::root(), rule: Rule::ExpVar }),
    ];
    let out = postpone(&t, &moves).unwrap();
    assert_eq!(out.derivation.len(), 2);
    assert_eq!(out.derivation.counts.get(Rule::Mult), 1);
    assert_eq!(out.derivation.counts.get(Rule::ExpVar), 1);
    assert!(alpha_eq(&out.mixed_end, &p("y z")));
    assert!(struct_equiv_fast(out.derivation.end(), &out.mixed_end));
    let bad = vec![MixedStep::Equiv(p("y z x"))];
    assert_eq!(postpone(&t, &bad).unwrap_err(), PostponeError::NotEquivalent { index: 0 });
}

fn arb_term() -> impl Strategy<Value = Term> {
    let names = vec!["x", "y", "z"];
    let leaf = prop::sample::select(names.clone()).prop_map(Term::var);
    leaf.prop_recursive(4, 12, 2, move |inner| {
        let binder = prop::sample::select(names.clone());
        prop_oneof![
            1 => (binder.clone(), inner.clone()).prop_map(|(x, b)| Term::abs(x, b)),
            2 => (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)),
            2 => (inner.clone(), binder, inner).prop_map(|(b, x, d)| Term::es(b, x, d)),
        ]
    })
}

/// Follows `choices` through the neighbor graph.
fn walk(t: &Term, choices: &[usize]) -> Term {
    let mut cur = t.clone();
    for &i in choices {
        let ns = equiv_neighbors(&cur);
        if ns.is_empty() {
            break;
        }
        cur = ns[i % ns.len()].clone();
    }
    cur
}

fn vsub_normal(t: &Term, rules: &[Rule]) -> bool {
    redexes(t, Calculus::Vsub).iter().all(|s| !rules.contains(&s.rule))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn procedures_agree_on_walks(t in arb_term(), choices in prop::collection::vec(0usize..16, 0..6)) {
        let u = walk(&t, &choices);
        prop_assert!(struct_equiv_fast(&t, &u), "{} vs {}", t, u);
        prop_assert!(struct_equiv(&t, &u).unwrap());
        prop_assert_eq!(canonical_key(&t), canonical_key(&u));
    }

    #[test]
    fn procedures_agree_on_unrelated_pairs(t in arb_term(), u in arb_term()) {
        prop_assert_eq!(struct_equiv(&t, &u).unwrap(), struct_equiv_fast(&t, &u), "{} vs {}", t, u);
    }

    #[test]
    fn neighbors_preserve_unfolding_and_normality(t in arb_term()) {
        let families: [&[Rule]; 5] = [
            &[Rule::Mult],
            &[Rule::ExpAbs],
            &[Rule::ExpVar],
            &[Rule::ExpAbs, Rule::ExpVar],
            &[Rule::Mult, Rule::ExpAbs, Rule::ExpVar],
        ];
        for n in equiv_neighbors(&t) {
            prop_assert!(alpha_eq(&unfold(&t), &unfold(&n)));
            for rules in families {
                prop_assert_eq!(vsub_normal(&t, rules), vsub_normal(&n, rules));
                prop_assert!(check_bisim_step(&t, &n, rules).passed(), "{} vs {}", t, n);
            }
        }
    }

    #[test]
    fn postponement_on_random_interleavings(t in arb_term(), script in prop::collection::vec((any::<bool>(), 0usize..16), 0..8)) {
        let mut moves = Vec::new();
        let mut cur = t.clone();
        for (reduce, i) in script {
            if reduce {
                let sites = redexes(&cur, Calculus::Vsub);
                if sites.is_empty() { continue; }
                let s = sites[i % sites.len()].clone();
                cur = step(&cur, &s).unwrap();
                moves.push(MixedStep::Reduce(s));
            } else {
                cur = walk(&cur, &[i]);
                moves.push(MixedStep::Equiv(cur.clone()));
            }
        }
        let out = postpone(&t, &moves).unwrap();
        let reduce_rules: Vec<Rule> = moves.iter().filter_map(|m| match m {
            MixedStep::Reduce(s) => Some(s.rule),
            MixedStep::Equiv(_) => None,
        }).collect();
        prop_assert_eq!(out.derivation.len(), reduce_rules.len());
        for r in [Rule::Mult, Rule::ExpAbs, Rule::ExpVar] {
            prop_assert_eq!(out.derivation.counts.get(r), reduce_rules.iter().filter(|x| **x == r).count());
        }
        prop_assert!(struct_equiv(out.derivation.end(), &cur).unwrap());
    }
}

use std::collections::HashSet;

use ocbv_engines::{Calculus, Rule, Status};
use ocbv_harness::*;
use ocbv_sequent::{cmd_key, validate};
use ocbv_term::{alpha_key, parse_term, Term};

fn is_kernel_shape(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Abs(_, b) => is_kernel_shape(b),
        Term::App(f, a) => is_kernel_shape(f) && a.is_value() && is_kernel_shape(a),
        Term::Es(b, _, d) => is_kernel_shape(b) && is_kernel_shape(d),
    }
}

#[test]
fn generation_is_deterministic_per_seed() {
    let cfg = GenConfig::default().with_language(Language::WithEs);
    for seed in 0..50 {
        let a = gen_term(&cfg.with_seed(seed));
        let b = gen_term(&cfg.with_seed(seed));
        assert_eq!(a.to_string(), b.to_string());
    }
    let distinct: HashSet<String> = (0..50).map(|s| gen_term(&cfg.with_seed(s)).to_string()).collect();
    assert!(distinct.len() > 40);
}

#[test]
fn generated_terms_respect_language_and_size() {
    for lang in [Language::Pure, Language::WithEs, Language::Vsubk] {
        let cfg = GenConfig::default().with_language(lang).with_max_size(15);
        let mut sizes = HashSet::new();
        for seed in 0..500 {
            let t = gen_term(&cfg.with_seed(seed));
            assert!(t.size() <= 15, "{t} too large");
            sizes.insert(t.size());
            match lang {
                Language::Pure => assert!(!t.has_es(), "{t}"),
                Language::Vsubk => assert!(t.is_kernel() && is_kernel_shape(&t), "{t}"),
                _ => {}
            }
        }
        assert!(sizes.len() >= 10, "{lang:?} sizes {sizes:?}");
    }
}

#[test]
fn generated_commands_are_valid() {
    let cfg = GenConfig::default().with_language(Language::Sequent).with_max_size(20);
    for seed in 0..500 {
        let c = gen_command(&cfg.with_seed(seed));
        assert!(validate(&c), "{c}");
        assert!(c.size() <= 20 && (c.size() == 3 || c.size() >= 5), "{c}");
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    let zero = GenConfig { max_size: 0, ..GenConfig::default() };
    assert!(check_property(PropertyId::OpenHarmony, &zero, 10).is_err());
    let bias = GenConfig { abstraction_bias: 1.5, ..GenConfig::default() };
    assert!(bias.validate().is_err());
    let pool = GenConfig { free_var_pool: vec![], ..GenConfig::default() };
    assert!(pool.validate().is_err());
}

#[test]
fn enumeration_sizes() {
    let pure: Vec<usize> = (1..=5).map(|n| enumerate_terms(n, Language::Pure).len()).collect();
    assert_eq!(pure[0], 2);
    assert_eq!(pure[1], 5, "a, b, \\x.a, \\x.b and \\x.x");
    assert_eq!(enumerate_terms(9, Language::Pure).len(), 28_544);
    assert_eq!(enumerate_terms(8, Language::Pure).len(), 6_835);
    assert_eq!(enumerate_commands(9).len(), 147);
    assert!(enumerate_commands(4).iter().all(|c| c.size() == 3));
}

#[test]
fn enumeration_has_one_representative_per_class() {
    for lang in [Language::Pure, Language::WithEs, Language::Vsubk] {
        let ts = enumerate_terms(7, lang);
        let keys: HashSet<String> = ts.iter().map(alpha_key).collect();
        assert_eq!(keys.len(), ts.len(), "{lang:?}");
    }
    let cs = enumerate_commands(10);
    let keys: HashSet<String> = cs.iter().map(cmd_key).collect();
    assert_eq!(keys.len(), cs.len());
    assert!(cs.iter().all(validate));
}

#[test]
fn property_names_round_trip() {
    for id in PropertyId::ALL {
        assert_eq!(id.name().parse::<PropertyId>().unwrap(), *id);
        assert!(!id.summary().is_empty());
    }
    assert_eq!("vseq-diamond".parse::<PropertyId>().unwrap(), PropertyId::SeqDiamond);
    assert!(matches!("nope".parse::<PropertyId>(), Err(HarnessError::UnknownProperty(_))));
}

#[test]
fn all_derivations_of_a_small_term() {
    let t = parse_term("(\\x.x) ((\\y.y) a)").unwrap();
    let all = all_maximal_derivations(&t, Calculus::Vsub, 20, 100);
    assert!(!all.capped && !all.truncated);
    assert!(all.derivations.iter().all(|d| d.status == Status::Normal));
    let lengths: HashSet<usize> = all.derivations.iter().map(|d| d.len()).collect();
    assert_eq!(lengths.len(), 1, "strong confluence forces one length");
    let mults: HashSet<usize> = all.derivations.iter().map(|d| d.counts.get(Rule::Mult)).collect();
    assert_eq!(mults, HashSet::from([2]));
}

#[test]
fn derivation_enumeration_respects_fuel_and_cap() {
    let [t, _] = stuck_terms();
    let all = all_maximal_derivations(&t, Calculus::Fire, 5, 100);
    assert!(all.truncated);
    assert_eq!(all.normalizing().count(), 0);
    let many = parse_term("(\\x.x) a ((\\y.y) b) ((\\z.z) a)").unwrap();
    let capped = all_maximal_derivations(&many, Calculus::Vsub, 50, 2);
    assert!(capped.capped);
}

#[test]
fn diamond_checks_report_peaks() {
    let t = parse_term("(\\x.x) ((\\y.y) a)").unwrap();
    assert!(strongly_confluent_at(&t, Calculus::Vsub, &[Rule::Mult]).unwrap() >= 1);
    assert!(strongly_commute_at(&t, Calculus::Vsub, &[Rule::Mult], &[Rule::ExpAbs, Rule::ExpVar]).is_ok());
}

#[test]
fn random_reports_are_reproducible() {
    let cfg = GenConfig::default().with_seed(99);
    for id in [PropertyId::VsubDiamond, PropertyId::StagedVsubCounts, PropertyId::SeqbarBisim] {
        let a = check_property(id, &cfg, 100).unwrap();
        let b = check_property(id, &cfg, 100).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a.records(), b.records());
        assert_eq!(a.trials, 100);
    }
}

#[test]
fn every_property_but_the_literal_round_trip_passes_small_runs() {
    let cfg = GenConfig::default().with_seed(3).with_max_size(15);
    for id in PropertyId::ALL {
        let r = check_property(*id, &cfg, 100).unwrap();
        if *id == PropertyId::KernelRoundtrip {
            assert!(!r.passed());
        } else {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn literal_round_trip_fails_on_a_known_pair() {
    let s = Sample::Term(parse_term("x[x:=y] z").unwrap());
    assert!(matches!(check_sample(PropertyId::KernelRoundtrip, &s, 0), Outcome::Fail { .. }));
    let s = Sample::Term(parse_term("(x z)[x:=y]").unwrap());
    assert!(matches!(check_sample(PropertyId::KernelImageRoundtrip, &s, 0), Outcome::Pass));
}

#[test]
fn exhaustive_small_runs_pass() {
    for id in [PropertyId::OpenHarmony, PropertyId::ShufSigmaSn, PropertyId::AppendAssoc, PropertyId::UnfoldEquiv] {
        let r = check_exhaustive(id, 6);
        assert!(r.passed(), "{r}");
        assert!(r.trials > 0);
    }
}

#[test]
fn shuf_length_variance_is_observed_exhaustively() {
    let r = check_exhaustive(PropertyId::ShufBetaCountInvariant, 7);
    assert!(r.passed(), "{r}");
    let n: usize = r.note("length_variance_terms").unwrap().parse().unwrap();
    assert!(n > 0);
}

#[test]
fn inert_steps_terminate_exhaustively() {
    assert!(exhaustive_termination(Calculus::Fire, &[Rule::BetaInert], 6, 50).is_empty());
}

#[test]
fn records_format() {
    let r = check_exhaustive(PropertyId::OpenHarmony, 3);
    let lines = r.records();
    assert_eq!(lines[0], "property=open-harmony");
    assert_eq!(lines[1], "mode=exhaustive");
    assert_eq!(lines.last().unwrap(), "status=pass");
    assert!(r.to_string().contains("elapsed_ms="));
}

#[test]
fn shuf_derivations_differ_in_length_but_not_in_beta_count() {
    let t = parse_term("(\\y.z) ((\\x.x x) (z z)) (\\x.x x)").unwrap();
    let all = all_maximal_derivations(&t, Calculus::Shuf, 50, 10_000);
    assert!(!all.capped);
    let normalizing: Vec<_> = all.normalizing().collect();
    assert!(!normalizing.is_empty());
    let lengths: HashSet<usize> = normalizing.iter().map(|d| d.len()).collect();
    let betas: HashSet<usize> = normalizing.iter().map(|d| d.counts.get(Rule::BetaShuf)).collect();
    assert!(lengths.len() > 1, "lengths {lengths:?}");
    assert_eq!(betas.len(), 1, "beta_shuf counts {betas:?}");
}

#[test]
fn normal_term_has_one_empty_derivation() {
    let all = all_maximal_derivations(&parse_term("\\x.x (y z)").unwrap(), Calculus::Shuf, 10, 10);
    assert_eq!(all.derivations.len(), 1);
    assert!(all.derivations[0].is_empty());
}

#[test]
fn size_histogram_covers_every_size() {
    for lang in [Language::Pure, Language::WithEs, Language::Vsubk] {
        let cfg = GenConfig::default().with_language(lang);
        let mut histogram = vec![0usize; cfg.max_size + 1];
        for i in 0..10_000 {
            histogram[gen_term(&cfg.with_seed(trial_seed(11, i))).size()] += 1;
        }
        assert!(histogram[1..].iter().all(|n| *n > 0), "{lang:?}: {histogram:?}");
    }
}

use std::sync::Arc;

use super::*;
use crate::argument::{make_inference, make_premise, Argument};
use crate::dsl::parse_theory;
use crate::model::{Literal, RuleId, WeightedArgumentationTheory};
use crate::strength::lookup_method;

fn theory(text: &str) -> Arc<WeightedArgumentationTheory> {
    let doc = parse_theory(text).unwrap_or_else(|d| panic!("{d:?}"));
    let t = doc.to_theory();
    assert!(t.validate().is_valid(), "{:?}", t.validate().violations());
    Arc::new(t)
}

fn premise(t: &Arc<WeightedArgumentationTheory>, lit: &str) -> Argument {
    make_premise(t, &lit.parse::<Literal>().unwrap()).unwrap()
}

fn infer(t: &Arc<WeightedArgumentationTheory>, rule: &str, ants: &[Argument]) -> Argument {
    make_inference(t, &RuleId::new(rule), ants).unwrap()
}

/// Axiom a1, defeasible d1 (1/4) deriving c1, ordinary p1 (1/2), strict s1
/// over both branches.
fn four_argument_instance() -> (Arc<WeightedArgumentationTheory>, Argument) {
    let t = theory(
        "axiom k1: a1\nprem o1: p1 w=0.5\ndefeas d1: a1 => c1 w=0.25\nstrict s1: c1, p1 -> cc\n",
    );
    let a1 = premise(&t, "a1");
    let a3 = premise(&t, "p1");
    let a2 = infer(&t, "d1", &[a1]);
    let a4 = infer(&t, "s1", &[a2, a3]);
    (t, a4)
}

#[test]
fn simple_product_fails_weakest_link_on_the_example() {
    let (t, a4) = four_argument_instance();
    let instance = Instance::Single {
        theory: t,
        argument: a4,
    };
    let sp = lookup_method("sp").unwrap();
    let wl = lookup_method("wl").unwrap();
    assert!(!check_principle(PrincipleId::WeakestLink, &sp, &instance).unwrap());
    assert!(check_principle(PrincipleId::WeakestLink, &wl, &instance).unwrap());
    assert!(check_principle(PrincipleId::WeakestLinkLimiting, &sp, &instance).unwrap());
}

#[test]
fn weakest_link_fails_antecedent_weakening_on_the_sketch_witness() {
    // Top rule 0.2 over an axiom; adding a 0.8-strength antecedent leaves the
    // minimum untouched.
    let t = theory(
        "axiom k1: x\nprem o1: e w=0.8\ndefeas d1: x => y w=0.2\ndefeas g1: x, e => z w=0.2\n",
    );
    let base = infer(&t, "d1", &[premise(&t, "x")]);
    let extra = premise(&t, "e");
    let extended = infer(&t, "g1", &[premise(&t, "x"), extra.clone()]);
    let instance = Instance::Extension {
        theory: t,
        base,
        extended,
        extra,
    };
    let wl = lookup_method("wl").unwrap();
    let sp = lookup_method("sp").unwrap();
    assert!(!check_principle(PrincipleId::AntecedentWeakening, &wl, &instance).unwrap());
    assert!(check_principle(PrincipleId::AntecedentWeakening, &sp, &instance).unwrap());
    // The same pair with a strength-1 extra is neutral for both.
    let t2 =
        theory("axiom k1: x\naxiom k2: e\ndefeas d1: x => y w=0.2\ndefeas g1: x, e => z w=0.2\n");
    let neutral = Instance::Extension {
        base: infer(&t2, "d1", &[premise(&t2, "x")]),
        extended: infer(&t2, "g1", &[premise(&t2, "x"), premise(&t2, "e")]),
        extra: premise(&t2, "e"),
        theory: t2,
    };
    assert!(check_principle(PrincipleId::AntecedentNeutrality, &wl, &neutral).unwrap());
    assert!(check_principle(PrincipleId::AntecedentNeutrality, &sp, &neutral).unwrap());
}

#[test]
fn weakest_link_fails_inferential_weakening_and_weight_sensitivity() {
    // Single antecedent with strength 0.2 under rules weighing 0.8 and 0.5.
    let t = theory("prem o1: tt w=0.2\ndefeas d1: tt => a w=0.8\ndefeas d2: tt => b w=0.5\n");
    let ant = premise(&t, "tt");
    let high = infer(&t, "d1", std::slice::from_ref(&ant));
    let low = infer(&t, "d2", &[ant]);

    let wl = lookup_method("wl").unwrap();
    let sp = lookup_method("sp").unwrap();

    let single = Instance::Single {
        theory: t.clone(),
        argument: high.clone(),
    };
    assert!(!check_principle(PrincipleId::InferentialWeakening, &wl, &single).unwrap());
    assert!(check_principle(PrincipleId::InferentialWeakening, &sp, &single).unwrap());

    let pair = Instance::Pair {
        theory: t,
        first: low,
        second: high,
    };
    assert!(!check_principle(PrincipleId::InferenceWeightSensitivity, &wl, &pair).unwrap());
    assert!(check_principle(PrincipleId::InferenceWeightSensitivity, &sp, &pair).unwrap());
}

#[test]
fn weakest_link_fails_proportionality_on_the_sketch_witness() {
    // Equal 0.2 top rules; one antecedent at 0.8 dominates the other at 0.5.
    let t = theory(
        "prem o1: u w=0.8\nprem o2: v w=0.5\ndefeas d1: u => a w=0.2\ndefeas d2: v => b w=0.2\n",
    );
    let first = infer(&t, "d1", &[premise(&t, "u")]);
    let second = infer(&t, "d2", &[premise(&t, "v")]);
    let instance = Instance::Pair {
        theory: t,
        first,
        second,
    };
    let wl = lookup_method("wl").unwrap();
    let sp = lookup_method("sp").unwrap();
    assert!(!check_principle(PrincipleId::Proportionality, &wl, &instance).unwrap());
    assert!(check_principle(PrincipleId::Proportionality, &sp, &instance).unwrap());
}

#[test]
fn lukasiewicz_fails_resilience_on_the_half_half_witness() {
    let t = theory("prem o1: p w=0.5\ndefeas d1: p => q w=0.5\n");
    let arg = infer(&t, "d1", &[premise(&t, "p")]);
    let instance = Instance::Single {
        theory: t,
        argument: arg,
    };
    let luk = lookup_method("lukasiewicz").unwrap();
    assert!(!check_principle(PrincipleId::Resilience, &luk, &instance).unwrap());
    for survivor in ["sp", "wl", "prod-prod", "min-min", "prod-min", "hamacher"] {
        let m = lookup_method(survivor).unwrap();
        assert!(
            check_principle(PrincipleId::Resilience, &m, &instance).unwrap(),
            "{survivor}"
        );
    }
}

#[test]
fn premising_restates_the_leaf_weight() {
    let t = theory("prem o1: p w=0.7\n");
    let leaf = Instance::Single {
        theory: t.clone(),
        argument: premise(&t, "p"),
    };
    for name in crate::strength::BUILTIN_METHODS {
        let m = lookup_method(name).unwrap();
        assert!(check_principle(PrincipleId::Premising, &m, &leaf).unwrap());
    }
}

#[test]
fn vacuous_instances_count_as_satisfied() {
    let (t, a4) = four_argument_instance();
    let instance = Instance::Single {
        theory: t,
        argument: a4,
    };
    let sp = lookup_method("sp").unwrap();
    // No zero weight anywhere, so argument death holds vacuously; the
    // argument is not strict, so strict-argument holds vacuously.
    assert!(check_principle(PrincipleId::ArgumentDeath, &sp, &instance).unwrap());
    assert!(check_principle(PrincipleId::StrictArgument, &sp, &instance).unwrap());
    // Premising is vacuous on inference arguments.
    assert!(check_principle(PrincipleId::Premising, &sp, &instance).unwrap());
}

#[test]
fn instance_shape_mismatch_is_an_error() {
    let (t, a4) = four_argument_instance();
    let single = Instance::Single {
        theory: t,
        argument: a4,
    };
    let sp = lookup_method("sp").unwrap();
    let err = check_principle(PrincipleId::Anonymity, &sp, &single).unwrap_err();
    assert_eq!(err.principle, PrincipleId::Anonymity);
}

#[test]
fn generator_is_deterministic_and_valid() {
    let cfg = GeneratorConfig {
        seed: 42,
        ..Default::default()
    };
    let a = generate_theory(&cfg);
    let b = generate_theory(&cfg);
    let text = |t: &WeightedArgumentationTheory| {
        crate::dsl::print_theory(&crate::dsl::document_from_theory(t))
    };
    assert_eq!(text(&a), text(&b));

    for seed in 0..100 {
        let t = generate_theory(&GeneratorConfig {
            seed,
            ..Default::default()
        });
        assert!(t.validate().is_valid(), "seed {seed}");
    }
}

#[test]
fn zero_defeasible_content_makes_everything_strict() {
    let cfg = GeneratorConfig {
        seed: 7,
        ordinary_premises: 0,
        defeasible_rules: 0,
        ..Default::default()
    };
    let t = generate_theory(&cfg);
    let args = crate::argument::enumerate_arguments(&t, 3);
    assert!(!args.is_empty());
    for name in crate::strength::BUILTIN_METHODS {
        let m = lookup_method(name).unwrap();
        for a in &args {
            assert!(a.is_strict());
            assert_eq!(m.evaluate(&t, a), 1.0, "{name}");
        }
    }
}

#[test]
fn probe_finds_the_expected_falsifications_for_sp_and_wl() {
    let cfg = GeneratorConfig {
        seed: 11,
        ..Default::default()
    };
    let sp = lookup_method("sp").unwrap();
    let verdict = probe_principle(PrincipleId::WeakestLink, &sp, &cfg, 500).unwrap();
    let witness = verdict.witness().expect("weakest link must falsify for sp");
    assert_eq!(replay_witness(witness), Ok(false));

    let wl = lookup_method("wl").unwrap();
    for p in [
        PrincipleId::AntecedentWeakening,
        PrincipleId::InferentialWeakening,
        PrincipleId::InferenceWeightSensitivity,
        PrincipleId::Proportionality,
    ] {
        let verdict = probe_principle(p, &wl, &cfg, 800).unwrap();
        let witness = verdict
            .witness()
            .unwrap_or_else(|| panic!("{p} must falsify for wl"));
        assert_eq!(replay_witness(witness), Ok(false), "{p}");
    }
}

#[test]
fn probe_respects_the_result_table_on_a_short_sweep() {
    let cfg = GeneratorConfig {
        seed: 23,
        ..Default::default()
    };
    for name in ["sp", "wl"] {
        let m = lookup_method(name).unwrap();
        for p in PrincipleId::ALL {
            let verdict =
                probe_principle(p, &m, &cfg, 200).unwrap_or_else(|e| panic!("{name}/{p}: {e}"));
            let expected_positive = known_status(&m, p).is_positive();
            if expected_positive {
                assert!(
                    matches!(verdict, PrincipleVerdict::KnownByTheorem { .. }),
                    "{name}/{p}"
                );
            }
        }
    }
}

#[test]
fn anonymity_probe_is_clean_even_for_non_well_behaved_methods() {
    let cfg = GeneratorConfig {
        seed: 5,
        ..Default::default()
    };
    for name in ["prod-mean", "lukasiewicz-mean"] {
        let m = lookup_method(name).unwrap();
        let verdict = probe_principle(PrincipleId::Anonymity, &m, &cfg, 300)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            matches!(verdict, PrincipleVerdict::KnownByTheorem { .. }),
            "{name}: {verdict:?}"
        );
    }
}

#[test]
fn lukasiewicz_resilience_probe_produces_a_replayable_witness() {
    let cfg = GeneratorConfig {
        seed: 3,
        ..Default::default()
    };
    let luk = lookup_method("lukasiewicz").unwrap();
    let verdict = probe_principle(PrincipleId::Resilience, &luk, &cfg, 800).unwrap();
    let witness = verdict.witness().expect("resilience must falsify");
    assert_eq!(replay_witness(witness), Ok(false));
    let json = serde_json::to_string(witness).unwrap();
    let back: Witness = serde_json::from_str(&json).unwrap();
    assert_eq!(replay_witness(&back), Ok(false));
}

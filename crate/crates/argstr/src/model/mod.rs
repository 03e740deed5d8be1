//! The logical building blocks: literals, inference rules, knowledge bases,
//! weighted argumentation theories, multisets, and the consistency machinery
//! (closure under strict rules) that argument construction relies on.

mod literal;
mod multiset;
mod theory;

pub use literal::Literal;
pub use multiset::Multiset;
pub use theory::{
    BasisElement, InferenceRule, KnowledgeBase, RuleId, RuleKind, ValidationReport, Violation,
    WeightedArgumentationTheory,
};

use std::collections::BTreeSet;

/// Closure of `base` under the strict rules in `rules`: the smallest superset
/// of `base` that contains the consequent of every strict rule whose
/// antecedents it already contains. Defeasible rules never fire here.
pub fn strict_closure<'a, I>(base: &BTreeSet<Literal>, rules: I) -> BTreeSet<Literal>
where
    I: IntoIterator<Item = &'a InferenceRule>,
{
    let strict: Vec<&InferenceRule> = rules
        .into_iter()
        .filter(|r| r.kind() == RuleKind::Strict)
        .collect();
    let mut closed = base.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for rule in &strict {
            if !closed.contains(rule.consequent())
                && rule.antecedents().iter().all(|a| closed.contains(a))
            {
                closed.insert(rule.consequent().clone());
                changed = true;
            }
        }
    }
    closed
}

/// A set is directly consistent when it contains no literal together with its
/// complement.
pub fn is_directly_consistent(set: &BTreeSet<Literal>) -> bool {
    set.iter().all(|l| !set.contains(&l.complement()))
}

/// A set is indirectly consistent when its closure under the strict rules is
/// directly consistent.
pub fn is_indirectly_consistent<'a, I>(set: &BTreeSet<Literal>, rules: I) -> bool
where
    I: IntoIterator<Item = &'a InferenceRule>,
{
    is_directly_consistent(&strict_closure(set, rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::str::FromStr;

    fn lit(s: &str) -> Literal {
        Literal::from_str(s).unwrap()
    }

    fn lits(items: &[&str]) -> BTreeSet<Literal> {
        items.iter().map(|s| lit(s)).collect()
    }

    fn strict(id: &str, ants: &[&str], cons: &str) -> InferenceRule {
        InferenceRule::strict(id, ants.iter().map(|s| lit(s)), lit(cons))
    }

    fn defeasible(id: &str, ants: &[&str], cons: &str) -> InferenceRule {
        InferenceRule::defeasible(id, ants.iter().map(|s| lit(s)), lit(cons))
    }

    #[test]
    fn closure_chains_strict_rules() {
        let rules = vec![strict("r1", &["a"], "b"), strict("r2", &["b"], "c")];
        assert_eq!(
            strict_closure(&lits(&["a"]), &rules),
            lits(&["a", "b", "c"])
        );
    }

    #[test]
    fn closure_ignores_defeasible_rules() {
        let rules = vec![defeasible("d1", &["a"], "b")];
        assert_eq!(strict_closure(&lits(&["a"]), &rules), lits(&["a"]));
    }

    #[test]
    fn closure_fires_rules_with_no_antecedents() {
        let rules = vec![strict("r1", &[], "t")];
        assert_eq!(strict_closure(&BTreeSet::new(), &rules), lits(&["t"]));
    }

    #[test]
    fn direct_consistency() {
        assert!(is_directly_consistent(&lits(&["a", "b"])));
        assert!(!is_directly_consistent(&lits(&["a", "~a"])));
        assert!(is_directly_consistent(&BTreeSet::new()));
    }

    #[test]
    fn indirect_consistency_detects_derived_conflict() {
        let rules = vec![strict("r1", &["a", "b"], "c"), strict("r2", &["c"], "~a")];
        assert!(!is_indirectly_consistent(&lits(&["a", "b"]), &rules));
        assert!(is_indirectly_consistent(&lits(&["a"]), &rules));
        assert!(!is_indirectly_consistent(&lits(&["a", "~a"]), &[]));
    }

    /// Reference saturation: repeatedly scan every rule until nothing changes,
    /// written without sharing code with `strict_closure`.
    fn saturate_oracle(base: &BTreeSet<Literal>, rules: &[InferenceRule]) -> BTreeSet<Literal> {
        let mut out: Vec<Literal> = base.iter().cloned().collect();
        loop {
            let mut added = false;
            for r in rules {
                if r.kind() != RuleKind::Strict {
                    continue;
                }
                let fire = r.antecedents().iter().all(|a| out.contains(a));
                if fire && !out.contains(r.consequent()) {
                    out.push(r.consequent().clone());
                    added = true;
                }
            }
            if !added {
                return out.into_iter().collect();
            }
        }
    }

    fn arb_literal() -> impl Strategy<Value = Literal> {
        (0..4u8, any::<bool>()).prop_map(|(i, neg)| {
            let atom = format!("p{i}");
            if neg {
                Literal::negative(atom)
            } else {
                Literal::positive(atom)
            }
        })
    }

    fn arb_rule(idx: usize) -> impl Strategy<Value = InferenceRule> {
        (
            proptest::collection::btree_set(arb_literal(), 0..3),
            arb_literal(),
            any::<bool>(),
        )
            .prop_map(move |(ants, cons, is_strict)| {
                if is_strict {
                    InferenceRule::strict(format!("r{idx}"), ants, cons)
                } else {
                    InferenceRule::defeasible(format!("r{idx}"), ants, cons)
                }
            })
    }

    fn arb_rules() -> impl Strategy<Value = Vec<InferenceRule>> {
        proptest::collection::vec(any::<u8>(), 0..5).prop_flat_map(|seeds| {
            seeds
                .into_iter()
                .enumerate()
                .map(|(i, _)| arb_rule(i))
                .collect::<Vec<_>>()
        })
    }

    proptest! {
        #[test]
        fn closure_matches_saturation_oracle(
            base in proptest::collection::btree_set(arb_literal(), 0..4),
            rules in arb_rules(),
        ) {
            prop_assert_eq!(strict_closure(&base, &rules), saturate_oracle(&base, &rules));
        }

        #[test]
        fn closure_is_inflationary_monotone_idempotent(
            base in proptest::collection::btree_set(arb_literal(), 0..4),
            extra in proptest::collection::btree_set(arb_literal(), 0..3),
            rules in arb_rules(),
        ) {
            let closed = strict_closure(&base, &rules);
            prop_assert!(closed.is_superset(&base), "inflationary");

            let mut bigger = base.clone();
            bigger.extend(extra);
            let closed_bigger = strict_closure(&bigger, &rules);
            prop_assert!(closed_bigger.is_superset(&closed), "monotone");

            prop_assert_eq!(strict_closure(&closed, &rules), closed, "idempotent");
        }

        #[test]
        fn indirect_consistency_implies_direct(
            base in proptest::collection::btree_set(arb_literal(), 0..4),
            rules in arb_rules(),
        ) {
            if is_indirectly_consistent(&base, &rules) {
                prop_assert!(is_directly_consistent(&base));
            }
        }
    }
}

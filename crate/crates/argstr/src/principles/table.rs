//! The registered satisfaction results: which principles each shipped method
//! provably satisfies or fails, and what every (well-behaved) aggregation
//! method is guaranteed.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::PrincipleId;
use crate::strength::StrengthMethod;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremTag {
    /// The simple product method's full satisfaction matrix.
    SimpleProductMatrix,
    /// The weakest link method's full satisfaction matrix.
    WeakestLinkMatrix,
    /// Every aggregation method satisfies anonymity.
    AggregationAnonymity,
    /// The principles every well-behaved aggregation method satisfies.
    WellBehavedGuarantees,
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremTag::SimpleProductMatrix => "the simple-product satisfaction matrix",
            TheoremTag::WeakestLinkMatrix => "the weakest-link satisfaction matrix",
            TheoremTag::AggregationAnonymity => "anonymity of every aggregation method",
            TheoremTag::WellBehavedGuarantees => "the well-behaved method guarantees",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnownStatus {
    /// Proved to hold for this specific method.
    Satisfied(TheoremTag),
    /// Proved to fail for this specific method; probes should find a witness.
    NotSatisfied(TheoremTag),
    /// Holds for the method's whole class.
    Guaranteed(TheoremTag),
    /// Nothing registered either way.
    NotGuaranteed,
}

impl KnownStatus {
    pub fn is_positive(&self) -> bool {
        matches!(self, KnownStatus::Satisfied(_) | KnownStatus::Guaranteed(_))
    }
}

const WL_FAILURES: [PrincipleId; 4] = [
    PrincipleId::AntecedentWeakening,
    PrincipleId::InferentialWeakening,
    PrincipleId::InferenceWeightSensitivity,
    PrincipleId::Proportionality,
];

/// The principles every well-behaved aggregation method satisfies, anonymity
/// aside.
pub const WELL_BEHAVED_GUARANTEES: [PrincipleId; 6] = [
    PrincipleId::Premising,
    PrincipleId::StrictArgument,
    PrincipleId::ArgumentDeath,
    PrincipleId::AntecedentMaximality,
    PrincipleId::AntecedentNeutrality,
    PrincipleId::WeakestLinkLimiting,
];

pub fn known_status(method: &StrengthMethod, principle: PrincipleId) -> KnownStatus {
    use KnownStatus::*;
    use PrincipleId::*;
    match method {
        StrengthMethod::SimpleProduct => {
            if principle == WeakestLink {
                NotSatisfied(TheoremTag::SimpleProductMatrix)
            } else {
                Satisfied(TheoremTag::SimpleProductMatrix)
            }
        }
        StrengthMethod::WeakestLink => {
            if WL_FAILURES.contains(&principle) {
                NotSatisfied(TheoremTag::WeakestLinkMatrix)
            } else {
                Satisfied(TheoremTag::WeakestLinkMatrix)
            }
        }
        StrengthMethod::Aggregation(m) => {
            if principle == Anonymity {
                Guaranteed(TheoremTag::AggregationAnonymity)
            } else if m.is_certified() && WELL_BEHAVED_GUARANTEES.contains(&principle) {
                Guaranteed(TheoremTag::WellBehavedGuarantees)
            } else {
                NotGuaranteed
            }
        }
    }
}

/// The full 13-row expectation table for one method.
pub fn theorem_table(method: &StrengthMethod) -> BTreeMap<PrincipleId, KnownStatus> {
    PrincipleId::ALL
        .into_iter()
        .map(|p| (p, known_status(method, p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strength::lookup_method;

    #[test]
    fn simple_product_satisfies_all_but_weakest_link() {
        let sp = lookup_method("sp").unwrap();
        let table = theorem_table(&sp);
        let satisfied = table.values().filter(|s| s.is_positive()).count();
        assert_eq!(satisfied, 12);
        assert_eq!(
            table[&PrincipleId::WeakestLink],
            KnownStatus::NotSatisfied(TheoremTag::SimpleProductMatrix)
        );
    }

    #[test]
    fn weakest_link_satisfies_nine() {
        let wl = lookup_method("wl").unwrap();
        let table = theorem_table(&wl);
        let satisfied = table.values().filter(|s| s.is_positive()).count();
        assert_eq!(satisfied, 9);
        assert_eq!(
            table[&PrincipleId::WeakestLink],
            KnownStatus::Satisfied(TheoremTag::WeakestLinkMatrix)
        );
        for p in WL_FAILURES {
            assert!(!table[&p].is_positive());
        }
    }

    #[test]
    fn well_behaved_methods_get_seven_guarantees() {
        for name in [
            "prod-prod",
            "min-min",
            "prod-min",
            "hamacher",
            "lukasiewicz",
        ] {
            let m = lookup_method(name).unwrap();
            let table = theorem_table(&m);
            let positive = table.values().filter(|s| s.is_positive()).count();
            assert_eq!(positive, 7, "{name}");
            assert_eq!(
                table[&PrincipleId::Resilience],
                KnownStatus::NotGuaranteed,
                "resilience is never guaranteed"
            );
        }
    }

    #[test]
    fn uncertified_aggregations_keep_anonymity_only() {
        let m = lookup_method("prod-mean").unwrap();
        let table = theorem_table(&m);
        let positive = table.values().filter(|s| s.is_positive()).count();
        assert_eq!(positive, 1);
        assert!(table[&PrincipleId::Anonymity].is_positive());
    }
}

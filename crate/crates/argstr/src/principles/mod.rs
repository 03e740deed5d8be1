//! The thirteen executable principles, a randomized theory/instance
//! generator, the probe loop that searches for counterexamples, and the
//! table of results known to hold for the shipped methods.
//!
//! Numeric policy: antecedent conditions on computed strengths only count as
//! satisfied when they clearly hold (equality within 1e-12, strict
//! inequalities by a 1e-12 margin), so borderline float noise makes an
//! instance vacuous instead of producing a fake counterexample. Conclusion
//! equalities use the 1e-9 tolerance; conclusion strict inequalities compare
//! exactly, since a demanded margin there would misreport methods whose
//! guaranteed gaps can be arbitrarily small products. Weight comparisons on
//! theory data are always exact.

mod generate;
mod probe;
mod table;

pub use generate::{generate_theory, GeneratorConfig};
pub use probe::{
    probe_principle, replay_witness, Blueprint, PrincipleVerdict, ProbeError, Witness,
    WitnessInstance,
};
pub use table::{known_status, theorem_table, KnownStatus, TheoremTag};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::argument::{is_isomorphic, Argument};
use crate::model::WeightedArgumentationTheory;
use crate::strength::StrengthMethod;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrincipleId {
    Anonymity,
    Premising,
    StrictArgument,
    Resilience,
    ArgumentDeath,
    AntecedentMaximality,
    AntecedentNeutrality,
    AntecedentWeakening,
    InferentialWeakening,
    InferenceWeightSensitivity,
    Proportionality,
    WeakestLink,
    WeakestLinkLimiting,
}

impl PrincipleId {
    pub const ALL: [PrincipleId; 13] = [
        PrincipleId::Anonymity,
        PrincipleId::Premising,
        PrincipleId::StrictArgument,
        PrincipleId::Resilience,
        PrincipleId::ArgumentDeath,
        PrincipleId::AntecedentMaximality,
        PrincipleId::AntecedentNeutrality,
        PrincipleId::AntecedentWeakening,
        PrincipleId::InferentialWeakening,
        PrincipleId::InferenceWeightSensitivity,
        PrincipleId::Proportionality,
        PrincipleId::WeakestLink,
        PrincipleId::WeakestLinkLimiting,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PrincipleId::Anonymity => "anonymity",
            PrincipleId::Premising => "premising",
            PrincipleId::StrictArgument => "strict-argument",
            PrincipleId::Resilience => "resilience",
            PrincipleId::ArgumentDeath => "argument-death",
            PrincipleId::AntecedentMaximality => "antecedent-maximality",
            PrincipleId::AntecedentNeutrality => "antecedent-neutrality",
            PrincipleId::AntecedentWeakening => "antecedent-weakening",
            PrincipleId::InferentialWeakening => "inferential-weakening",
            PrincipleId::InferenceWeightSensitivity => "inference-weight-sensitivity",
            PrincipleId::Proportionality => "proportionality",
            PrincipleId::WeakestLink => "weakest-link",
            PrincipleId::WeakestLinkLimiting => "weakest-link-limiting",
        }
    }
}

impl fmt::Display for PrincipleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrincipleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PrincipleId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown principle `{s}`"))
    }
}

/// The quantified objects a principle is checked on. Each principle accepts
/// exactly one shape.
#[derive(Debug, Clone)]
pub enum Instance {
    /// One argument (premising, strict argument, resilience, ...).
    Single {
        theory: Arc<WeightedArgumentationTheory>,
        argument: Argument,
    },
    /// Two arguments, possibly over different theories (anonymity).
    IsoPair {
        first_theory: Arc<WeightedArgumentationTheory>,
        first: Argument,
        second_theory: Arc<WeightedArgumentationTheory>,
        second: Argument,
    },
    /// `extended` applies a rule of equal weight to `base`'s antecedents
    /// plus `extra` (antecedent neutrality / weakening).
    Extension {
        theory: Arc<WeightedArgumentationTheory>,
        base: Argument,
        extended: Argument,
        extra: Argument,
    },
    /// Two inference arguments over one theory (weight sensitivity,
    /// proportionality).
    Pair {
        theory: Arc<WeightedArgumentationTheory>,
        first: Argument,
        second: Argument,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceShapeError {
    pub principle: PrincipleId,
    pub expected: &'static str,
}

impl fmt::Display for InstanceShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "principle `{}` expects a {} instance",
            self.principle, self.expected
        )
    }
}

impl std::error::Error for InstanceShapeError {}

/// Conclusion-position equality tolerance.
pub const EQ_TOLERANCE: f64 = 1e-9;
/// Antecedent-position margin for strict comparisons on computed strengths.
pub const STRICT_MARGIN: f64 = 1e-12;

fn concl_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQ_TOLERANCE
}

fn concl_le(a: f64, b: f64) -> bool {
    a <= b + EQ_TOLERANCE
}

fn clearly_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= STRICT_MARGIN
}

fn clearly_gt(a: f64, b: f64) -> bool {
    a - b > STRICT_MARGIN
}

fn clearly_lt(a: f64, b: f64) -> bool {
    b - a > STRICT_MARGIN
}

fn min_basis_weight(theory: &WeightedArgumentationTheory, arg: &Argument) -> f64 {
    arg.basis()
        .support()
        .map(|e| theory.weight(e).expect("argument weights present"))
        .fold(f64::INFINITY, f64::min)
}

fn rule_weight(theory: &WeightedArgumentationTheory, arg: &Argument) -> Option<f64> {
    arg.top_rule().map(|r| {
        theory
            .rule_weight(r.id())
            .expect("argument weights present")
    })
}

/// Evaluate one principle on one instance: `true` when the principle's
/// implication holds there (instances whose antecedent fails are vacuously
/// true), `false` when the instance is a counterexample.
pub fn check_principle(
    principle: PrincipleId,
    method: &StrengthMethod,
    instance: &Instance,
) -> Result<bool, InstanceShapeError> {
    use PrincipleId::*;
    match principle {
        Anonymity => {
            let (t1, a, t2, b) = expect_iso_pair(principle, instance)?;
            if !is_isomorphic(a, b) {
                return Ok(true);
            }
            Ok(concl_eq(method.evaluate(t1, a), method.evaluate(t2, b)))
        }
        Premising => {
            let (theory, arg) = expect_single(principle, instance)?;
            if arg.top_rule().is_some() {
                return Ok(true);
            }
            let premise_weight = theory
                .premise_weight(arg.conc())
                .expect("premise weight present");
            Ok(concl_eq(method.evaluate(theory, arg), premise_weight))
        }
        StrictArgument => {
            let (theory, arg) = expect_single(principle, instance)?;
            if !arg.def_basis().is_empty() {
                return Ok(true);
            }
            Ok(concl_eq(method.evaluate(theory, arg), 1.0))
        }
        Resilience => {
            let (theory, arg) = expect_single(principle, instance)?;
            let all_positive = arg
                .basis()
                .support()
                .all(|e| theory.weight(e).expect("weights present") > 0.0);
            if !all_positive {
                return Ok(true);
            }
            Ok(method.evaluate(theory, arg) > 0.0)
        }
        ArgumentDeath => {
            let (theory, arg) = expect_single(principle, instance)?;
            let has_zero = arg
                .basis()
                .support()
                .any(|e| theory.weight(e).expect("weights present") == 0.0);
            if !has_zero {
                return Ok(true);
            }
            Ok(concl_eq(method.evaluate(theory, arg), 0.0))
        }
        AntecedentMaximality => {
            let (theory, arg) = expect_single(principle, instance)?;
            let Some(top_weight) = rule_weight(theory, arg) else {
                return Ok(true);
            };
            let all_maximal = arg
                .antecedents()
                .iter()
                .all(|a| clearly_eq(method.evaluate(theory, a), 1.0));
            if !all_maximal {
                return Ok(true);
            }
            Ok(concl_eq(method.evaluate(theory, arg), top_weight))
        }
        AntecedentNeutrality => {
            let (theory, base, extended, extra) = expect_extension(principle, instance)?;
            if !extension_shape_holds(theory, base, extended, extra, false) {
                return Ok(true);
            }
            if !clearly_eq(method.evaluate(theory, extra), 1.0) {
                return Ok(true);
            }
            Ok(concl_eq(
                method.evaluate(theory, base),
                method.evaluate(theory, extended),
            ))
        }
        AntecedentWeakening => {
            let (theory, base, extended, extra) = expect_extension(principle, instance)?;
            if !extension_shape_holds(theory, base, extended, extra, true) {
                return Ok(true);
            }
            if !clearly_lt(method.evaluate(theory, extra), 1.0) {
                return Ok(true);
            }
            let base_strength = method.evaluate(theory, base);
            if !clearly_gt(base_strength, 0.0) {
                return Ok(true);
            }
            Ok(base_strength > method.evaluate(theory, extended))
        }
        InferentialWeakening => {
            let (theory, arg) = expect_single(principle, instance)?;
            let defeasible_top = arg.top_rule().is_some_and(|r| !r.is_strict());
            if !defeasible_top || arg.antecedents().is_empty() {
                return Ok(true);
            }
            let ant_strengths: Vec<f64> = arg
                .antecedents()
                .iter()
                .map(|a| method.evaluate(theory, a))
                .collect();
            if !ant_strengths.iter().all(|&s| clearly_gt(s, 0.0)) {
                return Ok(true);
            }
            let weakest = ant_strengths.iter().copied().fold(f64::INFINITY, f64::min);
            Ok(method.evaluate(theory, arg) < weakest)
        }
        InferenceWeightSensitivity => {
            let (theory, first, second) = expect_pair(principle, instance)?;
            let (Some(w1), Some(w2)) = (rule_weight(theory, first), rule_weight(theory, second))
            else {
                return Ok(true);
            };
            if !same_antecedent_set(first, second) || w1 >= w2 {
                return Ok(true);
            }
            let positive_ants = first
                .antecedents()
                .iter()
                .all(|a| clearly_gt(method.evaluate(theory, a), 0.0));
            if !positive_ants {
                return Ok(true);
            }
            Ok(method.evaluate(theory, first) < method.evaluate(theory, second))
        }
        Proportionality => {
            let (theory, first, second) = expect_pair(principle, instance)?;
            let (Some(w1), Some(w2)) = (rule_weight(theory, first), rule_weight(theory, second))
            else {
                return Ok(true);
            };
            // The common top-rule weight must be positive: a zero-weight rule
            // flattens both sides to zero and no method could dominate.
            if w1 != w2 || w1 == 0.0 || first.antecedents().is_empty() {
                return Ok(true);
            }
            let firsts: Vec<f64> = first
                .antecedents()
                .iter()
                .map(|a| method.evaluate(theory, a))
                .collect();
            let seconds: Vec<f64> = second
                .antecedents()
                .iter()
                .map(|a| method.evaluate(theory, a))
                .collect();
            if !injective_strictly_stronger(&firsts, &seconds) {
                return Ok(true);
            }
            Ok(method.evaluate(theory, first) > method.evaluate(theory, second))
        }
        WeakestLink => {
            let (theory, arg) = expect_single(principle, instance)?;
            Ok(concl_eq(
                method.evaluate(theory, arg),
                min_basis_weight(theory, arg),
            ))
        }
        WeakestLinkLimiting => {
            let (theory, arg) = expect_single(principle, instance)?;
            Ok(concl_le(
                method.evaluate(theory, arg),
                min_basis_weight(theory, arg),
            ))
        }
    }
}

fn expect_single(
    principle: PrincipleId,
    instance: &Instance,
) -> Result<(&WeightedArgumentationTheory, &Argument), InstanceShapeError> {
    match instance {
        Instance::Single { theory, argument } => Ok((theory, argument)),
        _ => Err(InstanceShapeError {
            principle,
            expected: "single-argument",
        }),
    }
}

fn expect_iso_pair(
    principle: PrincipleId,
    instance: &Instance,
) -> Result<
    (
        &WeightedArgumentationTheory,
        &Argument,
        &WeightedArgumentationTheory,
        &Argument,
    ),
    InstanceShapeError,
> {
    match instance {
        Instance::IsoPair {
            first_theory,
            first,
            second_theory,
            second,
        } => Ok((first_theory, first, second_theory, second)),
        _ => Err(InstanceShapeError {
            principle,
            expected: "isomorphic-pair",
        }),
    }
}

fn expect_extension(
    principle: PrincipleId,
    instance: &Instance,
) -> Result<
    (
        &WeightedArgumentationTheory,
        &Argument,
        &Argument,
        &Argument,
    ),
    InstanceShapeError,
> {
    match instance {
        Instance::Extension {
            theory,
            base,
            extended,
            extra,
        } => Ok((theory, base, extended, extra)),
        _ => Err(InstanceShapeError {
            principle,
            expected: "antecedent-extension",
        }),
    }
}

fn expect_pair(
    principle: PrincipleId,
    instance: &Instance,
) -> Result<(&WeightedArgumentationTheory, &Argument, &Argument), InstanceShapeError> {
    match instance {
        Instance::Pair {
            theory,
            first,
            second,
        } => Ok((theory, first, second)),
        _ => Err(InstanceShapeError {
            principle,
            expected: "argument-pair",
        }),
    }
}

/// Both arguments apply rules of exactly equal weight and the extended one's
/// antecedent set is the base's plus `extra`. When `proper` is demanded,
/// `extra` must not already be a base antecedent (an argument cannot get
/// strictly weaker by adding an antecedent it already has).
fn extension_shape_holds(
    theory: &WeightedArgumentationTheory,
    base: &Argument,
    extended: &Argument,
    extra: &Argument,
    proper: bool,
) -> bool {
    let (Some(wb), Some(we)) = (rule_weight(theory, base), rule_weight(theory, extended)) else {
        return false;
    };
    if wb != we {
        return false;
    }
    let base_set: std::collections::BTreeSet<&Argument> = base.antecedents().iter().collect();
    if proper && base_set.contains(extra) {
        return false;
    }
    let mut expected = base_set;
    expected.insert(extra);
    let extended_set: std::collections::BTreeSet<&Argument> =
        extended.antecedents().iter().collect();
    expected == extended_set
}

fn same_antecedent_set(a: &Argument, b: &Argument) -> bool {
    let sa: std::collections::BTreeSet<&Argument> = a.antecedents().iter().collect();
    let sb: std::collections::BTreeSet<&Argument> = b.antecedents().iter().collect();
    sa == sb
}

/// Is there an injective map from `firsts` into `seconds` where every image
/// is clearly weaker? Backtracking over the (small) candidate sets.
fn injective_strictly_stronger(firsts: &[f64], seconds: &[f64]) -> bool {
    if firsts.len() > seconds.len() {
        return false;
    }
    fn assign(i: usize, firsts: &[f64], seconds: &[f64], used: &mut Vec<bool>) -> bool {
        if i == firsts.len() {
            return true;
        }
        for (j, &s) in seconds.iter().enumerate() {
            if !used[j] && clearly_gt(firsts[i], s) {
                used[j] = true;
                if assign(i + 1, firsts, seconds, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    assign(0, firsts, seconds, &mut vec![false; seconds.len()])
}

#[cfg(test)]
mod tests;

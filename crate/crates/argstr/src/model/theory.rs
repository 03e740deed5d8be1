use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{is_directly_consistent, strict_closure, Literal};

/// Stable identifier of an inference rule. Weights key on the id, so two
/// syntactically equal rules with different ids may carry different weights.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RuleId(String);

impl RuleId {
    pub fn new(id: impl Into<String>) -> Self {
        RuleId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RuleId {
    fn from(s: &str) -> Self {
        RuleId::new(s)
    }
}

impl From<String> for RuleId {
    fn from(s: String) -> Self {
        RuleId(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleKind {
    Strict,
    Defeasible,
}

/// An inference rule: a set of antecedent literals and one consequent.
/// Empty antecedent sets are allowed; such rules behave as derivable facts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceRule {
    id: RuleId,
    antecedents: BTreeSet<Literal>,
    consequent: Literal,
    kind: RuleKind,
}

impl InferenceRule {
    pub fn new(
        id: impl Into<RuleId>,
        antecedents: impl IntoIterator<Item = Literal>,
        consequent: Literal,
        kind: RuleKind,
    ) -> Self {
        InferenceRule {
            id: id.into(),
            antecedents: antecedents.into_iter().collect(),
            consequent,
            kind,
        }
    }

    pub fn strict(
        id: impl Into<RuleId>,
        antecedents: impl IntoIterator<Item = Literal>,
        consequent: Literal,
    ) -> Self {
        Self::new(id, antecedents, consequent, RuleKind::Strict)
    }

    pub fn defeasible(
        id: impl Into<RuleId>,
        antecedents: impl IntoIterator<Item = Literal>,
        consequent: Literal,
    ) -> Self {
        Self::new(id, antecedents, consequent, RuleKind::Defeasible)
    }

    pub fn id(&self) -> &RuleId {
        &self.id
    }

    pub fn antecedents(&self) -> &BTreeSet<Literal> {
        &self.antecedents
    }

    pub fn consequent(&self) -> &Literal {
        &self.consequent
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn is_strict(&self) -> bool {
        self.kind == RuleKind::Strict
    }
}

impl fmt::Display for InferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.kind {
            RuleKind::Strict => "->",
            RuleKind::Defeasible => "=>",
        };
        let ants: Vec<String> = self.antecedents.iter().map(|l| l.to_string()).collect();
        write!(
            f,
            "{}: {} {} {}",
            self.id,
            ants.join(", "),
            arrow,
            self.consequent
        )
    }
}

/// Something a weight can attach to: an inference rule or a premise literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisElement {
    Rule(RuleId),
    Premise(Literal),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Rule(id) => write!(f, "rule {id}"),
            BasisElement::Premise(l) => write!(f, "premise {l}"),
        }
    }
}

/// Axioms (infallible) and ordinary premises (fallible). The two sets must be
/// disjoint; the axioms must additionally be indirectly consistent with
/// respect to the theory's strict rules, which `validate` checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    axioms: BTreeSet<Literal>,
    ordinary: BTreeSet<Literal>,
}

impl KnowledgeBase {
    pub fn new(
        axioms: impl IntoIterator<Item = Literal>,
        ordinary: impl IntoIterator<Item = Literal>,
    ) -> Self {
        KnowledgeBase {
            axioms: axioms.into_iter().collect(),
            ordinary: ordinary.into_iter().collect(),
        }
    }

    pub fn axioms(&self) -> &BTreeSet<Literal> {
        &self.axioms
    }

    pub fn ordinary(&self) -> &BTreeSet<Literal> {
        &self.ordinary
    }

    pub fn is_axiom(&self, l: &Literal) -> bool {
        self.axioms.contains(l)
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.axioms.contains(l) || self.ordinary.contains(l)
    }
}

/// A weighted argumentation theory: inference rules, a knowledge base, and a
/// weight function over rules and premises. Strict rules and axioms weigh
/// exactly 1; defeasible rules and ordinary premises weigh in [0, 1).
#[derive(Debug, Clone)]
pub struct WeightedArgumentationTheory {
    rules: Vec<Arc<InferenceRule>>,
    by_id: BTreeMap<RuleId, usize>,
    kb: KnowledgeBase,
    weights: BTreeMap<BasisElement, f64>,
}

impl WeightedArgumentationTheory {
    pub fn new(
        rules: impl IntoIterator<Item = InferenceRule>,
        kb: KnowledgeBase,
        weights: impl IntoIterator<Item = (BasisElement, f64)>,
    ) -> Self {
        let rules: Vec<Arc<InferenceRule>> = rules.into_iter().map(Arc::new).collect();
        let by_id = index_rules(&rules);
        WeightedArgumentationTheory {
            rules,
            by_id,
            kb,
            weights: weights.into_iter().collect(),
        }
    }

    pub fn rules(&self) -> impl Iterator<Item = &Arc<InferenceRule>> {
        self.rules.iter()
    }

    pub fn rule(&self, id: &RuleId) -> Option<&Arc<InferenceRule>> {
        self.by_id.get(id).map(|&i| &self.rules[i])
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn weight(&self, element: &BasisElement) -> Option<f64> {
        self.weights.get(element).copied()
    }

    pub fn rule_weight(&self, id: &RuleId) -> Option<f64> {
        self.weight(&BasisElement::Rule(id.clone()))
    }

    pub fn premise_weight(&self, literal: &Literal) -> Option<f64> {
        self.weight(&BasisElement::Premise(literal.clone()))
    }

    pub fn weights(&self) -> impl Iterator<Item = (&BasisElement, f64)> {
        self.weights.iter().map(|(k, &w)| (k, w))
    }

    /// A copy of this theory with one extra rule and its weight. Existing
    /// rules, premises, and weights are untouched.
    pub fn with_rule(&self, rule: InferenceRule, weight: f64) -> Self {
        let mut rules: Vec<InferenceRule> = self.rules.iter().map(|r| (**r).clone()).collect();
        let mut weights = self.weights.clone();
        weights.insert(BasisElement::Rule(rule.id().clone()), weight);
        rules.push(rule);
        WeightedArgumentationTheory::new(rules, self.kb.clone(), weights)
    }

    /// Check every structural invariant and report all violations found.
    /// Never fails; an empty report means the theory is valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut seen = BTreeSet::new();
        for rule in &self.rules {
            if !seen.insert(rule.id().clone()) {
                violations.push(Violation::DuplicateRuleId(rule.id().clone()));
            }
        }

        for l in self.kb.axioms() {
            if self.kb.ordinary().contains(l) {
                violations.push(Violation::AxiomOrdinaryOverlap(l.clone()));
            }
        }

        for rule in &self.rules {
            let element = BasisElement::Rule(rule.id().clone());
            match self.weight(&element) {
                None => violations.push(Violation::MissingWeight(element)),
                Some(w) => match rule.kind() {
                    RuleKind::Strict => {
                        if w != 1.0 {
                            violations.push(Violation::StrictWeightNotOne { element, weight: w });
                        }
                    }
                    RuleKind::Defeasible => {
                        if !(0.0..1.0).contains(&w) {
                            violations
                                .push(Violation::DefeasibleWeightOutOfRange { element, weight: w });
                        }
                    }
                },
            }
        }

        for l in self.kb.axioms() {
            let element = BasisElement::Premise(l.clone());
            match self.weight(&element) {
                None => violations.push(Violation::MissingWeight(element)),
                Some(w) if w != 1.0 => {
                    violations.push(Violation::StrictWeightNotOne { element, weight: w })
                }
                _ => {}
            }
        }
        for l in self.kb.ordinary() {
            let element = BasisElement::Premise(l.clone());
            match self.weight(&element) {
                None => violations.push(Violation::MissingWeight(element)),
                Some(w) if !(0.0..1.0).contains(&w) => {
                    violations.push(Violation::DefeasibleWeightOutOfRange { element, weight: w })
                }
                _ => {}
            }
        }

        for element in self.weights.keys() {
            let known = match element {
                BasisElement::Rule(id) => self.by_id.contains_key(id),
                BasisElement::Premise(l) => self.kb.contains(l),
            };
            if !known {
                violations.push(Violation::DanglingWeight(element.clone()));
            }
        }

        let closure = strict_closure(self.kb.axioms(), self.rules.iter().map(|r| r.as_ref()));
        if !is_directly_consistent(&closure) {
            violations.push(Violation::AxiomsIndirectlyInconsistent);
        }

        ValidationReport { violations }
    }
}

fn index_rules(rules: &[Arc<InferenceRule>]) -> BTreeMap<RuleId, usize> {
    let mut by_id = BTreeMap::new();
    for (i, rule) in rules.iter().enumerate() {
        // First occurrence wins; duplicates surface through validate().
        by_id.entry(rule.id().clone()).or_insert(i);
    }
    by_id
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    DuplicateRuleId(RuleId),
    AxiomOrdinaryOverlap(Literal),
    StrictWeightNotOne { element: BasisElement, weight: f64 },
    DefeasibleWeightOutOfRange { element: BasisElement, weight: f64 },
    MissingWeight(BasisElement),
    DanglingWeight(BasisElement),
    AxiomsIndirectlyInconsistent,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateRuleId(id) => write!(f, "duplicate rule id `{id}`"),
            Violation::AxiomOrdinaryOverlap(l) => {
                write!(f, "literal `{l}` is both an axiom and an ordinary premise")
            }
            Violation::StrictWeightNotOne { element, weight } => {
                write!(
                    f,
                    "strict {element} has weight {weight}, expected exactly 1"
                )
            }
            Violation::DefeasibleWeightOutOfRange { element, weight } => {
                write!(
                    f,
                    "defeasible {element} has weight {weight}, expected in [0, 1)"
                )
            }
            Violation::MissingWeight(e) => write!(f, "no weight entry for {e}"),
            Violation::DanglingWeight(e) => {
                write!(f, "weight entry for {e} which is not part of the theory")
            }
            Violation::AxiomsIndirectlyInconsistent => {
                write!(f, "axioms are indirectly inconsistent")
            }
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

//! Structured-argumentation engine: builds arguments as inference trees over
//! weighted argumentation theories, assigns intrinsic strengths through
//! pluggable aggregation methods, probes strength methods against a catalogue
//! of executable principles, and evaluates weighted argumentation graphs with
//! grounded and gradual semantics.

pub mod argument;
pub mod dsl;
pub mod model;
pub mod principles;
pub mod report;
pub mod semantics;
pub mod strength;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::model::{
        BasisElement, InferenceRule, KnowledgeBase, Literal, RuleId, WeightedArgumentationTheory,
    };

    /// Four-argument example: an axiom `a1`, a defeasible rule `d1` (weight
    /// 1/4) from it, an ordinary premise `p1` (weight 1/2), and a strict rule
    /// `s1` combining both branches.
    pub fn four_argument_theory() -> WeightedArgumentationTheory {
        let a1 = Literal::positive("a1");
        let p1 = Literal::positive("p1");
        let c1 = Literal::positive("c1");
        let cc = Literal::positive("cc");
        let rules = vec![
            InferenceRule::defeasible("d1", [a1.clone()], c1.clone()),
            InferenceRule::strict("s1", [c1, p1.clone()], cc),
        ];
        let kb = KnowledgeBase::new([a1.clone()], [p1.clone()]);
        let weights = vec![
            (BasisElement::Premise(a1), 1.0),
            (BasisElement::Premise(p1), 0.5),
            (BasisElement::Rule(RuleId::new("d1")), 0.25),
            (BasisElement::Rule(RuleId::new("s1")), 1.0),
        ];
        WeightedArgumentationTheory::new(rules, kb, weights)
    }
}

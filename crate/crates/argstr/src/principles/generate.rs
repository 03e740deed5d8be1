//! Randomized weighted argumentation theories and principle instances.
//!
//! Instances that need hypothetical argument pairs (equal-weight rules with
//! extended or reweighted antecedent sets) are realised by extending the
//! generated theory with fresh rules whose consequents are fresh atoms, so
//! every constructed argument is well-formed over the instance's theory.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Instance, PrincipleId};
use crate::argument::{enumerate_arguments, make_inference, make_premise, Argument};
use crate::model::{
    InferenceRule, KnowledgeBase, Literal, RuleId, RuleKind, WeightedArgumentationTheory,
};
use crate::strength::StrengthMethod;

/// Shape of the random theories the probe draws from. Weight draws carry an
/// explicit point mass at 0; the mass at 1 is carried by the strict-rule and
/// axiom counts, whose entries weigh exactly 1 by definition.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub atoms: usize,
    pub axioms: usize,
    pub ordinary_premises: usize,
    pub strict_rules: usize,
    pub defeasible_rules: usize,
    /// Probability weights per antecedent count, starting at arity 0.
    pub arity_weights: Vec<f64>,
    /// Probability that a defeasible/ordinary weight is exactly 0; the rest
    /// of the mass is uniform on [0, 1).
    pub zero_weight_mass: f64,
    /// Rule-application budget used when enumerating candidate arguments.
    pub enumeration_budget: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            atoms: 8,
            axioms: 2,
            ordinary_premises: 3,
            strict_rules: 2,
            defeasible_rules: 4,
            arity_weights: vec![0.1, 0.5, 0.3, 0.1],
            zero_weight_mass: 0.05,
            enumeration_budget: 3,
        }
    }
}

/// Deterministic under `cfg.seed`; the result always passes `validate`.
pub fn generate_theory(cfg: &GeneratorConfig) -> WeightedArgumentationTheory {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    generate_with_rng(cfg, &mut rng)
}

pub(crate) fn generate_with_rng(
    cfg: &GeneratorConfig,
    rng: &mut ChaCha8Rng,
) -> WeightedArgumentationTheory {
    let atoms: Vec<String> = (0..cfg.atoms.max(1)).map(|i| format!("p{i}")).collect();

    let mut indices: Vec<usize> = (0..atoms.len()).collect();
    indices.shuffle(rng);
    let axioms: Vec<Literal> = indices
        .iter()
        .take(cfg.axioms.min(atoms.len()))
        .map(|&i| Literal::positive(atoms[i].clone()))
        .collect();

    let mut premises: BTreeSet<Literal> = axioms.iter().cloned().collect();
    let mut ordinary: Vec<Literal> = Vec::new();
    for _ in 0..cfg.ordinary_premises {
        for _ in 0..20 {
            let lit = random_literal(rng, &atoms);
            if premises.insert(lit.clone()) {
                ordinary.push(lit);
                break;
            }
        }
    }

    let mut rules: Vec<InferenceRule> = Vec::new();
    let mut weights: Vec<(crate::model::BasisElement, f64)> = Vec::new();
    for l in &axioms {
        weights.push((crate::model::BasisElement::Premise(l.clone()), 1.0));
    }
    for l in &ordinary {
        weights.push((
            crate::model::BasisElement::Premise(l.clone()),
            defeasible_weight(rng, cfg.zero_weight_mass),
        ));
    }

    for i in 0..cfg.strict_rules {
        let rule = random_rule(rng, cfg, &atoms, format!("s{i}"), RuleKind::Strict);
        weights.push((crate::model::BasisElement::Rule(rule.id().clone()), 1.0));
        rules.push(rule);
    }
    for i in 0..cfg.defeasible_rules {
        let rule = random_rule(rng, cfg, &atoms, format!("d{i}"), RuleKind::Defeasible);
        weights.push((
            crate::model::BasisElement::Rule(rule.id().clone()),
            defeasible_weight(rng, cfg.zero_weight_mass),
        ));
        rules.push(rule);
    }

    let kb = KnowledgeBase::new(axioms, ordinary);
    let mut theory = WeightedArgumentationTheory::new(rules.clone(), kb.clone(), weights.clone());
    // Strict rules can close the axioms over a contradiction; shed them from
    // the back until the theory validates. Terminates: with no strict rules
    // the positive axiom literals are trivially consistent.
    while !theory.validate().is_valid() {
        let Some(pos) = rules.iter().rposition(|r| r.is_strict()) else {
            break;
        };
        let removed = rules.remove(pos);
        weights.retain(|(e, _)| e != &crate::model::BasisElement::Rule(removed.id().clone()));
        theory = WeightedArgumentationTheory::new(rules.clone(), kb.clone(), weights.clone());
    }
    debug_assert!(theory.validate().is_valid());
    theory
}

fn random_literal(rng: &mut ChaCha8Rng, atoms: &[String]) -> Literal {
    let atom = atoms[rng.random_range(0..atoms.len())].clone();
    if rng.random_bool(0.3) {
        Literal::negative(atom)
    } else {
        Literal::positive(atom)
    }
}

fn random_rule(
    rng: &mut ChaCha8Rng,
    cfg: &GeneratorConfig,
    atoms: &[String],
    id: String,
    kind: RuleKind,
) -> InferenceRule {
    let arity = weighted_choice(rng, &cfg.arity_weights);
    let mut antecedents: BTreeSet<Literal> = BTreeSet::new();
    for _ in 0..arity {
        for _ in 0..10 {
            if antecedents.insert(random_literal(rng, atoms)) {
                break;
            }
        }
    }
    let consequent = random_literal(rng, atoms);
    InferenceRule::new(id, antecedents, consequent, kind)
}

fn defeasible_weight(rng: &mut ChaCha8Rng, zero_mass: f64) -> f64 {
    if rng.random_bool(zero_mass.clamp(0.0, 1.0)) {
        0.0
    } else {
        rng.random::<f64>()
    }
}

fn weighted_choice(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return 0;
    }
    let mut draw = rng.random::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        draw -= w;
        if draw < 0.0 {
            return i;
        }
    }
    weights.len().saturating_sub(1)
}

/// Per-trial instance synthesis over one generated theory and its argument
/// pool. Returns `None` when a suitable instance cannot be assembled; the
/// probe counts such trials as vacuous.
pub(crate) struct InstanceBuilder<'a> {
    theory: &'a Arc<WeightedArgumentationTheory>,
    pool: &'a [Argument],
    method: &'a StrengthMethod,
}

impl<'a> InstanceBuilder<'a> {
    pub(crate) fn new(
        theory: &'a Arc<WeightedArgumentationTheory>,
        pool: &'a [Argument],
        method: &'a StrengthMethod,
    ) -> Self {
        InstanceBuilder {
            theory,
            pool,
            method,
        }
    }

    pub(crate) fn build(&self, principle: PrincipleId, rng: &mut ChaCha8Rng) -> Option<Instance> {
        use PrincipleId::*;
        match principle {
            Anonymity => self.anonymity(rng),
            Premising => self.single_preferring(rng, |a| a.is_premise()),
            StrictArgument => self.single_preferring(rng, |a| a.is_strict()),
            Resilience => {
                let theory = self.theory.clone();
                self.single_preferring(rng, move |a| {
                    a.basis()
                        .support()
                        .all(|e| theory.weight(e).unwrap_or(0.0) > 0.0)
                })
            }
            ArgumentDeath => {
                let theory = self.theory.clone();
                self.single_preferring(rng, move |a| {
                    a.basis()
                        .support()
                        .any(|e| theory.weight(e).unwrap_or(1.0) == 0.0)
                })
            }
            AntecedentMaximality => self.maximality(rng),
            AntecedentNeutrality => self.extension(rng, true),
            AntecedentWeakening => self.extension(rng, false),
            InferentialWeakening => self.inferential_weakening(rng),
            InferenceWeightSensitivity => self.weight_sensitivity(rng),
            Proportionality => self.proportionality(rng),
            WeakestLink | WeakestLinkLimiting => self.single_preferring(rng, |_| true),
        }
    }

    fn pick<'p>(&self, rng: &mut ChaCha8Rng, items: &'p [Argument]) -> Option<&'p Argument> {
        if items.is_empty() {
            None
        } else {
            Some(&items[rng.random_range(0..items.len())])
        }
    }

    fn single_preferring(
        &self,
        rng: &mut ChaCha8Rng,
        pred: impl Fn(&Argument) -> bool,
    ) -> Option<Instance> {
        let preferred: Vec<Argument> = self.pool.iter().filter(|a| pred(a)).cloned().collect();
        let argument = if !preferred.is_empty() && rng.random_bool(0.8) {
            self.pick(rng, &preferred)?.clone()
        } else {
            self.pick(rng, self.pool)?.clone()
        };
        Some(Instance::Single {
            theory: self.theory.clone(),
            argument,
        })
    }

    fn anonymity(&self, rng: &mut ChaCha8Rng) -> Option<Instance> {
        let arg = self.pick(rng, self.pool)?;
        let renamed = Arc::new(renamed_theory(self.theory, "z"));
        let twin = rebuild_renamed(arg, &renamed, "z")?;
        Some(Instance::IsoPair {
            first_theory: self.theory.clone(),
            first: arg.clone(),
            second_theory: renamed,
            second: twin,
        })
    }

    /// An inference argument plus the theory it lives over; synthesizes one
    /// behind a fresh defeasible rule when the pool has none.
    fn ensure_inference(
        &self,
        rng: &mut ChaCha8Rng,
        require_defeasible_top: bool,
        require_antecedents: bool,
    ) -> Option<(Arc<WeightedArgumentationTheory>, Argument)> {
        let candidates: Vec<Argument> = self
            .pool
            .iter()
            .filter(|a| match a.top_rule() {
                None => false,
                Some(r) => {
                    (!require_defeasible_top || !r.is_strict())
                        && (!require_antecedents || !a.antecedents().is_empty())
                }
            })
            .cloned()
            .collect();
        if !candidates.is_empty() && rng.random_bool(0.7) {
            return Some((self.theory.clone(), self.pick(rng, &candidates)?.clone()));
        }
        if let Some(found) = self.synthesize_inference(rng, self.theory, self.pool) {
            return Some(found);
        }
        self.pick(rng, &candidates)
            .map(|a| (self.theory.clone(), a.clone()))
    }

    fn synthesize_inference(
        &self,
        rng: &mut ChaCha8Rng,
        theory: &Arc<WeightedArgumentationTheory>,
        pool: &[Argument],
    ) -> Option<(Arc<WeightedArgumentationTheory>, Argument)> {
        for _ in 0..8 {
            let n = if rng.random_bool(0.6) { 1 } else { 2 };
            let ants = distinct_conclusion_sample(rng, pool, n)?;
            let weight = positive_unit(rng);
            let rule = InferenceRule::defeasible(
                fresh_rule_id(theory),
                ants.iter().map(|a| a.conc().clone()),
                Literal::positive(fresh_atom(theory)),
            );
            let rule_id = rule.id().clone();
            let extended = Arc::new(theory.with_rule(rule, weight));
            if let Ok(arg) = make_inference(&extended, &rule_id, &ants) {
                return Some((extended, arg));
            }
        }
        None
    }

    fn maximality(&self, rng: &mut ChaCha8Rng) -> Option<Instance> {
        // Antecedents built from strict arguments score 1 under any method
        // that honours strict arguments, making the instance non-vacuous.
        let strict: Vec<Argument> = self
            .pool
            .iter()
            .filter(|a| a.is_strict())
            .cloned()
            .collect();
        if !strict.is_empty() && rng.random_bool(0.7) {
            if let Some((theory, arg)) = self.synthesize_inference(rng, self.theory, &strict) {
                return Some(Instance::Single {
                    theory,
                    argument: arg,
                });
            }
        }
        let (theory, argument) = self.ensure_inference(rng, false, false)?;
        Some(Instance::Single { theory, argument })
    }

    fn inferential_weakening(&self, rng: &mut ChaCha8Rng) -> Option<Instance> {
        let (theory, argument) = self.ensure_inference(rng, true, true)?;
        Some(Instance::Single { theory, argument })
    }

    /// Builds (A, A', A'') with the extended argument applying an equal
    /// weight rule to A's antecedents plus A''.
    fn extension(&self, rng: &mut ChaCha8Rng, prefer_strong_extra: bool) -> Option<Instance> {
        let (theory, base) = self.ensure_inference(rng, false, false)?;
        let rule = base.top_rule().expect("inference argument").clone();
        let weight = theory.rule_weight(rule.id()).expect("rule weight");

        let mut candidates: Vec<&Argument> = self
            .pool
            .iter()
            .filter(|a| !rule.antecedents().contains(a.conc()))
            .collect();
        candidates.shuffle(rng);
        if prefer_strong_extra {
            candidates.sort_by_key(|a| !a.is_strict());
        } else {
            candidates.sort_by_key(|a| a.is_strict());
        }

        for extra in candidates.into_iter().take(10) {
            let mut ante_lits: Vec<Literal> = rule.antecedents().iter().cloned().collect();
            ante_lits.push(extra.conc().clone());
            let extended_rule = InferenceRule::new(
                fresh_rule_id(&theory),
                ante_lits,
                Literal::positive(fresh_atom(&theory)),
                rule.kind(),
            );
            let rule_id = extended_rule.id().clone();
            let with_rule = Arc::new(theory.with_rule(extended_rule, weight));
            let mut ants: Vec<Argument> = base.antecedents().to_vec();
            ants.push(extra.clone());
            if let Ok(extended) = make_inference(&with_rule, &rule_id, &ants) {
                return Some(Instance::Extension {
                    theory: with_rule,
                    base,
                    extended,
                    extra: extra.clone(),
                });
            }
        }
        None
    }

    fn weight_sensitivity(&self, rng: &mut ChaCha8Rng) -> Option<Instance> {
        let (theory, base) = self.ensure_inference(rng, false, false)?;
        let rule = base.top_rule().expect("inference argument").clone();
        let base_weight = theory.rule_weight(rule.id()).expect("rule weight");
        let mut other_weight = rng.random::<f64>();
        if other_weight == base_weight {
            other_weight = (other_weight + 0.31) % 1.0;
        }
        let twin_rule = InferenceRule::defeasible(
            fresh_rule_id(&theory),
            rule.antecedents().iter().cloned(),
            Literal::positive(fresh_atom(&theory)),
        );
        let rule_id = twin_rule.id().clone();
        let with_rule = Arc::new(theory.with_rule(twin_rule, other_weight));
        let twin = make_inference(&with_rule, &rule_id, base.antecedents()).ok()?;
        let (first, second) = if other_weight < base_weight {
            (twin, base)
        } else {
            (base, twin)
        };
        Some(Instance::Pair {
            theory: with_rule,
            first,
            second,
        })
    }

    fn proportionality(&self, rng: &mut ChaCha8Rng) -> Option<Instance> {
        let strengths: Vec<f64> = self
            .pool
            .iter()
            .map(|a| self.method.evaluate(self.theory, a))
            .collect();
        for _ in 0..12 {
            let n = if rng.random_bool(0.7) { 1 } else { 2 };
            let Some((stronger, weaker)) = dominated_pairs(rng, self.pool, &strengths, n) else {
                continue;
            };
            let mut second_ants = weaker.clone();
            if rng.random_bool(0.4) {
                let taken: BTreeSet<&Literal> = second_ants.iter().map(|a| a.conc()).collect();
                let spare: Vec<&Argument> = self
                    .pool
                    .iter()
                    .filter(|a| !taken.contains(a.conc()))
                    .collect();
                if let Some(extra) = spare.get(rng.random_range(0..spare.len().max(1))) {
                    second_ants.push((*extra).clone());
                }
            }
            let weight = positive_unit(rng);
            let first_rule = InferenceRule::defeasible(
                fresh_rule_id(self.theory),
                stronger.iter().map(|a| a.conc().clone()),
                Literal::positive(fresh_atom(self.theory)),
            );
            let first_id = first_rule.id().clone();
            let step = Arc::new(self.theory.with_rule(first_rule, weight));
            let second_rule = InferenceRule::defeasible(
                fresh_rule_id(&step),
                second_ants.iter().map(|a| a.conc().clone()),
                Literal::positive(fresh_atom(&step)),
            );
            let second_id = second_rule.id().clone();
            let full = Arc::new(step.with_rule(second_rule, weight));
            let Ok(first) = make_inference(&full, &first_id, &stronger) else {
                continue;
            };
            let Ok(second) = make_inference(&full, &second_id, &second_ants) else {
                continue;
            };
            return Some(Instance::Pair {
                theory: full,
                first,
                second,
            });
        }
        None
    }
}

/// Pick `n` pool arguments with pairwise distinct conclusions.
fn distinct_conclusion_sample(
    rng: &mut ChaCha8Rng,
    pool: &[Argument],
    n: usize,
) -> Option<Vec<Argument>> {
    let mut indices: Vec<usize> = (0..pool.len()).collect();
    indices.shuffle(rng);
    let mut out: Vec<Argument> = Vec::new();
    let mut concs: BTreeSet<Literal> = BTreeSet::new();
    for i in indices {
        if concs.insert(pool[i].conc().clone()) {
            out.push(pool[i].clone());
            if out.len() == n {
                return Some(out);
            }
        }
    }
    None
}

/// Pick `n` (stronger, weaker) argument pairs with a clear strength gap;
/// conclusions are pairwise distinct within each side.
fn dominated_pairs(
    rng: &mut ChaCha8Rng,
    pool: &[Argument],
    strengths: &[f64],
    n: usize,
) -> Option<(Vec<Argument>, Vec<Argument>)> {
    const GAP: f64 = 1e-6;
    let mut indices: Vec<usize> = (0..pool.len()).collect();
    indices.shuffle(rng);
    let mut stronger: Vec<usize> = Vec::new();
    let mut weaker: Vec<usize> = Vec::new();
    let mut strong_concs: BTreeSet<&Literal> = BTreeSet::new();
    let mut weak_concs: BTreeSet<&Literal> = BTreeSet::new();
    for &i in &indices {
        if stronger.len() == n {
            break;
        }
        // Needs some strictly weaker partner to remain available.
        if strengths[i] > GAP && strong_concs.insert(pool[i].conc()) {
            stronger.push(i);
        }
    }
    if stronger.len() < n {
        return None;
    }
    for k in 0..n {
        let hi = strengths[stronger[k]];
        let mut found = false;
        for &j in &indices {
            if hi - strengths[j] > GAP && weak_concs.insert(pool[j].conc()) {
                weaker.push(j);
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    Some((
        stronger.iter().map(|&i| pool[i].clone()).collect(),
        weaker.iter().map(|&j| pool[j].clone()).collect(),
    ))
}

fn positive_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let w = rng.random::<f64>();
        if w > 1e-6 {
            return w;
        }
    }
}

fn fresh_atom(theory: &WeightedArgumentationTheory) -> String {
    let mut used: BTreeSet<&str> = BTreeSet::new();
    for l in theory.kb().axioms().iter().chain(theory.kb().ordinary()) {
        used.insert(l.atom());
    }
    for rule in theory.rules() {
        used.insert(rule.consequent().atom());
        for a in rule.antecedents() {
            used.insert(a.atom());
        }
    }
    (0..)
        .map(|i| format!("q{i}"))
        .find(|candidate| !used.contains(candidate.as_str()))
        .expect("unbounded candidate space")
}

fn fresh_rule_id(theory: &WeightedArgumentationTheory) -> RuleId {
    (0..)
        .map(|i| RuleId::new(format!("g{i}")))
        .find(|candidate| theory.rule(candidate).is_none())
        .expect("unbounded candidate space")
}

/// Clone the theory onto a renamed atom space, weights untouched.
fn renamed_theory(
    theory: &WeightedArgumentationTheory,
    prefix: &str,
) -> WeightedArgumentationTheory {
    let rename = |l: &Literal| Literal::new(format!("{prefix}{}", l.atom()), l.is_negated());
    let rules: Vec<InferenceRule> = theory
        .rules()
        .map(|r| {
            InferenceRule::new(
                r.id().clone(),
                r.antecedents().iter().map(&rename),
                rename(r.consequent()),
                r.kind(),
            )
        })
        .collect();
    let kb = KnowledgeBase::new(
        theory.kb().axioms().iter().map(&rename),
        theory.kb().ordinary().iter().map(&rename),
    );
    let weights: Vec<(crate::model::BasisElement, f64)> = theory
        .weights()
        .map(|(e, w)| {
            let e = match e {
                crate::model::BasisElement::Premise(l) => {
                    crate::model::BasisElement::Premise(rename(l))
                }
                other => other.clone(),
            };
            (e, w)
        })
        .collect();
    WeightedArgumentationTheory::new(rules, kb, weights)
}

/// Rebuild an argument over the renamed copy of its theory.
fn rebuild_renamed(
    arg: &Argument,
    renamed: &WeightedArgumentationTheory,
    prefix: &str,
) -> Option<Argument> {
    match arg.top_rule() {
        None => {
            let lit = Literal::new(
                format!("{prefix}{}", arg.conc().atom()),
                arg.conc().is_negated(),
            );
            make_premise(renamed, &lit).ok()
        }
        Some(rule) => {
            let ants: Option<Vec<Argument>> = arg
                .antecedents()
                .iter()
                .map(|a| rebuild_renamed(a, renamed, prefix))
                .collect();
            make_inference(renamed, rule.id(), &ants?).ok()
        }
    }
}

/// Enumerate the candidate pool for one generated theory.
pub(crate) fn candidate_pool(theory: &WeightedArgumentationTheory, budget: usize) -> Vec<Argument> {
    const POOL_CAP: usize = 64;
    let mut args = enumerate_arguments(theory, budget);
    args.truncate(POOL_CAP);
    args
}

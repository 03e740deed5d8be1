//! Arguments as inference trees over a weighted argumentation theory: a leaf
//! states a premise, an inner node applies an inference rule to antecedent
//! arguments whose conclusions match the rule's antecedents exactly.
//!
//! Construction enforces both well-formedness conditions: the conclusions of
//! all subarguments must be indirectly consistent, and no two distinct
//! non-strict subarguments may share a conclusion.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::model::{
    is_indirectly_consistent, BasisElement, InferenceRule, Literal, Multiset, RuleId,
    WeightedArgumentationTheory,
};

/// Canonical weight-labelled signature of an argument. Two arguments carry
/// the same signature exactly when they are isomorphic: leaves compare
/// premise weights, inner nodes compare top-rule weights and admit a
/// bijection between antecedents (realised by sorting child signatures).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn as_hex(&self) -> &str {
        &self.0
    }

    pub fn short(&self) -> &str {
        &self.0[..12]
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

#[derive(Debug)]
enum NodeKind {
    Premise {
        axiom: bool,
    },
    Inference {
        rule: Arc<InferenceRule>,
        /// Sorted by conclusion; conclusions are pairwise distinct.
        antecedents: Vec<Argument>,
    },
}

#[derive(Debug)]
struct Node {
    kind: NodeKind,
    conclusion: Literal,
    axioms: Multiset<Literal>,
    ordinary_premises: Multiset<Literal>,
    strict_rules: Multiset<RuleId>,
    defeasible_rules: Multiset<RuleId>,
    def_basis: Multiset<BasisElement>,
    str_basis: Multiset<BasisElement>,
    basis: Multiset<BasisElement>,
    signature: ArgumentId,
    structure: String,
    rule_applications: usize,
    sub_conclusions: BTreeSet<Literal>,
}

/// An immutable argument. Cloning is cheap; antecedent subtrees are shared.
///
/// Equality, ordering, and hashing are structural: two arguments are equal
/// when they state the same premises and apply the same rules in the same
/// tree shape. Isomorphism (weights only) is the separate, coarser relation
/// tested through [`is_isomorphic`].
#[derive(Clone)]
pub struct Argument {
    node: Arc<Node>,
}

impl fmt::Debug for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Argument({})", self.node.structure)
    }
}

impl PartialEq for Argument {
    fn eq(&self, other: &Self) -> bool {
        self.node.structure == other.node.structure
    }
}

impl Eq for Argument {}

impl std::hash::Hash for Argument {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.node.structure.hash(state);
    }
}

impl PartialOrd for Argument {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Argument {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.node.signature, &self.node.structure)
            .cmp(&(&other.node.signature, &other.node.structure))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArgumentError {
    LiteralNotInKnowledgeBase(Literal),
    UnknownRule(RuleId),
    MissingWeight(BasisElement),
    AntecedentMismatch {
        rule: RuleId,
        expected: BTreeSet<Literal>,
        got: BTreeSet<Literal>,
    },
    InconsistentSubarguments,
    DuplicateNonStrictConclusion(Literal),
}

impl fmt::Display for ArgumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgumentError::LiteralNotInKnowledgeBase(l) => {
                write!(f, "literal `{l}` is not in the knowledge base")
            }
            ArgumentError::UnknownRule(id) => write!(f, "rule `{id}` is not part of the theory"),
            ArgumentError::MissingWeight(e) => write!(f, "theory has no weight for {e}"),
            ArgumentError::AntecedentMismatch {
                rule,
                expected,
                got,
            } => {
                let fmt_set = |s: &BTreeSet<Literal>| {
                    s.iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                write!(
                    f,
                    "antecedent conclusions {{{}}} do not match rule `{rule}` antecedents {{{}}}",
                    fmt_set(got),
                    fmt_set(expected)
                )
            }
            ArgumentError::InconsistentSubarguments => {
                write!(f, "subargument conclusions are indirectly inconsistent")
            }
            ArgumentError::DuplicateNonStrictConclusion(l) => {
                write!(f, "two distinct non-strict subarguments conclude `{l}`")
            }
        }
    }
}

impl std::error::Error for ArgumentError {}

fn leaf_signature(weight: f64) -> ArgumentId {
    let mut hasher = Sha256::new();
    hasher.update([1u8]);
    hasher.update(weight.to_bits().to_le_bytes());
    ArgumentId(hex_encode(&hasher.finalize()))
}

fn inference_signature(weight: f64, antecedents: &[Argument]) -> ArgumentId {
    let mut child_sigs: Vec<&str> = antecedents
        .iter()
        .map(|a| a.node.signature.as_hex())
        .collect();
    child_sigs.sort_unstable();
    let mut hasher = Sha256::new();
    hasher.update([2u8]);
    hasher.update(weight.to_bits().to_le_bytes());
    for sig in child_sigs {
        hasher.update(sig.as_bytes());
    }
    ArgumentId(hex_encode(&hasher.finalize()))
}

fn hex_encode(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn leaf_structure(literal: &Literal, axiom: bool) -> String {
    if axiom {
        format!("ax:{literal}")
    } else {
        format!("op:{literal}")
    }
}

fn inference_structure(rule: &RuleId, antecedents: &[Argument]) -> String {
    let mut keys: Vec<&str> = antecedents.iter().map(|a| a.structure_key()).collect();
    keys.sort_unstable();
    format!("{rule}({})", keys.join(";"))
}

/// State a premise from the knowledge base.
pub fn make_premise(
    theory: &WeightedArgumentationTheory,
    literal: &Literal,
) -> Result<Argument, ArgumentError> {
    if !theory.kb().contains(literal) {
        return Err(ArgumentError::LiteralNotInKnowledgeBase(literal.clone()));
    }
    let element = BasisElement::Premise(literal.clone());
    let weight = theory
        .weight(&element)
        .ok_or_else(|| ArgumentError::MissingWeight(element.clone()))?;
    let axiom = theory.kb().is_axiom(literal);

    let sub_conclusions: BTreeSet<Literal> = [literal.clone()].into();
    if !is_indirectly_consistent(&sub_conclusions, theory.rules().map(|r| r.as_ref())) {
        return Err(ArgumentError::InconsistentSubarguments);
    }

    let (axioms, ordinary_premises) = if axiom {
        (Multiset::singleton(literal.clone()), Multiset::new())
    } else {
        (Multiset::new(), Multiset::singleton(literal.clone()))
    };
    let def_basis = if axiom {
        Multiset::new()
    } else {
        Multiset::singleton(element.clone())
    };
    let str_basis = if axiom {
        Multiset::singleton(element)
    } else {
        Multiset::new()
    };
    let basis = def_basis.sum(&str_basis);

    Ok(Argument {
        node: Arc::new(Node {
            kind: NodeKind::Premise { axiom },
            conclusion: literal.clone(),
            axioms,
            ordinary_premises,
            strict_rules: Multiset::new(),
            defeasible_rules: Multiset::new(),
            def_basis,
            str_basis,
            basis,
            signature: leaf_signature(weight),
            structure: leaf_structure(literal, axiom),
            rule_applications: 0,
            sub_conclusions,
        }),
    })
}

/// Apply an inference rule to a set of antecedent arguments. The antecedent
/// conclusions must match the rule's antecedent set exactly (duplicates of
/// one argument collapse; two distinct arguments for one literal do not).
pub fn make_inference(
    theory: &WeightedArgumentationTheory,
    rule_id: &RuleId,
    antecedents: &[Argument],
) -> Result<Argument, ArgumentError> {
    let rule = theory
        .rule(rule_id)
        .cloned()
        .ok_or_else(|| ArgumentError::UnknownRule(rule_id.clone()))?;
    let element = BasisElement::Rule(rule_id.clone());
    let weight = theory
        .weight(&element)
        .ok_or_else(|| ArgumentError::MissingWeight(element.clone()))?;

    // Antecedents form a set keyed by conclusion.
    let mut by_conclusion: BTreeMap<Literal, Argument> = BTreeMap::new();
    for arg in antecedents {
        match by_conclusion.get(arg.conc()) {
            None => {
                by_conclusion.insert(arg.conc().clone(), arg.clone());
            }
            Some(existing) if existing == arg => {}
            Some(_) => {
                return Err(ArgumentError::AntecedentMismatch {
                    rule: rule_id.clone(),
                    expected: rule.antecedents().clone(),
                    got: antecedents.iter().map(|a| a.conc().clone()).collect(),
                });
            }
        }
    }
    let got: BTreeSet<Literal> = by_conclusion.keys().cloned().collect();
    if &got != rule.antecedents() {
        return Err(ArgumentError::AntecedentMismatch {
            rule: rule_id.clone(),
            expected: rule.antecedents().clone(),
            got,
        });
    }
    let ants: Vec<Argument> = by_conclusion.into_values().collect();

    let mut sub_conclusions: BTreeSet<Literal> = ants
        .iter()
        .flat_map(|a| a.node.sub_conclusions.iter().cloned())
        .collect();
    sub_conclusions.insert(rule.consequent().clone());
    if !is_indirectly_consistent(&sub_conclusions, theory.rules().map(|r| r.as_ref())) {
        return Err(ArgumentError::InconsistentSubarguments);
    }

    let mut axioms = Multiset::new();
    let mut ordinary_premises = Multiset::new();
    let mut strict_rules = Multiset::new();
    let mut defeasible_rules = Multiset::new();
    let mut rule_applications = 1usize;
    for a in &ants {
        axioms = axioms.sum(&a.node.axioms);
        ordinary_premises = ordinary_premises.sum(&a.node.ordinary_premises);
        strict_rules = strict_rules.sum(&a.node.strict_rules);
        defeasible_rules = defeasible_rules.sum(&a.node.defeasible_rules);
        rule_applications += a.node.rule_applications;
    }
    if rule.is_strict() {
        strict_rules.insert(rule_id.clone());
    } else {
        defeasible_rules.insert(rule_id.clone());
    }

    let mut def_basis: Multiset<BasisElement> = Multiset::new();
    for (l, n) in ordinary_premises.iter() {
        def_basis.insert_n(BasisElement::Premise(l.clone()), n);
    }
    for (r, n) in defeasible_rules.iter() {
        def_basis.insert_n(BasisElement::Rule(r.clone()), n);
    }
    let mut str_basis: Multiset<BasisElement> = Multiset::new();
    for (l, n) in axioms.iter() {
        str_basis.insert_n(BasisElement::Premise(l.clone()), n);
    }
    for (r, n) in strict_rules.iter() {
        str_basis.insert_n(BasisElement::Rule(r.clone()), n);
    }
    let basis = def_basis.sum(&str_basis);

    let signature = inference_signature(weight, &ants);
    let structure = inference_structure(rule_id, &ants);
    let conclusion = rule.consequent().clone();

    let candidate = Argument {
        node: Arc::new(Node {
            kind: NodeKind::Inference {
                rule,
                antecedents: ants,
            },
            conclusion,
            axioms,
            ordinary_premises,
            strict_rules,
            defeasible_rules,
            def_basis,
            str_basis,
            basis,
            signature,
            structure,
            rule_applications,
            sub_conclusions,
        }),
    };

    // No two distinct non-strict subarguments may share a conclusion.
    let mut non_strict_by_conclusion: HashMap<Literal, String> = HashMap::new();
    for sub in candidate.sub() {
        if sub.is_strict() {
            continue;
        }
        match non_strict_by_conclusion.get(sub.conc()) {
            None => {
                non_strict_by_conclusion
                    .insert(sub.conc().clone(), sub.structure_key().to_string());
            }
            Some(seen) if seen == sub.structure_key() => {}
            Some(_) => {
                return Err(ArgumentError::DuplicateNonStrictConclusion(
                    sub.conc().clone(),
                ));
            }
        }
    }

    Ok(candidate)
}

impl Argument {
    pub fn conc(&self) -> &Literal {
        &self.node.conclusion
    }

    /// The last rule applied; `None` for premise leaves.
    pub fn top_rule(&self) -> Option<&Arc<InferenceRule>> {
        match &self.node.kind {
            NodeKind::Premise { .. } => None,
            NodeKind::Inference { rule, .. } => Some(rule),
        }
    }

    pub fn antecedents(&self) -> &[Argument] {
        match &self.node.kind {
            NodeKind::Premise { .. } => &[],
            NodeKind::Inference { antecedents, .. } => antecedents,
        }
    }

    pub fn is_premise(&self) -> bool {
        matches!(self.node.kind, NodeKind::Premise { .. })
    }

    pub fn is_axiom_premise(&self) -> bool {
        matches!(self.node.kind, NodeKind::Premise { axiom: true })
    }

    /// All subarguments, this argument included, deduplicated and sorted.
    pub fn sub(&self) -> Vec<Argument> {
        let mut seen: HashSet<String> = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(arg) = stack.pop() {
            if seen.insert(arg.structure_key().to_string()) {
                stack.extend(arg.antecedents().iter().cloned());
                out.push(arg);
            }
        }
        out.sort();
        out
    }

    pub fn axioms(&self) -> &Multiset<Literal> {
        &self.node.axioms
    }

    pub fn ord_prem(&self) -> &Multiset<Literal> {
        &self.node.ordinary_premises
    }

    pub fn str_rules(&self) -> &Multiset<RuleId> {
        &self.node.strict_rules
    }

    pub fn def_rules(&self) -> &Multiset<RuleId> {
        &self.node.defeasible_rules
    }

    /// Ordinary premises and defeasible rules, with multiplicity.
    pub fn def_basis(&self) -> &Multiset<BasisElement> {
        &self.node.def_basis
    }

    /// Axioms and strict rules, with multiplicity.
    pub fn str_basis(&self) -> &Multiset<BasisElement> {
        &self.node.str_basis
    }

    /// Everything the argument is built from, with multiplicity.
    pub fn basis(&self) -> &Multiset<BasisElement> {
        &self.node.basis
    }

    /// All inference rules used, with multiplicity.
    pub fn rules(&self) -> Multiset<RuleId> {
        self.node.strict_rules.sum(&self.node.defeasible_rules)
    }

    /// All premises used, with multiplicity.
    pub fn prem(&self) -> Multiset<Literal> {
        self.node.axioms.sum(&self.node.ordinary_premises)
    }

    /// Strict arguments use no defeasible rules and no ordinary premises.
    pub fn is_strict(&self) -> bool {
        self.node.def_basis.is_empty()
    }

    /// Number of rule applications in the tree, multiplicity included.
    pub fn rule_applications(&self) -> usize {
        self.node.rule_applications
    }

    pub fn signature(&self) -> &ArgumentId {
        &self.node.signature
    }

    /// Identity of the shared tree node; used for per-evaluation memo tables.
    pub(crate) fn node_address(&self) -> usize {
        Arc::as_ptr(&self.node) as usize
    }

    /// Full structural identity: premises, rule ids, and tree shape.
    pub fn structure_key(&self) -> &str {
        &self.node.structure
    }

    pub fn sub_conclusions(&self) -> &BTreeSet<Literal> {
        &self.node.sub_conclusions
    }
}

/// Weight-level isomorphism via canonical signatures.
pub fn is_isomorphic(a: &Argument, b: &Argument) -> bool {
    a.signature() == b.signature()
}

/// Every well-formed argument whose rule-application count (with
/// multiplicity) stays within `budget`, deduplicated structurally and sorted
/// by canonical signature (structure key breaks signature ties).
pub fn enumerate_arguments(theory: &WeightedArgumentationTheory, budget: usize) -> Vec<Argument> {
    let mut all: Vec<Argument> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut by_conclusion: BTreeMap<Literal, Vec<Argument>> = BTreeMap::new();

    let premises: Vec<Literal> = theory
        .kb()
        .axioms()
        .iter()
        .chain(theory.kb().ordinary().iter())
        .cloned()
        .collect();
    for literal in premises {
        if let Ok(arg) = make_premise(theory, &literal) {
            if seen.insert(arg.structure_key().to_string()) {
                by_conclusion
                    .entry(arg.conc().clone())
                    .or_default()
                    .push(arg.clone());
                all.push(arg);
            }
        }
    }

    let rules: Vec<Arc<InferenceRule>> = theory.rules().cloned().collect();
    loop {
        let mut fresh: Vec<Argument> = Vec::new();
        for rule in &rules {
            let lists: Vec<&[Argument]> = match rule
                .antecedents()
                .iter()
                .map(|l| by_conclusion.get(l).map(|v| v.as_slice()))
                .collect::<Option<Vec<_>>>()
            {
                Some(lists) => lists,
                None => continue,
            };
            for combo in CartesianProduct::new(&lists) {
                let cost: usize = 1 + combo.iter().map(|a| a.rule_applications()).sum::<usize>();
                if cost > budget {
                    continue;
                }
                let key = inference_structure(rule.id(), &combo);
                if seen.contains(&key) {
                    continue;
                }
                if let Ok(arg) = make_inference(theory, rule.id(), &combo) {
                    seen.insert(arg.structure_key().to_string());
                    fresh.push(arg);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        for arg in fresh {
            by_conclusion
                .entry(arg.conc().clone())
                .or_default()
                .push(arg.clone());
            all.push(arg);
        }
    }

    all.sort();
    all
}

/// Stable report identifiers for a sorted argument list: the first 12 hex
/// characters of the signature, with an ordinal suffix when two distinct
/// arguments share a prefix (isomorphic arguments, or a truncation clash).
pub fn assign_report_ids(args: &[Argument]) -> Vec<String> {
    let mut used: HashMap<String, usize> = HashMap::new();
    args.iter()
        .map(|arg| {
            let prefix = arg.signature().short().to_string();
            let n = used.entry(prefix.clone()).or_insert(0);
            *n += 1;
            if *n == 1 {
                prefix
            } else {
                format!("{prefix}-{n}")
            }
        })
        .collect()
}

struct CartesianProduct<'a> {
    lists: &'a [&'a [Argument]],
    indices: Vec<usize>,
    done: bool,
}

impl<'a> CartesianProduct<'a> {
    fn new(lists: &'a [&'a [Argument]]) -> Self {
        let done = lists.iter().any(|l| l.is_empty());
        CartesianProduct {
            lists,
            indices: vec![0; lists.len()],
            done,
        }
    }
}

impl Iterator for CartesianProduct<'_> {
    type Item = Vec<Argument>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let combo: Vec<Argument> = self
            .lists
            .iter()
            .zip(&self.indices)
            .map(|(list, &i)| list[i].clone())
            .collect();
        // Advance odometer-style.
        let mut pos = self.lists.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.indices[pos] += 1;
            if self.indices[pos] < self.lists[pos].len() {
                break;
            }
            self.indices[pos] = 0;
        }
        Some(combo)
    }
}

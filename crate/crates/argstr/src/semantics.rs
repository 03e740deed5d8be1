//! Weighted argumentation graphs and their evaluation: the grounded
//! extension (attack weights ignored) and the weighted h-categorizer gradual
//! semantics (unit attack weights only), plus a bridge seeding a graph's base
//! weights from computed intrinsic strengths.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::argument::{assign_report_ids, enumerate_arguments};
use crate::model::WeightedArgumentationTheory;
use crate::strength::StrengthMethod;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: String,
    /// Base weight sigma in [0, 1].
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attack {
    pub from: String,
    pub to: String,
    /// Attack weight pi in [0, 1]; defaults to 1.
    #[serde(default = "default_attack_weight")]
    pub weight: f64,
}

fn default_attack_weight() -> f64 {
    1.0
}

/// A weighted argumentation graph in its JSON wire shape:
/// `{ "arguments": [{"id", "weight"}], "attacks": [{"from", "to", "weight"}] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedArgumentationGraph {
    pub arguments: Vec<GraphNode>,
    #[serde(default)]
    pub attacks: Vec<Attack>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    Empty,
    DuplicateNodeId(String),
    UnknownEndpoint(String),
    WeightOutOfRange { what: String, weight: f64 },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Empty => write!(f, "graph has no arguments"),
            GraphError::DuplicateNodeId(id) => write!(f, "duplicate argument id `{id}`"),
            GraphError::UnknownEndpoint(id) => {
                write!(f, "attack references unknown argument `{id}`")
            }
            GraphError::WeightOutOfRange { what, weight } => {
                write!(f, "{what} has weight {weight} outside [0, 1]")
            }
        }
    }
}

impl std::error::Error for GraphError {}

impl WeightedArgumentationGraph {
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.arguments.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut ids = BTreeSet::new();
        for node in &self.arguments {
            if !ids.insert(node.id.as_str()) {
                return Err(GraphError::DuplicateNodeId(node.id.clone()));
            }
            if !(0.0..=1.0).contains(&node.weight) {
                return Err(GraphError::WeightOutOfRange {
                    what: format!("argument `{}`", node.id),
                    weight: node.weight,
                });
            }
        }
        for attack in &self.attacks {
            for end in [&attack.from, &attack.to] {
                if !ids.contains(end.as_str()) {
                    return Err(GraphError::UnknownEndpoint(end.clone()));
                }
            }
            if !(0.0..=1.0).contains(&attack.weight) {
                return Err(GraphError::WeightOutOfRange {
                    what: format!("attack `{}` -> `{}`", attack.from, attack.to),
                    weight: attack.weight,
                });
            }
        }
        Ok(())
    }

    fn attackers(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut map: BTreeMap<&str, Vec<&str>> = self
            .arguments
            .iter()
            .map(|n| (n.id.as_str(), vec![]))
            .collect();
        for attack in &self.attacks {
            map.entry(attack.to.as_str())
                .or_default()
                .push(attack.from.as_str());
        }
        map
    }
}

/// The grounded extension: least fixed point of the defense operator.
/// Attack weights are ignored.
pub fn grounded_extension(graph: &WeightedArgumentationGraph) -> BTreeSet<String> {
    let attackers = graph.attackers();
    let mut accepted: BTreeSet<&str> = BTreeSet::new();
    loop {
        let next: BTreeSet<&str> = graph
            .arguments
            .iter()
            .map(|n| n.id.as_str())
            .filter(|id| {
                attackers[id].iter().all(|attacker| {
                    attackers[attacker]
                        .iter()
                        .any(|defender| accepted.contains(defender))
                })
            })
            .collect();
        if next == accepted {
            return accepted.into_iter().map(String::from).collect();
        }
        accepted = next;
    }
}

/// In/out/undecided labelling derived from the grounded extension: a node is
/// out when some extension member attacks it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroundedLabelling {
    pub accepted: BTreeSet<String>,
    pub rejected: BTreeSet<String>,
    pub undecided: BTreeSet<String>,
}

pub fn grounded_labelling(graph: &WeightedArgumentationGraph) -> GroundedLabelling {
    let accepted = grounded_extension(graph);
    let mut rejected = BTreeSet::new();
    for attack in &graph.attacks {
        if accepted.contains(&attack.from) {
            rejected.insert(attack.to.clone());
        }
    }
    let undecided = graph
        .arguments
        .iter()
        .map(|n| n.id.clone())
        .filter(|id| !accepted.contains(id) && !rejected.contains(id))
        .collect();
    GroundedLabelling {
        accepted,
        rejected,
        undecided,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeAssignment {
    pub degrees: BTreeMap<String, f64>,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SemanticsError {
    InvalidGraph(GraphError),
    NonUnitAttackWeight {
        from: String,
        to: String,
        weight: f64,
    },
    NoConvergence {
        iterations: usize,
        residual: f64,
    },
}

impl fmt::Display for SemanticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemanticsError::InvalidGraph(e) => write!(f, "invalid graph: {e}"),
            SemanticsError::NonUnitAttackWeight { from, to, weight } => write!(
                f,
                "h-categorizer needs unit attack weights but `{from}` -> `{to}` weighs {weight}"
            ),
            SemanticsError::NoConvergence {
                iterations,
                residual,
            } => write!(
                f,
                "no convergence after {iterations} iterations (residual {residual:e})"
            ),
        }
    }
}

impl std::error::Error for SemanticsError {}

impl From<GraphError> for SemanticsError {
    fn from(e: GraphError) -> Self {
        SemanticsError::InvalidGraph(e)
    }
}

/// Weighted h-categorizer degrees: synchronous iteration of
/// `f(x) = sigma(x) / (1 + sum of attacker values)` from `f0 = sigma`,
/// stopping once the largest per-node change falls below `eps`. Rejects
/// graphs with non-unit attack weights.
pub fn h_categorizer_degrees(
    graph: &WeightedArgumentationGraph,
    eps: f64,
    max_iterations: usize,
) -> Result<DegreeAssignment, SemanticsError> {
    graph.validate()?;
    for attack in &graph.attacks {
        if attack.weight != 1.0 {
            return Err(SemanticsError::NonUnitAttackWeight {
                from: attack.from.clone(),
                to: attack.to.clone(),
                weight: attack.weight,
            });
        }
    }

    let ids: Vec<&str> = graph.arguments.iter().map(|n| n.id.as_str()).collect();
    let sigma: Vec<f64> = graph.arguments.iter().map(|n| n.weight).collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut attacker_idx: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    for attack in &graph.attacks {
        attacker_idx[index[attack.to.as_str()]].push(index[attack.from.as_str()]);
    }

    let mut current = sigma.clone();
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iterations {
        // Jacobi update: every value computed from the previous sweep.
        let next: Vec<f64> = (0..ids.len())
            .map(|i| {
                let attack_mass: f64 = attacker_idx[i].iter().map(|&j| current[j]).sum();
                sigma[i] / (1.0 + attack_mass)
            })
            .collect();
        residual = current
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        current = next;
        if residual < eps {
            return Ok(DegreeAssignment {
                degrees: ids
                    .iter()
                    .zip(&current)
                    .map(|(&id, &d)| (id.to_string(), d))
                    .collect(),
                iterations: iteration,
                residual,
            });
        }
    }
    Err(SemanticsError::NoConvergence {
        iterations: max_iterations,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeedError {
    UnknownArgumentId(String),
}

impl fmt::Display for SeedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedError::UnknownArgumentId(id) => {
                write!(f, "attack references unknown argument id `{id}`")
            }
        }
    }
}

impl std::error::Error for SeedError {}

/// Build a weighted argumentation graph whose nodes are the arguments
/// enumerable within `budget` and whose base weights are their intrinsic
/// strengths under `method`. Attacks are supplied externally and must
/// reference enumerated argument ids (report ids, or `A1`-style aliases in
/// sorted order).
pub fn seed_graph_from_theory(
    theory: &WeightedArgumentationTheory,
    attacks: &[Attack],
    method: &StrengthMethod,
    budget: usize,
) -> Result<WeightedArgumentationGraph, SeedError> {
    let args = enumerate_arguments(theory, budget);
    let ids = assign_report_ids(&args);
    let mut known: BTreeMap<&str, &str> = BTreeMap::new();
    let aliases: Vec<String> = (1..=args.len()).map(|i| format!("A{i}")).collect();
    for (id, alias) in ids.iter().zip(&aliases) {
        known.insert(id.as_str(), id.as_str());
        known.insert(alias.as_str(), id.as_str());
    }

    let arguments: Vec<GraphNode> = args
        .iter()
        .zip(&ids)
        .map(|(arg, id)| GraphNode {
            id: id.clone(),
            weight: method.evaluate(theory, arg),
        })
        .collect();

    let mut resolved = Vec::with_capacity(attacks.len());
    for attack in attacks {
        let from = *known
            .get(attack.from.as_str())
            .ok_or_else(|| SeedError::UnknownArgumentId(attack.from.clone()))?;
        let to = *known
            .get(attack.to.as_str())
            .ok_or_else(|| SeedError::UnknownArgumentId(attack.to.clone()))?;
        resolved.push(Attack {
            from: from.to_string(),
            to: to.to_string(),
            weight: attack.weight,
        });
    }

    Ok(WeightedArgumentationGraph {
        arguments,
        attacks: resolved,
    })
}

//! Machine-readable run reports: deterministic for fixed inputs and seed
//! (ordered maps, no timestamps), with a content digest of every input file.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::argument::{assign_report_ids, Argument};
use crate::model::WeightedArgumentationTheory;
use crate::strength::StrengthMethod;

#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: String,
    pub engine_version: &'static str,
    /// Input label (path as given) to sha256 content digest.
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub results: T,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: impl Into<String>, results: T) -> Self {
        RunReport {
            command: command.into(),
            engine_version: crate::ENGINE_VERSION,
            inputs: BTreeMap::new(),
            seed: None,
            results,
        }
    }

    pub fn with_input(mut self, label: impl Into<String>, content: &[u8]) -> Self {
        self.inputs.insert(label.into(), content_digest(content));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn content_digest(content: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(content);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntry {
    pub element: String,
    pub weight: f64,
    pub multiplicity: usize,
}

/// One row of an enumeration or evaluation listing.
#[derive(Debug, Clone, Serialize)]
pub struct ArgumentSummary {
    pub id: String,
    pub alias: String,
    pub conclusion: String,
    pub strength: f64,
    pub strict: bool,
    pub rule_applications: usize,
    pub basis: Vec<BasisEntry>,
}

/// Sorted argument listing with report ids, `A1`-style aliases, and
/// strengths under one method.
pub fn summarize_arguments(
    theory: &WeightedArgumentationTheory,
    args: &[Argument],
    method: &StrengthMethod,
) -> Vec<ArgumentSummary> {
    let ids = assign_report_ids(args);
    args.iter()
        .zip(ids)
        .enumerate()
        .map(|(i, (arg, id))| ArgumentSummary {
            id,
            alias: format!("A{}", i + 1),
            conclusion: arg.conc().to_string(),
            strength: method.evaluate(theory, arg),
            strict: arg.is_strict(),
            rule_applications: arg.rule_applications(),
            basis: arg
                .basis()
                .iter()
                .map(|(e, n)| BasisEntry {
                    element: e.to_string(),
                    weight: theory.weight(e).unwrap_or(f64::NAN),
                    multiplicity: n,
                })
                .collect(),
        })
        .collect()
}

/// DOT rendering of each argument's inference tree, one cluster per
/// argument, premises at the bottom and the conclusion on top.
pub fn render_dot(
    theory: &WeightedArgumentationTheory,
    args: &[Argument],
    summaries: &[ArgumentSummary],
) -> String {
    let mut out = String::from("digraph arguments {\n  rankdir=BT;\n  node [shape=box];\n");
    for (k, (arg, summary)) in args.iter().zip(summaries).enumerate() {
        out.push_str(&format!(
            "  subgraph cluster_{k} {{\n    label=\"{} ({}) strength={}\";\n",
            summary.alias,
            summary.id,
            format_weight(summary.strength)
        ));
        let mut counter = 0usize;
        render_node(theory, arg, k, &mut counter, &mut out);
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

fn render_node(
    theory: &WeightedArgumentationTheory,
    arg: &Argument,
    cluster: usize,
    counter: &mut usize,
    out: &mut String,
) -> String {
    let me = format!("n{cluster}_{}", *counter);
    *counter += 1;
    let label = match arg.top_rule() {
        None => {
            let w = theory.premise_weight(arg.conc()).unwrap_or(f64::NAN);
            format!("{} (w={})", arg.conc(), format_weight(w))
        }
        Some(rule) => {
            let w = theory.rule_weight(rule.id()).unwrap_or(f64::NAN);
            format!("{} [{} w={}]", arg.conc(), rule.id(), format_weight(w))
        }
    };
    out.push_str(&format!(
        "    {me} [label=\"{}\"];\n",
        label.replace('"', "\\\"")
    ));
    for ant in arg.antecedents() {
        let child = render_node(theory, ant, cluster, counter, out);
        out.push_str(&format!("    {child} -> {me};\n"));
    }
    me
}

/// Six significant digits for human-facing tables; JSON keeps full values.
pub fn format_weight(w: f64) -> String {
    if w == w.trunc() && w.abs() < 1e6 {
        format!("{w}")
    } else {
        let s = format!("{w:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

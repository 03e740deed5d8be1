//! The counterexample search: derive a fresh theory per trial, synthesize an
//! instance of the requested shape, and check the principle on it. Every
//! falsification is packaged as a self-contained, replayable witness.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generate::{candidate_pool, generate_with_rng, GeneratorConfig, InstanceBuilder};
use super::table::{known_status, KnownStatus, TheoremTag};
use super::{check_principle, Instance, PrincipleId};
use crate::argument::{make_inference, make_premise, Argument};
use crate::dsl::{document_from_theory, parse_theory, print_theory};
use crate::model::{RuleId, WeightedArgumentationTheory};
use crate::strength::{lookup_method, StrengthMethod};

/// Construction recipe for one argument: enough to rebuild it over the
/// witness theory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Blueprint {
    Premise {
        literal: String,
    },
    Inference {
        rule: String,
        antecedents: Vec<Blueprint>,
    },
}

impl Blueprint {
    pub fn of(arg: &Argument) -> Blueprint {
        match arg.top_rule() {
            None => Blueprint::Premise {
                literal: arg.conc().to_string(),
            },
            Some(rule) => Blueprint::Inference {
                rule: rule.id().to_string(),
                antecedents: arg.antecedents().iter().map(Blueprint::of).collect(),
            },
        }
    }

    pub fn build(&self, theory: &WeightedArgumentationTheory) -> Result<Argument, String> {
        match self {
            Blueprint::Premise { literal } => {
                let lit = literal.parse().map_err(|e| format!("bad literal: {e}"))?;
                make_premise(theory, &lit).map_err(|e| e.to_string())
            }
            Blueprint::Inference { rule, antecedents } => {
                let ants: Result<Vec<Argument>, String> =
                    antecedents.iter().map(|b| b.build(theory)).collect();
                make_inference(theory, &RuleId::new(rule.as_str()), &ants?)
                    .map_err(|e| e.to_string())
            }
        }
    }
}

/// Serialized principle instance: theories as theory-format text, arguments
/// as blueprints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessInstance {
    Single {
        theory: String,
        argument: Blueprint,
    },
    IsoPair {
        first_theory: String,
        first: Blueprint,
        second_theory: String,
        second: Blueprint,
    },
    Extension {
        theory: String,
        base: Blueprint,
        extended: Blueprint,
        extra: Blueprint,
    },
    Pair {
        theory: String,
        first: Blueprint,
        second: Blueprint,
    },
}

/// A replayable counterexample: re-checking the rebuilt instance yields a
/// violation again.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub principle: PrincipleId,
    pub method: String,
    pub instance: WitnessInstance,
}

impl Witness {
    fn capture(principle: PrincipleId, method: &StrengthMethod, instance: &Instance) -> Witness {
        let text = |t: &Arc<WeightedArgumentationTheory>| print_theory(&document_from_theory(t));
        let instance = match instance {
            Instance::Single { theory, argument } => WitnessInstance::Single {
                theory: text(theory),
                argument: Blueprint::of(argument),
            },
            Instance::IsoPair {
                first_theory,
                first,
                second_theory,
                second,
            } => WitnessInstance::IsoPair {
                first_theory: text(first_theory),
                first: Blueprint::of(first),
                second_theory: text(second_theory),
                second: Blueprint::of(second),
            },
            Instance::Extension {
                theory,
                base,
                extended,
                extra,
            } => WitnessInstance::Extension {
                theory: text(theory),
                base: Blueprint::of(base),
                extended: Blueprint::of(extended),
                extra: Blueprint::of(extra),
            },
            Instance::Pair {
                theory,
                first,
                second,
            } => WitnessInstance::Pair {
                theory: text(theory),
                first: Blueprint::of(first),
                second: Blueprint::of(second),
            },
        };
        Witness {
            principle,
            method: method.name().to_string(),
            instance,
        }
    }

    /// Rebuild the concrete instance this witness describes.
    pub fn to_instance(&self) -> Result<Instance, String> {
        let parse = |text: &str| -> Result<Arc<WeightedArgumentationTheory>, String> {
            let doc = parse_theory(text).map_err(|d| {
                format!(
                    "witness theory failed to parse: {}",
                    d.first().map(|x| x.to_string()).unwrap_or_default()
                )
            })?;
            Ok(Arc::new(doc.to_theory()))
        };
        Ok(match &self.instance {
            WitnessInstance::Single { theory, argument } => {
                let theory = parse(theory)?;
                let argument = argument.build(&theory)?;
                Instance::Single { theory, argument }
            }
            WitnessInstance::IsoPair {
                first_theory,
                first,
                second_theory,
                second,
            } => {
                let first_theory = parse(first_theory)?;
                let second_theory = parse(second_theory)?;
                let first = first.build(&first_theory)?;
                let second = second.build(&second_theory)?;
                Instance::IsoPair {
                    first_theory,
                    first,
                    second_theory,
                    second,
                }
            }
            WitnessInstance::Extension {
                theory,
                base,
                extended,
                extra,
            } => {
                let theory = parse(theory)?;
                Instance::Extension {
                    base: base.build(&theory)?,
                    extended: extended.build(&theory)?,
                    extra: extra.build(&theory)?,
                    theory,
                }
            }
            WitnessInstance::Pair {
                theory,
                first,
                second,
            } => {
                let theory = parse(theory)?;
                Instance::Pair {
                    first: first.build(&theory)?,
                    second: second.build(&theory)?,
                    theory,
                }
            }
        })
    }
}

/// Re-execute a witness: `Ok(false)` means the violation reproduces.
pub fn replay_witness(witness: &Witness) -> Result<bool, String> {
    let method = lookup_method(&witness.method)
        .ok_or_else(|| format!("unknown method `{}`", witness.method))?;
    let instance = witness.to_instance()?;
    check_principle(witness.principle, &method, &instance).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrincipleVerdict {
    Falsified {
        witness: Box<Witness>,
    },
    NoCounterexampleFound {
        trials: usize,
    },
    /// The pair is covered by a registered result; the trials ran anyway as
    /// a sanity sweep and found nothing.
    KnownByTheorem {
        theorem: TheoremTag,
        trials: usize,
    },
}

impl PrincipleVerdict {
    pub fn is_falsified(&self) -> bool {
        matches!(self, PrincipleVerdict::Falsified { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            PrincipleVerdict::Falsified { witness } => Some(witness),
            _ => None,
        }
    }
}

/// A falsification of a pair the result table marks as satisfied or
/// guaranteed. This contradicts a proved statement, so it is a hard failure,
/// not a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeError {
    pub theorem: TheoremTag,
    pub principle: PrincipleId,
    pub witness: Box<Witness>,
}

impl fmt::Display for ProbeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "probe falsified `{}` although it is covered by {}: {}",
            self.principle,
            self.theorem,
            serde_json::to_string(&self.witness).unwrap_or_default()
        )
    }
}

impl std::error::Error for ProbeError {}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    // splitmix64 over the trial index keeps trials independent and the whole
    // sweep reproducible regardless of scheduling.
    let mut z = seed.wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(trial as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Search `trials` random instances for a counterexample to `principle`
/// under `method`. Pairs registered as satisfied/guaranteed return
/// `KnownByTheorem` after a clean sweep; a falsification there is an error.
pub fn probe_principle(
    principle: PrincipleId,
    method: &StrengthMethod,
    cfg: &GeneratorConfig,
    trials: usize,
) -> Result<PrincipleVerdict, ProbeError> {
    let status = known_status(method, principle);
    let covered_by = match status {
        KnownStatus::Satisfied(tag) | KnownStatus::Guaranteed(tag) => Some(tag),
        _ => None,
    };

    let mut found: Option<Witness> = None;
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let theory = Arc::new(generate_with_rng(cfg, &mut rng));
        let pool = candidate_pool(&theory, cfg.enumeration_budget);
        if pool.is_empty() {
            continue;
        }
        let builder = InstanceBuilder::new(&theory, &pool, method);
        let Some(instance) = builder.build(principle, &mut rng) else {
            continue;
        };
        match check_principle(principle, method, &instance) {
            Ok(true) => {}
            Ok(false) => {
                found = Some(Witness::capture(principle, method, &instance));
                break;
            }
            Err(_) => continue,
        }
    }

    match (covered_by, found) {
        (Some(theorem), Some(witness)) => Err(ProbeError {
            theorem,
            principle,
            witness: Box::new(witness),
        }),
        (Some(theorem), None) => Ok(PrincipleVerdict::KnownByTheorem { theorem, trials }),
        (None, Some(witness)) => Ok(PrincipleVerdict::Falsified {
            witness: Box::new(witness),
        }),
        (None, None) => Ok(PrincipleVerdict::NoCounterexampleFound { trials }),
    }
}

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use argstr::argument::enumerate_arguments;
use argstr::dsl::parse_theory;
use argstr::model::WeightedArgumentationTheory;
use argstr::principles::{
    known_status, probe_principle, GeneratorConfig, KnownStatus, PrincipleId, PrincipleVerdict,
};
use argstr::report::{render_dot, summarize_arguments, ArgumentSummary, RunReport};
use argstr::semantics::{
    grounded_labelling, h_categorizer_degrees, seed_graph_from_theory, Attack, GroundedLabelling,
    SemanticsError, WeightedArgumentationGraph,
};
use argstr::strength::{
    check_well_behaved, lookup_method, GridSpec, StrengthMethod, WellBehavedVerdict,
};

#[derive(Parser)]
#[command(
    name = "argstr",
    version,
    about = "Structured-argumentation engine: arguments, intrinsic strengths, principles, graph semantics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a theory file
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List the well-formed arguments of a theory with their strengths
    Enumerate {
        file: PathBuf,
        /// Maximum total rule applications per argument
        #[arg(long, default_value_t = 8)]
        budget: usize,
        #[arg(long, default_value = "sp")]
        method: String,
        #[arg(long)]
        json: bool,
        /// Emit DOT inference trees instead of a table
        #[arg(long)]
        dot: bool,
    },
    /// Evaluate strengths and seed a weighted argumentation graph
    Eval {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        budget: usize,
        #[arg(long, default_value = "sp")]
        method: String,
        /// JSON file with an `attacks` array over argument ids or aliases
        #[arg(long)]
        attacks: Option<PathBuf>,
        /// Write the seeded graph as JSON
        #[arg(long)]
        wag_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Acceptability degrees (or grounded labelling) of a graph file
    Degrees {
        file: PathBuf,
        /// `hcat` or `grounded`
        #[arg(long, default_value = "hcat")]
        semantics: String,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        #[arg(long)]
        json: bool,
    },
    /// Grounded extension of a graph file
    Grounded {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Probe the principles under a strength method
    Principles {
        #[arg(long)]
        method: String,
        /// Probe a single principle instead of all thirteen
        #[arg(long)]
        principle: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Overridden by the ARGSTR_SEED environment variable
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cross-check outcomes against the registered result table and fail
        /// on any contradiction
        #[arg(long)]
        expect_paper: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the well-behavedness clauses of an aggregation method
    Wellbehaved {
        #[arg(long)]
        method: String,
        /// Run the sampling grid even when the method carries certificates
        #[arg(long)]
        grid: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Exit 1: the run worked but the domain said no (falsified expectation,
/// failed validation, no convergence). Exit 2: bad input.
enum CliError {
    Input(String),
    Domain(String),
}

impl CliError {
    fn input(e: impl ToString) -> Self {
        CliError::Input(e.to_string())
    }

    fn domain(e: impl ToString) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Check { file, json } => cmd_check(&file, json),
        Command::Enumerate {
            file,
            budget,
            method,
            json,
            dot,
        } => cmd_enumerate(&file, budget, &method, json, dot),
        Command::Eval {
            file,
            budget,
            method,
            attacks,
            wag_out,
            json,
        } => cmd_eval(
            &file,
            budget,
            &method,
            attacks.as_deref(),
            wag_out.as_deref(),
            json,
        ),
        Command::Degrees {
            file,
            semantics,
            eps,
            max_iter,
            json,
        } => cmd_degrees(&file, &semantics, eps, max_iter, json),
        Command::Grounded { file, json } => cmd_grounded(&file, json),
        Command::Principles {
            method,
            principle,
            trials,
            seed,
            expect_paper,
            json,
        } => cmd_principles(
            &method,
            principle.as_deref(),
            trials,
            seed,
            expect_paper,
            json,
        ),
        Command::Wellbehaved { method, grid, json } => cmd_wellbehaved(&method, grid, json),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn load_theory(path: &Path) -> Result<(String, WeightedArgumentationTheory), CliError> {
    let text = read_file(path)?;
    let doc = parse_theory(&text).map_err(|diags| {
        let rendered: Vec<String> = diags
            .iter()
            .map(|d| format!("{}:{d}", path.display()))
            .collect();
        CliError::Input(rendered.join("\n"))
    })?;
    Ok((text, doc.to_theory()))
}

fn load_graph(path: &Path) -> Result<(String, WeightedArgumentationGraph), CliError> {
    let text = read_file(path)?;
    let graph: WeightedArgumentationGraph = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    graph
        .validate()
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok((text, graph))
}

fn resolve_method(name: &str) -> Result<StrengthMethod, CliError> {
    lookup_method(name).ok_or_else(|| {
        CliError::input(format!(
            "unknown method `{name}` (built-ins: {}; custom pairs compose as <f>-<g>)",
            argstr::strength::BUILTIN_METHODS.join(", ")
        ))
    })
}

#[derive(Serialize)]
struct CheckResults {
    valid: bool,
    violations: Vec<String>,
}

fn cmd_check(file: &Path, json: bool) -> Result<(), CliError> {
    let (text, theory) = load_theory(file)?;
    let report = theory.validate();
    let results = CheckResults {
        valid: report.is_valid(),
        violations: report.violations().iter().map(|v| v.to_string()).collect(),
    };
    let run =
        RunReport::new("check", &results).with_input(file.display().to_string(), text.as_bytes());
    if json {
        println!("{}", run.to_json());
    } else if results.valid {
        println!("{}: valid theory", file.display());
    } else {
        println!(
            "{}: {} violation(s)",
            file.display(),
            results.violations.len()
        );
        for v in &results.violations {
            println!("  - {v}");
        }
    }
    if results.valid {
        Ok(())
    } else {
        Err(CliError::domain("theory failed validation"))
    }
}

#[derive(Serialize)]
struct EnumerateResults {
    method: String,
    budget: usize,
    count: usize,
    arguments: Vec<ArgumentSummary>,
}

fn cmd_enumerate(
    file: &Path,
    budget: usize,
    method_name: &str,
    json: bool,
    dot: bool,
) -> Result<(), CliError> {
    let (text, theory) = load_theory(file)?;
    let method = resolve_method(method_name)?;
    let args = enumerate_arguments(&theory, budget);
    let summaries = summarize_arguments(&theory, &args, &method);
    if dot {
        print!("{}", render_dot(&theory, &args, &summaries));
        return Ok(());
    }
    let results = EnumerateResults {
        method: method.name().to_string(),
        budget,
        count: summaries.len(),
        arguments: summaries,
    };
    let run = RunReport::new("enumerate", &results)
        .with_input(file.display().to_string(), text.as_bytes());
    if json {
        println!("{}", run.to_json());
    } else {
        println!(
            "{} arguments within budget {budget} under `{}`:",
            results.count, results.method
        );
        for a in &results.arguments {
            println!(
                "  {:>5}  {}  conc={}  strength={}{}",
                a.alias,
                a.id,
                a.conclusion,
                argstr::report::format_weight(a.strength),
                if a.strict { "  [strict]" } else { "" }
            );
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct AttackFile {
    #[serde(default)]
    attacks: Vec<Attack>,
}

#[derive(Serialize)]
struct EvalResults {
    method: String,
    budget: usize,
    graph: WeightedArgumentationGraph,
    arguments: Vec<ArgumentSummary>,
}

fn cmd_eval(
    file: &Path,
    budget: usize,
    method_name: &str,
    attacks: Option<&Path>,
    wag_out: Option<&Path>,
    json: bool,
) -> Result<(), CliError> {
    let (text, theory) = load_theory(file)?;
    let method = resolve_method(method_name)?;
    let mut run_inputs: BTreeMap<String, Vec<u8>> = BTreeMap::new();
    run_inputs.insert(file.display().to_string(), text.into_bytes());
    let attack_list = match attacks {
        None => Vec::new(),
        Some(path) => {
            let raw = read_file(path)?;
            let parsed: AttackFile = serde_json::from_str(&raw)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            run_inputs.insert(path.display().to_string(), raw.into_bytes());
            parsed.attacks
        }
    };
    let graph =
        seed_graph_from_theory(&theory, &attack_list, &method, budget).map_err(CliError::input)?;
    let args = enumerate_arguments(&theory, budget);
    let summaries = summarize_arguments(&theory, &args, &method);
    if let Some(path) = wag_out {
        let body = serde_json::to_string_pretty(&graph).expect("graph serializes");
        std::fs::write(path, body)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    let results = EvalResults {
        method: method.name().to_string(),
        budget,
        graph,
        arguments: summaries,
    };
    let mut run = RunReport::new("eval", &results);
    for (label, content) in &run_inputs {
        run = run.with_input(label, content);
    }
    if json {
        println!("{}", run.to_json());
    } else {
        println!(
            "seeded graph: {} arguments, {} attacks (method `{}`)",
            results.graph.arguments.len(),
            results.graph.attacks.len(),
            results.method
        );
        for (node, summary) in results.graph.arguments.iter().zip(&results.arguments) {
            println!(
                "  {:>5}  {}  conc={}  sigma={}",
                summary.alias,
                node.id,
                summary.conclusion,
                argstr::report::format_weight(node.weight)
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(untagged)]
enum DegreesResults {
    Degrees {
        semantics: String,
        eps: f64,
        max_iterations: usize,
        iterations: usize,
        residual: f64,
        degrees: BTreeMap<String, f64>,
    },
    Grounded {
        semantics: String,
        #[serde(flatten)]
        labelling: GroundedLabelling,
    },
}

fn cmd_degrees(
    file: &Path,
    semantics: &str,
    eps: f64,
    max_iter: usize,
    json: bool,
) -> Result<(), CliError> {
    let (text, graph) = load_graph(file)?;
    match semantics {
        "hcat" => {
            let assignment = h_categorizer_degrees(&graph, eps, max_iter).map_err(|e| match e {
                SemanticsError::NoConvergence { .. } => CliError::domain(e),
                other => CliError::input(other),
            })?;
            let results = DegreesResults::Degrees {
                semantics: "hcat".into(),
                eps,
                max_iterations: max_iter,
                iterations: assignment.iterations,
                residual: assignment.residual,
                degrees: assignment.degrees,
            };
            let run = RunReport::new("degrees", &results)
                .with_input(file.display().to_string(), text.as_bytes());
            if json {
                println!("{}", run.to_json());
            } else if let DegreesResults::Degrees {
                degrees,
                iterations,
                ..
            } = &results
            {
                println!("h-categorizer degrees ({iterations} iterations):");
                for (id, d) in degrees {
                    println!("  {id}: {}", argstr::report::format_weight(*d));
                }
            }
            Ok(())
        }
        "grounded" => print_grounded(file, &text, &graph, json),
        other => Err(CliError::input(format!(
            "unknown semantics `{other}` (expected hcat or grounded)"
        ))),
    }
}

fn print_grounded(
    file: &Path,
    text: &str,
    graph: &WeightedArgumentationGraph,
    json: bool,
) -> Result<(), CliError> {
    let labelling = grounded_labelling(graph);
    let results = DegreesResults::Grounded {
        semantics: "grounded".into(),
        labelling,
    };
    let run = RunReport::new("grounded", &results)
        .with_input(file.display().to_string(), text.as_bytes());
    if json {
        println!("{}", run.to_json());
    } else if let DegreesResults::Grounded { labelling, .. } = &results {
        let fmt = |s: &std::collections::BTreeSet<String>| {
            s.iter().cloned().collect::<Vec<_>>().join(", ")
        };
        println!("in:        {{{}}}", fmt(&labelling.accepted));
        println!("out:       {{{}}}", fmt(&labelling.rejected));
        println!("undecided: {{{}}}", fmt(&labelling.undecided));
    }
    Ok(())
}

fn cmd_grounded(file: &Path, json: bool) -> Result<(), CliError> {
    let (text, graph) = load_graph(file)?;
    print_grounded(file, &text, &graph, json)
}

#[derive(Serialize)]
struct PrincipleRow {
    principle: PrincipleId,
    expected: KnownStatus,
    verdict: PrincipleVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    contradiction: Option<String>,
}

#[derive(Serialize)]
struct PrinciplesResults {
    method: String,
    trials: usize,
    expect_paper: bool,
    rows: Vec<PrincipleRow>,
}

fn cmd_principles(
    method_name: &str,
    principle: Option<&str>,
    trials: usize,
    seed: u64,
    expect_paper: bool,
    json: bool,
) -> Result<(), CliError> {
    let method = resolve_method(method_name)?;
    let seed = match std::env::var("ARGSTR_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| CliError::input(format!("ARGSTR_SEED=`{v}` is not a u64")))?,
        Err(_) => seed,
    };
    let selected: Vec<PrincipleId> = match principle {
        None => PrincipleId::ALL.to_vec(),
        Some(name) => vec![name.parse().map_err(CliError::Input)?],
    };
    let cfg = GeneratorConfig {
        seed,
        ..Default::default()
    };

    let mut rows = Vec::new();
    let mut contradictions = Vec::new();
    for p in selected {
        let expected = known_status(&method, p);
        match probe_principle(p, &method, &cfg, trials) {
            Ok(verdict) => {
                let mut contradiction = None;
                if expect_paper {
                    if let KnownStatus::NotSatisfied(tag) = expected {
                        if !verdict.is_falsified() {
                            contradiction = Some(format!(
                                "expected a counterexample ({tag}) but {trials} trials found none"
                            ));
                        }
                    }
                }
                if let Some(c) = &contradiction {
                    contradictions.push(format!("{p}: {c}"));
                }
                rows.push(PrincipleRow {
                    principle: p,
                    expected,
                    verdict,
                    contradiction,
                });
            }
            Err(probe_error) => {
                // A falsified known-positive pair: always a hard failure.
                return Err(CliError::domain(probe_error));
            }
        }
    }

    let results = PrinciplesResults {
        method: method.name().to_string(),
        trials,
        expect_paper,
        rows,
    };
    let run = RunReport::new("principles", &results).with_seed(seed);
    if json {
        println!("{}", run.to_json());
    } else {
        println!(
            "principle probe: method `{}`, {} trials, seed {}",
            results.method, results.trials, seed
        );
        for row in &results.rows {
            let verdict = match &row.verdict {
                PrincipleVerdict::Falsified { .. } => "FALSIFIED (witness recorded)".to_string(),
                PrincipleVerdict::NoCounterexampleFound { trials } => {
                    format!("no counterexample in {trials} trials")
                }
                PrincipleVerdict::KnownByTheorem { theorem, trials } => {
                    format!("holds by {theorem} (sweep of {trials} trials clean)")
                }
            };
            let flag = row.contradiction.as_deref().unwrap_or("");
            println!("  {:<30} {verdict} {flag}", row.principle.to_string());
        }
    }
    if contradictions.is_empty() {
        Ok(())
    } else {
        Err(CliError::domain(format!(
            "expectation check failed:\n{}",
            contradictions.join("\n")
        )))
    }
}

#[derive(Serialize)]
struct WellBehavedResults {
    method: String,
    verdict: WellBehavedVerdict,
}

fn cmd_wellbehaved(method_name: &str, grid: bool, json: bool) -> Result<(), CliError> {
    let method = resolve_method(method_name)?;
    let StrengthMethod::Aggregation(aggregation) = &method else {
        return Err(CliError::input(format!(
            "`{method_name}` is a direct method; well-behavedness applies to aggregation methods"
        )));
    };
    let verdict = check_well_behaved(aggregation, &GridSpec::default(), grid);
    let results = WellBehavedResults {
        method: method.name().to_string(),
        verdict,
    };
    let run = RunReport::new("wellbehaved", &results);
    if json {
        println!("{}", run.to_json());
    } else {
        match &results.verdict {
            WellBehavedVerdict::Certified => {
                println!("{}: Certified, 8/8 clauses (analytic)", results.method)
            }
            WellBehavedVerdict::NoViolationFound { samples } => println!(
                "{}: no violation found across {samples} grid samples",
                results.method
            ),
            WellBehavedVerdict::Falsified { violations } => {
                println!("{}: FALSIFIED", results.method);
                for v in violations {
                    println!("  clause {}: {}", v.clause, v.description);
                }
            }
        }
    }
    if results.verdict.is_well_behaved() {
        Ok(())
    } else {
        Err(CliError::domain("method is not well-behaved"))
    }
}

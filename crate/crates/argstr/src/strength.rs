//! Intrinsic strength assignment: the direct simple-product and weakest-link
//! methods, their recursive forms, the generic aggregation-method evaluator,
//! the built-in combining/aggregating function library, and the
//! well-behavedness checker.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::argument::Argument;
use crate::model::{BasisElement, WeightedArgumentationTheory};

/// Strength values and weights live in [0, 1].
pub type Strength = f64;

type BinaryFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type VariadicFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// The `f` half of an aggregation method: combines the top rule or premise
/// weight with the aggregated antecedent strengths.
#[derive(Clone)]
pub struct CombineFn {
    name: String,
    func: BinaryFn,
    /// Analytically established to meet its well-behavedness clauses; the
    /// grid checker is skipped for certified pairs.
    certified: bool,
}

impl CombineFn {
    pub fn new(name: impl Into<String>, certified: bool, func: BinaryFn) -> Self {
        CombineFn {
            name: name.into(),
            certified,
            func,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn apply(&self, x: f64, y: f64) -> f64 {
        (self.func)(x, y)
    }
}

impl fmt::Debug for CombineFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CombineFn({})", self.name)
    }
}

/// The `g` half of an aggregation method: a symmetric variadic function over
/// antecedent strengths.
#[derive(Clone)]
pub struct AggregateFn {
    name: String,
    func: VariadicFn,
    certified: bool,
}

impl AggregateFn {
    pub fn new(name: impl Into<String>, certified: bool, func: VariadicFn) -> Self {
        AggregateFn {
            name: name.into(),
            certified,
            func,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn apply(&self, xs: &[f64]) -> f64 {
        (self.func)(xs)
    }
}

impl fmt::Debug for AggregateFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AggregateFn({})", self.name)
    }
}

/// An aggregation method `(f, g)`.
#[derive(Debug, Clone)]
pub struct AggregationMethod {
    name: String,
    combine: CombineFn,
    aggregate: AggregateFn,
}

impl AggregationMethod {
    pub fn new(name: impl Into<String>, combine: CombineFn, aggregate: AggregateFn) -> Self {
        AggregationMethod {
            name: name.into(),
            combine,
            aggregate,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn combine(&self) -> &CombineFn {
        &self.combine
    }

    pub fn aggregate(&self) -> &AggregateFn {
        &self.aggregate
    }

    pub fn is_certified(&self) -> bool {
        self.combine.certified && self.aggregate.certified
    }
}

/// A way of assigning intrinsic strength: one of the two direct basis-fold
/// methods, or an aggregation method evaluated over the tree.
#[derive(Debug, Clone)]
pub enum StrengthMethod {
    SimpleProduct,
    WeakestLink,
    Aggregation(AggregationMethod),
}

impl StrengthMethod {
    pub fn name(&self) -> &str {
        match self {
            StrengthMethod::SimpleProduct => "sp",
            StrengthMethod::WeakestLink => "wl",
            StrengthMethod::Aggregation(m) => m.name(),
        }
    }

    pub fn evaluate(&self, theory: &WeightedArgumentationTheory, arg: &Argument) -> Strength {
        match self {
            StrengthMethod::SimpleProduct => strength_sp(theory, arg),
            StrengthMethod::WeakestLink => strength_wl(theory, arg),
            StrengthMethod::Aggregation(m) => eval_aggregation(m, theory, arg),
        }
    }
}

fn element_weight(theory: &WeightedArgumentationTheory, element: &BasisElement) -> f64 {
    theory
        .weight(element)
        .unwrap_or_else(|| panic!("argument was built over a theory that weighs {element}"))
}

/// Simple product: the product of the weights of every basis occurrence.
pub fn strength_sp(theory: &WeightedArgumentationTheory, arg: &Argument) -> Strength {
    arg.basis()
        .occurrences()
        .map(|e| element_weight(theory, e))
        .product()
}

/// Weakest link: the minimum weight over the basis.
pub fn strength_wl(theory: &WeightedArgumentationTheory, arg: &Argument) -> Strength {
    arg.basis()
        .support()
        .map(|e| element_weight(theory, e))
        .fold(f64::INFINITY, f64::min)
}

/// Simple product computed tree-recursively: a leaf scores its premise
/// weight, an inference multiplies its rule weight into the product of its
/// antecedents' recursive strengths. Agrees with [`strength_sp`].
pub fn strength_sp_recursive(theory: &WeightedArgumentationTheory, arg: &Argument) -> Strength {
    match arg.top_rule() {
        None => element_weight(theory, &BasisElement::Premise(arg.conc().clone())),
        Some(rule) => {
            let ants: f64 = arg
                .antecedents()
                .iter()
                .map(|a| strength_sp_recursive(theory, a))
                .product();
            element_weight(theory, &BasisElement::Rule(rule.id().clone())) * ants
        }
    }
}

/// Weakest link computed tree-recursively. Agrees with [`strength_wl`].
pub fn strength_wl_recursive(theory: &WeightedArgumentationTheory, arg: &Argument) -> Strength {
    match arg.top_rule() {
        None => element_weight(theory, &BasisElement::Premise(arg.conc().clone())),
        Some(rule) => {
            let m = arg
                .antecedents()
                .iter()
                .map(|a| strength_wl_recursive(theory, a))
                .fold(f64::INFINITY, f64::min);
            element_weight(theory, &BasisElement::Rule(rule.id().clone())).min(m)
        }
    }
}

/// Evaluate an aggregation method over an argument tree: a leaf scores
/// `f(s(premise), g())`, an inference `f(s(rule), g(antecedent strengths))`.
/// Antecedent strengths are fed to `g` in canonical-signature order; `g` is
/// required to be symmetric, so the order carries no meaning. Shared subtrees
/// are evaluated once per call.
pub fn eval_aggregation(
    method: &AggregationMethod,
    theory: &WeightedArgumentationTheory,
    arg: &Argument,
) -> Strength {
    fn go(
        method: &AggregationMethod,
        theory: &WeightedArgumentationTheory,
        arg: &Argument,
        memo: &mut HashMap<usize, f64>,
    ) -> f64 {
        if let Some(&v) = memo.get(&arg.node_address()) {
            return v;
        }
        let mut ordered: Vec<&Argument> = arg.antecedents().iter().collect();
        ordered.sort_by(|a, b| a.signature().cmp(b.signature()));
        let strengths: Vec<f64> = ordered
            .iter()
            .map(|a| go(method, theory, a, memo))
            .collect();
        let aggregated = method.aggregate.apply(&strengths);
        let weight = match arg.top_rule() {
            None => element_weight(theory, &BasisElement::Premise(arg.conc().clone())),
            Some(rule) => element_weight(theory, &BasisElement::Rule(rule.id().clone())),
        };
        let value = method.combine.apply(weight, aggregated);
        memo.insert(arg.node_address(), value);
        value
    }
    go(method, theory, arg, &mut HashMap::new())
}

// ---------------------------------------------------------------------------
// Built-in function library
// ---------------------------------------------------------------------------

pub fn f_prod() -> CombineFn {
    CombineFn::new("prod", true, Arc::new(|x, y| x * y))
}

pub fn f_min() -> CombineFn {
    CombineFn::new("min", true, Arc::new(|x: f64, y: f64| x.min(y)))
}

/// Hamacher product; the 0/0 singularity is an explicit case, not a limit.
pub fn f_hamacher() -> CombineFn {
    CombineFn::new("hamacher", true, Arc::new(hamacher))
}

pub fn f_lukasiewicz() -> CombineFn {
    CombineFn::new("lukasiewicz", true, Arc::new(lukasiewicz))
}

fn hamacher(x: f64, y: f64) -> f64 {
    if x == 0.0 && y == 0.0 {
        0.0
    } else {
        x * y / (x + y - x * y)
    }
}

fn lukasiewicz(x: f64, y: f64) -> f64 {
    (x + y - 1.0).max(0.0)
}

pub fn g_prod() -> AggregateFn {
    AggregateFn::new("prod", true, Arc::new(|xs: &[f64]| xs.iter().product()))
}

pub fn g_min() -> AggregateFn {
    AggregateFn::new(
        "min",
        true,
        Arc::new(|xs: &[f64]| match xs {
            [] => 1.0,
            _ => xs.iter().copied().fold(f64::INFINITY, f64::min),
        }),
    )
}

pub fn g_hamacher() -> AggregateFn {
    AggregateFn::new("hamacher", true, Arc::new(|xs| tnorm_cases(hamacher, xs)))
}

pub fn g_lukasiewicz() -> AggregateFn {
    AggregateFn::new(
        "lukasiewicz",
        true,
        Arc::new(|xs| tnorm_cases(lukasiewicz, xs)),
    )
}

/// Arithmetic mean over one or more inputs, 1 on the empty input. Symmetric
/// but not well-behaved; kept as the canonical negative example.
pub fn g_mean() -> AggregateFn {
    AggregateFn::new(
        "mean",
        false,
        Arc::new(|xs: &[f64]| {
            if xs.is_empty() {
                1.0
            } else {
                xs.iter().sum::<f64>() / xs.len() as f64
            }
        }),
    )
}

fn tnorm_cases(tnorm: fn(f64, f64) -> f64, xs: &[f64]) -> f64 {
    match xs {
        [] => 1.0,
        [x] => *x,
        [first, rest @ ..] => rest.iter().fold(*first, |acc, &x| tnorm(acc, x)),
    }
}

// ---------------------------------------------------------------------------
// Method registry
// ---------------------------------------------------------------------------

/// The named methods the engine ships with.
pub const BUILTIN_METHODS: [&str; 7] = [
    "sp",
    "wl",
    "prod-prod",
    "min-min",
    "prod-min",
    "hamacher",
    "lukasiewicz",
];

pub fn combine_fn_by_name(name: &str) -> Option<CombineFn> {
    match name {
        "prod" => Some(f_prod()),
        "min" => Some(f_min()),
        "hamacher" => Some(f_hamacher()),
        "lukasiewicz" => Some(f_lukasiewicz()),
        _ => None,
    }
}

pub fn aggregate_fn_by_name(name: &str) -> Option<AggregateFn> {
    match name {
        "prod" => Some(g_prod()),
        "min" => Some(g_min()),
        "hamacher" => Some(g_hamacher()),
        "lukasiewicz" => Some(g_lukasiewicz()),
        "mean" => Some(g_mean()),
        _ => None,
    }
}

/// Resolve a method name: `sp` and `wl` are the direct methods, the named
/// aggregations pair a t-norm `f` with its `g`, and any `<f>-<g>` pair of
/// library function names composes a custom aggregation method.
pub fn lookup_method(name: &str) -> Option<StrengthMethod> {
    match name {
        "sp" => return Some(StrengthMethod::SimpleProduct),
        "wl" => return Some(StrengthMethod::WeakestLink),
        "hamacher" => {
            return Some(StrengthMethod::Aggregation(AggregationMethod::new(
                "hamacher",
                f_hamacher(),
                g_hamacher(),
            )))
        }
        "lukasiewicz" => {
            return Some(StrengthMethod::Aggregation(AggregationMethod::new(
                "lukasiewicz",
                f_lukasiewicz(),
                g_lukasiewicz(),
            )))
        }
        _ => {}
    }
    let (f_name, g_name) = name.split_once('-')?;
    let combine = combine_fn_by_name(f_name)?;
    let aggregate = aggregate_fn_by_name(g_name)?;
    Some(StrengthMethod::Aggregation(AggregationMethod::new(
        name, combine, aggregate,
    )))
}

// ---------------------------------------------------------------------------
// Well-behavedness
// ---------------------------------------------------------------------------

/// Deterministic sampling grid for the well-behavedness checker: clause
/// inputs are drawn from `points`, tuples up to `max_tuple` long.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub points: Vec<f64>,
    pub max_tuple: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points: (0..=10).map(|i| f64::from(i) / 10.0).collect(),
            max_tuple: 3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClauseViolation {
    pub clause: u8,
    pub inputs: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub description: String,
}

/// Outcome of checking the eight well-behavedness clauses. Sampling can only
/// falsify; built-in function pairs ship with analytic certificates instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum WellBehavedVerdict {
    Certified,
    NoViolationFound { samples: usize },
    Falsified { violations: Vec<ClauseViolation> },
}

impl WellBehavedVerdict {
    pub fn is_well_behaved(&self) -> bool {
        !matches!(self, WellBehavedVerdict::Falsified { .. })
    }
}

const EQ_TOL: f64 = 1e-9;

/// Check the eight clauses on the grid (or return the analytic certificate).
/// `force_grid` runs the sampler even for certified methods.
pub fn check_well_behaved(
    method: &AggregationMethod,
    grid: &GridSpec,
    force_grid: bool,
) -> WellBehavedVerdict {
    if method.is_certified() && !force_grid {
        return WellBehavedVerdict::Certified;
    }
    let mut samples = 0usize;
    let mut violations: Vec<ClauseViolation> = Vec::new();
    let f = |x, y| method.combine.apply(x, y);
    let g = |xs: &[f64]| method.aggregate.apply(xs);
    let pts = &grid.points;
    let nonzero: Vec<f64> = pts.iter().copied().filter(|&p| p != 0.0).collect();

    // Clause 1: f non-decreasing in both variables away from 0.
    'clause1: for &y in &nonzero {
        for (i, &x) in nonzero.iter().enumerate() {
            for &x2 in &nonzero[i..] {
                samples += 2;
                if f(x, y) > f(x2, y) + EQ_TOL {
                    violations.push(ClauseViolation {
                        clause: 1,
                        inputs: vec![x, x2, y],
                        lhs: f(x, y),
                        rhs: f(x2, y),
                        description: format!("f({x}, {y}) > f({x2}, {y}) although {x} <= {x2}"),
                    });
                    break 'clause1;
                }
                if f(y, x) > f(y, x2) + EQ_TOL {
                    violations.push(ClauseViolation {
                        clause: 1,
                        inputs: vec![y, x, x2],
                        lhs: f(y, x),
                        rhs: f(y, x2),
                        description: format!("f({y}, {x}) > f({y}, {x2}) although {x} <= {x2}"),
                    });
                    break 'clause1;
                }
            }
        }
    }

    // Clause 2: f(0, x) = f(x, 0) = 0.
    for &x in pts {
        samples += 2;
        for (lhs, desc) in [(f(0.0, x), "f(0, x)"), (f(x, 0.0), "f(x, 0)")] {
            if (lhs - 0.0).abs() > EQ_TOL {
                violations.push(ClauseViolation {
                    clause: 2,
                    inputs: vec![x],
                    lhs,
                    rhs: 0.0,
                    description: format!("{desc} = {lhs} for x = {x}, expected 0"),
                });
                break;
            }
        }
        if violations.iter().any(|v| v.clause == 2) {
            break;
        }
    }

    // Clause 3: f(x, 1) = f(1, x) = x.
    for &x in pts {
        samples += 2;
        for (lhs, desc) in [(f(x, 1.0), "f(x, 1)"), (f(1.0, x), "f(1, x)")] {
            if (lhs - x).abs() > EQ_TOL {
                violations.push(ClauseViolation {
                    clause: 3,
                    inputs: vec![x],
                    lhs,
                    rhs: x,
                    description: format!("{desc} = {lhs} for x = {x}, expected {x}"),
                });
                break;
            }
        }
        if violations.iter().any(|v| v.clause == 3) {
            break;
        }
    }

    // Clause 4: g() = 1.
    samples += 1;
    let empty = g(&[]);
    if (empty - 1.0).abs() > EQ_TOL {
        violations.push(ClauseViolation {
            clause: 4,
            inputs: vec![],
            lhs: empty,
            rhs: 1.0,
            description: format!("g() = {empty}, expected 1"),
        });
    }

    // Clause 5: g(x) = x.
    for &x in pts {
        samples += 1;
        let lhs = g(&[x]);
        if (lhs - x).abs() > EQ_TOL {
            violations.push(ClauseViolation {
                clause: 5,
                inputs: vec![x],
                lhs,
                rhs: x,
                description: format!("g({x}) = {lhs}, expected {x}"),
            });
            break;
        }
    }

    let bases = tuples_up_to(pts, grid.max_tuple.saturating_sub(1));

    // Clause 6: g(.., 0) = 0.
    for base in &bases {
        samples += 1;
        let mut input = base.clone();
        input.push(0.0);
        let lhs = g(&input);
        if (lhs - 0.0).abs() > EQ_TOL {
            violations.push(ClauseViolation {
                clause: 6,
                inputs: input.clone(),
                lhs,
                rhs: 0.0,
                description: format!("g({input:?}) = {lhs}, expected 0"),
            });
            break;
        }
    }

    // Clause 7: g(..) = g(.., 1).
    for base in &bases {
        samples += 1;
        let lhs = g(base);
        let mut input = base.clone();
        input.push(1.0);
        let rhs = g(&input);
        if (lhs - rhs).abs() > EQ_TOL {
            violations.push(ClauseViolation {
                clause: 7,
                inputs: base.clone(),
                lhs,
                rhs,
                description: format!("g({base:?}) = {lhs} but g({input:?}) = {rhs}"),
            });
            break;
        }
    }

    // Clause 8: g(.., y) <= g(.., z) for y <= z.
    'clause8: for base in &bases {
        for (i, &y) in pts.iter().enumerate() {
            for &z in &pts[i..] {
                samples += 1;
                let mut with_y = base.clone();
                with_y.push(y);
                let mut with_z = base.clone();
                with_z.push(z);
                let (lhs, rhs) = (g(&with_y), g(&with_z));
                if lhs > rhs + EQ_TOL {
                    violations.push(ClauseViolation {
                        clause: 8,
                        inputs: with_y.clone(),
                        lhs,
                        rhs,
                        description: format!(
                            "g({with_y:?}) = {lhs} > g({with_z:?}) = {rhs} although {y} <= {z}"
                        ),
                    });
                    break 'clause8;
                }
            }
        }
    }

    if violations.is_empty() {
        WellBehavedVerdict::NoViolationFound { samples }
    } else {
        WellBehavedVerdict::Falsified { violations }
    }
}

fn tuples_up_to(points: &[f64], max_len: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![vec![]];
    let mut layer: Vec<Vec<f64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for base in &layer {
            for &p in points {
                let mut t = base.clone();
                t.push(p);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

//! The five-step quantum self-duality test and its dual-pair variants.
//!
//! [`quantum_self_dual`] runs, in order: a Deutsch-Jozsa balance test on `f`,
//! a Deutsch-Jozsa constancy test on `h(x) = f(x) ⊕ ¬f(x̄)`, quantum counting
//! of the true points of `f`, and a Grover hunt for `x` with `f(x) = f(x̄)`.
//! Each step can only reject; surviving all four accepts. The run is recorded
//! step by step in a [`VerdictTrace`].

use serde::{Deserialize, Serialize};

use crate::classical::Classical;
use crate::dnf::{complement_unchecked, intersection_condition, self_dual_reduction, MonotoneDNF};
use crate::error::{Error, Result};
use crate::oracle::{build_h_oracle, BooleanOracle};
use crate::sim::{
    deutsch_jozsa_run, grover_search_unknown, quantum_counting, SimConfig, SimRng,
    DEFAULT_QUBIT_CAP,
};
use crate::verdict::{Reason, Verdict};

/// Smallest arity accepted by [`quantum_self_dual`].
pub const MIN_PIPELINE_ARITY: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    IntersectionCheck,
    BalanceTest,
    ConstancyTest,
    Counting,
    WitnessSearch,
    Accept,
}

impl StepKind {
    /// The rejection reason this step produces.
    pub fn rejection(self) -> Option<Reason> {
        match self {
            StepKind::IntersectionCheck => Some(Reason::IntersectionViolated),
            StepKind::BalanceTest => Some(Reason::NotBalanced),
            StepKind::ConstancyTest => Some(Reason::HNotConstantZero),
            StepKind::Counting => Some(Reason::CountMismatch),
            StepKind::WitnessSearch => Some(Reason::WitnessFound),
            StepKind::Accept => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Continue,
    Reject,
    Accept,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: u32,
    pub kind: StepKind,
    /// Deutsch-Jozsa outcomes, the counting outcome, or the verified witness.
    pub measured: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_hat: Option<f64>,
    pub queries: u64,
    pub decision: Decision,
}

/// Oracle queries by stage. `grover` counts phase-oracle applications inside
/// the search; `classical` counts the predicate evaluations that verify its
/// candidates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryTotals {
    pub dj: u64,
    pub counting: u64,
    pub grover: u64,
    pub classical: u64,
}

impl QueryTotals {
    pub fn total(&self) -> u64 {
        self.dj + self.counting + self.grover + self.classical
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: u64,
    /// Counting width; absent when no counting step is part of the route.
    pub t: Option<usize>,
    pub lambda: f64,
    #[serde(rename = "R")]
    pub restarts: u32,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictTrace {
    pub steps: Vec<StepRecord>,
    #[serde(rename = "final")]
    pub verdict: Verdict,
    pub queries: QueryTotals,
    pub config: ConfigEcho,
    /// Largest deviation from unit norm seen before any measurement.
    #[serde(skip)]
    pub max_norm_deviation: f64,
    /// Sum of the query counters of every oracle the run consulted.
    #[serde(skip)]
    pub oracle_queries: u64,
}

impl VerdictTrace {
    fn new(config: &SimConfig, t: Option<usize>) -> Self {
        Self {
            steps: Vec::new(),
            verdict: Verdict::accept(),
            queries: QueryTotals::default(),
            config: ConfigEcho {
                seed: config.seed,
                t,
                lambda: config.growth,
                restarts: config.restarts,
                strict: config.strict,
            },
            max_norm_deviation: 0.0,
            oracle_queries: 0,
        }
    }

    fn record(&mut self, step: u32, kind: StepKind, measured: Vec<u64>, queries: u64, pass: bool) {
        let decision = match (pass, kind) {
            (false, _) => Decision::Reject,
            (true, StepKind::Accept) => Decision::Accept,
            (true, _) => Decision::Continue,
        };
        self.steps.push(StepRecord {
            step,
            kind,
            measured,
            m_hat: None,
            queries,
            decision,
        });
    }

    fn note_norm(&mut self, deviation: f64) {
        self.max_norm_deviation = self.max_norm_deviation.max(deviation);
    }

    pub fn answer(&self) -> bool {
        self.verdict.answer
    }

    /// Sum of the per-step query counts.
    pub fn step_queries(&self) -> u64 {
        self.steps.iter().map(|s| s.queries).sum()
    }

    /// Serializes to the stable JSON trace document.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization is infallible")
    }
}

/// Counting width used for an `n`-variable input: the override, or
/// `max(2, ⌈n/2⌉)`.
pub fn counting_width(n: usize, config: &SimConfig) -> usize {
    config
        .counting_width
        .unwrap_or_else(|| n.div_ceil(2).max(2))
}

/// Largest `n` whose counting step (n + t qubits) fits the simulator.
pub fn max_pipeline_arity() -> usize {
    (1..=DEFAULT_QUBIT_CAP)
        .take_while(|&n| n + n.div_ceil(2).max(2) <= DEFAULT_QUBIT_CAP)
        .last()
        .unwrap_or(0)
}

/// Runs `config.dj_repetitions` Deutsch-Jozsa trials, returning every outcome.
fn dj_trials(
    oracle: &BooleanOracle,
    config: &SimConfig,
    rng: &mut SimRng,
    trace: &mut VerdictTrace,
) -> Result<Vec<u64>> {
    (0..config.dj_repetitions)
        .map(|_| {
            let (z, dev) = deutsch_jozsa_run(oracle, rng)?;
            trace.note_norm(dev);
            Ok(z)
        })
        .collect()
}

/// Quantum self-duality test of a prime monotone formula.
pub fn quantum_self_dual(f: &MonotoneDNF, config: &SimConfig) -> Result<VerdictTrace> {
    config.validate()?;
    let n = f.num_vars();
    if n < MIN_PIPELINE_ARITY {
        return Err(Error::ArityTooSmall {
            arity: n,
            min: MIN_PIPELINE_ARITY,
        });
    }
    if f.is_constant_zero() {
        return Err(Error::ConstantFunction);
    }
    let t = counting_width(n, config);
    if n + t > DEFAULT_QUBIT_CAP {
        return Err(Error::ArityTooLarge {
            arity: n,
            cap: DEFAULT_QUBIT_CAP - t,
        });
    }

    let oracle = BooleanOracle::from_dnf(f);
    let h = build_h_oracle(f, f)?;
    let predicate = oracle.self_dual_violation();
    let mut trace = self_dual_steps(&oracle, &h, &predicate, t, config)?;
    trace.oracle_queries = oracle.query_count() + h.query_count() + predicate.query_count();
    debug_assert_eq!(trace.oracle_queries, trace.queries.total());
    Ok(trace)
}

fn self_dual_steps(
    oracle: &BooleanOracle,
    h: &BooleanOracle,
    predicate: &BooleanOracle,
    t: usize,
    config: &SimConfig,
) -> Result<VerdictTrace> {
    let mut rng = SimRng::new(config.seed);
    let mut trace = VerdictTrace::new(config, Some(t));

    // 1: a constant outcome z = 0 rules out balance.
    let zs = dj_trials(oracle, config, &mut rng, &mut trace)?;
    let reps = zs.len() as u64;
    trace.queries.dj += reps;
    let pass = zs.iter().all(|&z| z != 0);
    trace.record(1, StepKind::BalanceTest, zs, reps, pass);
    if !pass {
        trace.verdict = Verdict::reject(Reason::NotBalanced);
        return Ok(trace);
    }

    // 2: h(x) = f(x) ⊕ ¬f(x̄) must look constant.
    let zs = dj_trials(h, config, &mut rng, &mut trace)?;
    trace.queries.dj += reps;
    let pass = zs.iter().all(|&z| z == 0);
    trace.record(2, StepKind::ConstancyTest, zs, reps, pass);
    if !pass {
        trace.verdict = Verdict::reject(Reason::HNotConstantZero);
        return Ok(trace);
    }

    // 3: the count must be 2^{n-1}, i.e. eigenphase ±1/4.
    let est = quantum_counting(oracle, t, &mut rng)?;
    trace.note_norm(est.norm_deviation);
    trace.queries.counting += est.iterate_applications;
    let quarter = 1u64 << (t - 2);
    let pass = est.y == quarter || (!config.strict && est.y == 3 * quarter);
    trace.record(
        3,
        StepKind::Counting,
        vec![est.y],
        est.iterate_applications,
        pass,
    );
    trace.steps.last_mut().expect("just recorded").m_hat = Some(est.m_hat);
    if !pass {
        trace.verdict = Verdict::reject(Reason::CountMismatch);
        return Ok(trace);
    }

    // 4: hunt for x with f(x) = f(x̄).
    let search = grover_search_unknown(predicate, config, &mut rng)?;
    trace.note_norm(search.max_norm_deviation);
    trace.queries.grover += search.oracle_applications;
    trace.queries.classical += search.verifications;
    let measured = search.witness.into_iter().collect();
    trace.record(
        4,
        StepKind::WitnessSearch,
        measured,
        search.total_queries(),
        search.witness.is_none(),
    );
    if let Some(x) = search.witness {
        trace.verdict = Verdict::reject_with(Reason::WitnessFound, x);
        return Ok(trace);
    }

    trace.record(5, StepKind::Accept, Vec::new(), 0, true);
    trace.verdict = Verdict::accept();
    Ok(trace)
}

/// How [`quantum_dual_pair`] decides duality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Deutsch-Jozsa and Grover directly on `h(x) = f(x) ⊕ ¬g(x̄)`.
    #[default]
    Direct,
    /// The self-duality test on `y f ∨ z g ∨ y z`.
    Reduction,
}

/// Quantum test of whether `g` is the dual of `f`.
///
/// Step 0 classically checks that every implicant of `f` meets every
/// implicant of `g`. The direct route then runs Deutsch-Jozsa on `h` (step 1),
/// a Grover hunt for `h(x) = 1` (step 2) and accepts (step 3). The reduction
/// route appends the five self-duality steps on `n + 2` variables; a witness
/// found there is mapped back to an input of `h`.
pub fn quantum_dual_pair(
    f: &MonotoneDNF,
    g: &MonotoneDNF,
    config: &SimConfig,
    route: Route,
) -> Result<VerdictTrace> {
    config.validate()?;
    let n = f.num_vars();
    if n != g.num_vars() {
        return Err(Error::ArityMismatch {
            left: n,
            right: g.num_vars(),
        });
    }
    let arity_cap = match route {
        Route::Direct => DEFAULT_QUBIT_CAP - 1,
        Route::Reduction => max_pipeline_arity() - 2,
    };
    if n > arity_cap {
        return Err(Error::ArityTooLarge {
            arity: n,
            cap: arity_cap,
        });
    }

    let t = match route {
        Route::Direct => None,
        Route::Reduction => Some(counting_width(n + 2, config)),
    };
    let mut trace = VerdictTrace::new(config, t);
    if let Some((i, _)) = intersection_condition(f, g)? {
        let x = i.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
        trace.record(0, StepKind::IntersectionCheck, vec![x], 0, false);
        trace.verdict = Verdict::reject_with(Reason::IntersectionViolated, x);
        return Ok(trace);
    }
    trace.record(0, StepKind::IntersectionCheck, Vec::new(), 0, true);

    match route {
        Route::Direct => direct_route(f, g, config, trace),
        Route::Reduction => {
            let reduced = self_dual_reduction(f, g)?;
            let inner = quantum_self_dual(&reduced, config)?;
            trace.steps.extend(inner.steps);
            trace.queries = inner.queries;
            trace.max_norm_deviation = inner.max_norm_deviation;
            trace.oracle_queries = inner.oracle_queries;
            trace.verdict = inner.verdict;
            trace.verdict.witness = trace.verdict.witness.map(|x| lift_reduced_witness(x, n));
            Ok(trace)
        }
    }
}

fn direct_route(
    f: &MonotoneDNF,
    g: &MonotoneDNF,
    config: &SimConfig,
    trace: VerdictTrace,
) -> Result<VerdictTrace> {
    let h = build_h_oracle(f, g)?;
    let mut trace = direct_steps(&h, config, trace)?;
    trace.oracle_queries = h.query_count();
    debug_assert_eq!(trace.oracle_queries, trace.queries.total());
    Ok(trace)
}

fn direct_steps(
    h: &BooleanOracle,
    config: &SimConfig,
    mut trace: VerdictTrace,
) -> Result<VerdictTrace> {
    let mut rng = SimRng::new(config.seed);
    let zs = dj_trials(h, config, &mut rng, &mut trace)?;
    let reps = zs.len() as u64;
    trace.queries.dj += reps;
    let pass = zs.iter().all(|&z| z == 0);
    trace.record(1, StepKind::ConstancyTest, zs, reps, pass);
    if !pass {
        trace.verdict = Verdict::reject(Reason::HNotConstantZero);
        return Ok(trace);
    }

    let search = grover_search_unknown(h, config, &mut rng)?;
    trace.note_norm(search.max_norm_deviation);
    trace.queries.grover += search.oracle_applications;
    trace.queries.classical += search.verifications;
    let measured = search.witness.into_iter().collect();
    trace.record(
        2,
        StepKind::WitnessSearch,
        measured,
        search.total_queries(),
        search.witness.is_none(),
    );
    if let Some(x) = search.witness {
        trace.verdict = Verdict::reject_with(Reason::WitnessFound, x);
        return Ok(trace);
    }

    trace.record(3, StepKind::Accept, Vec::new(), 0, true);
    trace.verdict = Verdict::accept();
    Ok(trace)
}

/// Maps `x'` with `F(x') = F(x̄')` for `F = y f ∨ z g ∨ y z` to an `x` with
/// `f(x) = g(x̄)`. With `(y, z) = (1, 0)` the low bits already are such an
/// `x`; with `(0, 1)` their complement is. The other two settings of `(y, z)`
/// never violate self-duality.
fn lift_reduced_witness(x: u64, n: usize) -> u64 {
    let low = x & ((1u64 << n) - 1);
    let (y, z) = (x >> n & 1, x >> (n + 1) & 1);
    match (y, z) {
        (0, 1) => complement_unchecked(low, n),
        _ => low,
    }
}

/// How a quantum verdict relates to exhaustive ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    /// Quantum accepted a classically rejected input: the Grover step missed
    /// every witness within its restart budget.
    OneSidedMiss,
    /// Quantum rejected a classically accepted input. Never legitimate.
    Defect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub quantum: bool,
    pub classical: Verdict,
    pub agreement: Agreement,
}

/// Compares a trace against brute force: self-duality of `f` when `g` is
/// `None`, otherwise mutual duality of `(f, g)`.
pub fn cross_validate(
    f: &MonotoneDNF,
    g: Option<&MonotoneDNF>,
    trace: &VerdictTrace,
) -> Result<CrossValidation> {
    cross_validate_with(&Classical::default(), f, g, trace)
}

pub fn cross_validate_with(
    classical: &Classical,
    f: &MonotoneDNF,
    g: Option<&MonotoneDNF>,
    trace: &VerdictTrace,
) -> Result<CrossValidation> {
    let fo = BooleanOracle::from_dnf(f);
    let truth = match g {
        None => classical.is_self_dual_brute(&fo)?,
        Some(g) => classical.is_dual_pair_brute(&fo, &BooleanOracle::from_dnf(g))?,
    };
    let agreement = match (trace.answer(), truth.answer) {
        (q, c) if q == c => Agreement::Agree,
        (true, false) => Agreement::OneSidedMiss,
        _ => Agreement::Defect,
    };
    Ok(CrossValidation {
        quantum: trace.answer(),
        classical: truth,
        agreement,
    })
}

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::rng::SimRng;
use super::state::{StateVector, DEFAULT_QUBIT_CAP};
use super::SimConfig;
use crate::error::{Error, Result};
use crate::oracle::BooleanOracle;

fn check_width(requested: usize) -> Result<()> {
    if requested > DEFAULT_QUBIT_CAP {
        return Err(Error::TooManyQubits {
            requested,
            cap: DEFAULT_QUBIT_CAP,
        });
    }
    Ok(())
}

/// One Deutsch-Jozsa run: a single oracle application, then a measurement of
/// the `n` input qubits.
///
/// The outcome `z` has probability `|2^{-n} Σ_x (-1)^{x·z + h(x)}|²`, so a
/// constant oracle always yields `z = 0` and a balanced one never does.
pub fn deutsch_jozsa(oracle: &BooleanOracle, rng: &mut SimRng) -> Result<u64> {
    deutsch_jozsa_run(oracle, rng).map(|(z, _)| z)
}

/// Deutsch-Jozsa outcome and the deviation of the final norm from 1.
pub(crate) fn deutsch_jozsa_run(oracle: &BooleanOracle, rng: &mut SimRng) -> Result<(u64, f64)> {
    let n = oracle.arity();
    check_width(n + 1)?;
    let inputs: Vec<usize> = (0..n).collect();
    let all: Vec<usize> = (0..=n).collect();
    // Input register |0…0⟩, ancilla (qubit n) |1⟩.
    let mut state = StateVector::basis(n + 1, 1 << n)?;
    state.apply_hadamard_layer(&all)?;
    state.apply_xor_oracle(oracle, &inputs, n)?;
    state.apply_hadamard_layer(&inputs)?;
    let (z, norm) = state.measure_with_norm(&inputs, rng)?;
    Ok((z, (norm - 1.0).abs()))
}

/// Result of [`grover_search_unknown`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverOutcome {
    /// A verified solution, if one was found.
    pub witness: Option<u64>,
    /// Phase-oracle applications across all attempts.
    pub oracle_applications: u64,
    /// Classical predicate evaluations used to verify candidates.
    pub verifications: u64,
    pub rounds: u32,
    pub attempts: u32,
    /// Largest deviation of a pre-measurement norm from 1.
    #[serde(skip)]
    pub max_norm_deviation: f64,
}

impl GroverOutcome {
    pub fn total_queries(&self) -> u64 {
        self.oracle_applications + self.verifications
    }
}

/// Grover search when the number of solutions is unknown.
///
/// Each of the `config.restarts` rounds runs the geometric schedule: draw
/// `j` uniformly from `[0, m)`, apply `j` Grover iterates to the uniform
/// state, measure, and verify the candidate with one classical predicate
/// query; on failure `m ← min(λ·m, ⌈√N⌉)`, starting from `m = 1`. A round
/// ends before any attempt that would push its spend (iterates plus
/// verifications) past `2 + 2⌈√N⌉`. Only verified solutions are returned.
pub fn grover_search_unknown(
    predicate: &BooleanOracle,
    config: &SimConfig,
    rng: &mut SimRng,
) -> Result<GroverOutcome> {
    config.validate()?;
    let n = predicate.arity();
    check_width(n)?;
    let inputs: Vec<usize> = (0..n).collect();
    let cap = (predicate.domain_size() as f64).sqrt().ceil();
    let budget = 2 + 2 * cap as u64;

    let mut out = GroverOutcome {
        witness: None,
        oracle_applications: 0,
        verifications: 0,
        rounds: 0,
        attempts: 0,
        max_norm_deviation: 0.0,
    };
    for _ in 0..config.restarts {
        out.rounds += 1;
        let mut m: f64 = 1.0;
        let mut spent = 0u64;
        loop {
            let iterations = rng.below(m.ceil() as u64);
            if spent + iterations + 1 > budget {
                break;
            }
            spent += iterations + 1;
            out.attempts += 1;

            let mut state = StateVector::init_uniform(n)?;
            for _ in 0..iterations {
                state.apply_phase_oracle(predicate, &inputs)?;
                state.apply_diffusion(&inputs)?;
            }
            out.oracle_applications += iterations;
            let (candidate, norm) = state.measure_with_norm(&inputs, rng)?;
            out.max_norm_deviation = out.max_norm_deviation.max((norm - 1.0).abs());

            out.verifications += 1;
            if predicate.query(candidate) {
                out.witness = Some(candidate);
                return Ok(out);
            }
            m = (m * config.growth).min(cap);
        }
    }
    Ok(out)
}

/// Phase-estimation readout of the Grover iterate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingEstimate {
    /// Measured counting-register value in `[0, 2^t)`.
    pub y: u64,
    /// Counting-register width.
    pub t: usize,
    /// `2^n · sin²(π y / 2^t)`.
    pub m_hat: f64,
    /// Controlled Grover iterates applied, always `2^t - 1`.
    pub iterate_applications: u64,
    /// Deviation of the pre-measurement norm from 1.
    #[serde(skip)]
    pub norm_deviation: f64,
}

/// Solution-count estimate `2^n · sin²(π y / 2^t)` for a counting outcome.
pub fn counting_estimate(y: u64, t: usize, n: usize) -> f64 {
    let s = (PI * y as f64 / (1u64 << t) as f64).sin();
    (1u64 << n) as f64 * s * s
}

/// Quantum counting with a `t`-qubit phase register.
///
/// Input qubits are `0..n`, counting qubits `n..n+t`; counting qubit `j`
/// controls `2^j` sequential Grover iterates (phase oracle, then
/// `2|s⟩⟨s| − I`). The iterate has eigenphases `±θ` with
/// `sin²(θ/2) = M/2^n`, read out by the inverse Fourier transform.
pub fn quantum_counting(
    predicate: &BooleanOracle,
    t: usize,
    rng: &mut SimRng,
) -> Result<CountingEstimate> {
    if t < 2 {
        return Err(Error::WidthTooSmall(t));
    }
    let n = predicate.arity();
    check_width(n + t)?;
    let inputs: Vec<usize> = (0..n).collect();
    let counting: Vec<usize> = (n..n + t).collect();

    let mut state = StateVector::init_uniform(n + t)?;
    let mut applications = 0u64;
    for (j, &control) in counting.iter().enumerate() {
        for _ in 0..1u64 << j {
            state.apply_controlled_grover(predicate, &inputs, control)?;
            applications += 1;
        }
    }
    state.apply_inverse_qft(&counting)?;
    let (y, norm) = state.measure_with_norm(&counting, rng)?;
    Ok(CountingEstimate {
        y,
        t,
        m_hat: counting_estimate(y, t, n),
        iterate_applications: applications,
        norm_deviation: (norm - 1.0).abs(),
    })
}

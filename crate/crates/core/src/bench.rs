//! Corpus benchmarks comparing quantum verdicts with brute force.
//!
//! Instances fan out across worker threads; rows come back in instance order.
//! Instance `i` of arity `n` uses the seed `derive_seed(base, n << 32 | i)`
//! for both its generator and its pipeline run.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{Classical, DEFAULT_ARITY_CAP};
use crate::corpus::{random_antichain, AntichainParams};
use crate::error::{Error, Result};
use crate::oracle::BooleanOracle;
use crate::pipeline::{max_pipeline_arity, quantum_self_dual, StepKind};
use crate::sim::{derive_seed, grover_search_unknown, SimConfig, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Random antichains through the full self-duality pipeline.
    #[default]
    Random,
    /// Grover search for one uniformly planted marked input.
    Planted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub instances: usize,
    pub seed: u64,
    pub family: Family,
    pub sim: SimConfig,
}

/// One CSV row. For the planted family `quantum_answer` records whether the
/// marked input was found and `classical_answer` is always true.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub instance_id: usize,
    pub seed: u64,
    pub quantum_answer: bool,
    pub classical_answer: bool,
    pub dj_queries: u64,
    pub counting_queries: u64,
    /// Phase-oracle applications plus candidate verifications of the search.
    pub grover_queries: u64,
    pub agree: bool,
}

pub fn instance_seed(base: u64, n: usize, instance: usize) -> u64 {
    derive_seed(base, (n as u64) << 32 | instance as u64)
}

impl BenchConfig {
    fn validate(&self) -> Result<()> {
        if self.n_min > self.n_max || self.instances == 0 {
            return Err(Error::InvalidConfig("empty benchmark range".into()));
        }
        let cap = match self.family {
            Family::Random => max_pipeline_arity().min(DEFAULT_ARITY_CAP),
            Family::Planted => DEFAULT_ARITY_CAP,
        };
        if self.n_max > cap {
            return Err(Error::ArityTooLarge {
                arity: self.n_max,
                cap,
            });
        }
        if self.n_min < 2 {
            return Err(Error::ArityTooSmall {
                arity: self.n_min,
                min: 2,
            });
        }
        self.sim.validate()
    }
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = (config.n_min..=config.n_max)
        .flat_map(|n| (0..config.instances).map(move |i| (n, i)))
        .collect();
    jobs.par_iter()
        .map(|&(n, i)| match config.family {
            Family::Random => random_row(config, n, i),
            Family::Planted => planted_row(config, n, i),
        })
        .collect()
}

fn random_row(config: &BenchConfig, n: usize, instance_id: usize) -> Result<BenchRow> {
    let seed = instance_seed(config.seed, n, instance_id);
    let f = random_antichain(n, AntichainParams::for_arity(n), &mut SimRng::new(seed))?;
    let sim = SimConfig {
        seed,
        ..config.sim.clone()
    };
    let trace = quantum_self_dual(&f, &sim)?;
    let classical = Classical::default().is_self_dual_brute(&BooleanOracle::from_dnf(&f))?;
    let grover_queries = trace
        .steps
        .iter()
        .filter(|s| s.kind == StepKind::WitnessSearch)
        .map(|s| s.queries)
        .sum();
    Ok(BenchRow {
        n,
        instance_id,
        seed,
        quantum_answer: trace.answer(),
        classical_answer: classical.answer,
        dj_queries: trace.queries.dj,
        counting_queries: trace.queries.counting,
        grover_queries,
        agree: trace.answer() == classical.answer,
    })
}

fn planted_row(config: &BenchConfig, n: usize, instance_id: usize) -> Result<BenchRow> {
    let seed = instance_seed(config.seed, n, instance_id);
    let mut rng = SimRng::new(seed);
    let marked = rng.below(1 << n);
    let predicate = BooleanOracle::new(n, move |x| x == marked)?;
    let out = grover_search_unknown(&predicate, &config.sim, &mut rng)?;
    let found = out.witness == Some(marked);
    Ok(BenchRow {
        n,
        instance_id,
        seed,
        quantum_answer: found,
        classical_answer: true,
        dj_queries: 0,
        counting_queries: 0,
        grover_queries: out.total_queries(),
        agree: found,
    })
}

/// Mean `grover_queries` per arity, ascending in `n`.
pub fn mean_grover_queries(rows: &[BenchRow]) -> BTreeMap<usize, f64> {
    let mut acc: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    for r in rows {
        let e = acc.entry(r.n).or_default();
        e.0 += r.grover_queries;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(n, (sum, count))| (n, sum as f64 / count as f64))
        .collect()
}

/// Writes rows as CSV with the header
/// `n,instance_id,seed,quantum_answer,classical_answer,dj_queries,counting_queries,grover_queries,agree`.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

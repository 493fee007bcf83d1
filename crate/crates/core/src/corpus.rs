//! Test-input generators: random antichains and exhaustive enumeration.

use serde::{Deserialize, Serialize};

use crate::classical::TruthTable;
use crate::dnf::MonotoneDNF;
use crate::error::{Error, Result};
use crate::sim::SimRng;

/// Parameters of [`random_antichain`].
///
/// The generator draws `k` uniformly from `1..=max_implicants`, then `k`
/// implicants whose sizes are uniform in `1..=max_size` with variables chosen
/// uniformly without replacement. Supersets are stripped to leave an
/// antichain. The result is never constant: every draw has at least one
/// non-empty implicant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainParams {
    pub max_implicants: usize,
    pub max_size: usize,
}

impl AntichainParams {
    /// `max_implicants = 2n`, `max_size = min(n, ⌈n/2⌉ + 1)`.
    pub fn for_arity(n: usize) -> Self {
        Self {
            max_implicants: 2 * n,
            max_size: (n.div_ceil(2) + 1).min(n),
        }
    }
}

pub fn random_antichain(
    n: usize,
    params: AntichainParams,
    rng: &mut SimRng,
) -> Result<MonotoneDNF> {
    if params.max_implicants == 0 || params.max_size == 0 || params.max_size > n {
        return Err(Error::InvalidConfig(format!(
            "antichain parameters {params:?} invalid for n = {n}"
        )));
    }
    let k = 1 + rng.below(params.max_implicants as u64) as usize;
    let implicants = (0..k)
        .map(|_| {
            let size = 1 + rng.below(params.max_size as u64) as usize;
            sample_without_replacement(n, size, rng)
        })
        .collect();
    MonotoneDNF::minimized(n, implicants)
}

/// `size` distinct indices from `1..=n` by a partial Fisher-Yates shuffle.
fn sample_without_replacement(n: usize, size: usize, rng: &mut SimRng) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    for i in 0..size {
        let j = i + rng.below((n - i) as u64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(size);
    pool
}

/// Truth tables (bit `x` = value at `x`) of every monotone function of `n ≤ 6`
/// variables, built from pairs `f₀ ≤ f₁` on one variable fewer.
fn monotone_tables(n: usize) -> Vec<u64> {
    if n == 0 {
        return vec![0, 1];
    }
    let smaller = monotone_tables(n - 1);
    let half = 1u32 << (n - 1);
    let mut out = Vec::new();
    for &lo in &smaller {
        for &hi in &smaller {
            if lo & !hi == 0 {
                out.push(lo | hi << half);
            }
        }
    }
    out
}

/// Every monotone function of `n` variables as a prime DNF, except constant 1.
///
/// Supported for `1 ≤ n ≤ 5` (at most 7580 formulas).
pub fn all_monotone(n: usize) -> Result<Vec<MonotoneDNF>> {
    if !(1..=5).contains(&n) {
        return Err(Error::ArityTooLarge { arity: n, cap: 5 });
    }
    monotone_tables(n)
        .into_iter()
        .filter(|&t| t & 1 == 0)
        .map(|t| {
            let bits = (0..1u64 << n).map(|x| t >> x & 1 == 1).collect();
            let table = TruthTable::from_bits(n, bits);
            MonotoneDNF::new(n, table.minimal_true_points())
        })
        .collect()
}

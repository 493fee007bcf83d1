//! Exhaustive ground truth.
//!
//! Everything here enumerates the full truth table, so it is exponential in
//! the arity and guarded by a configurable cap. These routines are the
//! reference every quantum verdict is checked against.

use crate::dnf::{complement_unchecked, intersection_condition, MonotoneDNF};
use crate::error::{Error, Result};
use crate::oracle::BooleanOracle;
use crate::verdict::{Reason, Verdict};

/// Default arity cap: truth tables of up to 2^20 entries.
pub const DEFAULT_ARITY_CAP: usize = 20;

/// A fully evaluated boolean function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    arity: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub(crate) fn from_bits(arity: usize, bits: Vec<bool>) -> Self {
        debug_assert_eq!(bits.len(), 1 << arity);
        Self { arity, bits }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, x: u64) -> bool {
        self.bits[x as usize]
    }

    pub fn count_ones(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// True iff `x ≤ y` bitwise implies `bits[x] ≤ bits[y]`.
    pub fn is_monotone(&self) -> bool {
        (0..self.bits.len())
            .all(|x| !self.bits[x] || (0..self.arity).all(|i| self.bits[x | (1 << i)]))
    }

    /// Minimal true points, i.e. the prime implicants when the table is monotone.
    pub fn minimal_true_points(&self) -> Vec<Vec<usize>> {
        (0..self.bits.len())
            .filter(|&x| {
                self.bits[x]
                    && (0..self.arity).all(|i| x & (1 << i) == 0 || !self.bits[x ^ (1 << i)])
            })
            .map(|x| {
                (0..self.arity)
                    .filter(|i| x & (1 << i) != 0)
                    .map(|i| i + 1)
                    .collect()
            })
            .collect()
    }
}

/// Exhaustive checks under an explicit arity cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classical {
    pub arity_cap: usize,
}

impl Default for Classical {
    fn default() -> Self {
        Self {
            arity_cap: DEFAULT_ARITY_CAP,
        }
    }
}

impl Classical {
    pub fn with_cap(arity_cap: usize) -> Self {
        Self { arity_cap }
    }

    fn check(&self, arity: usize) -> Result<()> {
        if arity > self.arity_cap {
            return Err(Error::ArityTooLarge {
                arity,
                cap: self.arity_cap,
            });
        }
        Ok(())
    }

    /// Queries the oracle exactly `2^n` times.
    pub fn truth_table(&self, oracle: &BooleanOracle) -> Result<TruthTable> {
        self.check(oracle.arity())?;
        Ok(TruthTable {
            arity: oracle.arity(),
            bits: oracle.table(),
        })
    }

    pub fn count_satisfying(&self, oracle: &BooleanOracle) -> Result<u64> {
        Ok(self.truth_table(oracle)?.count_ones())
    }

    pub fn is_balanced(&self, oracle: &BooleanOracle) -> Result<bool> {
        let half = oracle.domain_size() / 2;
        Ok(self.count_satisfying(oracle)? == half)
    }

    /// Smallest `x` with `f(x) = f(x̄)`, if any.
    pub fn find_self_dual_violation(&self, oracle: &BooleanOracle) -> Result<Option<u64>> {
        let table = self.truth_table(oracle)?;
        Ok(first_self_dual_violation(&table))
    }

    /// Self-duality by scanning `x < 2^{n-1}` for `f(x) = f(x̄)`.
    pub fn is_self_dual_brute(&self, oracle: &BooleanOracle) -> Result<Verdict> {
        Ok(match self.find_self_dual_violation(oracle)? {
            Some(x) => Verdict::reject_with(Reason::WitnessFound, x),
            None => Verdict::accept(),
        })
    }

    /// Mutual duality, `f(x) = ¬g(x̄)` for all `x`.
    pub fn is_dual_pair_brute(&self, f: &BooleanOracle, g: &BooleanOracle) -> Result<Verdict> {
        if f.arity() != g.arity() {
            return Err(Error::ArityMismatch {
                left: f.arity(),
                right: g.arity(),
            });
        }
        let (tf, tg) = (self.truth_table(f)?, self.truth_table(g)?);
        let n = f.arity();
        let violation =
            (0..f.domain_size()).find(|&x| tf.get(x) == tg.get(complement_unchecked(x, n)));
        Ok(match violation {
            Some(x) => Verdict::reject_with(Reason::WitnessFound, x),
            None => Verdict::accept(),
        })
    }

    /// Self-duality via the counting characterization: `f` is self-dual iff
    /// its implicants pairwise intersect and it has exactly `2^{n-1}` true
    /// points. An intersection failure carries the indicator of the first
    /// implicant of the disjoint pair, for which `f(x) = f(x̄) = 1`.
    pub fn self_dual_by_count(&self, f: &MonotoneDNF) -> Result<Verdict> {
        self.check(f.num_vars())?;
        if let Some((i, _)) = intersection_condition(f, f)? {
            let x = i.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
            return Ok(Verdict::reject_with(Reason::IntersectionViolated, x));
        }
        let count = self.count_satisfying(&BooleanOracle::from_dnf(f))?;
        Ok(if count == f.domain_size() / 2 {
            Verdict::accept()
        } else {
            Verdict::reject(Reason::CountMismatch)
        })
    }

    /// The dual `f^d(x) = ¬f(x̄)` of a monotone formula, by exhaustive evaluation.
    ///
    /// Returns `None` when the dual is the constant-1 function, which has no
    /// representation without the empty implicant.
    pub fn dual_of(&self, f: &MonotoneDNF) -> Result<Option<MonotoneDNF>> {
        self.check(f.num_vars())?;
        let n = f.num_vars();
        let bits: Vec<bool> = (0..f.domain_size())
            .map(|x| !f.eval_unchecked(complement_unchecked(x, n)))
            .collect();
        if bits[0] {
            return Ok(None);
        }
        let table = TruthTable { arity: n, bits };
        MonotoneDNF::new(n, table.minimal_true_points()).map(Some)
    }

    pub fn table_of(&self, f: &MonotoneDNF) -> Result<TruthTable> {
        self.truth_table(&BooleanOracle::from_dnf(f))
    }
}

fn first_self_dual_violation(table: &TruthTable) -> Option<u64> {
    // If x ≥ 2^{n-1} violates then so does the smaller x̄, so the lower half suffices.
    let n = table.arity;
    (0..1u64 << (n - 1)).find(|&x| table.get(x) == table.get(complement_unchecked(x, n)))
}

pub fn truth_table(oracle: &BooleanOracle) -> Result<TruthTable> {
    Classical::default().truth_table(oracle)
}

pub fn count_satisfying(oracle: &BooleanOracle) -> Result<u64> {
    Classical::default().count_satisfying(oracle)
}

pub fn is_balanced(oracle: &BooleanOracle) -> Result<bool> {
    Classical::default().is_balanced(oracle)
}

pub fn is_self_dual_brute(oracle: &BooleanOracle) -> Result<Verdict> {
    Classical::default().is_self_dual_brute(oracle)
}

pub fn is_dual_pair_brute(f: &BooleanOracle, g: &BooleanOracle) -> Result<Verdict> {
    Classical::default().is_dual_pair_brute(f, g)
}

pub fn find_self_dual_violation(oracle: &BooleanOracle) -> Result<Option<u64>> {
    Classical::default().find_self_dual_violation(oracle)
}

pub fn self_dual_by_count(f: &MonotoneDNF) -> Result<Verdict> {
    Classical::default().self_dual_by_count(f)
}

//! Counted black-box boolean functions.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::dnf::{complement_unchecked, MonotoneDNF, MAX_VARS};
use crate::error::{Error, Result};

type Rule = Arc<dyn Fn(u64) -> bool + Send + Sync>;

/// A boolean function on `[0, 2^n)` that counts queries: one per classical
/// evaluation and one per quantum oracle application.
///
/// The counter is atomic, so concurrent evaluations never lose counts.
pub struct BooleanOracle {
    arity: usize,
    rule: Rule,
    queries: AtomicU64,
}

impl BooleanOracle {
    pub fn new<F>(arity: usize, rule: F) -> Result<Self>
    where
        F: Fn(u64) -> bool + Send + Sync + 'static,
    {
        if arity == 0 || arity > MAX_VARS {
            return Err(Error::InvalidArity {
                got: arity,
                max: MAX_VARS,
            });
        }
        Ok(Self {
            arity,
            rule: Arc::new(rule),
            queries: AtomicU64::new(0),
        })
    }

    pub fn from_dnf(f: &MonotoneDNF) -> Self {
        let f = f.clone();
        Self {
            arity: f.num_vars(),
            rule: Arc::new(move |x| f.eval_unchecked(x)),
            queries: AtomicU64::new(0),
        }
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        Self::new(arity, move |_| value)
    }

    /// An oracle reading from an explicit table of `2^arity` bits.
    pub fn from_table(arity: usize, bits: Vec<bool>) -> Result<Self> {
        if arity == 0 || arity > MAX_VARS || bits.len() as u64 != 1u64 << arity {
            return Err(Error::InvalidArity {
                got: arity,
                max: MAX_VARS,
            });
        }
        Self::new(arity, move |x| bits[x as usize])
    }

    /// `x ↦ [self(x) = self(x̄)]`, the predicate marking self-duality violations.
    ///
    /// The new oracle has its own counter; each of its evaluations costs two
    /// evaluations of the underlying rule but is counted once.
    pub fn self_dual_violation(&self) -> Self {
        let rule = Arc::clone(&self.rule);
        let n = self.arity;
        Self {
            arity: n,
            rule: Arc::new(move |x| rule(x) == rule(complement_unchecked(x, n))),
            queries: AtomicU64::new(0),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain_size(&self) -> u64 {
        1u64 << self.arity
    }

    pub fn evaluate(&self, x: u64) -> Result<bool> {
        if x >= self.domain_size() {
            return Err(Error::Domain {
                x,
                arity: self.arity,
            });
        }
        Ok(self.query(x))
    }

    #[inline]
    pub(crate) fn query(&self, x: u64) -> bool {
        debug_assert!(x < self.domain_size());
        self.queries.fetch_add(1, Ordering::Relaxed);
        (self.rule)(x)
    }

    /// Evaluates every input once, in ascending order, as classical queries.
    pub(crate) fn table(&self) -> Vec<bool> {
        (0..self.domain_size()).map(|x| self.query(x)).collect()
    }

    /// The full table for one superposed oracle application, counted as a
    /// single query.
    pub(crate) fn application_table(&self) -> Vec<bool> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        (0..self.domain_size()).map(|x| (self.rule)(x)).collect()
    }

    /// Total number of evaluations so far.
    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }
}

impl fmt::Debug for BooleanOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BooleanOracle")
            .field("arity", &self.arity)
            .field("queries", &self.query_count())
            .finish_non_exhaustive()
    }
}

/// `h(x) = f(x) ⊕ ¬g(x̄)`; identically zero iff `f` and `g` are mutually dual.
pub fn build_h_oracle(f: &MonotoneDNF, g: &MonotoneDNF) -> Result<BooleanOracle> {
    if f.num_vars() != g.num_vars() {
        return Err(Error::ArityMismatch {
            left: f.num_vars(),
            right: g.num_vars(),
        });
    }
    let n = f.num_vars();
    let (f, g) = (f.clone(), g.clone());
    BooleanOracle::new(n, move |x| {
        f.eval_unchecked(x) ^ !g.eval_unchecked(complement_unchecked(x, n))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dnf(n: usize, imps: &[&[usize]]) -> MonotoneDNF {
        MonotoneDNF::new(n, imps.iter().map(|i| i.to_vec()).collect()).unwrap()
    }

    fn h_table(f: &MonotoneDNF, g: &MonotoneDNF) -> Vec<bool> {
        let h = build_h_oracle(f, g).unwrap();
        (0..h.domain_size())
            .map(|x| h.evaluate(x).unwrap())
            .collect()
    }

    #[test]
    fn counts_every_evaluation() {
        let o = BooleanOracle::from_dnf(&dnf(3, &[&[1, 2]]));
        assert_eq!(o.query_count(), 0);
        for x in 0..8 {
            o.evaluate(x).unwrap();
        }
        o.evaluate(3).unwrap();
        assert_eq!(o.query_count(), 9);
        assert!(o.evaluate(8).is_err());
        assert_eq!(o.query_count(), 9);
    }

    #[test]
    fn concurrent_counts_are_not_lost() {
        let o = BooleanOracle::constant(4, true).unwrap();
        std::thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| {
                    for x in 0..1000u64 {
                        o.evaluate(x % 16).unwrap();
                    }
                });
            }
        });
        assert_eq!(o.query_count(), 8000);
    }

    #[test]
    fn h_of_dictatorship_is_zero() {
        let x1 = dnf(1, &[&[1]]);
        assert_eq!(h_table(&x1, &x1), vec![false, false]);
    }

    #[test]
    fn h_of_and_against_itself() {
        let and = dnf(2, &[&[1, 2]]);
        assert_eq!(h_table(&and, &and), vec![false, true, true, false]);
    }

    #[test]
    fn h_of_and_or_is_zero() {
        let and = dnf(2, &[&[1, 2]]);
        let or = dnf(2, &[&[1], &[2]]);
        assert_eq!(h_table(&and, &or), vec![false; 4]);
    }

    #[test]
    fn h_arity_mismatch() {
        assert!(matches!(
            build_h_oracle(&dnf(1, &[&[1]]), &dnf(2, &[&[1]])),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn violation_predicate() {
        let and = BooleanOracle::from_dnf(&dnf(2, &[&[1, 2]]));
        let p = and.self_dual_violation();
        let bits: Vec<bool> = (0..4).map(|x| p.evaluate(x).unwrap()).collect();
        assert_eq!(bits, vec![false, true, true, false]);
        assert_eq!(p.query_count(), 4);
    }

    #[test]
    fn table_oracle_validates_length() {
        assert!(BooleanOracle::from_table(2, vec![true; 3]).is_err());
        let o = BooleanOracle::from_table(1, vec![false, true]).unwrap();
        assert!(o.evaluate(1).unwrap());
    }
}

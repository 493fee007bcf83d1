//! Prime monotone DNF formulas.
//!
//! A [`MonotoneDNF`] over `n` variables is an antichain of non-empty implicants,
//! each a sorted set of 1-based variable indices. Inputs are integers in
//! `[0, 2^n)`; variable `i` is bit `i - 1` of the input (least significant
//! first). The same convention is used for qubit indexing in [`crate::sim`].

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Widest formula representable with `u64` implicant masks.
pub const MAX_VARS: usize = 63;

/// A prime (irredundant) monotone boolean function in disjunctive normal form.
///
/// Implicants are kept sorted lexicographically so that structural equality is
/// function equality. The empty implicant set is the constant-0 function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneDNF {
    num_vars: usize,
    implicants: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

impl MonotoneDNF {
    /// Builds a formula, rejecting implicant families that are not antichains.
    ///
    /// Each implicant is sorted and deduplicated internally before validation.
    pub fn new(num_vars: usize, implicants: Vec<Vec<usize>>) -> Result<Self> {
        let implicants = normalize(num_vars, implicants, None)?;
        if let Some((subset, superset)) = find_containment(&implicants) {
            return Err(Error::NotAntichain { subset, superset });
        }
        Ok(Self::from_normalized(num_vars, implicants))
    }

    /// Builds a formula, dropping every implicant that contains another one.
    pub fn minimized(num_vars: usize, implicants: Vec<Vec<usize>>) -> Result<Self> {
        let implicants = normalize(num_vars, implicants, None)?;
        Ok(Self::from_normalized(num_vars, strip_supersets(implicants)))
    }

    /// The constant-0 function on `num_vars` variables.
    pub fn constant_zero(num_vars: usize) -> Result<Self> {
        check_arity(num_vars)?;
        Ok(Self::from_normalized(num_vars, Vec::new()))
    }

    fn from_normalized(num_vars: usize, mut implicants: Vec<Vec<usize>>) -> Self {
        implicants.sort();
        let masks = implicants.iter().map(|imp| index_mask(imp)).collect();
        Self {
            num_vars,
            implicants,
            masks,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn implicants(&self) -> &[Vec<usize>] {
        &self.implicants
    }

    /// Implicants as bitmasks, in the same order as [`Self::implicants`].
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn is_constant_zero(&self) -> bool {
        self.implicants.is_empty()
    }

    /// Size of the input domain, `2^n`.
    pub fn domain_size(&self) -> u64 {
        1u64 << self.num_vars
    }

    pub fn evaluate(&self, x: u64) -> Result<bool> {
        if x >= self.domain_size() {
            return Err(Error::Domain {
                x,
                arity: self.num_vars,
            });
        }
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: u64) -> bool {
        self.masks.iter().any(|&m| m & !x == 0)
    }

    /// Parses the `.dnf` text format, rejecting non-antichains.
    pub fn parse(text: &str) -> Result<Self> {
        parse_dnf(text, false)
    }

    /// Serializes to the `.dnf` text format.
    pub fn to_dnf_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MonotoneDNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.num_vars)?;
        for imp in &self.implicants {
            writeln!(f, "{}", imp.iter().join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for MonotoneDNF {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn check_arity(num_vars: usize) -> Result<()> {
    if num_vars == 0 || num_vars > MAX_VARS {
        return Err(Error::InvalidArity {
            got: num_vars,
            max: MAX_VARS,
        });
    }
    Ok(())
}

fn normalize(
    num_vars: usize,
    implicants: Vec<Vec<usize>>,
    line: Option<usize>,
) -> Result<Vec<Vec<usize>>> {
    check_arity(num_vars)?;
    implicants
        .into_iter()
        .map(|mut imp| {
            if imp.is_empty() {
                return Err(Error::EmptyImplicant);
            }
            imp.sort_unstable();
            imp.dedup();
            if let Some(&bad) = imp.iter().find(|&&i| i == 0 || i > num_vars) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    num_vars,
                    line,
                });
            }
            Ok(imp)
        })
        .collect()
}

fn index_mask(implicant: &[usize]) -> u64 {
    implicant.iter().fold(0u64, |m, &i| m | (1u64 << (i - 1)))
}

/// Returns the first `(subset, superset)` pair found, duplicates included.
fn find_containment(implicants: &[Vec<usize>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let masks: Vec<u64> = implicants.iter().map(|imp| index_mask(imp)).collect();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if i != j && a & b == a {
                return Some((implicants[i].clone(), implicants[j].clone()));
            }
        }
    }
    None
}

fn strip_supersets(implicants: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut implicants: Vec<Vec<usize>> = implicants.into_iter().unique().collect();
    // Shorter sets first, so a kept set can never be a superset of a later one.
    implicants.sort_by_key(|imp| imp.len());
    let mut kept: Vec<Vec<usize>> = Vec::new();
    let mut kept_masks: Vec<u64> = Vec::new();
    for imp in implicants {
        let m = index_mask(&imp);
        if kept_masks.iter().all(|&k| k & m != k) {
            kept_masks.push(m);
            kept.push(imp);
        }
    }
    kept
}

/// Parses a `.dnf` document.
///
/// Lines starting with `#` are comments and blank lines are skipped. The first
/// remaining line must be `vars: <n>`; every following line lists one implicant
/// as strictly ascending, space-separated 1-based indices. With `minimize`
/// set, implicants containing another implicant are dropped instead of
/// rejected.
pub fn parse_dnf(text: &str, minimize: bool) -> Result<MonotoneDNF> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| Error::Syntax {
        line: 0,
        message: "missing `vars: <n>` header".into(),
    })?;
    let num_vars = header
        .strip_prefix("vars:")
        .map(str::trim)
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| Error::Syntax {
            line: header_line,
            message: format!("expected `vars: <n>`, found `{header}`"),
        })?;
    if num_vars == 0 {
        return Err(Error::Syntax {
            line: header_line,
            message: "number of variables must be positive".into(),
        });
    }
    check_arity(num_vars)?;

    let mut implicants = Vec::new();
    for (line, content) in lines {
        let mut imp = Vec::new();
        for tok in content.split_whitespace() {
            let index: usize = tok.parse().map_err(|_| Error::Syntax {
                line,
                message: format!("`{tok}` is not a variable index"),
            })?;
            if index == 0 || index > num_vars {
                return Err(Error::IndexOutOfRange {
                    index,
                    num_vars,
                    line: Some(line),
                });
            }
            if imp.last().is_some_and(|&prev| prev >= index) {
                return Err(Error::Syntax {
                    line,
                    message: "indices must be strictly ascending".into(),
                });
            }
            imp.push(index);
        }
        implicants.push(imp);
    }

    if minimize {
        MonotoneDNF::minimized(num_vars, implicants)
    } else {
        MonotoneDNF::new(num_vars, implicants)
    }
}

/// `2^n - x - 1`: the input with every one of its `n` bits flipped.
pub fn complement_index(x: u64, n: usize) -> Result<u64> {
    if n > MAX_VARS || x >= (1u64 << n) {
        return Err(Error::Domain { x, arity: n });
    }
    Ok(complement_unchecked(x, n))
}

#[inline]
pub(crate) fn complement_unchecked(x: u64, n: usize) -> u64 {
    ((1u64 << n) - 1) ^ x
}

pub fn hamming_weight(x: u64) -> u32 {
    x.count_ones()
}

/// Checks that every implicant of `f` meets every implicant of `g`.
///
/// On failure returns `Ok(Some((I, J)))` with the first disjoint pair in
/// lexicographic order; `Ok(None)` means the condition holds.
pub fn intersection_condition(
    f: &MonotoneDNF,
    g: &MonotoneDNF,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if f.num_vars != g.num_vars {
        return Err(Error::ArityMismatch {
            left: f.num_vars,
            right: g.num_vars,
        });
    }
    for (i, &a) in f.masks.iter().enumerate() {
        for (j, &b) in g.masks.iter().enumerate() {
            if a & b == 0 {
                return Ok(Some((f.implicants[i].clone(), g.implicants[j].clone())));
            }
        }
    }
    Ok(None)
}

/// True iff no implicant is contained in (or equal to) another.
pub fn is_prime_antichain(implicants: &[Vec<usize>]) -> bool {
    find_containment(implicants).is_none()
}

/// Builds `y f ∨ z g ∨ y z` on `n + 2` variables, with `y = n + 1` and
/// `z = n + 2`. The result is self-dual iff `f` and `g` are mutually dual.
pub fn self_dual_reduction(f: &MonotoneDNF, g: &MonotoneDNF) -> Result<MonotoneDNF> {
    if f.num_vars != g.num_vars {
        return Err(Error::ArityMismatch {
            left: f.num_vars,
            right: g.num_vars,
        });
    }
    let n = f.num_vars;
    let (y, z) = (n + 1, n + 2);
    let with = |imp: &Vec<usize>, v: usize| {
        let mut out = imp.clone();
        out.push(v);
        out
    };
    let implicants = f
        .implicants
        .iter()
        .map(|i| with(i, y))
        .chain(g.implicants.iter().map(|j| with(j, z)))
        .chain(std::iter::once(vec![y, z]))
        .collect();
    MonotoneDNF::new(n + 2, implicants)
}

/// The majority function on odd `n`: all `⌈n/2⌉`-subsets of `{1, …, n}`.
pub fn generate_majority_phi(n: usize) -> Result<MonotoneDNF> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenArity(n));
    }
    check_arity(n)?;
    let k = n.div_ceil(2);
    let implicants = (1..=n).combinations(k).collect();
    Ok(MonotoneDNF::from_normalized(n, implicants))
}

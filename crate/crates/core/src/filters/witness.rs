//! Witnesses that a filter is not rapid: finite `T_n ⊂ F_n` of prescribed size.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{FilterChain, FilterError};
use crate::groups::Code;

/// Finite sets `T_n ⊂ F_n` with `|T_n| = f(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonrapidWitness {
    pub sizes: Vec<usize>,
    pub sets: Vec<Vec<Code>>,
}

impl NonrapidWitness {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, n: usize) -> &[Code] {
        &self.sets[n]
    }

    /// One line per level: `T[n]: c1 c2 …`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (n, set) in self.sets.iter().enumerate() {
            let codes: Vec<String> = set.iter().map(Code::to_string).collect();
            writeln!(out, "T[{n}]: {}", codes.join(" ")).expect("write to String");
        }
        out
    }
}

/// `T_n` = the first `f(n)` members of `F_n` other than `exclude` (the
/// identity, for neighborhood filters), for `n < count`.
pub fn nonrapid_witness_for_chain(
    chain: &FilterChain,
    count: usize,
    f: impl Fn(usize) -> usize,
    exclude: Option<Code>,
) -> Result<NonrapidWitness, FilterError> {
    nonrapid_witness_with_labels(chain, count, f, exclude, |c| c.0)
}

/// As [`nonrapid_witness_for_chain`], taking members whose `label` values are
/// pairwise distinct within each `T_n`.
pub fn nonrapid_witness_with_labels<K: Ord>(
    chain: &FilterChain,
    count: usize,
    f: impl Fn(usize) -> usize,
    exclude: Option<Code>,
    label: impl Fn(Code) -> K,
) -> Result<NonrapidWitness, FilterError> {
    let mut sizes = Vec::with_capacity(count);
    let mut sets = Vec::with_capacity(count);
    for n in 0..count.min(chain.levels()) {
        let needed = f(n);
        let level = chain.level(n);
        let mut seen = BTreeSet::new();
        let set: Vec<Code> = level
            .members()
            .filter(|&c| Some(c) != exclude)
            .filter(|&c| seen.insert(label(c)))
            .take(needed)
            .collect();
        if set.len() < needed {
            return Err(FilterError::InsufficientMembers {
                level: n,
                found: set.len(),
                needed,
            });
        }
        sizes.push(needed);
        sets.push(set);
    }
    if sets.len() < count {
        return Err(FilterError::InsufficientMembers {
            level: sets.len(),
            found: 0,
            needed: f(sets.len()),
        });
    }
    Ok(NonrapidWitness { sizes, sets })
}

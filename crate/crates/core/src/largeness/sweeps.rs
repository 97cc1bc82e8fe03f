//! Exhaustive sweeps of the vast/syndetic calculus over small groups.
//!
//! Each sweep returns a [`Tally`]: how many instances were checked and every
//! instance that contradicted the claim. A nonempty failure list means a bug in
//! this crate, since the claims are theorems.

use std::fmt;

use super::{
    check_prop14, compute_i, find_qn, j_bound_intersection, ramsey_m_for, vastness,
};
use crate::groups::{k_subsets, quotient_set, FiniteGroup, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub claim: &'static str,
    pub group: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn new(claim: &'static str, group: &FiniteGroup) -> Self {
        Tally {
            claim,
            group: group.name().to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<10} {:<12} checked={:<7} failed={}",
            self.claim,
            self.group,
            self.checked,
            self.failures.len()
        )
    }
}

fn all_subsets(group: &FiniteGroup) -> impl Iterator<Item = SubsetMask> + '_ {
    let order = group.order();
    (0..1u64 << order).map(move |bits| SubsetMask::from_bits(order, bits).expect("in range"))
}

/// Every vast subset together with its `J`.
pub fn vast_sets(group: &FiniteGroup) -> Vec<(SubsetMask, usize)> {
    all_subsets(group)
        .filter(|m| m.contains(group.identity()))
        .filter_map(|m| vastness(group, m).j().map(|j| (m, j)))
        .collect()
}

/// All subgroups, found by checking closure of every subset containing `e`.
pub fn subgroups(group: &FiniteGroup) -> Vec<SubsetMask> {
    all_subsets(group)
        .filter(|h| h.contains(group.identity()))
        .filter(|&h| h.iter().all(|a| h.iter().all(|b| h.contains(group.quotient(a, b)))))
        .collect()
}

/// Every `P` of size `ramsey_m_for(J_M, n)` holds an `n`-set `Q` with `Q⁻¹Q ⊂ M`.
/// Instances with `m > |G|` are vacuous and skipped.
pub fn prop12(group: &FiniteGroup, n: usize) -> Tally {
    let mut tally = Tally::new("prop1.2", group);
    let order = group.order();
    for (m, j) in vast_sets(group) {
        let Ok(size) = ramsey_m_for(j as u64, n as u64) else {
            continue;
        };
        if size as usize > order {
            continue;
        }
        for p in k_subsets(order, size as usize) {
            let p = SubsetMask::from_bits(order, p).expect("in range");
            tally.record(find_qn(group, m, p, n).is_some(), || {
                format!("M={{{m}}} P={{{p}}} n={n}")
            });
        }
    }
    tally
}

/// `J_M = J_{M⁻¹} = J_{M∩M⁻¹}` for vast `M`, and `J_M ≥ J_L` for each one-point
/// enlargement `L = M ∪ {x}`.
pub fn prop13_symmetry(group: &FiniteGroup) -> Tally {
    let mut tally = Tally::new("prop1.3-1", group);
    for (m, j) in vast_sets(group) {
        let j_inv = vastness(group, m.inverse(group)).j();
        let j_sym = vastness(group, m.symmetrized(group)).j();
        tally.record(j_inv == Some(j) && j_sym == Some(j), || {
            format!("M={{{m}}} J={j} J_inv={j_inv:?} J_sym={j_sym:?}")
        });
        for x in m.complement().iter() {
            let l = m.with(x);
            let j_l = vastness(group, l).j();
            tally.record(j_l.is_some_and(|jl| jl <= j), || {
                format!("M={{{m}}} ⊂ L={{{l}}} J_M={j} J_L={j_l:?}")
            });
        }
    }
    tally
}

/// `M₁ ∩ M₂ ∈ Φ_m` for `m = j_bound_intersection(J_{M₁}, J_{M₂})`.
///
/// When the bound exceeds `|G|` the claim is vacuous in a finite group, so the
/// intersection is compared through [`VastnessReport::j_or_vacuous`].
///
/// [`VastnessReport::j_or_vacuous`]: super::VastnessReport::j_or_vacuous
pub fn prop13_intersection(group: &FiniteGroup) -> Tally {
    let mut tally = Tally::new("prop1.3-2", group);
    let vast = vast_sets(group);
    for &(m1, j1) in &vast {
        for &(m2, j2) in &vast {
            let both = m1.intersection(m2);
            let j = vastness(group, both).j_or_vacuous();
            let bound = j_bound_intersection(j1 as u64, j2 as u64).unwrap_or(u64::MAX);
            tally.record(j as u64 <= bound, || {
                format!("M1={{{m1}}} M2={{{m2}}} J={j} bound={bound}")
            });
        }
    }
    tally
}

/// Pairs of vast sets whose intersection is not vast within `|G|`; only possible
/// when the Ramsey bound exceeds the group order.
pub fn nonvast_intersections(group: &FiniteGroup) -> Vec<(SubsetMask, SubsetMask)> {
    let vast = vast_sets(group);
    let mut out = Vec::new();
    for &(m1, _) in &vast {
        for &(m2, _) in &vast {
            if !vastness(group, m1.intersection(m2)).is_vast() {
                out.push((m1, m2));
            }
        }
    }
    out
}

/// `W ∩ W⁻¹W = ∅ ⇒ Φ_4(G ∖ W)` over every `W ⊂ G`.
pub fn prop14(group: &FiniteGroup) -> Tally {
    let mut tally = Tally::new("prop1.4", group);
    for w in all_subsets(group) {
        let check = check_prop14(group, w);
        if check.premise_holds {
            tally.record(!check.is_violation(), || format!("W={{{w}}}"));
        }
    }
    tally
}

/// `J_{S⁻¹S} ≤ I_S + 1` for every nonempty `S`.
pub fn prop15(group: &FiniteGroup) -> Tally {
    let mut tally = Tally::new("prop1.5", group);
    for s in all_subsets(group).filter(|s| !s.is_empty()) {
        let i = compute_i(group, s).expect("nonempty").i;
        let j = vastness(group, quotient_set(group, s, s)).j_or_vacuous();
        tally.record(j <= i + 1, || format!("S={{{s}}} I={i} J={j}"));
    }
    tally
}

/// `I_M < J_M` for every vast `M`.
pub fn prop18(group: &FiniteGroup) -> Tally {
    let mut tally = Tally::new("prop1.8", group);
    for (m, j) in vast_sets(group) {
        let i = compute_i(group, m).expect("vast sets contain e").i;
        tally.record(i < j, || format!("M={{{m}}} I={i} J={j}"));
    }
    tally
}

/// A subgroup of index `k` has `J ≤ k + 1`.
pub fn cor16(group: &FiniteGroup) -> Tally {
    let mut tally = Tally::new("cor1.6", group);
    for h in subgroups(group) {
        let index = group.order() / h.len();
        let j = vastness(group, h).j_or_vacuous();
        tally.record(j <= index + 1, || format!("H={{{h}}} index={index} J={j}"));
    }
    tally
}

/// In a Boolean group, `G ∖ H` for an index-2 subgroup `H` is syndetic with
/// `I = 2` but not vast.
pub fn boolean_example(group: &FiniteGroup) -> Tally {
    let mut tally = Tally::new("example", group);
    for h in subgroups(group) {
        if h.len() * 2 != group.order() {
            continue;
        }
        let m = h.complement();
        let i = compute_i(group, m).expect("nonempty").i;
        let report = vastness(group, m);
        tally.record(i == 2 && !report.is_vast(), || {
            format!("H={{{h}}} I={i} status={:?}", report.status)
        });
    }
    tally
}

/// Every sweep over one group.
pub fn all_sweeps(group: &FiniteGroup) -> Vec<Tally> {
    let mut out = vec![
        prop12(group, 3),
        prop13_symmetry(group),
        prop13_intersection(group),
        prop14(group),
        prop15(group),
        prop18(group),
        cor16(group),
    ];
    if (0..group.order()).all(|x| group.op(x, x) == group.identity()) {
        out.push(boolean_example(group));
    }
    out
}

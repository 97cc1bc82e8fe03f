//! Vast and syndetic subsets of finite groups.
//!
//! A set `M ⊂ G` satisfies `Φ_m` when every `m`-element `P ⊂ G` contains two
//! distinct points `a, b` with `{e, a⁻¹b, b⁻¹a} ⊂ M`; `M` is vast when some
//! `Φ_m` holds and `J_M` is the least such `m`. For finite groups the search for
//! `m` is capped at `|G|`, since `Φ_m` is vacuous once `m > |G|`.
//!
//! `I_M` is the least size of a `T` with `T·M = G`.
//!
//! All pair tests run against the symmetrized set `M ∩ M⁻¹`: a pair `{a, b}`
//! works for `M` exactly when `a⁻¹b ∈ M ∩ M⁻¹`.

pub mod sweeps;

use thiserror::Error;

use crate::groups::{k_subsets, FiniteGroup, GroupError, SubsetMask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LargenessError {
    #[error("Φ_m needs m ≥ 2, got {0}")]
    InvalidArity(usize),
    #[error("the empty set is not syndetic")]
    NotSyndetic,
    #[error("Ramsey bound C({top}, {bottom}) overflows")]
    BoundOverflow { top: u64, bottom: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Outcome of testing `Φ_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiOutcome {
    pub holds: bool,
    /// On failure, the lexicographically least `P ∈ [G]^m` containing no good pair.
    pub counterexample: Option<SubsetMask>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vastness {
    Vast { j: usize },
    NotVastUpTo { m_max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VastnessReport {
    pub status: Vastness,
    /// A `P` refuting `Φ_{J−1}` (or `Φ_{m_max}` when not vast).
    pub counterexample: Option<SubsetMask>,
    pub checked_group_order: usize,
}

impl VastnessReport {
    pub fn j(&self) -> Option<usize> {
        match self.status {
            Vastness::Vast { j } => Some(j),
            Vastness::NotVastUpTo { .. } => None,
        }
    }

    pub fn is_vast(&self) -> bool {
        self.j().is_some()
    }

    /// `J_M`, or `|G| + 1` when no `m ≤ |G|` works (`Φ_{|G|+1}` holds vacuously).
    pub fn j_or_vacuous(&self) -> usize {
        self.j().unwrap_or(self.checked_group_order + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndeticCertificate {
    pub i: usize,
    pub t: SubsetMask,
}

/// Adjacency of the "good pair" graph: `b ∈ adj[a]` iff `a ≠ b` and
/// `a⁻¹b ∈ M ∩ M⁻¹`. Empty when `e ∉ M`, since then no pair qualifies.
pub(crate) fn pair_graph(group: &FiniteGroup, m: SubsetMask) -> Vec<u64> {
    let n = group.order();
    if !m.contains(group.identity()) {
        return vec![0; n];
    }
    let sym = m.symmetrized(group);
    (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a && sym.contains(group.quotient(a, b)))
                .fold(0u64, |acc, b| acc | 1 << b)
        })
        .collect()
}

/// Lexicographically least `need`-subset of `candidates` that is independent
/// (`clique == false`) or a clique (`clique == true`) in `adj`.
fn search(adj: &[u64], candidates: u64, need: usize, chosen: u64, clique: bool) -> Option<u64> {
    if need == 0 {
        return Some(chosen);
    }
    if (candidates.count_ones() as usize) < need {
        return None;
    }
    let mut rest = candidates;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (rest.count_ones() as usize) < need - 1 {
            break;
        }
        let next = if clique { rest & adj[x] } else { rest & !adj[x] };
        if let Some(found) = search(adj, next, need - 1, chosen | 1 << x, clique) {
            return Some(found);
        }
    }
    None
}

/// Test `Φ_m` for `M`. `m > |G|` is vacuously true.
pub fn phi_m_holds(
    group: &FiniteGroup,
    m_set: SubsetMask,
    m: usize,
) -> Result<PhiOutcome, LargenessError> {
    if m < 2 {
        return Err(LargenessError::InvalidArity(m));
    }
    let adj = pair_graph(group, m_set);
    Ok(phi_from_graph(&adj, group.order(), m))
}

fn phi_from_graph(adj: &[u64], order: usize, m: usize) -> PhiOutcome {
    let all = SubsetMask::full(order).expect("order checked by caller");
    match search(adj, all.bits(), m, 0, false) {
        Some(p) => PhiOutcome {
            holds: false,
            counterexample: Some(SubsetMask::from_bits(order, p).expect("subset of G")),
        },
        None => PhiOutcome {
            holds: true,
            counterexample: None,
        },
    }
}

/// Smallest `m ∈ [2, m_max]` with `Φ_m`; `m_max` is clamped to `|G|`.
pub fn compute_j(group: &FiniteGroup, m_set: SubsetMask, m_max: usize) -> VastnessReport {
    let order = group.order();
    let m_max = m_max.min(order);
    let adj = pair_graph(group, m_set);
    let mut counterexample = None;
    for m in 2..=m_max {
        let outcome = phi_from_graph(&adj, order, m);
        if outcome.holds {
            return VastnessReport {
                status: Vastness::Vast { j: m },
                counterexample,
                checked_group_order: order,
            };
        }
        counterexample = outcome.counterexample;
    }
    VastnessReport {
        status: Vastness::NotVastUpTo { m_max },
        counterexample,
        checked_group_order: order,
    }
}

/// `compute_j` with `m_max = |G|`, which decides vastness exactly.
pub fn vastness(group: &FiniteGroup, m_set: SubsetMask) -> VastnessReport {
    compute_j(group, m_set, group.order())
}

/// Minimal `T` with `T·M = G`, by exhaustive search over sizes. Among minimal
/// sets the one with the numerically least mask wins.
pub fn compute_i(
    group: &FiniteGroup,
    m_set: SubsetMask,
) -> Result<SyndeticCertificate, LargenessError> {
    if m_set.is_empty() {
        return Err(LargenessError::NotSyndetic);
    }
    let order = group.order();
    let full = SubsetMask::full(order)?.bits();
    if m_set.bits() == full {
        return Ok(SyndeticCertificate {
            i: 1,
            t: SubsetMask::from_elements(order, [group.identity()])?,
        });
    }
    let translates: Vec<u64> = (0..order)
        .map(|t| m_set.left_translate(group, t).bits())
        .collect();
    let lower = order.div_ceil(m_set.len()).max(1);
    for k in lower..=order {
        for t in k_subsets(order, k) {
            let mut covered = 0u64;
            let mut rest = t;
            while rest != 0 {
                covered |= translates[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            if covered == full {
                return Ok(SyndeticCertificate {
                    i: k,
                    t: SubsetMask::from_bits(order, t)?,
                });
            }
        }
    }
    unreachable!("T = G always covers when M is nonempty")
}

/// Binomial coefficient with overflow detection.
pub fn binomial(top: u64, bottom: u64) -> Option<u64> {
    let bottom = bottom.min(top.saturating_sub(bottom));
    let mut acc: u128 = 1;
    for i in 0..bottom {
        // acc · (top − i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul(u128::from(top - i))? / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// A size `m` such that every 2-colouring of `K_m` has a monochromatic clique on
/// `N = max(J, n)` vertices, via the bound `R(N, N) ≤ C(2N−2, N−1)`.
pub fn ramsey_m_for(j: u64, n: u64) -> Result<u64, LargenessError> {
    if j < 2 {
        return Err(LargenessError::InvalidArity(j as usize));
    }
    if n < 2 {
        return Err(LargenessError::InvalidArity(n as usize));
    }
    let big_n = j.max(n);
    let top = 2 * big_n - 2;
    let bottom = big_n - 1;
    binomial(top, bottom).ok_or(LargenessError::BoundOverflow { top, bottom })
}

/// Upper bound on `J_{M₁∩M₂}` from `J_{M₁}` and `J_{M₂}`: every `P` of this size
/// holds `J_{M₁}` points pairwise good for `M₂`, and two of them are good for `M₁`.
pub fn j_bound_intersection(j1: u64, j2: u64) -> Result<u64, LargenessError> {
    ramsey_m_for(j2, j1)
}

/// Some `Q ⊂ P` with `|Q| = n` and `Q⁻¹Q ⊂ M`; the lexicographically least one.
pub fn find_qn(
    group: &FiniteGroup,
    m_set: SubsetMask,
    p: SubsetMask,
    n: usize,
) -> Option<SubsetMask> {
    if n == 0 {
        return SubsetMask::empty(group.order()).ok();
    }
    if !m_set.contains(group.identity()) {
        return None;
    }
    let adj = pair_graph(group, m_set);
    search(&adj, p.bits(), n, 0, true)
        .map(|q| SubsetMask::from_bits(group.order(), q).expect("subset of P"))
}

/// Finite `Q, R ⊂ S` with `|Q|, |R| < J_M`, `S ⊂ Q·M` and `S ⊂ M·R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndeticCover {
    pub j: usize,
    pub q: SubsetMask,
    pub r: SubsetMask,
    /// `S ⊂ Q·M`, recomputed.
    pub left_covered: bool,
    /// `S ⊂ M·R`, recomputed.
    pub right_covered: bool,
}

/// Greedy covers for `S` by translates of a vast `M`. Both `Q` and `R` are built
/// by scanning `S` in ascending index order and keeping every element that forms
/// no good pair with those already kept.
pub fn syndetic_cover(
    group: &FiniteGroup,
    m_set: SubsetMask,
    s: SubsetMask,
) -> Result<SyndeticCover, LargenessError> {
    let j = vastness(group, m_set).j().ok_or_else(|| {
        LargenessError::PreconditionViolated(format!("M = {{{m_set}}} is not vast"))
    })?;
    let sym = m_set.symmetrized(group);
    let order = group.order();
    let mut q = SubsetMask::empty(order)?;
    let mut r = SubsetMask::empty(order)?;
    for x in s.iter() {
        // For Q: no q⁻¹x ∈ M∩M⁻¹. For R: no x·r⁻¹ ∈ M∩M⁻¹.
        if q.iter().all(|y| !sym.contains(group.quotient(y, x))) {
            q = q.with(x);
        }
        if r.iter().all(|y| !sym.contains(group.op(x, group.inv(y)))) {
            r = r.with(x);
        }
    }
    let qm = q
        .iter()
        .fold(SubsetMask::empty(order)?, |acc, t| acc.union(m_set.left_translate(group, t)));
    let mr = r
        .iter()
        .fold(SubsetMask::empty(order)?, |acc, t| acc.union(m_set.right_translate(group, t)));
    Ok(SyndeticCover {
        j,
        q,
        r,
        left_covered: s.is_subset(qm),
        right_covered: s.is_subset(mr),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prop14Check {
    /// `W ∩ W⁻¹W = ∅`
    pub premise_holds: bool,
    /// `Φ_4(G ∖ W)`
    pub conclusion_holds: bool,
}

impl Prop14Check {
    /// True when the premise holds but the conclusion does not.
    pub fn is_violation(&self) -> bool {
        self.premise_holds && !self.conclusion_holds
    }
}

/// Complements of sets `W` with `W ∩ W⁻¹W = ∅` satisfy `Φ_4`.
pub fn check_prop14(group: &FiniteGroup, w: SubsetMask) -> Prop14Check {
    let premise_holds = w
        .intersection(crate::groups::quotient_set(group, w, w))
        .is_empty();
    let complement = w.complement();
    let conclusion_holds = phi_m_holds(group, complement, 4)
        .expect("arity 4 is valid")
        .holds;
    Prop14Check {
        premise_holds,
        conclusion_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(order: usize, xs: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(order, xs.iter().copied()).unwrap()
    }

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn phi_examples() {
        let z5 = z(5);
        assert!(phi_m_holds(&z5, SubsetMask::full(5).unwrap(), 2).unwrap().holds);

        let z6 = z(6);
        let evens = mask(6, &[0, 2, 4]);
        let two = phi_m_holds(&z6, evens, 2).unwrap();
        assert!(!two.holds);
        assert_eq!(two.counterexample, Some(mask(6, &[0, 1])));
        assert!(phi_m_holds(&z6, evens, 3).unwrap().holds);

        assert_eq!(
            phi_m_holds(&z6, evens, 1),
            Err(LargenessError::InvalidArity(1))
        );
        // Vacuous beyond the group order.
        assert!(phi_m_holds(&z6, mask(6, &[]), 7).unwrap().holds);
    }

    #[test]
    fn j_examples() {
        let z6 = z(6);
        assert_eq!(vastness(&z6, mask(6, &[0, 2, 4])).j(), Some(3));

        let z9 = z(9);
        let m = mask(9, &[1]).complement();
        let report = vastness(&z9, m);
        assert_eq!(report.j(), Some(3));
        assert_eq!(report.counterexample, Some(mask(9, &[0, 1])));

        let no_identity = compute_j(&z6, mask(6, &[1, 2]), 6);
        assert_eq!(no_identity.status, Vastness::NotVastUpTo { m_max: 6 });
        assert_eq!(no_identity.j_or_vacuous(), 7);

        // m_max is clamped to the order.
        assert_eq!(
            compute_j(&z(3), mask(3, &[1]), 50).status,
            Vastness::NotVastUpTo { m_max: 3 }
        );
    }

    #[test]
    fn i_examples() {
        let z6 = z(6);
        let all = compute_i(&z6, SubsetMask::full(6).unwrap()).unwrap();
        assert_eq!((all.i, all.t), (1, mask(6, &[0])));
        let evens = compute_i(&z6, mask(6, &[0, 2, 4])).unwrap();
        assert_eq!((evens.i, evens.t), (2, mask(6, &[0, 1])));
        assert_eq!(compute_i(&z6, mask(6, &[0])).unwrap().i, 6);
        assert_eq!(
            compute_i(&z6, mask(6, &[])),
            Err(LargenessError::NotSyndetic)
        );
    }

    #[test]
    fn ramsey_bounds() {
        assert_eq!(ramsey_m_for(2, 2), Ok(2));
        assert_eq!(ramsey_m_for(3, 3), Ok(6));
        assert_eq!(ramsey_m_for(2, 4), Ok(20));
        assert_eq!(ramsey_m_for(1, 4), Err(LargenessError::InvalidArity(1)));
        assert!(matches!(
            ramsey_m_for(40, 2),
            Err(LargenessError::BoundOverflow { .. })
        ));
        assert_eq!(j_bound_intersection(2, 2), Ok(2));
        assert_eq!(j_bound_intersection(2, 3), Ok(6));
        assert_eq!(binomial(10, 3), Some(120));
        assert_eq!(binomial(66, 33), Some(7219428434016265740));
        assert_eq!(binomial(68, 34), None);
    }

    #[test]
    fn find_qn_examples() {
        let z6 = z(6);
        let all = SubsetMask::full(6).unwrap();
        assert_eq!(find_qn(&z6, all, mask(6, &[1, 3, 4]), 3), Some(mask(6, &[1, 3, 4])));
        let evens = mask(6, &[0, 2, 4]);
        assert_eq!(find_qn(&z6, evens, all, 3), Some(evens));
        assert_eq!(find_qn(&z6, evens, mask(6, &[0, 1]), 2), None);
    }

    #[test]
    fn cover_examples() {
        let z6 = z(6);
        let all6 = SubsetMask::full(6).unwrap();
        let cover = syndetic_cover(&z6, mask(6, &[0, 2, 4]), all6).unwrap();
        assert_eq!(cover.q, mask(6, &[0, 1]));
        assert!(cover.q.len() < cover.j && cover.r.len() < cover.j);
        assert!(cover.left_covered && cover.right_covered);

        let whole = syndetic_cover(&z6, all6, mask(6, &[3, 5])).unwrap();
        assert_eq!(whole.q, mask(6, &[3]));

        let z9 = z(9);
        let cover = syndetic_cover(&z9, mask(9, &[1]).complement(), SubsetMask::full(9).unwrap())
            .unwrap();
        assert!(cover.q.len() <= 2);
        assert!(cover.left_covered && cover.right_covered);

        assert!(matches!(
            syndetic_cover(&z6, mask(6, &[1]), all6),
            Err(LargenessError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn cover_in_nonabelian_group() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let all = SubsetMask::full(6).unwrap();
        for bits in 0..64u64 {
            let m = SubsetMask::from_bits(6, bits).unwrap();
            if vastness(&s3, m).is_vast() {
                let cover = syndetic_cover(&s3, m, all).unwrap();
                assert!(cover.left_covered && cover.right_covered, "{m}");
                assert!(cover.q.len() < cover.j && cover.r.len() < cover.j);
            }
        }
    }

    #[test]
    fn prop14_examples() {
        let z6 = z(6);
        let empty = check_prop14(&z6, mask(6, &[]));
        assert!(empty.premise_holds && empty.conclusion_holds);
        let z9 = z(9);
        let one = check_prop14(&z9, mask(9, &[1]));
        assert!(one.premise_holds && one.conclusion_holds && !one.is_violation());
        assert!(!check_prop14(&z6, mask(6, &[0])).premise_holds);
    }
}

//! Disjoint neighborhoods `x_nU_{k_n}` around the points of a discrete sequence.

use super::{ConstructionError, SequenceReport, TopologyVerdict, Verdict};
use crate::filters::NeighborhoodBase;
use crate::groups::Code;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translates {
    /// Least `k` isolating `x_n` in `ξ` (and past the tail bound).
    pub k_prime: Vec<usize>,
    pub k: Vec<usize>,
    /// (a): the translates `x_nU_{k_n}` are pairwise disjoint.
    pub disjoint: TopologyVerdict,
    /// (b): each `g ≠ e` has a neighborhood meeting finitely many translates.
    pub locally_finite: TopologyVerdict,
}

/// Compute `k′_n` and `k_n` for the first `count` points and check (a), (b)
/// on the codes `< depth`.
pub fn disjoint_translates(
    report: &SequenceReport,
    base: &NeighborhoodBase,
    count: usize,
    depth: usize,
) -> Result<Translates, ConstructionError> {
    let group = base.group();
    let count = count.min(report.xi.len());
    let xs = &report.xi[..count];
    let from = |stratum: usize| if base.is_subgroup_chain() { stratum + 1 } else { stratum + 2 };

    let mut k_prime = Vec::with_capacity(count);
    let mut k: Vec<usize> = Vec::with_capacity(count);
    for (n, &x) in xs.iter().enumerate() {
        let stratum = base.stratum(x)?;
        let isolating = (from(stratum)..base.levels())
            .find(|&j| report.xi.iter().all(|&y| y == x || !base.in_translate(x, j, y)))
            .ok_or(ConstructionError::IsolationNotCertified(n))?;
        k_prime.push(isolating);
        let previous = k.last().map_or(0, |&p| p + 1);
        k.push((isolating + 1).max(stratum + 1).max(previous));
    }

    // (a): for nested subgroups, two cosets meet iff one contains the other's point.
    let disjoint = if base.is_subgroup_chain() {
        let clash = (0..count).find_map(|l| {
            (l + 1..count).find_map(|m| {
                let level = k[l].min(k[m]);
                base.level(level)
                    .contains(group.quotient(xs[l], xs[m]))
                    .then(|| format!("pair={l},{m}"))
            })
        });
        match clash {
            None => TopologyVerdict::new("translates_disjoint", Verdict::Exact, vec![format!("count={count}")]),
            Some(w) => TopologyVerdict::new("translates_disjoint", Verdict::Violated, vec![w]),
        }
    } else {
        let clash = (0..depth as u128).map(Code).find_map(|y| {
            let hits: Vec<usize> = (0..count).filter(|&l| base.in_translate(xs[l], k[l], y)).collect();
            (hits.len() > 1).then(|| format!("y={y} pair={},{}", hits[0], hits[1]))
        });
        match clash {
            None => TopologyVerdict::new("translates_disjoint", Verdict::HoldsToDepth(depth), vec![]),
            Some(w) => TopologyVerdict::new("translates_disjoint", Verdict::Violated, vec![w]),
        }
    };

    // (b): the translates meeting gU_{n+2}, n the first index with g ∉ U_n.
    let mut most = 0;
    for g in (1..depth as u128).map(Code) {
        let n = base.stratum(g)? + 1;
        let meeting = (0..count)
            .filter(|&l| {
                if base.is_subgroup_chain() {
                    let level = k[l].min(n + 2);
                    base.level(level).contains(group.quotient(xs[l], g))
                } else {
                    base.in_translate(g, n + 2, xs[l])
                }
            })
            .count();
        most = most.max(meeting);
    }
    let locally_finite = TopologyVerdict::new(
        "translates_locally_finite",
        Verdict::HoldsToDepth(depth),
        vec![format!("max_meeting={most}")],
    );

    Ok(Translates {
        k_prime,
        k,
        disjoint,
        locally_finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::boolean_omega_base;
    use crate::groups::encode_support;

    fn singletons(n: u32) -> SequenceReport {
        let mut r = SequenceReport::new("singletons", "boolean-omega", "boolean-omega");
        r.xi = (0..n).map(|i| encode_support(&[i]).unwrap()).collect();
        r.count = n as usize;
        r.tail = Some(n as usize);
        r
    }

    #[test]
    fn singletons_get_k_n_plus_two() {
        let base = boolean_omega_base();
        let t = disjoint_translates(&singletons(16), &base, 16, 256).unwrap();
        assert_eq!(t.k_prime, (1..=16).collect::<Vec<_>>());
        assert_eq!(t.k, (2..=17).collect::<Vec<_>>());
        assert_eq!(t.disjoint.verdict, Verdict::Exact);
        assert_eq!(t.locally_finite.verdict, Verdict::HoldsToDepth(256));
    }

    #[test]
    fn coset_sample() {
        // ({0} + H_2) ∩ ({1} + H_3) = ∅: the two differ at bit 0.
        let base = boolean_omega_base();
        let x = encode_support(&[0]).unwrap();
        let y = encode_support(&[1]).unwrap();
        assert!(!base.level(2).contains(Code(x.0 ^ y.0)));
        assert!((0..1024u128).all(|c| !(base.in_translate(x, 2, Code(c)) && base.in_translate(y, 3, Code(c)))));
    }

    #[test]
    fn single_translate() {
        let t = disjoint_translates(&singletons(1), &boolean_omega_base(), 1, 64).unwrap();
        assert_eq!(t.k, vec![2]);
        assert_eq!(t.disjoint.verdict, Verdict::Exact);
    }
}

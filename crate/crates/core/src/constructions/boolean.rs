//! Block families in `[ω]^{<ω}` and the pair of disjoint discrete sequences.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::statement21::attach_topology;
use super::{
    build_xi_partition, build_xi_theorem22, Certificate, ConstructionError, Partition, SequenceReport,
    TopologyVerdict, Verdict, DEFAULT_WITNESS_SIZE,
};
use crate::filters::{boolean_omega_base, interval_split, IntervalSplit, Phi, UltraChooser, DEFAULT_BIT_BUDGET};
use crate::groups::{max_support, min_support, Code};
use crate::verify;

/// Finite blocks `𝒴_n = {X ∈ ξ : min X ∈ [a_n, b_n]}` for `n < K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    /// `{0}`, when it had to be added so that some element has minimum 0.
    pub prepended: Option<Code>,
    pub split: IntervalSplit,
    pub blocks: Vec<Vec<Code>>,
    /// `[a_n, a_{n+1} − 1]`, the range holding every support in block `n`.
    pub ranges: Vec<(u128, u128)>,
    pub supports_disjoint: Verdict,
}

impl BlockFamily {
    pub fn members(&self) -> impl Iterator<Item = Code> + '_ {
        self.blocks.iter().flatten().copied()
    }

    /// Index of the range containing `i`, if any.
    pub fn range_of(&self, i: u128) -> Option<usize> {
        self.ranges.iter().position(|&(lo, hi)| lo <= i && i <= hi)
    }
}

/// `ξ` sorted by `(min X, X)`, with `{0}` added in front when no element has
/// minimum 0.
fn prepare(xi: &[Code]) -> Result<(Vec<Code>, Option<Code>), ConstructionError> {
    if xi.contains(&Code(0)) {
        return Err(ConstructionError::PreconditionViolated("ξ contains the empty set".into()));
    }
    let mut sorted = xi.to_vec();
    sorted.sort_by_key(|&x| (min_support(x), x));
    sorted.dedup();
    let prepended = match sorted.first() {
        Some(&x) if min_support(x) == Some(0) => None,
        _ => Some(Code(1)),
    };
    if let Some(p) = prepended {
        sorted.insert(0, p);
    }
    Ok((sorted, prepended))
}

/// `f(n) = 1 + max(h(n), n)` with `h(n) = max{max X : min X ≤ n}`, defined for
/// `n < tail_floor`.
fn block_phi(sorted: &[Code], tail_floor: u32) -> Phi {
    // Running maximum of `max X`, indexed by `min X`.
    let mut h = vec![0u32; tail_floor as usize];
    let mut running = 0;
    let mut idx = 0;
    for (n, slot) in h.iter_mut().enumerate() {
        while idx < sorted.len() && min_support(sorted[idx]).expect("nonzero") as usize <= n {
            running = running.max(max_support(sorted[idx]).expect("nonzero"));
            idx += 1;
        }
        *slot = running;
    }
    let h = Arc::new(h);
    Phi::new("1+max(h(n),n)", move |x| {
        let n = x.to_usize().filter(|&n| n < h.len())?;
        Some(BigUint::from(1 + h[n].max(n as u32)))
    })
}

/// How many blocks the values of `f` below `tail_floor` support.
fn max_blocks(phi: &Phi) -> usize {
    let mut c = BigUint::from(0u32);
    let mut defined = 0usize;
    while let Ok(v) = phi.eval(&c) {
        defined += 1;
        c = v + 1u32;
    }
    // `f` is evaluated at `c_0, …, c_{2K+1}`.
    defined.saturating_sub(2) / 2
}

/// Group `ξ` (all of whose missing elements have minimum `≥ tail_floor`) into
/// `k` blocks whose unions have pairwise disjoint supports.
pub fn lemma31_blocks(
    xi: &[Code],
    tail_floor: u32,
    chooser: &mut UltraChooser,
    k: usize,
) -> Result<BlockFamily, ConstructionError> {
    let (sorted, prepended) = prepare(xi)?;
    let phi = block_phi(&sorted, tail_floor);
    let split = interval_split(chooser, &phi, k, DEFAULT_BIT_BUDGET)?;
    let pairs = split
        .small_pairs()
        .ok_or_else(|| ConstructionError::PreconditionViolated("interval endpoints overflow".into()))?;
    let mut blocks = Vec::with_capacity(k);
    let mut ranges = Vec::with_capacity(k);
    let mut supports_disjoint = Verdict::Exact;
    for (n, &(a, b)) in pairs.iter().enumerate() {
        let next = split.next_a(n).to_u128().expect("below the tail floor");
        let block: Vec<Code> = sorted
            .iter()
            .copied()
            .filter(|&x| (a..=b).contains(&u128::from(min_support(x).expect("nonzero"))))
            .collect();
        if block.iter().any(|&x| u128::from(max_support(x).expect("nonzero")) >= next) {
            supports_disjoint = Verdict::Violated;
        }
        blocks.push(block);
        ranges.push((a, next - 1));
    }
    Ok(BlockFamily {
        prepended,
        split,
        blocks,
        ranges,
        supports_disjoint,
    })
}

/// The two sequences and the data tying them together.
#[derive(Clone, Debug)]
pub struct Theorem31Pair {
    pub first: SequenceReport,
    pub second: SequenceReport,
    pub blocks: BlockFamily,
    /// Length of the intermediate run the blocks were cut from.
    pub intermediate_count: usize,
    pub disjoint: TopologyVerdict,
}

impl Theorem31Pair {
    pub fn reports(&self) -> [&SequenceReport; 2] {
        [&self.first, &self.second]
    }
}

/// Distinct blocks with a member in `H_n`, for each `n < count`, are plentiful enough.
fn blocks_suffice(family: &BlockFamily, count: usize, need: usize) -> bool {
    (0..count).all(|n| {
        let hits: BTreeSet<usize> = family
            .blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.iter().any(|&x| min_support(x).expect("nonzero") as usize >= n))
            .map(|(i, _)| i)
            .collect();
        hits.len() >= need
    })
}

/// Build, in the group `[ω]^{<ω}` with the base `H_n`, two disjoint sequences
/// each with the identity as its only limit point, certified for `n < count`.
pub fn theorem31_pair(chooser: &mut UltraChooser, count: usize) -> Result<Theorem31Pair, ConstructionError> {
    let base = boolean_omega_base();
    let depth = crate::filters::DEFAULT_DEPTH;
    // Extra stages push the tail of the second sequence past U_count.
    let stages = 2 * count + 2;
    let mut intermediate = 2 * stages + 8;
    let (xi_prime, family, trial) = loop {
        if intermediate >= base.levels() {
            return Err(ConstructionError::PreconditionViolated(format!(
                "count {count} needs more levels than the base provides"
            )));
        }
        let xi_prime = build_xi_theorem22(&base, None, true, intermediate, depth)?;
        let tail_floor = intermediate as u32;
        let (sorted, _) = prepare(&xi_prime.xi)?;
        let k = max_blocks(&block_phi(&sorted, tail_floor));
        if k > 0 {
            let mut trial = chooser.clone();
            let family = lemma31_blocks(&xi_prime.xi, tail_floor, &mut trial, k)?;
            if blocks_suffice(&family, stages, DEFAULT_WITNESS_SIZE) {
                break (xi_prime, family, trial);
            }
        }
        intermediate *= 2;
    };
    *chooser = trial;

    let provenance: HashMap<Code, _> = xi_prime
        .xi
        .iter()
        .copied()
        .zip(xi_prime.provenance.iter().copied())
        .collect();
    let mut first = SequenceReport::new("t31.lemma32", base.group().name(), base.name());
    first.depth = depth;
    first.count = count;
    let k = family.blocks.len();
    first.tail = family.split.c[2 * k + family.split.offset()].to_usize();
    first.xi = family.members().collect();
    if family.prepended.is_none() {
        first.provenance = first.xi.iter().map(|x| provenance[x]).collect();
    }
    first.certificates.push(Certificate::new(
        "l31.supports",
        family.supports_disjoint,
        format!("blocks={k} side={}", family.split.side),
    ));
    attach_topology(&mut first, &base, depth, "l32.i")?;

    let partition = Partition::from_blocks(family.blocks.clone());
    let mut second = build_xi_partition(&base, &partition, None, stages, depth, DEFAULT_WITNESS_SIZE)?;
    second.name = "t31.partition".into();

    // Each element of the second sequence spreads over two block ranges, while
    // every element of the first sits inside one.
    let structural = second.xi.iter().all(|&x| {
        let ranges: BTreeSet<Option<usize>> = crate::groups::decode_support(x)
            .into_iter()
            .map(|i| family.range_of(u128::from(i)))
            .collect();
        ranges.len() >= 2
    });
    let disjoint = verify::check_disjoint(&first, &second);
    let verdict = if structural {
        disjoint.verdict
    } else {
        Verdict::Violated
    };
    for report in [&mut first, &mut second] {
        report.verdicts.push(disjoint.clone());
        report.certificates.push(Certificate::new(
            "t31.disjoint",
            verdict,
            format!("structural={structural}"),
        ));
        let meets = verify::check_limit_point(report, &base, count.min(report.count));
        report
            .certificates
            .push(Certificate::new("t31.meets", meets.verdict, meets.witnesses.join(" ")));
    }
    Ok(Theorem31Pair {
        first,
        second,
        blocks: family,
        intermediate_count: intermediate,
        disjoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::Side;
    use crate::groups::encode_support;

    fn singletons(n: u32) -> Vec<Code> {
        (0..n).map(|i| encode_support(&[i]).unwrap()).collect()
    }

    #[test]
    fn singleton_blocks() {
        let family = lemma31_blocks(&singletons(64), 64, &mut UltraChooser::left(), 5).unwrap();
        assert_eq!(family.prepended, None);
        for (n, block) in family.blocks.iter().enumerate() {
            let n = n as u32;
            assert_eq!(block, &vec![
                encode_support(&[4 * n]).unwrap(),
                encode_support(&[4 * n + 1]).unwrap(),
                encode_support(&[4 * n + 2]).unwrap(),
            ]);
        }
        assert_eq!(family.ranges[0], (0, 3));
        assert_eq!(family.ranges[1], (4, 7));
        assert_eq!(family.supports_disjoint, Verdict::Exact);
    }

    #[test]
    fn sparse_input_and_prepending() {
        let evens: Vec<Code> = (1..40).map(|i| encode_support(&[2 * i]).unwrap()).collect();
        let family = lemma31_blocks(&evens, 80, &mut UltraChooser::left(), 3).unwrap();
        assert_eq!(family.prepended, Some(Code(1)));
        assert_eq!(family.supports_disjoint, Verdict::Exact);
    }

    #[test]
    fn tail_floor_limits_blocks() {
        let err = lemma31_blocks(&singletons(10), 10, &mut UltraChooser::left(), 5).unwrap_err();
        assert!(matches!(err, ConstructionError::Filter(_)));
        let phi = block_phi(&singletons(10), 10);
        assert_eq!(max_blocks(&phi), 1);
    }

    #[test]
    fn pair_for_both_sides() {
        for chooser in [UltraChooser::left(), UltraChooser::right()] {
            let mut chooser = chooser;
            let pair = theorem31_pair(&mut chooser, 6).unwrap();
            assert_eq!(pair.disjoint.verdict, Verdict::Exact);
            for report in pair.reports() {
                for name in ["t31.disjoint", "t31.meets"] {
                    let c = report.certificate(name).unwrap();
                    assert_eq!(c.verdict, Verdict::Exact, "{}: {name} {}", report.name, c.detail);
                }
            }
            assert_eq!(chooser.decisions().len(), 1);
            let expected = if matches!(chooser.strategy(), crate::filters::ChooserStrategy::Left) {
                Side::Left
            } else {
                Side::Right
            };
            assert_eq!(pair.blocks.split.side, expected);
        }
    }
}

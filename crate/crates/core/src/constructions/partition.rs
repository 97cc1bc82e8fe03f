//! Sequences drawn from differences across the blocks of a partitioned set
//! `Y` with the identity in its closure: `ξ ⊂ Z = ⋃_{i≠j} Y_i⁻¹Y_j`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::statement21::run_statement21;
use super::{Certificate, ConstructionError, FiniteToOneMap, Label, SequenceReport, Statement21Config, Verdict};
use crate::filters::{FilterChain, NeighborhoodBase};
use crate::groups::{Code, DecidableSet, EnumeratedGroup};
use crate::verify;

type BlockOf = Arc<dyn Fn(Code) -> Option<usize> + Send + Sync>;
type BlockFn = Arc<dyn Fn(usize) -> Vec<Code> + Send + Sync>;

/// A set `Y` partitioned into finite blocks `Y_i`.
#[derive(Clone)]
pub struct Partition {
    pub y: DecidableSet,
    block_of: BlockOf,
    block: BlockFn,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Partition").field(&self.y).finish()
    }
}

impl Partition {
    pub fn new(
        y: DecidableSet,
        block_of: impl Fn(Code) -> Option<usize> + Send + Sync + 'static,
        block: impl Fn(usize) -> Vec<Code> + Send + Sync + 'static,
    ) -> Self {
        Partition {
            y,
            block_of: Arc::new(block_of),
            block: Arc::new(block),
        }
    }

    /// `Y` is the union of the listed blocks.
    pub fn from_blocks(blocks: Vec<Vec<Code>>) -> Self {
        let index: HashMap<Code, usize> = blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |&c| (c, i)))
            .collect();
        let y = DecidableSet::finite("Y", index.keys().copied());
        let blocks = Arc::new(blocks);
        Partition::new(y, move |c| index.get(&c).copied(), move |i| {
            blocks.get(i).cloned().unwrap_or_default()
        })
    }

    pub fn block_of(&self, c: Code) -> Option<usize> {
        (self.block_of)(c)
    }

    pub fn block(&self, i: usize) -> Vec<Code> {
        (self.block)(i)
    }

    pub fn map(&self) -> FiniteToOneMap {
        let (block_of, block) = (Arc::clone(&self.block_of), Arc::clone(&self.block));
        FiniteToOneMap::new(
            "partition",
            move |c| block_of(c).map_or(Label::Point(c), Label::Block),
            move |l| match l {
                Label::Point(c) => vec![c],
                Label::Block(i) => block(i),
            },
        )
    }

    /// `x ∈ Y_i⁻¹Y_j` for some `i ≠ j`, searching the first `scan` members of `Y`.
    pub fn z_contains(&self, group: EnumeratedGroup, x: Code, scan: usize) -> bool {
        self.y.members().take(scan).any(|g| {
            let h = group.op(g, x);
            match (self.block_of(g), self.block_of(h)) {
                (Some(i), Some(j)) => i != j,
                _ => false,
            }
        })
    }

    /// Blocks agree with `Y` and with each other on codes `< depth`.
    fn validate(&self, depth: usize) -> Result<(), ConstructionError> {
        for c in (0..depth as u128).map(Code) {
            match (self.y.contains(c), self.block_of(c)) {
                (true, Some(i)) if self.block(i).contains(&c) => {}
                (false, None) => {}
                _ => {
                    return Err(ConstructionError::PreconditionViolated(format!(
                        "blocks and Y disagree at {c}"
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Run the construction with `F_n = U_n ∩ Y` and `f` the block map, then keep
/// the elements lying in `Z`.
pub fn build_xi_partition(
    base: &NeighborhoodBase,
    partition: &Partition,
    h: Option<FilterChain>,
    count: usize,
    depth: usize,
    witness_size: usize,
) -> Result<SequenceReport, ConstructionError> {
    let group = base.group();
    partition.validate(depth)?;
    for n in 0..count {
        let meets = partition
            .y
            .intersect(&base.level(n))
            .members()
            .any(|c| c != group.identity());
        if !meets {
            return Err(ConstructionError::ClosurePreconditionFailed(n));
        }
    }
    let y = partition.y.clone();
    let chain_base = base.clone();
    let filter = FilterChain::new(format!("{} ∩ Y", base.label()), base.levels(), move |n| {
        y.intersect(&chain_base.level(n))
    });
    let mut config = Statement21Config::new(count);
    config.depth = depth;
    config.witness_size = witness_size;
    config.h = h;
    config.filter = Some(filter);
    config.map = partition.map();
    let mut report = run_statement21(base, &config)?.report;
    report.name = "s22".into();

    // ξ ⊂ Z through the recorded pair of each element.
    let mut outside = None;
    let mut kept_xi = Vec::with_capacity(report.xi.len());
    let mut kept_prov = Vec::with_capacity(report.xi.len());
    for (&x, p) in report.xi.iter().zip(&report.provenance) {
        let (g, h) = p.pair;
        let across = matches!(
            (partition.block_of(g), partition.block_of(h)),
            (Some(i), Some(j)) if i != j
        ) && group.quotient(g, h) == x;
        if across {
            kept_xi.push(x);
            kept_prov.push(*p);
        } else if outside.is_none() {
            outside = Some(x);
        }
    }
    report.xi = kept_xi;
    report.provenance = kept_prov;
    report.certificates.push(match outside {
        None => Certificate::new("s22.ii", Verdict::Exact, "pairs-across-blocks"),
        Some(x) => Certificate::new("s22.ii", Verdict::Violated, format!("x={x}")),
    });

    let meets = verify::check_limit_point(&report, base, count);
    let i_verdict = report
        .certificate("s21.i")
        .map_or(Verdict::Violated, |c| c.verdict)
        .meet(meets.verdict);
    report.certificates.push(Certificate::new(
        "s22.meets",
        meets.verdict,
        meets.witnesses.join(" "),
    ));
    report
        .certificates
        .push(Certificate::new("s22.i", i_verdict, "s21.i+s22.meets"));
    Ok(report)
}

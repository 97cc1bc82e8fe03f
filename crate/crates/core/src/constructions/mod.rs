//! Sequence constructions: differences of pairs drawn from nonrapidity
//! witnesses inside vast sets, their topological refinements, and the Boolean
//! block constructions that yield two disjoint discrete sequences.

mod boolean;
mod partition;
mod report;
mod statement11;
mod statement21;
mod translates;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::filters::FilterError;
use crate::groups::{Code, DecidableSet, GroupError};

pub use boolean::{lemma31_blocks, theorem31_pair, BlockFamily, Theorem31Pair};
pub use partition::{build_xi_partition, Partition};
pub use report::{
    parse_reports, render_reports, Certificate, Listing, Provenance, SequenceReport, TopologyVerdict,
    Verdict,
};
pub use statement11::{build_xi_statement11, Stage, Statement11};
pub use statement21::{
    build_xi_statement21, build_xi_theorem22, enumerate_gamma, GammaEntry, Statement21Config,
};
pub use translates::{disjoint_translates, Translates};

/// Default witness size `f(n)` for the built-in pipelines.
pub const DEFAULT_WITNESS_SIZE: usize = 3;

/// Levels `n` for which exception lists are written out in full.
pub const LISTED_LEVELS: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("stage {stage}: S_n is empty although Φ_{bound} promised a pair")]
    VastnessBoundViolated { stage: usize, bound: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("U_{0} does not meet Y")]
    ClosurePreconditionFailed(usize),
    #[error("no isolating index found for x_{0}")]
    IsolationNotCertified(usize),
    #[error("cannot certify: {0}")]
    CannotCertify(String),
    #[error("report line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A point of the target set of a finite-to-one map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// A singleton fiber.
    Point(Code),
    /// A numbered block of a partition.
    Block(usize),
}

type ApplyFn = Arc<dyn Fn(Code) -> Label + Send + Sync>;
type FiberFn = Arc<dyn Fn(Label) -> Vec<Code> + Send + Sync>;

/// A finite-to-one map `f: G → X` given with its fibers.
#[derive(Clone)]
pub struct FiniteToOneMap {
    label: Arc<str>,
    apply: ApplyFn,
    fiber: FiberFn,
}

impl fmt::Debug for FiniteToOneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("FiniteToOneMap").field(&self.label).finish()
    }
}

impl FiniteToOneMap {
    pub fn new(
        label: impl Into<Arc<str>>,
        apply: impl Fn(Code) -> Label + Send + Sync + 'static,
        fiber: impl Fn(Label) -> Vec<Code> + Send + Sync + 'static,
    ) -> Self {
        FiniteToOneMap {
            label: label.into(),
            apply: Arc::new(apply),
            fiber: Arc::new(fiber),
        }
    }

    pub fn identity() -> Self {
        FiniteToOneMap::new("id", Label::Point, |l| match l {
            Label::Point(c) => vec![c],
            Label::Block(_) => Vec::new(),
        })
    }

    /// The quotient map of a partition of `G` whose nontrivial blocks are
    /// `blocks`; every other element is its own block.
    pub fn from_blocks(blocks: Vec<Vec<Code>>) -> Self {
        let blocks = Arc::new(blocks);
        let index: Arc<std::collections::HashMap<Code, usize>> = Arc::new(
            blocks
                .iter()
                .enumerate()
                .flat_map(|(i, b)| b.iter().map(move |&c| (c, i)))
                .collect(),
        );
        FiniteToOneMap::new(
            "partition",
            move |c| index.get(&c).map_or(Label::Point(c), |&i| Label::Block(i)),
            move |l| match l {
                Label::Point(c) => vec![c],
                Label::Block(i) => blocks.get(i).cloned().unwrap_or_default(),
            },
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, x: Code) -> Label {
        (self.apply)(x)
    }

    pub fn fiber(&self, l: Label) -> Vec<Code> {
        (self.fiber)(l)
    }

    /// `f⁻¹(f(T))`, ascending.
    pub fn saturate(&self, t: &[Code]) -> Vec<Code> {
        let labels: BTreeSet<Label> = t.iter().map(|&x| self.apply(x)).collect();
        let all: BTreeSet<Code> = labels.into_iter().flat_map(|l| self.fiber(l)).collect();
        all.into_iter().collect()
    }
}

/// A vast set with an upper bound on its `J`, if one is known.
#[derive(Clone, Debug)]
pub struct VastSet {
    pub set: DecidableSet,
    pub j_bound: Option<u64>,
}

//! Filters presented by decreasing chains, neighborhood bases of group
//! topologies, nonrapidity witnesses and the partition oracle.

mod chooser;
mod interval;
mod witness;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::groups::{decode_integer, encode_integer, Code, DecidableSet, EnumeratedGroup, INTEGER_BOUND};

pub use chooser::{parse_chooser_script, ChooserStrategy, Decision, Side, UltraChooser};
pub use interval::{interval_split, IntervalSplit, Phi, DEFAULT_BIT_BUDGET};
pub use witness::{nonrapid_witness_for_chain, nonrapid_witness_with_labels, NonrapidWitness};

/// Default truncation depth for base validation.
pub const DEFAULT_DEPTH: usize = 512;

/// Members of `U_{n+1}` used for the `U_{n+1}³ ⊂ U_n` spot check.
pub const CUBE_SAMPLE: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("H_{level} is not a subgroup: {a}⁻¹·{b} escapes it")]
    NotASubgroup { level: usize, a: Code, b: Code },
    #[error("neighborhood base rejected: {0}")]
    BaseRejected(String),
    #[error("F_{level} yielded only {found} of {needed} members")]
    InsufficientMembers {
        level: usize,
        found: usize,
        needed: usize,
    },
    #[error("φ({at}) ≤ {at}")]
    InvalidPhi { at: String },
    #[error("φ is not computable at {at}")]
    PhiOutOfDomain { at: String },
    #[error("φ is not monotone at {at}")]
    NonMonotonePhi { at: String },
    #[error("interval endpoint c_{index} exceeds the {budget}-bit budget")]
    EndpointTooLarge { index: usize, budget: u64 },
    #[error("ultrafilter oracle contradiction: {0}")]
    Contradiction(String),
    #[error("chooser script exhausted at query {query}")]
    ScriptExhausted { query: usize },
    #[error("chooser script line {line}: expected `left` or `right`, found {found:?}")]
    ScriptFormat { line: usize, found: String },
    #[error("the identity has no stratum")]
    UndefinedStratum,
    #[error("unknown base {0:?}: expected boolean-omega or z-adic:p")]
    UnknownBase(String),
    #[error("{0} is not separated from the identity within the available levels")]
    NotSeparated(Code),
}

/// A decreasing chain `F_0 ⊃ F_1 ⊃ …` of infinite decidable sets.
///
/// Only the first `levels` members of the chain are representable with the
/// code type; indices at or beyond that are never requested.
#[derive(Clone)]
pub struct FilterChain {
    label: Arc<str>,
    levels: usize,
    level: Arc<dyn Fn(usize) -> DecidableSet + Send + Sync>,
}

impl fmt::Debug for FilterChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FilterChain")
            .field("label", &self.label)
            .field("levels", &self.levels)
            .finish()
    }
}

impl FilterChain {
    pub fn new(
        label: impl Into<Arc<str>>,
        levels: usize,
        level: impl Fn(usize) -> DecidableSet + Send + Sync + 'static,
    ) -> Self {
        FilterChain {
            label: label.into(),
            levels,
            level: Arc::new(level),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn level(&self, n: usize) -> DecidableSet {
        (self.level)(n)
    }

    /// `F_n ∩ other`, level by level.
    #[must_use]
    pub fn restrict(&self, other: &DecidableSet) -> FilterChain {
        let chain = self.clone();
        let other = other.clone();
        FilterChain::new(
            format!("{} ∩ {}", self.label, other.label()),
            self.levels,
            move |n| chain.level(n).intersect(&other),
        )
    }

    /// `F_{n+1} ⊂ F_n` on the first `depth` members of `F_{n+1}`, for `n + 1 < levels`.
    pub fn check_decreasing(&self, depth: usize) -> Result<(), (usize, Code)> {
        for n in 0..self.levels.saturating_sub(1).min(depth) {
            let upper = self.level(n);
            let lower = self.level(n + 1);
            let escaped = lower.members().take(depth).find(|&x| !upper.contains(x));
            if let Some(x) = escaped {
                return Err((n, x));
            }
        }
        Ok(())
    }

    /// Is the chain literally the same object as `other`?
    pub fn same_chain(&self, other: &FilterChain) -> bool {
        Arc::ptr_eq(&self.level, &other.level)
    }
}

type CosetReps = Arc<dyn Fn(usize) -> Option<Vec<Code>> + Send + Sync>;

/// A chain `(U_n)` meant to be a base at the identity of a metrizable group
/// topology: symmetric, `U_{n+1}³ ⊂ U_n`, with trivial intersection.
#[derive(Clone)]
pub struct NeighborhoodBase {
    name: Arc<str>,
    group: EnumeratedGroup,
    chain: FilterChain,
    subgroup_chain: bool,
    /// `T` with `T·U_n = G`, when `U_n` is syndetic and `T` is small enough to list.
    syndetic: Option<CosetReps>,
}

impl fmt::Debug for NeighborhoodBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NeighborhoodBase")
            .field("name", &self.name)
            .field("group", &self.group.name())
            .field("chain", &self.chain)
            .field("subgroup_chain", &self.subgroup_chain)
            .finish()
    }
}

impl NeighborhoodBase {
    /// A base with no structural guarantees; validate it before use.
    pub fn new(group: EnumeratedGroup, chain: FilterChain) -> Self {
        NeighborhoodBase {
            name: Arc::from(chain.label()),
            group,
            chain,
            subgroup_chain: false,
            syndetic: None,
        }
    }

    /// Attach coset representatives: `reps(n)` lists a `T` with `T·U_n = G`.
    #[must_use]
    pub fn with_syndetic_certificates(
        mut self,
        reps: impl Fn(usize) -> Option<Vec<Code>> + Send + Sync + 'static,
    ) -> Self {
        self.syndetic = Some(Arc::new(reps));
        self
    }

    #[must_use]
    pub fn with_name(mut self, name: impl Into<Arc<str>>) -> Self {
        self.name = name.into();
        self
    }

    /// The name reports use to refer to this base.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> EnumeratedGroup {
        self.group
    }

    pub fn chain(&self) -> &FilterChain {
        &self.chain
    }

    pub fn label(&self) -> &str {
        self.chain.label()
    }

    pub fn levels(&self) -> usize {
        self.chain.levels()
    }

    pub fn level(&self, n: usize) -> DecidableSet {
        self.chain.level(n)
    }

    pub fn is_subgroup_chain(&self) -> bool {
        self.subgroup_chain
    }

    /// `y ∈ x·U_n`
    pub fn in_translate(&self, x: Code, n: usize, y: Code) -> bool {
        self.level(n).contains(self.group.quotient(x, y))
    }

    pub fn has_syndetic_certificates(&self) -> bool {
        self.syndetic.is_some()
    }

    /// A finite `T` with `T·U_n = G`, if known.
    pub fn syndetic_certificate(&self, n: usize) -> Option<Vec<Code>> {
        self.syndetic.as_ref().and_then(|reps| reps(n))
    }

    /// The stratum `θ(x)`: the `n` with `x ∈ U_n ∖ U_{n+1}`.
    pub fn stratum(&self, x: Code) -> Result<usize, FilterError> {
        if x == self.group.identity() {
            return Err(FilterError::UndefinedStratum);
        }
        if !self.level(0).contains(x) {
            return Err(FilterError::BaseRejected(format!("U_0 ≠ G: {x} ∉ U_0")));
        }
        (0..self.levels())
            .find(|&n| !self.level(n + 1).contains(x))
            .ok_or(FilterError::NotSeparated(x))
    }
}

/// The map `θ` on a base with `U_0 = G`.
#[derive(Clone, Debug)]
pub struct StrataMap {
    base: NeighborhoodBase,
}

impl StrataMap {
    /// Requires `U_0 = G`, checked on codes `< depth`.
    pub fn new(base: NeighborhoodBase, depth: usize) -> Result<Self, FilterError> {
        let top = base.level(0);
        if let Some(x) = (0..depth as u128).map(Code).find(|&x| !top.contains(x)) {
            return Err(FilterError::BaseRejected(format!("U_0 ≠ G: {x} ∉ U_0")));
        }
        Ok(StrataMap { base })
    }

    pub fn base(&self) -> &NeighborhoodBase {
        &self.base
    }

    pub fn strata(&self, x: Code) -> Result<usize, FilterError> {
        self.base.stratum(x)
    }
}

/// Pass/fail of one axiom with its first counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseValidation {
    pub depth: usize,
    pub levels_checked: usize,
    pub checks: Vec<AxiomCheck>,
}

impl BaseValidation {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn render(&self) -> String {
        let mut out = format!("depth={}\nlevels={}\n", self.depth, self.levels_checked);
        for c in &self.checks {
            match &c.counterexample {
                None => out.push_str(&format!("axiom {} pass\n", c.axiom)),
                Some(w) => out.push_str(&format!("axiom {} fail {w}\n", c.axiom)),
            }
        }
        out
    }
}

/// Check symmetry, the cube condition, monotonicity and separation on codes
/// `< depth`, for levels `n < min(depth, levels)`.
pub fn validate_neighborhood_base(base: &NeighborhoodBase, depth: usize) -> BaseValidation {
    let group = base.group();
    let levels = base.levels().min(depth);
    let codes = || (0..depth as u128).map(Code);

    let symmetry = (0..levels).find_map(|n| {
        let u = base.level(n);
        codes()
            .find(|&x| u.contains(x) && !u.contains(group.inv(x)))
            .map(|x| format!("n={n} x={x} inverse={}", group.inv(x)))
    });

    let cube = (0..levels.saturating_sub(1)).find_map(|n| {
        let upper = base.level(n);
        let sample: Vec<Code> = base.level(n + 1).members().take(CUBE_SAMPLE).collect();
        sample.iter().find_map(|&a| {
            sample.iter().find_map(|&b| {
                let ab = group.op(a, b);
                sample
                    .iter()
                    .find(|&&c| !upper.contains(group.op(ab, c)))
                    .map(|&c| format!("n={n} triple=({a},{b},{c})"))
            })
        })
    });

    let decreasing = base
        .chain()
        .check_decreasing(depth.min(levels))
        .err()
        .map(|(n, x)| format!("n={n} x={x}"));

    let separation = codes()
        .filter(|&x| x != group.identity())
        .find(|&x| (0..levels).all(|n| base.level(n).contains(x)))
        .map(|x| format!("x={x}"));

    BaseValidation {
        depth,
        levels_checked: levels,
        checks: vec![
            AxiomCheck {
                axiom: "symmetry",
                counterexample: symmetry,
            },
            AxiomCheck {
                axiom: "cube",
                counterexample: cube,
            },
            AxiomCheck {
                axiom: "decreasing",
                counterexample: decreasing,
            },
            AxiomCheck {
                axiom: "separation",
                counterexample: separation,
            },
        ],
    }
}

/// Accept a chain of subgroups as a neighborhood base after checking closure
/// (`a⁻¹b ∈ H_n` for members `< depth`) and the base axioms to `depth`.
pub fn subgroup_chain_base(
    group: EnumeratedGroup,
    chain: FilterChain,
    depth: usize,
) -> Result<NeighborhoodBase, FilterError> {
    let sample = (depth as f64).sqrt().ceil() as usize;
    for n in 0..chain.levels().min(depth) {
        let h = chain.level(n);
        let members: Vec<Code> = h.members().take(sample).collect();
        for &a in &members {
            for &b in &members {
                if !h.contains(group.quotient(a, b)) {
                    return Err(FilterError::NotASubgroup { level: n, a, b });
                }
            }
        }
    }
    let mut base = NeighborhoodBase::new(group, chain);
    base.subgroup_chain = true;
    let report = validate_neighborhood_base(&base, depth);
    match report.checks.iter().find(|c| !c.passed()) {
        None => Ok(base),
        Some(c) => Err(FilterError::BaseRejected(format!(
            "{} fails: {}",
            c.axiom,
            c.counterexample.as_deref().unwrap_or("")
        ))),
    }
}

/// `H_n = [{m ≥ n}]^{<ω}` in the Boolean group: codes divisible by `2^n`.
pub fn boolean_h_chain() -> FilterChain {
    // H_n has nonzero members up to n = 127.
    FilterChain::new("H", 127, |n| {
        let step = 1u128 << n;
        DecidableSet::with_successor(
            format!("H_{n}"),
            move |c| c.0 % step == 0,
            move |c| {
                let rounded = c.0.div_ceil(step).checked_mul(step)?;
                Some(Code(rounded))
            },
        )
    })
}

/// The Boolean group with the base `U_n = H_n`; `U_n` has index `2^n` and the
/// codes `0..2^n` are coset representatives.
pub fn boolean_omega_base() -> NeighborhoodBase {
    let mut base = NeighborhoodBase::new(EnumeratedGroup::boolean_omega(), boolean_h_chain())
        .with_name("boolean-omega");
    base.subgroup_chain = true;
    base.with_syndetic_certificates(|n| (n <= 16).then(|| (0..1u128 << n).map(Code).collect()))
}

/// `p^n ℤ` in zig-zag codes.
pub fn p_adic_chain(p: u32) -> FilterChain {
    let p = i128::from(p.max(2));
    let mut levels = 0;
    let mut power: i128 = 1;
    while power < INTEGER_BOUND / p {
        power *= p;
        levels += 1;
    }
    FilterChain::new(format!("{p}-adic"), levels, move |n| {
        let modulus = p.pow(n as u32);
        DecidableSet::with_successor(
            format!("{p}^{n}Z"),
            move |c| decode_integer(c) % modulus == 0,
            move |c| {
                // modulus·z for z in code order; the code of modulus·decode(k)
                // lies in [modulus·k − 1, modulus·(k + 1)).
                let mut k = (c.0 / modulus as u128).saturating_sub(1);
                loop {
                    let z = decode_integer(Code(k));
                    let value = z.checked_mul(modulus)?;
                    if value.abs() >= INTEGER_BOUND {
                        return None;
                    }
                    let code = encode_integer(value);
                    if code >= c {
                        return Some(code);
                    }
                    k += 1;
                }
            },
        )
    })
}

/// `ℤ` with the `p`-adic base `U_n = p^n ℤ`; coset representatives of `p^n ℤ`
/// are `0..p^n`.
pub fn z_adic_base(p: u32) -> NeighborhoodBase {
    let mut base = NeighborhoodBase::new(EnumeratedGroup::integers(), p_adic_chain(p))
        .with_name(format!("z-adic:{p}"));
    base.subgroup_chain = true;
    let p = i128::from(p.max(2));
    base.with_syndetic_certificates(move |n| {
        let index = p.checked_pow(n as u32).filter(|&i| i <= 1 << 16)?;
        Some((0..index).map(encode_integer).collect())
    })
}

/// `boolean-omega` or `z-adic:p` with `p ≥ 2`.
pub fn builtin_base(spec: &str) -> Result<NeighborhoodBase, FilterError> {
    if spec == "boolean-omega" {
        return Ok(boolean_omega_base());
    }
    spec.strip_prefix("z-adic:")
        .and_then(|p| p.parse::<u32>().ok())
        .filter(|&p| p >= 2)
        .map(z_adic_base)
        .ok_or_else(|| FilterError::UnknownBase(spec.to_string()))
}

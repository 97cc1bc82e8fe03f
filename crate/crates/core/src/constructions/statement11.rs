//! The basic sequence: `S_n = {g⁻¹h : g,h ∈ f⁻¹(T_n), f(g) ≠ f(h), g⁻¹h ∈ M_n}`
//! and `ξ = ⋃ S_n`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use super::{
    Certificate, ConstructionError, FiniteToOneMap, Listing, Provenance, SequenceReport, VastSet,
    Verdict, LISTED_LEVELS,
};
use crate::filters::{FilterChain, NonrapidWitness};
use crate::groups::{Code, DecidableSet, EnumeratedGroup};
use crate::largeness::j_bound_intersection;

/// One stage `S_n`: its elements in ascending order, each with the least
/// pair producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub index: usize,
    pub elements: Vec<(Code, (Code, Code))>,
    /// Upper bound on `J` of the normalized `M_n`, if known.
    pub j_bound: Option<u64>,
    /// Did the witness carry at least `j_bound` distinct labels?
    pub promised: bool,
    /// A pair from `T_n` with distinct labels and `g⁻¹h ∈ M_n`.
    pub base_pair: Option<(Code, Code)>,
}

impl Stage {
    pub fn contains(&self, x: Code) -> bool {
        self.elements.binary_search_by_key(&x, |e| e.0).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct Statement11 {
    pub report: SequenceReport,
    pub stages: Vec<Stage>,
    /// `M_0 ∩ … ∩ M_n` intersected with its inverse.
    pub normalized: Vec<DecidableSet>,
}

fn normalize(group: EnumeratedGroup, m: &[VastSet]) -> Vec<DecidableSet> {
    let sets: Arc<Vec<DecidableSet>> = Arc::new(m.iter().map(|v| v.set.clone()).collect());
    (0..m.len())
        .map(|n| {
            let sets = Arc::clone(&sets);
            DecidableSet::from_predicate(format!("M'_{n}"), move |x| {
                let xinv = group.inv(x);
                sets[..=n].iter().all(|s| s.contains(x) && s.contains(xinv))
            })
        })
        .collect()
}

fn fold_bounds(m: &[VastSet]) -> Vec<Option<u64>> {
    let mut acc: Option<u64> = None;
    m.iter()
        .enumerate()
        .map(|(n, v)| {
            acc = if n == 0 {
                v.j_bound
            } else {
                match (acc, v.j_bound) {
                    (Some(a), Some(b)) => j_bound_intersection(a, b).ok(),
                    _ => None,
                }
            };
            acc
        })
        .collect()
}

/// Build `ξ` from `count` stages. `filter`, when given, is the base `(F_n)` the
/// witness was drawn from; the certificate for (ii) then rechecks `T_k ⊂ F_k`.
pub fn build_xi_statement11(
    group: EnumeratedGroup,
    f: &FiniteToOneMap,
    witness: &NonrapidWitness,
    m: &[VastSet],
    count: usize,
    filter: Option<&FilterChain>,
) -> Result<Statement11, ConstructionError> {
    if witness.len() < count || m.len() < count {
        return Err(ConstructionError::PreconditionViolated(format!(
            "{count} stages need {count} witness sets and vast sets, got {} and {}",
            witness.len(),
            m.len()
        )));
    }
    let m = &m[..count];
    let normalized = normalize(group, m);
    let bounds = fold_bounds(m);

    let mut stages = Vec::with_capacity(count);
    for n in 0..count {
        let reps = witness.set(n);
        let mn = &normalized[n];
        let pool = f.saturate(reps);
        let mut found: BTreeMap<Code, (Code, Code)> = BTreeMap::new();
        for &g in &pool {
            let fg = f.apply(g);
            for &h in &pool {
                if g == h || fg == f.apply(h) {
                    continue;
                }
                let x = group.quotient(g, h);
                if mn.contains(x) {
                    found.entry(x).or_insert((g, h));
                }
            }
        }
        let distinct: BTreeSet<_> = reps.iter().map(|&t| f.apply(t)).collect();
        let promised = bounds[n].is_some_and(|j| distinct.len() as u64 >= j);
        let base_pair = reps.iter().enumerate().find_map(|(i, &g)| {
            reps[i + 1..]
                .iter()
                .find(|&&h| f.apply(g) != f.apply(h) && mn.contains(group.quotient(g, h)))
                .map(|&h| (g, h))
        });
        if promised && base_pair.is_none() {
            return Err(ConstructionError::VastnessBoundViolated {
                stage: n,
                bound: bounds[n].expect("promised"),
            });
        }
        stages.push(Stage {
            index: n,
            elements: found.into_iter().collect(),
            j_bound: bounds[n],
            promised,
            base_pair,
        });
    }

    let mut report = SequenceReport::new("s11", group.name(), filter.map_or("-", FilterChain::label));
    report.count = count;
    let mut seen = HashSet::new();
    for stage in &stages {
        for &(x, pair) in &stage.elements {
            if seen.insert(x) {
                report.xi.push(x);
                report.provenance.push(Provenance {
                    stage: stage.index,
                    pair,
                });
            }
        }
    }

    // (i): ξ ∖ M_n ⊂ S_0 ∪ … ∪ S_{n-1}.
    let mut earlier: HashSet<Code> = HashSet::new();
    let mut failure = None;
    for n in 0..count {
        let exceptions: Vec<Code> = report.xi.iter().copied().filter(|&x| !normalized[n].contains(x)).collect();
        if failure.is_none() {
            failure = exceptions.iter().find(|x| !earlier.contains(x)).map(|x| format!("n={n} x={x}"));
        }
        if n < LISTED_LEVELS {
            report.listings.push(Listing {
                cert: "s11.i".into(),
                key: format!("n={n}"),
                codes: exceptions,
            });
        }
        earlier.extend(stages[n].elements.iter().map(|e| e.0));
    }
    report.certificates.push(match failure {
        None => Certificate::new("s11.i", Verdict::Exact, format!("levels={count}")),
        Some(w) => Certificate::new("s11.i", Verdict::Violated, w),
    });

    report.certificates.push(certify_pairs(&stages, witness, filter, "s11.ii"));
    Ok(Statement11 {
        report,
        stages,
        normalized,
    })
}

/// For each base index `k`, a pair `g, h ∈ T_k ⊂ F_k` with distinct labels and
/// `g⁻¹h ∈ ξ`.
pub(crate) fn certify_pairs(
    stages: &[Stage],
    witness: &NonrapidWitness,
    filter: Option<&FilterChain>,
    name: &str,
) -> Certificate {
    let mut pairs = Vec::with_capacity(stages.len());
    for stage in stages {
        let k = stage.index;
        if let Some(chain) = filter {
            let level = chain.level(k);
            if let Some(t) = witness.set(k).iter().find(|&&t| !level.contains(t)) {
                return Certificate::new(name, Verdict::Violated, format!("k={k} T_k∌{t}"));
            }
        }
        match stage.base_pair {
            Some((g, h)) => pairs.push(format!("k={k}:{g},{h}")),
            None => return Certificate::new(name, Verdict::Violated, format!("k={k} no-pair")),
        }
    }
    Certificate::new(name, Verdict::Exact, pairs.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::boolean_h_chain;
    use crate::groups::encode_support;

    fn singleton(i: u32) -> Code {
        encode_support(&[i]).unwrap()
    }

    fn everything(n: usize) -> Vec<VastSet> {
        (0..n)
            .map(|_| VastSet {
                set: DecidableSet::everything("G"),
                j_bound: Some(2),
            })
            .collect()
    }

    #[test]
    fn one_pair() {
        let g = EnumeratedGroup::boolean_omega();
        let witness = NonrapidWitness {
            sizes: vec![1, 2],
            sets: vec![vec![singleton(0)], vec![singleton(1), singleton(2)]],
        };
        let out = build_xi_statement11(g, &FiniteToOneMap::identity(), &witness, &everything(2), 2, None).unwrap();
        assert!(out.stages[0].elements.is_empty());
        assert_eq!(out.stages[1].elements.len(), 1);
        assert_eq!(out.stages[1].elements[0].0, encode_support(&[1, 2]).unwrap());
        assert_eq!(out.report.xi, vec![Code(6)]);
        // Stage 0 has a single label, so (ii) has no pair there.
        assert_eq!(out.report.certificate("s11.ii").unwrap().verdict, Verdict::Violated);
    }

    #[test]
    fn pairwise_sums() {
        let g = EnumeratedGroup::boolean_omega();
        let count = 6;
        let witness = NonrapidWitness {
            sizes: (0..count).map(|n| n + 1).collect(),
            sets: (0..count as u32).map(|n| (n..=2 * n).map(singleton).collect()).collect(),
        };
        let out = build_xi_statement11(g, &FiniteToOneMap::identity(), &witness, &everything(count), count, None)
            .unwrap();
        for (n, stage) in out.stages.iter().enumerate() {
            assert_eq!(stage.elements.len(), n * (n + 1) / 2);
            assert!(stage.elements.iter().all(|(x, _)| x.0.count_ones() == 2));
        }
        let r = &out.report;
        assert_eq!(r.certificate("s11.i").unwrap().verdict, Verdict::Exact);
        for (x, p) in r.xi.iter().zip(&r.provenance) {
            assert_eq!(g.quotient(p.pair.0, p.pair.1), *x);
        }
    }

    #[test]
    fn normalization_and_exceptions() {
        let g = EnumeratedGroup::boolean_omega();
        let chain = boolean_h_chain();
        let count = 5;
        let m: Vec<VastSet> = (0..count)
            .map(|n| VastSet {
                set: chain.level(n),
                j_bound: Some((1u64 << n) + 1),
            })
            .collect();
        let witness = crate::filters::nonrapid_witness_for_chain(&chain, count, |_| 4, Some(Code(0))).unwrap();
        let out = build_xi_statement11(g, &FiniteToOneMap::identity(), &witness, &m, count, Some(&chain)).unwrap();
        let r = &out.report;
        assert_eq!(r.certificate("s11.i").unwrap().verdict, Verdict::Exact);
        assert_eq!(r.certificate("s11.ii").unwrap().verdict, Verdict::Exact);
        // Every element lies in the M_n of its stage.
        for (x, p) in r.xi.iter().zip(&r.provenance) {
            assert!(chain.level(p.stage).contains(*x));
        }
        // Bounds fold through the Ramsey estimate.
        assert_eq!(out.stages[0].j_bound, Some(2));
        assert_eq!(out.stages[1].j_bound, Some(6));
        assert!(out.stages[0].promised);
    }

    #[test]
    fn broken_bound_is_reported() {
        let g = EnumeratedGroup::boolean_omega();
        // M = {0} claims J ≤ 2 but holds no nonzero difference.
        let m = vec![VastSet {
            set: DecidableSet::finite("e", [Code(0)]),
            j_bound: Some(2),
        }];
        let witness = NonrapidWitness {
            sizes: vec![2],
            sets: vec![vec![Code(1), Code(2)]],
        };
        let err = build_xi_statement11(g, &FiniteToOneMap::identity(), &witness, &m, 1, None).unwrap_err();
        assert_eq!(err, ConstructionError::VastnessBoundViolated { stage: 0, bound: 2 });
    }
}

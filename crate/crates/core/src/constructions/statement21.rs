//! Sequences in countable topological groups: the basic construction run on
//! `M_k = W_0 ∩ … ∩ W_k ∩ H_k`, where `W_k = G ∖ g_kU_{n_k+1}` ranges over the
//! translates `γ = {gU_{n+1} : g ∉ U_n}`.

use std::collections::HashMap;
use std::sync::Arc;

use super::statement11::{build_xi_statement11, certify_pairs};
use super::{
    Certificate, ConstructionError, FiniteToOneMap, Listing, SequenceReport, VastSet, Verdict,
    DEFAULT_WITNESS_SIZE, LISTED_LEVELS,
};
use crate::filters::{nonrapid_witness_with_labels, FilterChain, NeighborhoodBase, DEFAULT_DEPTH};
use crate::groups::{Code, DecidableSet};
use crate::largeness::j_bound_intersection;
use crate::verify;

/// `J` bound for a complement `G ∖ W` with `W ∩ W⁻¹W = ∅`.
const TRANSLATE_J_BOUND: u64 = 4;

/// One translate `gU_{n+1}` with `g ∉ U_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaEntry {
    pub n: usize,
    pub g: Code,
}

/// Inputs beyond the base. `h = None` takes `H_n = U_n`; `filter = None` takes
/// `F_n = U_n`.
#[derive(Clone, Debug)]
pub struct Statement21Config {
    pub count: usize,
    pub depth: usize,
    pub witness_size: usize,
    pub h: Option<FilterChain>,
    pub filter: Option<FilterChain>,
    pub map: FiniteToOneMap,
}

impl Statement21Config {
    pub fn new(count: usize) -> Self {
        Statement21Config {
            count,
            depth: DEFAULT_DEPTH,
            witness_size: DEFAULT_WITNESS_SIZE,
            h: None,
            filter: None,
            map: FiniteToOneMap::identity(),
        }
    }
}

/// The first `count` translates, enumerated by ascending `n + code(g)` over
/// `g < depth`. For subgroup chains, repeated cosets are skipped.
pub fn enumerate_gamma(base: &NeighborhoodBase, count: usize, depth: usize) -> Vec<GammaEntry> {
    let group = base.group();
    let levels = base.levels();
    let mut out: Vec<GammaEntry> = Vec::with_capacity(count);
    let mut s = 0usize;
    while out.len() < count && s < depth + levels {
        for n in 0..=s.min(levels.saturating_sub(1)) {
            let g = Code((s - n) as u128);
            if (s - n) >= depth || base.level(n).contains(g) {
                continue;
            }
            let repeated = base.is_subgroup_chain()
                && out
                    .iter()
                    .any(|e| e.n == n && base.level(n + 1).contains(group.quotient(e.g, g)));
            if !repeated {
                out.push(GammaEntry { n, g });
                if out.len() == count {
                    break;
                }
            }
        }
        s += 1;
    }
    out
}

fn h_index(base: &NeighborhoodBase, config: &Statement21Config, n: usize) -> Option<u64> {
    if config.h.is_some() {
        return None;
    }
    base.syndetic_certificate(n).map(|t| t.len() as u64)
}

/// Do the stages of this run land in `U_k` at stage `k`?
fn refines_base(base: &NeighborhoodBase, config: &Statement21Config) -> bool {
    config.h.as_ref().is_none_or(|h| h.same_chain(base.chain()))
}

pub(crate) struct Run {
    pub report: SequenceReport,
}

/// Run the construction and certify (i)–(v) at truncation.
pub fn build_xi_statement21(
    base: &NeighborhoodBase,
    config: &Statement21Config,
) -> Result<SequenceReport, ConstructionError> {
    run_statement21(base, config).map(|run| run.report)
}

pub(crate) fn run_statement21(
    base: &NeighborhoodBase,
    config: &Statement21Config,
) -> Result<Run, ConstructionError> {
    let group = base.group();
    let count = config.count;
    let gamma = enumerate_gamma(base, count, config.depth);
    let h_chain = config.h.clone().unwrap_or_else(|| base.chain().clone());
    let filter = config.filter.clone().unwrap_or_else(|| base.chain().clone());

    let translates: Arc<Vec<GammaEntry>> = Arc::new(gamma.clone());
    let mut m = Vec::with_capacity(count);
    for k in 0..count {
        let used = Arc::clone(&translates);
        let upto = (k + 1).min(used.len());
        let h_k = h_chain.level(k);
        let base_k = base.clone();
        let set = DecidableSet::from_predicate(format!("M_{k}"), move |x| {
            h_k.contains(x) && used[..upto].iter().all(|e| !base_k.in_translate(e.g, e.n + 1, x))
        });
        let mut bound = h_index(base, config, k).map(|i| i + 1);
        for _ in 0..upto {
            bound = bound.and_then(|b| j_bound_intersection(b, TRANSLATE_J_BOUND).ok());
        }
        m.push(VastSet { set, j_bound: bound });
    }

    let map = &config.map;
    let witness = nonrapid_witness_with_labels(
        &filter,
        count,
        |_| config.witness_size,
        Some(group.identity()),
        |c| map.apply(c),
    )?;
    let s11 = build_xi_statement11(group, map, &witness, &m, count, Some(&filter))?;

    let mut report = s11.report.clone();
    report.name = "s21".into();
    report.base = base.name().to_string();
    report.depth = config.depth;
    report.tail = refines_base(base, config).then_some(count);
    report.certificates.retain(|c| c.name != "s11.ii");
    report
        .certificates
        .push(certify_pairs(&s11.stages, &witness, Some(&filter), "s21.ii"));

    let first_stage: HashMap<Code, usize> = report
        .xi
        .iter()
        .zip(&report.provenance)
        .map(|(&x, p)| (x, p.stage))
        .collect();

    // (iii): for each enumerated translate, ξ ∩ g_kU_{n_k+1} comes from stages < k.
    let mut iii_failure = None;
    for (k, e) in gamma.iter().enumerate() {
        let meets: Vec<Code> = report.xi.iter().copied().filter(|&x| base.in_translate(e.g, e.n + 1, x)).collect();
        if iii_failure.is_none() {
            iii_failure = meets.iter().find(|x| first_stage[x] >= k).map(|x| format!("k={k} x={x}"));
        }
        report.listings.push(Listing {
            cert: "s21.iii".into(),
            key: format!("n={} g={}", e.n, e.g),
            codes: meets,
        });
    }
    report.certificates.push(match iii_failure {
        Some(w) => Certificate::new("s21.iii", Verdict::Violated, w),
        None if report.tail.is_some() => Certificate::new("s21.iii", Verdict::Exact, format!("translates={}", gamma.len())),
        None => Certificate::new("s21.iii", Verdict::HoldsToDepth(config.depth), format!("translates={}", gamma.len())),
    });

    // (iv) and (v): the exceptions outside H_n (resp. U_n) all come from stages < n.
    let iv = exceptions_certificate(&mut report, &first_stage, "s21.iv", |n| h_chain.level(n), count, Verdict::Exact);
    report.certificates.push(iv);
    if base.is_subgroup_chain() || base.has_syndetic_certificates() {
        let verdict = if report.tail.is_some() {
            Verdict::Exact
        } else {
            Verdict::HoldsToDepth(config.depth)
        };
        let v = exceptions_certificate(&mut report, &first_stage, "s21.v", |n| base.level(n), count, verdict);
        report.certificates.push(v);
    }

    // Computed elements already inside U_tail are covered by the tail bound
    // and cannot be separated from it, so they move out of the listed prefix.
    if let Some(t) = report.tail.filter(|&t| t < base.levels()) {
        let level = base.level(t);
        let (xi, provenance) = report
            .xi
            .iter()
            .zip(&report.provenance)
            .filter(|(&x, _)| !level.contains(x))
            .map(|(&x, &p)| (x, p))
            .unzip();
        report.xi = xi;
        report.provenance = provenance;
    }

    attach_topology(&mut report, base, config.depth, "s21.i")?;
    Ok(Run { report })
}

fn exceptions_certificate(
    report: &mut SequenceReport,
    first_stage: &HashMap<Code, usize>,
    name: &str,
    level: impl Fn(usize) -> DecidableSet,
    count: usize,
    verdict: Verdict,
) -> Certificate {
    let mut failure = None;
    for n in 0..count {
        let set = level(n);
        let outside: Vec<Code> = report.xi.iter().copied().filter(|&x| !set.contains(x)).collect();
        if failure.is_none() {
            failure = outside.iter().find(|x| first_stage[x] >= n).map(|x| format!("n={n} x={x}"));
        }
        if n < LISTED_LEVELS {
            report.listings.push(Listing {
                cert: name.into(),
                key: format!("n={n}"),
                codes: outside,
            });
        }
    }
    match failure {
        Some(w) => Certificate::new(name, Verdict::Violated, w),
        None => Certificate::new(name, verdict, format!("levels={count}")),
    }
}

/// Run the three topological checks, append their verdicts, and summarize
/// them as certificate `name`.
pub(crate) fn attach_topology(
    report: &mut SequenceReport,
    base: &NeighborhoodBase,
    depth: usize,
    name: &str,
) -> Result<(), ConstructionError> {
    let discrete = verify::check_discrete(report, base, depth);
    let limit = verify::check_limit_point(report, base, report.count);
    let unique = verify::check_unique_limit(report, base, depth)?;
    let verdict = discrete.verdict.meet(limit.verdict).meet(unique.verdict);
    report.verdicts.extend([discrete, limit, unique]);
    report.certificates.push(Certificate::new(
        name,
        verdict,
        "discrete+limit_point+unique_limit",
    ));
    Ok(())
}

/// The run behind the metrizable-coarsening theorem: `f` the identity and
/// `F_n = U_n`. With `totally_bounded`, also certify `ξ ∖ U_n` finite, which
/// needs coset representatives for every `U_n`.
pub fn build_xi_theorem22(
    base: &NeighborhoodBase,
    h: Option<FilterChain>,
    totally_bounded: bool,
    count: usize,
    depth: usize,
) -> Result<SequenceReport, ConstructionError> {
    if totally_bounded && !base.has_syndetic_certificates() {
        return Err(ConstructionError::PreconditionViolated(format!(
            "{} carries no syndetic certificates",
            base.name()
        )));
    }
    let mut config = Statement21Config::new(count);
    config.depth = depth;
    config.h = h;
    let mut report = build_xi_statement21(base, &config)?;
    report.name = "t22".into();
    let rename = |name: &str| -> Option<&'static str> {
        match name {
            "s21.i" => Some("t22.i"),
            "s21.ii" => Some("t22.ii"),
            "s21.iv" => Some("t22.iii"),
            "s21.v" => totally_bounded.then_some("t22.iv"),
            "s11.i" => Some("s11.i"),
            "s21.iii" => Some("s21.iii"),
            _ => None,
        }
    };
    report.certificates = report
        .certificates
        .into_iter()
        .filter_map(|mut c| {
            c.name = rename(&c.name)?.to_string();
            Some(c)
        })
        .collect();
    report.listings = report
        .listings
        .into_iter()
        .filter_map(|mut l| {
            l.cert = rename(&l.cert)?.to_string();
            Some(l)
        })
        .collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::{boolean_omega_base, z_adic_base};
    use crate::groups::decode_integer;

    #[test]
    fn gamma_is_diagonal_and_deduplicated() {
        let base = boolean_omega_base();
        let gamma = enumerate_gamma(&base, 6, 512);
        assert_eq!(gamma[0], GammaEntry { n: 1, g: Code(1) });
        assert_eq!(gamma[1], GammaEntry { n: 2, g: Code(1) });
        for (i, a) in gamma.iter().enumerate() {
            assert!(!base.level(a.n).contains(a.g));
            for b in &gamma[..i] {
                assert!(!(a.n == b.n && base.level(a.n + 1).contains(Code(a.g.0 ^ b.g.0))));
            }
        }
    }

    #[test]
    fn boolean_run() {
        let base = boolean_omega_base();
        let report = build_xi_statement21(&base, &Statement21Config::new(50)).unwrap();
        assert!(report.xi.len() >= 50, "{}", report.xi.len());
        for name in ["s11.i", "s21.i", "s21.ii", "s21.iii", "s21.iv", "s21.v"] {
            let c = report.certificate(name).unwrap();
            assert_eq!(c.verdict, Verdict::Exact, "{name}: {}", c.detail);
        }
        assert!(!report.xi.contains(&Code(0)));
        // Exceptions outside H_n are finite and listed.
        let h3 = report.listings_for("s21.iv").find(|l| l.key == "n=3").unwrap();
        assert!(h3.codes.iter().all(|c| c.0 % 8 != 0));
    }

    #[test]
    fn empty_run() {
        let report = build_xi_statement21(&boolean_omega_base(), &Statement21Config::new(0)).unwrap();
        assert!(report.xi.is_empty());
        assert!(report.certificates.iter().all(|c| c.verdict.is_exact()));
    }

    #[test]
    fn coarsening_run() {
        let report = build_xi_theorem22(&z_adic_base(3), None, true, 12, 243).unwrap();
        let c = report.certificate("t22.iv").unwrap();
        assert_eq!(c.verdict, Verdict::Exact, "{}", c.detail);
        let outside = report.listings_for("t22.iv").find(|l| l.key == "n=1").unwrap();
        assert!(outside.codes.iter().all(|&x| decode_integer(x) % 3 != 0));
        let off = build_xi_theorem22(&boolean_omega_base(), None, false, 12, 512).unwrap();
        assert!(off.certificate("t22.iv").is_none());
        assert!(off.certificate("t22.iii").is_some());
    }

    #[test]
    fn totally_bounded_needs_certificates() {
        let base = boolean_omega_base();
        let bare = NeighborhoodBase::new(base.group(), base.chain().clone());
        assert!(matches!(
            build_xi_theorem22(&bare, None, true, 4, 64),
            Err(ConstructionError::PreconditionViolated(_))
        ));
    }
}

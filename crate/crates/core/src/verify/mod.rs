//! Topological checks on computed sequence prefixes: isolation of each point,
//! the identity as a limit point, no other limit points, and disjointness.
//!
//! A report with `tail = t` promises that every element of the full sequence
//! beyond the listed prefix lies in `U_t`. For `x ∉ U_{θ(x)+1}` and
//! `n ≥ θ(x)+2` (or `n ≥ θ(x)+1` when the `U_n` are subgroups), the translate
//! `xU_n` misses `U_n`, so such a tail cannot enter `xU_n` once `θ(x)+2 ≤ t`
//! (or `θ(x)+1 ≤ t`).

use std::collections::HashSet;

use crate::constructions::{ConstructionError, SequenceReport, TopologyVerdict, Verdict};
use crate::filters::{FilterError, NeighborhoodBase};
use crate::groups::Code;

/// The least index `n` for which the tail argument applies to `xU_n`.
fn separating_index(base: &NeighborhoodBase, stratum: usize) -> usize {
    if base.is_subgroup_chain() {
        stratum + 1
    } else {
        stratum + 2
    }
}

/// Each `x_i` has an `n` with `ξ ∩ x_iU_n = {x_i}`.
pub fn check_discrete(report: &SequenceReport, base: &NeighborhoodBase, depth: usize) -> TopologyVerdict {
    let group = base.group();
    let mut seen = HashSet::new();
    if let Some(x) = report.xi.iter().find(|&&x| !seen.insert(x)) {
        return TopologyVerdict::new("discrete", Verdict::Violated, vec![format!("duplicate={x}")]);
    }
    if report.xi.contains(&group.identity()) {
        return TopologyVerdict::new("discrete", Verdict::Violated, vec!["identity".into()]);
    }
    let mut verdict = Verdict::Exact;
    let mut witnesses = Vec::with_capacity(report.xi.len());
    for &x in &report.xi {
        let stratum = match base.stratum(x) {
            Ok(s) => s,
            Err(e) => return TopologyVerdict::new("discrete", Verdict::Violated, vec![format!("x={x}:{e}")]),
        };
        let from = separating_index(base, stratum);
        let isolating = (from..base.levels()).find(|&n| {
            report.xi.iter().all(|&y| y == x || !base.in_translate(x, n, y))
        });
        match isolating {
            None => {
                return TopologyVerdict::new("discrete", Verdict::Violated, vec![format!("unisolated={x}")]);
            }
            Some(n) => {
                if report.tail.is_none_or(|t| t < from) {
                    verdict = verdict.meet(Verdict::HoldsToDepth(depth));
                }
                witnesses.push(format!("{x}@{n}"));
            }
        }
    }
    TopologyVerdict::new("discrete", verdict, witnesses)
}

/// `ξ ∩ U_n ≠ ∅` for every `n < depth`; `depth` is clamped to the report's count.
pub fn check_limit_point(report: &SequenceReport, base: &NeighborhoodBase, depth: usize) -> TopologyVerdict {
    let mut witnesses = Vec::new();
    let mut depth = depth;
    if depth > report.count {
        witnesses.push(format!("warning:depth-clamped={}", report.count));
        depth = report.count;
    }
    let identity = base.group().identity();
    for n in 0..depth.min(base.levels()) {
        let level = base.level(n);
        match report.xi.iter().find(|&&x| x != identity && level.contains(x)) {
            Some(x) => witnesses.push(format!("{n}:{x}")),
            None => {
                witnesses.push(format!("missing={n}"));
                return TopologyVerdict::new("limit_point", Verdict::Violated, witnesses);
            }
        }
    }
    TopologyVerdict::new("limit_point", Verdict::Exact, witnesses)
}

/// For `g ≠ e`: its stratum `θ(g)`, the neighborhood index `m` used, the computed
/// part of `ξ ∩ gU_m`, and whether that part is all of it.
pub fn check_unique_limit_at(
    report: &SequenceReport,
    base: &NeighborhoodBase,
    g: Code,
) -> Result<(usize, usize, Vec<Code>, Verdict), ConstructionError> {
    let stratum = base.stratum(g)?;
    let m = separating_index(base, stratum);
    let meets: Vec<Code> = report.xi.iter().copied().filter(|&x| base.in_translate(g, m, x)).collect();
    let by_tail = report.tail.is_some_and(|t| t >= m);
    // An exact listing for a translate g'U_{n+1} ⊇ gU_m also bounds the tail.
    let by_listing = report.certificates.iter().any(|c| c.name.ends_with(".iii") && c.verdict.is_exact())
        && report.listings.iter().any(|l| {
            l.cert.ends_with(".iii") && parse_translate_key(&l.key).is_some_and(|(n, h)| h == g && n < m)
        });
    let verdict = if by_tail || by_listing {
        Verdict::Exact
    } else {
        Verdict::HoldsToDepth(report.xi.len())
    };
    Ok((stratum, m, meets, verdict))
}

fn parse_translate_key(key: &str) -> Option<(usize, Code)> {
    let (n, g) = key.split_once(' ')?;
    let n = n.strip_prefix("n=")?.parse().ok()?;
    let g = g.strip_prefix("g=")?.parse().ok()?;
    Some((n, Code(g)))
}

/// No `g ≠ e` among the codes `< depth` is a limit point: `ξ ∩ gU_m` is finite.
/// A run of no stages makes no claim.
pub fn check_unique_limit(
    report: &SequenceReport,
    base: &NeighborhoodBase,
    depth: usize,
) -> Result<TopologyVerdict, ConstructionError> {
    if report.count == 0 {
        return Ok(TopologyVerdict::new("unique_limit", Verdict::Exact, vec!["vacuous".into()]));
    }
    let has_listings = report.listings.iter().any(|l| l.cert.ends_with(".iii"));
    if report.tail.is_none() && !has_listings {
        return Err(ConstructionError::CannotCertify(format!(
            "report {} has neither a tail bound nor translate listings",
            report.name
        )));
    }
    let identity = base.group().identity();
    let mut verdict = Verdict::Exact;
    let mut largest = 0;
    let mut checked = 0;
    for c in 0..depth as u128 {
        let g = Code(c);
        if g == identity {
            continue;
        }
        let (_, _, meets, v) = match check_unique_limit_at(report, base, g) {
            Ok(out) => out,
            Err(ConstructionError::Filter(FilterError::NotSeparated(_))) => {
                return Ok(TopologyVerdict::new(
                    "unique_limit",
                    Verdict::Violated,
                    vec![format!("unseparated={g}")],
                ));
            }
            Err(e) => return Err(e),
        };
        verdict = verdict.meet(if v.is_exact() { v } else { Verdict::HoldsToDepth(depth) });
        largest = largest.max(meets.len());
        checked += 1;
    }
    Ok(TopologyVerdict::new(
        "unique_limit",
        verdict,
        vec![format!("checked={checked}"), format!("max_meet={largest}")],
    ))
}

/// No common element of the two computed prefixes.
pub fn check_disjoint(a: &SequenceReport, b: &SequenceReport) -> TopologyVerdict {
    let other: HashSet<Code> = b.xi.iter().copied().collect();
    match a.xi.iter().find(|x| other.contains(x)) {
        Some(x) => TopologyVerdict::new("disjoint", Verdict::Violated, vec![format!("common={x}")]),
        None => TopologyVerdict::new(
            "disjoint",
            Verdict::Exact,
            vec![format!("sizes={},{}", a.xi.len(), b.xi.len())],
        ),
    }
}

/// Recompute the three topological verdicts of a report from its data alone.
pub fn recheck(
    report: &SequenceReport,
    base: &NeighborhoodBase,
) -> Result<Vec<TopologyVerdict>, ConstructionError> {
    Ok(vec![
        check_discrete(report, base, report.depth),
        check_limit_point(report, base, report.count),
        check_unique_limit(report, base, report.depth)?,
    ])
}

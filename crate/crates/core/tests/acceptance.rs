//! The acceptance suite. Each criterion prints one `pass`/`FAIL` line to stderr,
//! bypassing the test harness capture, so the lines show up in every run.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use vastsets::constructions::{build_xi_statement21, theorem31_pair, SequenceReport, Statement21Config, Verdict};
use vastsets::filters::{
    boolean_h_chain, boolean_omega_base, interval_split, nonrapid_witness_for_chain, FilterError, Phi, Side,
    UltraChooser, DEFAULT_BIT_BUDGET,
};
use vastsets::groups::{catalog, quotient_set, Code, FiniteGroup, SubsetMask};
use vastsets::largeness::{compute_i, j_bound_intersection, phi_m_holds, ramsey_m_for, vastness};
use vastsets::verify;

fn line(criterion: &str, ok: bool, detail: impl AsRef<str>) {
    let verdict = if ok { "pass" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "acceptance {criterion}: {verdict} {}", detail.as_ref());
    assert!(ok, "criterion {criterion}: {}", detail.as_ref());
}

fn all_subsets(order: usize) -> impl Iterator<Item = SubsetMask> {
    (0..1u64 << order).map(move |bits| SubsetMask::from_bits(order, bits).unwrap())
}

fn vast_sets(group: &FiniteGroup) -> Vec<(SubsetMask, usize)> {
    all_subsets(group.order())
        .filter_map(|m| vastness(group, m).j().map(|j| (m, j)))
        .collect()
}

/// `J`, with `|G| + 1` standing for the vacuous `Φ_{|G|+1}` of a set that is
/// not vast within `|G|`.
fn j_or_vacuous(group: &FiniteGroup, m: SubsetMask) -> usize {
    vastness(group, m).j_or_vacuous()
}

#[test]
fn criterion_01_complement_of_small_set_is_vast() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for group in catalog(12) {
        for w in all_subsets(group.order()) {
            if !w.intersection(quotient_set(&group, w, w)).is_empty() {
                continue;
            }
            checked += 1;
            if !phi_m_holds(&group, w.complement(), 4).unwrap().holds {
                failures.push(format!("{} W={:?}", group.name(), w.iter().collect::<Vec<_>>()));
            }
        }
    }
    let elapsed = start.elapsed();
    line(
        "1",
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!("checked={checked} failed={} time={elapsed:.1?} {:?}", failures.len(), failures.first()),
    );
}

#[test]
fn criterion_02_quotient_set_bound_on_z12() {
    let start = Instant::now();
    let group = FiniteGroup::cyclic(12).unwrap();
    let mut failures = Vec::new();
    for s in all_subsets(12).filter(|s| !s.is_empty()) {
        let i = compute_i(&group, s).unwrap().i;
        let j = j_or_vacuous(&group, quotient_set(&group, s, s));
        if j > i + 1 {
            failures.push(format!("S={:?} J={j} I={i}", s.iter().collect::<Vec<_>>()));
        }
    }
    let elapsed = start.elapsed();
    line(
        "2",
        failures.is_empty() && elapsed < Duration::from_secs(30),
        format!("checked=4095 failed={} time={elapsed:.1?} {:?}", failures.len(), failures.first()),
    );
}

#[test]
fn criterion_03_syndeticity_index_below_vastness_index() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for group in [FiniteGroup::cyclic(10).unwrap(), FiniteGroup::boolean(3).unwrap()] {
        for (m, j) in vast_sets(&group) {
            checked += 1;
            let i = compute_i(&group, m).unwrap().i;
            if i >= j {
                failures.push(format!("{} M={:?} I={i} J={j}", group.name(), m.iter().collect::<Vec<_>>()));
            }
        }
    }
    let elapsed = start.elapsed();
    line(
        "3",
        failures.is_empty() && elapsed < Duration::from_secs(30),
        format!("checked={checked} failed={} time={elapsed:.1?} {:?}", failures.len(), failures.first()),
    );
}

#[test]
fn criterion_04_symmetry_and_intersections_on_z8() {
    let group = FiniteGroup::cyclic(8).unwrap();
    let vast = vast_sets(&group);
    let mut failures = Vec::new();
    for &(m, j) in &vast {
        let inverse = vastness(&group, m.inverse(&group)).j();
        let symmetric = vastness(&group, m.symmetrized(&group)).j();
        if inverse != Some(j) || symmetric != Some(j) {
            failures.push(format!("symmetry M={:?}", m.iter().collect::<Vec<_>>()));
        }
    }
    let mut pairs = 0;
    let mut literal_nonvast = 0;
    for &(m1, j1) in &vast {
        for &(m2, j2) in &vast {
            pairs += 1;
            let bound = j_bound_intersection(j1 as u64, j2 as u64).unwrap();
            let j = j_or_vacuous(&group, m1.intersection(m2));
            if j > group.order() {
                literal_nonvast += 1;
            }
            if j as u64 > bound {
                failures.push(format!(
                    "M1={:?} M2={:?} J={j} bound={bound}",
                    m1.iter().collect::<Vec<_>>(),
                    m2.iter().collect::<Vec<_>>()
                ));
            }
        }
    }
    line(
        "4",
        failures.is_empty(),
        format!(
            "vast={} pairs={pairs} nonvast_within_order={literal_nonvast} failed={} {:?}",
            vast.len(),
            failures.len(),
            failures.first()
        ),
    );
}

#[test]
fn criterion_05_ramsey_triples_in_d4() {
    let group = FiniteGroup::dihedral(4).unwrap();
    let order = group.order();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (m, j) in vast_sets(&group) {
        let size = ramsey_m_for(j as u64, 3).unwrap() as usize;
        if size > order {
            continue;
        }
        for p in all_subsets(order).filter(|p| p.len() == size) {
            checked += 1;
            let members: Vec<usize> = p.iter().collect();
            let good = |a: usize, b: usize| m.contains(group.quotient(a, b)) && m.contains(group.quotient(b, a));
            let found = (0..size).any(|x| {
                (x + 1..size).any(|y| {
                    (y + 1..size).any(|z| {
                        let (a, b, c) = (members[x], members[y], members[z]);
                        good(a, b) && good(a, c) && good(b, c)
                    })
                })
            });
            if !found {
                failures.push(format!("M={:?} P={members:?}", m.iter().collect::<Vec<_>>()));
            }
        }
    }
    line("5", failures.is_empty(), format!("checked={checked} failed={} {:?}", failures.len(), failures.first()));
}

#[test]
fn criterion_06_complements_of_index_two_subgroups() {
    let group = FiniteGroup::boolean(4).unwrap();
    let mut failures = Vec::new();
    // Index-two subgroups of (Z/2)^4 are the kernels {x : |x ∧ v| even}, v ≠ 0.
    for v in 1..16usize {
        let h = SubsetMask::from_elements(16, (0..16).filter(|x| (x & v).count_ones() % 2 == 0)).unwrap();
        let m = h.complement();
        let i = compute_i(&group, m).unwrap().i;
        let report = vastness(&group, m);
        let not_vast = report.j().is_none() && report.j_or_vacuous() == 17;
        if i != 2 || !not_vast {
            failures.push(format!("v={v} I={i} status={:?}", report.status));
        }
    }
    line("6", failures.is_empty(), format!("subgroups=15 failed={} {:?}", failures.len(), failures.first()));
}

fn s21_report() -> SequenceReport {
    let mut config = Statement21Config::new(50);
    config.depth = 512;
    build_xi_statement21(&boolean_omega_base(), &config).unwrap()
}

#[test]
fn criterion_07_statement21_on_boolean_omega() {
    let start = Instant::now();
    let report = s21_report();
    let elapsed = start.elapsed();
    let verdict = |name: &str| report.certificate(name).map(|c| c.verdict);
    let mut problems = Vec::new();
    for name in ["s11.i", "s21.i", "s21.ii", "s21.iv"] {
        if verdict(name) != Some(Verdict::Exact) {
            problems.push(format!("{name}={:?}", verdict(name)));
        }
    }
    for name in ["s21.iii", "s21.v"] {
        if verdict(name).is_none_or(|v| v.is_violated()) {
            problems.push(format!("{name}={:?}", verdict(name)));
        }
    }
    let base = boolean_omega_base();
    let topology = [
        verify::check_discrete(&report, &base, 512),
        verify::check_limit_point(&report, &base, 50),
        verify::check_unique_limit(&report, &base, 512).unwrap(),
    ];
    for v in &topology {
        if v.verdict.is_violated() {
            problems.push(format!("{}={}", v.property, v.verdict));
        }
    }
    if report.xi.len() < 50 {
        problems.push(format!("prefix={}", report.xi.len()));
    }
    line(
        "7",
        problems.is_empty() && elapsed < Duration::from_secs(60),
        format!("prefix={} time={elapsed:.1?} {problems:?}", report.xi.len()),
    );
}

#[test]
fn criterion_08_two_disjoint_sequences() {
    let start = Instant::now();
    let base = boolean_omega_base();
    let mut problems = Vec::new();
    for chooser in [UltraChooser::left(), UltraChooser::right()] {
        let mut chooser = chooser;
        let name = chooser.strategy().name();
        let pair = theorem31_pair(&mut chooser, 10).unwrap();
        let disjoint = verify::check_disjoint(&pair.first, &pair.second);
        if disjoint.verdict != Verdict::Exact {
            problems.push(format!("{name}: disjoint {:?}", disjoint.witnesses));
        }
        for report in pair.reports() {
            if report.xi.is_empty() {
                problems.push(format!("{name}: {} empty", report.name));
            }
            let meets = verify::check_limit_point(report, &base, 10);
            if meets.verdict != Verdict::Exact {
                problems.push(format!("{name}: {} {:?}", report.name, meets.witnesses));
            }
        }
    }
    let elapsed = start.elapsed();
    line(
        "8",
        problems.is_empty() && elapsed < Duration::from_secs(60),
        format!("choosers=left,right time={elapsed:.1?} {problems:?}"),
    );
}

fn choosers() -> Vec<UltraChooser> {
    vec![
        UltraChooser::left(),
        UltraChooser::right(),
        UltraChooser::min_code(),
        UltraChooser::scripted(vec![Side::Right, Side::Left]),
    ]
}

/// The interval inequalities for every chooser, and the two halves covering
/// `[0, c_{2K+1}]` with overlaps only at the endpoints `c_m`.
fn check_interval_split(phi: &Phi, k: usize) -> Result<String, String> {
    let mut splits = Vec::new();
    for mut chooser in choosers() {
        let name = chooser.strategy().name();
        let split = interval_split(&mut chooser, phi, k, DEFAULT_BIT_BUDGET).map_err(|e| format!("{name}: {e}"))?;
        if let Some(n) = split.first_violation() {
            return Err(format!("{name}: inequality fails at n={n}"));
        }
        splits.push(split);
    }
    let left = splits.iter().find(|s| s.side == Side::Left).expect("left chooser ran");
    let right = splits.iter().find(|s| s.side == Side::Right).expect("right chooser ran");
    let (a, b) = (left.chosen_set(phi), right.chosen_set(phi));
    let c = &left.c;
    let mut probes = 0;
    for m in 0..c.len() - 1 {
        let (lo, hi) = (c[m].to_u128(), c[m + 1].to_u128());
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(format!("endpoint c_{} exceeds 128 bits", m + 1));
        };
        let interior = [lo + 1, lo + (hi - lo) / 2, hi - 1].into_iter().filter(|&x| lo < x && x < hi);
        for x in interior {
            probes += 1;
            let (in_a, in_b) = (a.contains(Code(x)), b.contains(Code(x)));
            if in_a == in_b || in_a != (m % 2 == 0) {
                return Err(format!("interior point {x} of [c_{m}, c_{}]: A={in_a} B={in_b}", m + 1));
            }
        }
        probes += 1;
        if !(a.contains(Code(lo)) && b.contains(Code(lo)) || m == 0 && a.contains(Code(0))) {
            return Err(format!("endpoint c_{m} = {lo} not shared"));
        }
    }
    Ok(format!("probes={probes} c_last={}", c.last().unwrap()))
}

#[test]
fn criterion_09_interval_split_linear() {
    for phi in [Phi::successor(), Phi::double_plus_one()] {
        let outcome = check_interval_split(&phi, 50);
        let detail = match &outcome {
            Ok(d) => format!("phi={} {d}", phi.label()),
            Err(e) => format!("phi={} {e}", phi.label()),
        };
        line(&format!("9 [{}]", phi.label()), outcome.is_ok(), detail);
    }
}

/// Doubly exponential endpoints: `c_m ≥ 2^{2^{m−1}}`, so `c_101` has about
/// `2^100` bits and cannot be written down.
#[test]
fn criterion_09_interval_split_square() {
    let phi = Phi::square_plus_one();
    let outcome = check_interval_split(&phi, 50);
    let infeasible = matches!(
        interval_split(&mut UltraChooser::left(), &phi, 50, DEFAULT_BIT_BUDGET),
        Err(FilterError::EndpointTooLarge { .. })
    );
    let detail = match &outcome {
        Ok(d) => format!("phi=n^2+1 {d}"),
        Err(e) => format!("phi=n^2+1 {e} (infeasible={infeasible})"),
    };
    line("9 [n^2+1]", outcome.is_ok(), detail);
}

#[test]
fn criterion_10_nonrapid_witnesses() {
    let chain = boolean_h_chain();
    let count = 13;
    let sizes: [(&str, fn(usize) -> usize); 2] = [("n+1", |n| n + 1), ("2^n", |n| 1 << n)];
    let mut problems = Vec::new();
    let mut intersections = 0u64;
    for (label, f) in sizes {
        let witness = nonrapid_witness_for_chain(&chain, count, f, Some(Code(0))).unwrap();
        for k in 0..count {
            // Bit i of levels[t] says T_k[t] ∈ F_i.
            let levels: Vec<u32> = witness.sets[k]
                .iter()
                .map(|&t| (0..=k).filter(|&i| chain.level(i).contains(t)).fold(0, |acc, i| acc | 1 << i))
                .collect();
            // Index sets with maximum k: k together with any subset of 0..k.
            for lower in 0u32..1 << k {
                intersections += 1;
                let indices = lower | 1 << k;
                let hits = levels.iter().filter(|&&l| l & indices == indices).count();
                if hits < f(k) {
                    problems.push(format!("f={label} k={k} indices={indices:b} hits={hits}"));
                }
            }
        }
    }
    line(
        "10",
        problems.is_empty(),
        format!("intersections={intersections} failed={} {:?}", problems.len(), problems.first()),
    );
}

fn cli_report(args: &[&str], path: &std::path::Path) -> Vec<u8> {
    let mut full = vec!["vastsets"];
    full.extend_from_slice(args);
    let path_str = path.to_str().unwrap();
    full.extend_from_slice(&["--out", path_str]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = vastsets::cli::run(full, &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    std::fs::read(path).unwrap()
}

#[test]
fn criterion_11_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["construct", "s21", "--group", "boolean-omega", "--count", "50", "--depth", "512"],
        &["construct", "t31", "--count", "10", "--chooser", "left"],
        &["construct", "t31", "--count", "10", "--chooser", "right"],
    ];
    let mut problems = Vec::new();
    let mut bytes = 0;
    for (i, args) in runs.iter().enumerate() {
        let first = cli_report(args, &dir.path().join(format!("{i}a.rpt")));
        let second = cli_report(args, &dir.path().join(format!("{i}b.rpt")));
        bytes += first.len();
        if first != second {
            problems.push(args.join(" "));
        }
    }
    line("11", problems.is_empty(), format!("reports=3 bytes={bytes} differing={problems:?}"));
}

#[test]
fn headline_values() {
    // Spot values quoted alongside the criteria.
    let z6 = FiniteGroup::cyclic(6).unwrap();
    assert_eq!(vastness(&z6, SubsetMask::parse(6, "0,2,4").unwrap()).j(), Some(3));
    let split = interval_split(&mut UltraChooser::left(), &Phi::successor(), 3, DEFAULT_BIT_BUDGET).unwrap();
    assert_eq!(split.a, [0u32, 4, 8].map(BigUint::from));
}

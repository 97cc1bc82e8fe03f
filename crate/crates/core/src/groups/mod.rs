//! Finite groups by Cayley table and countable groups by element codes.

mod cayley;
mod countable;
mod decidable;
mod finite;
mod subset;

use std::path::Path;

use thiserror::Error;

pub use cayley::{load_cayley, parse_cayley, render_cayley};
pub use countable::{
    decode_integer, decode_support, encode_integer, encode_support, max_support, min_support,
    Code, EnumeratedGroup, BOOLEAN_WIDTH, DEFAULT_AXIOM_DEPTH, INTEGER_BOUND,
};
pub use decidable::{DecidableSet, DEFAULT_SCAN_LIMIT};
pub use finite::FiniteGroup;
pub use subset::{k_subsets, SubsetMask, MAX_MASK_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("not a group: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("not a group: table is not a Latin square at cell ({row}, {col})")]
    NotLatin { row: usize, col: usize },
    #[error("not a group: no two-sided identity")]
    NoIdentity,
    #[error("not a group: associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {element} is out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("subset masks support groups of order at most 64, got {0}")]
    MaskTooLarge(usize),
    #[error("bad subset literal token {0:?}")]
    BadLiteral(String),
    #[error("code overflow: {0}")]
    CodeOverflow(String),
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("cayley file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown group spec {0:?}")]
    UnknownSpec(String),
}

/// Quotient set `{a⁻¹b : a ∈ A, b ∈ B}`.
pub fn quotient_set(group: &FiniteGroup, a: SubsetMask, b: SubsetMask) -> SubsetMask {
    let mut out = SubsetMask::empty(group.order()).expect("mask order already validated");
    for x in a.iter() {
        for y in b.iter() {
            out = out.with(group.quotient(x, y));
        }
    }
    out
}

/// Parse a finite-group spec: `cyclic:n`, `boolean:k`, `dihedral:n`, `sym:n` or
/// `cayley:<path>`.
pub fn parse_finite_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| GroupError::UnknownSpec(spec.to_string()))?;
    let number = || {
        arg.parse::<usize>()
            .map_err(|_| GroupError::UnknownSpec(spec.to_string()))
    };
    match kind {
        "cyclic" => FiniteGroup::cyclic(number()?),
        "boolean" => {
            let k = u32::try_from(number()?).map_err(|_| GroupError::InvalidOrder(spec.into()))?;
            FiniteGroup::boolean(k)
        }
        "dihedral" => FiniteGroup::dihedral(number()?),
        "sym" => FiniteGroup::symmetric(number()?),
        "cayley" => load_cayley(Path::new(arg)),
        _ => Err(GroupError::UnknownSpec(spec.to_string())),
    }
}

/// The catalog of small groups swept by the exhaustive checks: cyclic groups of
/// order 2..=n, Boolean groups, dihedral groups and `S_3`, all of order at most
/// `order_bound`.
pub fn catalog(order_bound: usize) -> Vec<FiniteGroup> {
    let mut groups = Vec::new();
    for n in 2..=order_bound {
        groups.push(FiniteGroup::cyclic(n).expect("positive order"));
    }
    for k in 1..=3u32 {
        if 1usize << k <= order_bound {
            groups.push(FiniteGroup::boolean(k).expect("small rank"));
        }
    }
    for n in 3..=order_bound / 2 {
        groups.push(FiniteGroup::dihedral(n).expect("small dihedral"));
    }
    if order_bound >= 6 {
        groups.push(FiniteGroup::symmetric(3).expect("S_3"));
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(order: usize, xs: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(order, xs.iter().copied()).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let evens = mask(6, &[0, 2, 4]);
        assert_eq!(quotient_set(&z6, evens, evens), evens);
        let a = mask(6, &[0, 1]);
        assert_eq!(quotient_set(&z6, a, a), mask(6, &[0, 1, 5]));
        let b3 = FiniteGroup::boolean(3).unwrap();
        assert_eq!(
            quotient_set(&b3, mask(8, &[0b001]), mask(8, &[0b011])),
            mask(8, &[0b010])
        );
    }

    #[test]
    fn catalog_axioms_hold_exhaustively() {
        for g in catalog(16) {
            let n = g.order();
            let e = g.identity();
            for a in 0..n {
                assert_eq!(g.op(a, g.inv(a)), e, "{}", g.name());
                assert_eq!(g.op(g.inv(a), a), e, "{}", g.name());
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn catalog_contents() {
        let names: Vec<String> = catalog(12).iter().map(|g| g.name().to_string()).collect();
        assert!(names.contains(&"cyclic:12".to_string()));
        assert!(names.contains(&"boolean:3".to_string()));
        assert!(names.contains(&"dihedral:6".to_string()));
        assert!(names.contains(&"sym:3".to_string()));
        assert!(catalog(1).is_empty());
    }

    #[test]
    fn specs() {
        assert_eq!(parse_finite_group("dihedral:4").unwrap().order(), 8);
        assert_eq!(parse_finite_group("sym:4").unwrap().order(), 24);
        assert!(matches!(
            parse_finite_group("free:2"),
            Err(GroupError::UnknownSpec(_))
        ));
        assert!(parse_finite_group("cyclic").is_err());
        assert!(parse_finite_group("cyclic:x").is_err());
    }
}

//! Decidable subsets of a countable set of codes.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::Code;

type Membership = Arc<dyn Fn(Code) -> bool + Send + Sync>;
type Successor = Arc<dyn Fn(Code) -> Option<Code> + Send + Sync>;

/// Upper limit on codes inspected by a linear membership scan before the
/// enumerator gives up and reports a stall.
pub const DEFAULT_SCAN_LIMIT: u128 = 1 << 22;

/// A set of codes with a membership test and an ascending enumerator.
///
/// When no successor function is supplied, enumeration scans codes upward and
/// stops after [`DecidableSet::scan_limit`] consecutive non-members.
#[derive(Clone)]
pub struct DecidableSet {
    label: Arc<str>,
    member: Membership,
    successor: Option<Successor>,
    scan_limit: u128,
}

impl fmt::Debug for DecidableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("DecidableSet").field(&self.label).finish()
    }
}

impl DecidableSet {
    /// A set given only by membership; enumerated by scanning.
    pub fn from_predicate(
        label: impl Into<Arc<str>>,
        member: impl Fn(Code) -> bool + Send + Sync + 'static,
    ) -> Self {
        DecidableSet {
            label: label.into(),
            member: Arc::new(member),
            successor: None,
            scan_limit: DEFAULT_SCAN_LIMIT,
        }
    }

    /// A set with a direct successor function: `successor(x)` is the least member
    /// `≥ x`, or `None` if there is none (representable).
    pub fn with_successor(
        label: impl Into<Arc<str>>,
        member: impl Fn(Code) -> bool + Send + Sync + 'static,
        successor: impl Fn(Code) -> Option<Code> + Send + Sync + 'static,
    ) -> Self {
        DecidableSet {
            label: label.into(),
            member: Arc::new(member),
            successor: Some(Arc::new(successor)),
            scan_limit: DEFAULT_SCAN_LIMIT,
        }
    }

    pub fn finite(label: impl Into<Arc<str>>, codes: impl IntoIterator<Item = Code>) -> Self {
        let set: Arc<BTreeSet<Code>> = Arc::new(codes.into_iter().collect());
        let lookup = Arc::clone(&set);
        DecidableSet::with_successor(
            label,
            move |c| lookup.contains(&c),
            move |c| set.range(c..).next().copied(),
        )
    }

    /// Every code.
    pub fn everything(label: impl Into<Arc<str>>) -> Self {
        DecidableSet::with_successor(label, |_| true, Some)
    }

    #[must_use]
    pub fn with_scan_limit(mut self, limit: u128) -> Self {
        self.scan_limit = limit;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn scan_limit(&self) -> u128 {
        self.scan_limit
    }

    #[inline]
    pub fn contains(&self, code: Code) -> bool {
        (self.member)(code)
    }

    /// Least member `≥ from`, or `None` if the enumerator stalls or runs out.
    pub fn next_member(&self, from: Code) -> Option<Code> {
        if let Some(successor) = &self.successor {
            return successor(from);
        }
        let mut c = from.0;
        let stop = from.0.saturating_add(self.scan_limit);
        while c < stop {
            if self.contains(Code(c)) {
                return Some(Code(c));
            }
            c += 1;
        }
        None
    }

    /// Members in ascending order, starting at `from`.
    pub fn members_from(&self, from: Code) -> impl Iterator<Item = Code> + '_ {
        let mut cursor = Some(from);
        std::iter::from_fn(move || {
            let found = self.next_member(cursor?)?;
            cursor = found.0.checked_add(1).map(Code);
            Some(found)
        })
    }

    pub fn members(&self) -> impl Iterator<Item = Code> + '_ {
        self.members_from(Code::ZERO)
    }

    /// The first `n` members, or `Err(found)` with however many were found before
    /// the enumerator stalled.
    pub fn first(&self, n: usize) -> Result<Vec<Code>, Vec<Code>> {
        let found: Vec<Code> = self.members().take(n).collect();
        if found.len() == n {
            Ok(found)
        } else {
            Err(found)
        }
    }

    /// `self ∩ other`, enumerated through `self`'s enumerator.
    #[must_use]
    pub fn intersect(&self, other: &DecidableSet) -> DecidableSet {
        let label = format!("({} ∩ {})", self.label, other.label);
        let a = self.clone();
        let b = other.clone();
        let (a2, b2) = (self.clone(), other.clone());
        let limit = self.scan_limit;
        DecidableSet::with_successor(
            label,
            move |c| a.contains(c) && b.contains(c),
            move |from| {
                let mut inspected = 0u128;
                a2.members_from(from).find(|&c| {
                    inspected += 1;
                    b2.contains(c) || inspected >= limit
                })
                .filter(|&c| b2.contains(c))
            },
        )
    }

    /// `self ∖ other`, enumerated through `self`'s enumerator.
    #[must_use]
    pub fn minus(&self, other: &DecidableSet) -> DecidableSet {
        let label = format!("({} ∖ {})", self.label, other.label);
        let a = self.clone();
        let b = other.clone();
        let (a2, b2) = (self.clone(), other.clone());
        let limit = self.scan_limit;
        DecidableSet::with_successor(
            label,
            move |c| a.contains(c) && !b.contains(c),
            move |from| {
                let mut inspected = 0u128;
                a2.members_from(from).find(|&c| {
                    inspected += 1;
                    !b2.contains(c) || inspected >= limit
                })
                .filter(|&c| !b2.contains(c))
            },
        )
    }

    /// Membership bits for codes `0..len`, used to compare sets on a prefix.
    pub fn fingerprint(&self, len: usize) -> Vec<bool> {
        (0..len as u128).map(|c| self.contains(Code(c))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scanned_enumeration_is_ascending_and_sound() {
        let evens = DecidableSet::from_predicate("evens", |c| c.0 % 2 == 0);
        let first: Vec<u128> = evens.first(5).unwrap().iter().map(|c| c.0).collect();
        assert_eq!(first, vec![0, 2, 4, 6, 8]);
        assert!(evens.members().take(100).all(|c| evens.contains(c)));
    }

    #[test]
    fn stalls_are_reported() {
        let small = DecidableSet::from_predicate("small", |c| c.0 < 3).with_scan_limit(50);
        assert_eq!(small.first(5), Err(vec![Code(0), Code(1), Code(2)]));
    }

    #[test]
    fn finite_and_intersections() {
        let f = DecidableSet::finite("f", [Code(3), Code(9), Code(4)]);
        assert_eq!(f.first(3).unwrap(), vec![Code(3), Code(4), Code(9)]);
        assert!(f.first(4).is_err());
        let odd = DecidableSet::from_predicate("odd", |c| c.0 % 2 == 1);
        let both = f.intersect(&odd);
        assert_eq!(both.members().collect::<Vec<_>>(), vec![Code(3), Code(9)]);
        let rest = f.minus(&odd);
        assert_eq!(rest.members().collect::<Vec<_>>(), vec![Code(4)]);
    }
}

//! Subsets of finite groups as bit masks.

use std::fmt;

use super::{FiniteGroup, GroupError};

/// Largest group order whose subsets fit in a [`SubsetMask`].
pub const MAX_MASK_ORDER: usize = 64;

/// A subset of a finite group of order at most 64, one bit per element index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u64,
    order: usize,
}

impl SubsetMask {
    pub fn empty(order: usize) -> Result<Self, GroupError> {
        if order > MAX_MASK_ORDER {
            return Err(GroupError::MaskTooLarge(order));
        }
        Ok(SubsetMask { bits: 0, order })
    }

    pub fn full(order: usize) -> Result<Self, GroupError> {
        let mut m = Self::empty(order)?;
        m.bits = full_bits(order);
        Ok(m)
    }

    pub fn from_bits(order: usize, bits: u64) -> Result<Self, GroupError> {
        let m = Self::empty(order)?;
        if bits & !full_bits(order) != 0 {
            return Err(GroupError::ElementOutOfRange {
                element: 63 - bits.leading_zeros() as usize,
                order,
            });
        }
        Ok(SubsetMask { bits, ..m })
    }

    pub fn from_elements<I>(order: usize, elements: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut m = Self::empty(order)?;
        for x in elements {
            if x >= order {
                return Err(GroupError::ElementOutOfRange { element: x, order });
            }
            m.bits |= 1 << x;
        }
        Ok(m)
    }

    /// Parse a subset literal: element indices separated by commas and/or whitespace,
    /// or the keyword `all`. The empty literal is the empty set.
    pub fn parse(order: usize, literal: &str) -> Result<Self, GroupError> {
        let literal = literal.trim();
        if literal == "all" {
            return Self::full(order);
        }
        let mut elements = Vec::new();
        for token in literal
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let x = token
                .parse::<usize>()
                .map_err(|_| GroupError::BadLiteral(token.to_string()))?;
            elements.push(x);
        }
        Self::from_elements(order, elements)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn order(self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < self.order && self.bits >> x & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[must_use]
    pub fn with(self, x: usize) -> Self {
        debug_assert!(x < self.order);
        SubsetMask {
            bits: self.bits | 1 << x,
            ..self
        }
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        SubsetMask {
            bits: self.bits & other.bits,
            ..self
        }
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        SubsetMask {
            bits: self.bits | other.bits,
            ..self
        }
    }

    #[must_use]
    pub fn complement(self) -> Self {
        SubsetMask {
            bits: !self.bits & full_bits(self.order),
            ..self
        }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Elements in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(x)
            }
        })
    }

    /// `{x⁻¹ : x ∈ self}`
    #[must_use]
    pub fn inverse(self, group: &FiniteGroup) -> Self {
        self.map(|x| group.inv(x))
    }

    /// The left translate `t·self`.
    #[must_use]
    pub fn left_translate(self, group: &FiniteGroup, t: usize) -> Self {
        self.map(|x| group.op(t, x))
    }

    /// The right translate `self·t`.
    #[must_use]
    pub fn right_translate(self, group: &FiniteGroup, t: usize) -> Self {
        self.map(|x| group.op(x, t))
    }

    /// `self ∩ self⁻¹`
    #[must_use]
    pub fn symmetrized(self, group: &FiniteGroup) -> Self {
        self.intersection(self.inverse(group))
    }

    fn map(self, f: impl Fn(usize) -> usize) -> Self {
        let bits = self.iter().fold(0u64, |acc, x| acc | 1 << f(x));
        SubsetMask { bits, ..self }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Renders as a comma-separated literal, the inverse of [`SubsetMask::parse`].
impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

#[inline]
fn full_bits(order: usize) -> u64 {
    if order >= 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

/// All subsets of `{0..order}` with exactly `k` elements, in increasing numeric
/// order of their masks (colexicographic order of the element sets).
pub fn k_subsets(order: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << order;
    let mut next: Option<u64> = if k > order {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(((1u128 << k) - 1) as u64)
    };
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            // Gosper's hack
            let c = current as u128;
            let lowest = c & c.wrapping_neg();
            let ripple = c + lowest;
            let successor = (((ripple ^ c) >> 2) / lowest) | ripple;
            (successor < limit).then_some(successor as u64)
        };
        Some(current)
    })
}

//! Splitting `ω` into alternating intervals and letting the chooser keep one
//! half: the intervals `[a_n, b_n]` with `a_n < b_n < φ(b_n) < a_{n+1}`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{FilterError, Side, UltraChooser};
use crate::groups::{Code, DecidableSet};

/// Largest endpoint size, in bits, computed before giving up.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

type PhiFn = Arc<dyn Fn(&BigUint) -> Option<BigUint> + Send + Sync>;

/// A function `ω → ω`; `None` marks arguments outside its computable domain.
#[derive(Clone)]
pub struct Phi {
    label: Arc<str>,
    f: PhiFn,
}

impl fmt::Debug for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Phi").field(&self.label).finish()
    }
}

impl Phi {
    pub fn new(
        label: impl Into<Arc<str>>,
        f: impl Fn(&BigUint) -> Option<BigUint> + Send + Sync + 'static,
    ) -> Self {
        Phi {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn total(
        label: impl Into<Arc<str>>,
        f: impl Fn(&BigUint) -> BigUint + Send + Sync + 'static,
    ) -> Self {
        Phi::new(label, move |x| Some(f(x)))
    }

    /// `n ↦ n + 1`
    pub fn successor() -> Self {
        Phi::total("n+1", |x| x + 1u32)
    }

    /// `n ↦ 2n + 1`
    pub fn double_plus_one() -> Self {
        Phi::total("2n+1", |x| x * 2u32 + 1u32)
    }

    /// `n ↦ n² + 1`
    pub fn square_plus_one() -> Self {
        Phi::total("n^2+1", |x| x * x + 1u32)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: &BigUint) -> Result<BigUint, FilterError> {
        (self.f)(x).ok_or_else(|| FilterError::PhiOutOfDomain { at: x.to_string() })
    }
}

/// Output of [`interval_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSplit {
    pub phi: String,
    /// `c_0, …, c_{2K+1}`
    pub c: Vec<BigUint>,
    /// `φ(c_0), …, φ(c_{2K+1})`
    pub phi_c: Vec<BigUint>,
    pub side: Side,
    pub a: Vec<BigUint>,
    pub b: Vec<BigUint>,
}

impl IntervalSplit {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Index of `a_n` in the `c` sequence.
    pub fn offset(&self) -> usize {
        match self.side {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    /// `φ(b_n)`
    pub fn phi_b(&self, n: usize) -> &BigUint {
        &self.phi_c[2 * n + 1 + self.offset()]
    }

    /// `a_{n+1}`, including the one past the last returned interval.
    pub fn next_a(&self, n: usize) -> &BigUint {
        &self.c[2 * n + 2 + self.offset()]
    }

    /// First `n` at which `a_n < b_n < φ(b_n) < a_{n+1}` fails.
    pub fn first_violation(&self) -> Option<usize> {
        (0..self.k()).find(|&n| {
            !(self.a[n] < self.b[n] && self.b[n] < *self.phi_b(n) && self.phi_b(n) < self.next_a(n))
        })
    }

    /// `(a_n, b_n)` as machine integers, if they fit.
    pub fn small_pairs(&self) -> Option<Vec<(u128, u128)>> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| Some((a.to_u128()?, b.to_u128()?)))
            .collect()
    }

    /// The union `⋃ [a_n, b_n]` over all `n`, as a set of codes.
    pub fn chosen_set(&self, phi: &Phi) -> DecidableSet {
        let ladder = Ladder::new(self.c.clone(), phi.clone());
        let parity = self.offset();
        let label = format!("⋃[a_n,b_n] ({})", self.side);
        DecidableSet::from_predicate(label, move |x| ladder.in_half(x, parity))
    }
}

/// The `c` sequence, extended on demand while it stays below `2^128`.
#[derive(Clone)]
struct Ladder {
    c: Arc<Vec<BigUint>>,
    phi: Phi,
}

impl Ladder {
    fn new(c: Vec<BigUint>, phi: Phi) -> Self {
        Ladder { c: Arc::new(c), phi }
    }

    /// Does `x` lie in `[c_m, c_{m+1}]` for some `m ≡ parity (mod 2)`?
    fn in_half(&self, x: Code, parity: usize) -> bool {
        let x = BigUint::from(x.get());
        let hit = |m: usize| m % 2 == parity;
        // Endpoints belong to both neighbouring intervals.
        let idx = self.c.partition_point(|c| *c < x);
        if idx < self.c.len() {
            if self.c[idx] == x {
                return hit(idx) || (idx > 0 && hit(idx - 1));
            }
            return idx > 0 && hit(idx - 1);
        }
        let mut m = self.c.len() - 1;
        let mut c = self.c[m].clone();
        loop {
            let Ok(next) = self.phi.eval(&c).map(|v| v + 1u32) else {
                return false;
            };
            if next >= x {
                return hit(m) || (next == x && hit(m + 1));
            }
            c = next;
            m += 1;
        }
    }
}

/// Build `c_0 = 0`, `c_{n+1} = φ(c_n) + 1`, offer the chooser
/// `A = ⋃[c_{2n}, c_{2n+1}]` against `B = ⋃[c_{2n+1}, c_{2n+2}]`, and return the
/// kept intervals for `n < k`. Endpoints above `bit_budget` bits are refused.
pub fn interval_split(
    chooser: &mut UltraChooser,
    phi: &Phi,
    k: usize,
    bit_budget: u64,
) -> Result<IntervalSplit, FilterError> {
    let needed = 2 * k + 2;
    let mut c = vec![BigUint::zero()];
    let mut phi_c = Vec::with_capacity(needed);
    while c.len() < needed {
        let last = c.last().expect("nonempty");
        let value = phi.eval(last)?;
        if value <= *last {
            return Err(FilterError::InvalidPhi { at: last.to_string() });
        }
        if let Some(prev) = phi_c.last() {
            if value < *prev {
                return Err(FilterError::NonMonotonePhi { at: last.to_string() });
            }
        }
        let next: BigUint = &value + BigUint::one();
        if next.bits() > bit_budget {
            return Err(FilterError::EndpointTooLarge {
                index: c.len(),
                budget: bit_budget,
            });
        }
        phi_c.push(value);
        c.push(next);
    }
    let last = c.last().expect("nonempty");
    let value = phi.eval(last)?;
    if value <= *last {
        return Err(FilterError::InvalidPhi { at: last.to_string() });
    }
    phi_c.push(value);

    let ladder = Ladder::new(c.clone(), phi.clone());
    let (la, lb) = (ladder.clone(), ladder);
    let a_set = DecidableSet::from_predicate(format!("A[{}]", phi.label()), move |x| la.in_half(x, 0));
    let b_set = DecidableSet::from_predicate(format!("B[{}]", phi.label()), move |x| lb.in_half(x, 1));
    let side = chooser.choose(&a_set, &b_set)?;
    let offset = match side {
        Side::Left => 0,
        Side::Right => 1,
    };
    let a = (0..k).map(|n| c[2 * n + offset].clone()).collect();
    let b = (0..k).map(|n| c[2 * n + 1 + offset].clone()).collect();
    Ok(IntervalSplit {
        phi: phi.label().to_string(),
        c,
        phi_c,
        side,
        a,
        b,
    })
}

//! Countable groups presented through canonical natural-number codes.

use std::fmt;

use super::GroupError;

/// Canonical code of one element of an enumerated group (or of a natural number,
/// when a set lives on `ω`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Code(pub u128);

impl Code {
    pub const ZERO: Code = Code(0);

    #[inline]
    pub fn get(self) -> u128 {
        self.0
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<u128> for Code {
    fn from(v: u128) -> Self {
        Code(v)
    }
}

/// Integers with absolute value below this bound are the only ones handed out by
/// enumerators over `ℤ`, so that a product of two enumerated elements never
/// overflows the code type.
pub const INTEGER_BOUND: i128 = 1 << 100;

/// Codes of the Boolean group are limited to supports inside `0..BOOLEAN_WIDTH`.
pub const BOOLEAN_WIDTH: u32 = 128;

/// Zig-zag coding of integers: `0, 1, −1, 2, −2, …` get codes `0, 1, 2, 3, 4, …`.
pub fn encode_integer(z: i128) -> Code {
    if z > 0 {
        Code((z as u128) * 2 - 1)
    } else {
        Code(z.unsigned_abs() * 2)
    }
}

pub fn decode_integer(code: Code) -> i128 {
    let c = code.0;
    if c % 2 == 1 {
        c.div_ceil(2) as i128
    } else {
        -((c / 2) as i128)
    }
}

/// Code of a finite subset of `ω`: the sum of `2^i` over its elements.
pub fn encode_support(support: &[u32]) -> Result<Code, GroupError> {
    support.iter().try_fold(Code(0), |acc, &i| {
        if i >= BOOLEAN_WIDTH {
            Err(GroupError::CodeOverflow(format!("support element {i}")))
        } else {
            Ok(Code(acc.0 | 1u128 << i))
        }
    })
}

/// Binary support of a code, ascending.
pub fn decode_support(code: Code) -> Vec<u32> {
    let mut bits = code.0;
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    while bits != 0 {
        out.push(bits.trailing_zeros());
        bits &= bits - 1;
    }
    out
}

/// `min X` for a nonempty finite set `X ⊂ ω` given by its code.
pub fn min_support(code: Code) -> Option<u32> {
    (code.0 != 0).then(|| code.0.trailing_zeros())
}

/// `max X` for a nonempty finite set `X ⊂ ω` given by its code.
pub fn max_support(code: Code) -> Option<u32> {
    (code.0 != 0).then(|| 127 - code.0.leading_zeros())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Presentation {
    /// `[ω]^{<ω}` under symmetric difference.
    BooleanOmega,
    /// `(ℤ, +)` with zig-zag codes.
    Integers,
}

/// A countable group whose elements are identified with their codes.
///
/// The identity always has code 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumeratedGroup {
    presentation: Presentation,
}

/// Default number of codes on which the group axioms are spot-checked.
pub const DEFAULT_AXIOM_DEPTH: usize = 512;

impl EnumeratedGroup {
    /// The group of finite subsets of `ω` with symmetric difference.
    pub fn boolean_omega() -> Self {
        EnumeratedGroup {
            presentation: Presentation::BooleanOmega,
        }
    }

    pub fn integers() -> Self {
        EnumeratedGroup {
            presentation: Presentation::Integers,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.presentation {
            Presentation::BooleanOmega => "boolean-omega",
            Presentation::Integers => "integers",
        }
    }

    #[inline]
    pub fn identity(&self) -> Code {
        Code::ZERO
    }

    #[inline]
    pub fn is_boolean(&self) -> bool {
        self.presentation == Presentation::BooleanOmega
    }

    /// Group operation on codes.
    ///
    /// # Panics
    ///
    /// For `ℤ`, if the sum leaves the `i128` range. Enumerators never produce
    /// integers beyond [`INTEGER_BOUND`], so this needs hand-built codes.
    #[inline]
    pub fn op(&self, a: Code, b: Code) -> Code {
        match self.presentation {
            Presentation::BooleanOmega => Code(a.0 ^ b.0),
            Presentation::Integers => {
                let sum = decode_integer(a)
                    .checked_add(decode_integer(b))
                    .expect("integer code overflow");
                encode_integer(sum)
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Code) -> Code {
        match self.presentation {
            Presentation::BooleanOmega => a,
            Presentation::Integers => encode_integer(-decode_integer(a)),
        }
    }

    /// `a⁻¹·b`
    #[inline]
    pub fn quotient(&self, a: Code, b: Code) -> Code {
        self.op(self.inv(a), b)
    }

    /// Human-readable form: `{0,2}` for sets, `-3` for integers.
    pub fn describe(&self, code: Code) -> String {
        match self.presentation {
            Presentation::BooleanOmega => {
                let items: Vec<String> = decode_support(code).iter().map(u32::to_string).collect();
                format!("{{{}}}", items.join(","))
            }
            Presentation::Integers => decode_integer(code).to_string(),
        }
    }

    /// Spot-check the group axioms and injectivity of the codec on codes `< depth`.
    pub fn validate_prefix(&self, depth: usize) -> Result<(), GroupError> {
        let codes: Vec<Code> = (0..depth as u128).map(Code).collect();
        for &a in &codes {
            if self.op(a, self.identity()) != a || self.op(self.identity(), a) != a {
                return Err(GroupError::AxiomViolation(format!("identity law at {a}")));
            }
            if self.op(a, self.inv(a)) != self.identity() {
                return Err(GroupError::AxiomViolation(format!("inverse law at {a}")));
            }
        }
        // The codec round-trips on the prefix.
        for &a in &codes {
            let back = match self.presentation {
                Presentation::BooleanOmega => encode_support(&decode_support(a))?,
                Presentation::Integers => encode_integer(decode_integer(a)),
            };
            if back != a {
                return Err(GroupError::AxiomViolation(format!("codec at {a}")));
            }
        }
        // Associativity on a cube root of the prefix keeps this linear in `depth`.
        let side = (depth as f64).cbrt().ceil() as usize;
        let small = &codes[..side.min(codes.len())];
        for &a in small {
            for &b in small {
                for &c in small {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return Err(GroupError::AxiomViolation(format!(
                            "associativity at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn boolean_omega_basics() {
        let g = EnumeratedGroup::boolean_omega();
        assert_eq!(g.op(Code(1), Code(2)), Code(3));
        assert_eq!(decode_support(Code(5)), vec![0, 2]);
        assert_eq!(g.describe(Code(5)), "{0,2}");
        assert_eq!(g.describe(Code(0)), "{}");
        for x in 0..64u128 {
            assert_eq!(g.inv(Code(x)), Code(x));
        }
        g.validate_prefix(DEFAULT_AXIOM_DEPTH).unwrap();
    }

    #[test]
    fn zigzag() {
        let order: Vec<i128> = (0..5).map(|c| decode_integer(Code(c))).collect();
        assert_eq!(order, vec![0, 1, -1, 2, -2]);
        let z = EnumeratedGroup::integers();
        assert_eq!(decode_integer(z.op(encode_integer(5), encode_integer(-7))), -2);
        z.validate_prefix(DEFAULT_AXIOM_DEPTH).unwrap();
    }

    #[test]
    fn support_extremes() {
        assert_eq!(min_support(Code(0b10100)), Some(2));
        assert_eq!(max_support(Code(0b10100)), Some(4));
        assert_eq!(min_support(Code(0)), None);
        assert!(encode_support(&[200]).is_err());
    }

    #[test]
    fn boolean_self_inverse_probe() {
        let g = EnumeratedGroup::boolean_omega();
        for x in (0..1u128 << 16).step_by(97) {
            for y in (0..1u128 << 16).step_by(89) {
                assert_eq!(g.op(Code(x), g.op(Code(x), Code(y))), Code(y));
            }
        }
    }

    proptest! {
        #[test]
        fn support_round_trip(code in any::<u128>()) {
            let s = decode_support(Code(code));
            prop_assert_eq!(encode_support(&s).unwrap(), Code(code));
        }

        #[test]
        fn integer_round_trip(z in -(1i128 << 100)..(1i128 << 100)) {
            prop_assert_eq!(decode_integer(encode_integer(z)), z);
        }

        #[test]
        fn boolean_op_is_cancellative(x in 0u128..1 << 16, y in 0u128..1 << 16) {
            let g = EnumeratedGroup::boolean_omega();
            prop_assert_eq!(g.op(Code(x), g.op(Code(x), Code(y))), Code(y));
        }
    }
}

//! Exact angles of the form `2π · num / 2^log2den`.
//!
//! Internally every angle is also viewed as a 63-bit fixed-point fraction of
//! a turn, which makes addition modulo one turn a masked integer add and
//! gives a total order that matches the order of the angles in `[0, 2π)`.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::math;

/// Largest supported denominator exponent.
pub const MAX_LOG2_DEN: u32 = 63;

const FULL: u64 = 1 << MAX_LOG2_DEN;
const MASK: u64 = FULL - 1;

/// The angle `2π · num / 2^log2den`, kept fully reduced: `num` is odd, or the
/// angle is zero and stored as `0 / 2^0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawAngle"))]
pub struct DyadicAngle {
    num: u64,
    log2den: u32,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawAngle {
    num: u64,
    log2den: u32,
}

#[cfg(feature = "serde")]
impl TryFrom<RawAngle> for DyadicAngle {
    type Error = Error;

    fn try_from(raw: RawAngle) -> Result<Self> {
        let a = DyadicAngle::new(raw.num, raw.log2den)?;
        if a.num != raw.num || a.log2den != raw.log2den {
            return Err(Error::InvalidParameter("dyadic angle is not in canonical form"));
        }
        Ok(a)
    }
}

impl DyadicAngle {
    pub const ZERO: Self = Self { num: 0, log2den: 0 };
    pub const HALF: Self = Self { num: 1, log2den: 1 };
    pub const QUARTER: Self = Self { num: 1, log2den: 2 };

    /// `num / 2^log2den` of a turn, reduced modulo one turn and to lowest terms.
    pub fn new(num: u64, log2den: u32) -> Result<Self> {
        if log2den > MAX_LOG2_DEN {
            return Err(Error::ExponentOverflow(log2den));
        }
        let reduced = if log2den == 0 { 0 } else { num & ((1u64 << log2den) - 1) };
        Ok(Self::from_fixed(reduced << (MAX_LOG2_DEN - log2den)))
    }

    /// `j / 2^n` of a turn: the angle of the `j`-th `2^n`-th root of unity.
    pub fn root_of_unity(j: u64, n: u32) -> Result<Self> {
        Self::new(j, n)
    }

    fn from_fixed(t: u64) -> Self {
        let t = t & MASK;
        if t == 0 {
            return Self::ZERO;
        }
        let tz = t.trailing_zeros();
        Self { num: t >> tz, log2den: MAX_LOG2_DEN - tz }
    }

    /// The angle as a fraction of a turn in units of `2^-63`.
    #[inline]
    pub fn fixed(self) -> u64 {
        self.num << (MAX_LOG2_DEN - self.log2den)
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn log2_denominator(self) -> u32 {
        self.log2den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `(self + other) mod 1` turn.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        Self::from_fixed(self.fixed().wrapping_add(other.fixed()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Self {
        self.add(other.negate())
    }

    /// `(1 - self) mod 1` turn, the angle of the complex conjugate.
    pub fn negate(self) -> Self {
        Self::from_fixed(FULL - self.fixed())
    }

    /// `2^m · self mod 1` turn.
    pub fn mul_pow2(self, m: u32) -> Self {
        if m >= MAX_LOG2_DEN {
            return Self::ZERO;
        }
        Self::from_fixed(self.fixed() << m)
    }

    /// `k · self mod 1` turn for any integer multiplier.
    pub fn mul_int(self, k: u64) -> Self {
        Self::from_fixed(self.fixed().wrapping_mul(k))
    }

    /// The representative of `self / 2` in `[0, 1/2)` turn. Halving is only
    /// defined up to half a turn; callers must only depend on it modulo `π`.
    pub fn half(self) -> Result<Self> {
        if self.log2den == MAX_LOG2_DEN {
            return Err(Error::ExponentOverflow(MAX_LOG2_DEN + 1));
        }
        Ok(Self::from_fixed(self.fixed() >> 1))
    }

    /// True when `2^n · self ≡ 1/2` turn, i.e. the point is a `2^n`-th root of `-1`.
    pub fn is_root_of_minus_one(self, n: u32) -> bool {
        self.log2den == n + 1
    }

    /// True when `2^n · self ≡ 0`, i.e. the point is a `2^n`-th root of unity.
    pub fn is_root_of_unity(self, n: u32) -> bool {
        self.log2den <= n
    }

    /// The angle in radians, in `[0, 2π)`.
    pub fn radians(self) -> f64 {
        self.turns() * math::TAU
    }

    /// The angle as a fraction of a turn, in `[0, 1)`.
    pub fn turns(self) -> f64 {
        self.fixed() as f64 * math::exp2i(-(MAX_LOG2_DEN as i32))
    }

    /// `cos(2π · self)`. Reduction to the first octant is done on the exact
    /// fraction, so symmetric angles give bit-identical (or negated) values.
    pub fn cos_value(self) -> f64 {
        const HALF: u64 = FULL >> 1;
        const QUARTER: u64 = FULL >> 2;
        const EIGHTH: u64 = FULL >> 3;
        let mut t = self.fixed();
        if t > HALF {
            t = FULL - t;
        }
        let mut sign = 1.0;
        if t > QUARTER {
            sign = -1.0;
            t = HALF - t;
        }
        let scale = math::TAU * math::exp2i(-(MAX_LOG2_DEN as i32));
        if t == QUARTER {
            0.0
        } else if t == EIGHTH {
            sign * math::FRAC_1_SQRT_2
        } else if t > EIGHTH {
            sign * math::sin((QUARTER - t) as f64 * scale)
        } else {
            sign * math::cos(t as f64 * scale)
        }
    }

    /// `sin(2π · self)`.
    pub fn sin_value(self) -> f64 {
        self.add(Self { num: 3, log2den: 2 }).cos_value()
    }

    /// Canonical key under `a ↦ -a`: two angles share a key iff their cosines
    /// are equal.
    pub fn real_part_key(self) -> Self {
        core::cmp::min(self, self.negate())
    }
}

impl Ord for DyadicAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.fixed().cmp(&other.fixed())
    }
}

impl PartialOrd for DyadicAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for DyadicAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.log2den)
    }
}

impl fmt::Display for DyadicAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.log2den)
    }
}

/// Parses `p/2^q`, `p/D` with `D` a power of two, or a bare integer (taken
/// modulo one turn, so always zero).
impl FromStr for DyadicAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        const BAD: Error = Error::InvalidParameter("expected an angle of the form P/2^Q");
        let s = s.trim();
        let Some((p, d)) = s.split_once('/') else {
            s.parse::<u64>().map_err(|_| BAD)?;
            return Ok(Self::ZERO);
        };
        let num: u64 = p.trim().parse().map_err(|_| BAD)?;
        let d = d.trim();
        let log2den = if let Some(q) = d.strip_prefix("2^") {
            q.parse::<u32>().map_err(|_| BAD)?
        } else {
            let den: u64 = d.parse().map_err(|_| BAD)?;
            if !den.is_power_of_two() {
                return Err(BAD);
            }
            den.trailing_zeros()
        };
        Self::new(num, log2den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(num: u64, q: u32) -> DyadicAngle {
        DyadicAngle::new(num, q).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(a(1, 2).add(a(1, 2)), a(1, 1));
        assert_eq!(a(0, 0).add(a(3, 3)), a(3, 3));
        assert_eq!(a(1, 1).add(a(3, 2)), a(1, 2));
    }

    #[test]
    fn negate_examples() {
        assert_eq!(DyadicAngle::ZERO.negate(), DyadicAngle::ZERO);
        assert_eq!(a(1, 2).negate(), a(3, 2));
        assert_eq!(a(3, 3).negate(), a(5, 3));
    }

    #[test]
    fn cos_examples() {
        assert_eq!(DyadicAngle::ZERO.cos_value(), 1.0);
        assert_eq!(a(1, 2).cos_value(), 0.0);
        assert_eq!(a(1, 1).cos_value(), -1.0);
        assert_eq!(a(3, 2).cos_value(), 0.0);
        assert_eq!(a(1, 3).cos_value(), std::f64::consts::FRAC_1_SQRT_2);
        assert!((a(1, 4).cos_value() - (std::f64::consts::PI / 8.0).cos()).abs() < 1e-16);
        assert!((a(1, 2).sin_value() - 1.0).abs() == 0.0);
    }

    #[test]
    fn real_part_key_examples() {
        assert_eq!(a(3, 2).real_part_key(), a(1, 2));
        assert_eq!(a(1, 3).real_part_key(), a(1, 3));
        assert_eq!(a(1, 1).real_part_key(), a(1, 1));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(a(4, 3), a(1, 1));
        assert_eq!(a(8, 3), DyadicAngle::ZERO);
        assert_eq!(a(9, 3), a(1, 3));
        assert_eq!(DyadicAngle::ZERO.log2_denominator(), 0);
        assert!(matches!(DyadicAngle::new(1, 64), Err(Error::ExponentOverflow(64))));
        assert!(a(1, 63).half().is_err());
    }

    #[test]
    fn parse() {
        assert_eq!("3/2^3".parse::<DyadicAngle>().unwrap(), a(3, 3));
        assert_eq!("1/8".parse::<DyadicAngle>().unwrap(), a(1, 3));
        assert_eq!("0".parse::<DyadicAngle>().unwrap(), DyadicAngle::ZERO);
        assert!("1/6".parse::<DyadicAngle>().is_err());
        assert!("x/2^3".parse::<DyadicAngle>().is_err());
    }

    fn angle() -> impl Strategy<Value = DyadicAngle> {
        (any::<u64>(), 0u32..=63).prop_map(|(n, q)| DyadicAngle::new(n, q).unwrap())
    }

    proptest! {
        #[test]
        fn add_is_commutative_and_associative(x in angle(), y in angle(), z in angle()) {
            prop_assert_eq!(x.add(y), y.add(x));
            prop_assert_eq!(x.add(y).add(z), x.add(y.add(z)));
        }

        #[test]
        fn negation_is_an_involution(x in angle()) {
            prop_assert_eq!(x.negate().negate(), x);
            prop_assert_eq!(x.add(x.negate()), DyadicAngle::ZERO);
        }

        #[test]
        fn cos_is_even_exactly(x in angle()) {
            prop_assert_eq!(x.cos_value().to_bits(), x.negate().cos_value().to_bits());
            prop_assert_eq!(x.real_part_key(), x.negate().real_part_key());
        }

        #[test]
        fn cos_matches_std(x in angle()) {
            let expected = (x.turns() * std::f64::consts::TAU).cos();
            prop_assert!((x.cos_value() - expected).abs() < 1e-15);
        }

        #[test]
        fn canonical_after_any_op(x in angle(), y in angle()) {
            let s = x.add(y);
            prop_assert!(s.numerator() % 2 == 1 || s == DyadicAngle::ZERO);
            prop_assert!(s.numerator() < 1u64 << s.log2_denominator() || s == DyadicAngle::ZERO);
        }
    }
}

//! Exact dyadic rationals `p / 2^q`, the numeric values of short games.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A number `numerator / 2^denominator_log2` kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: i64,
    denominator_log2: u32,
}

impl DyadicRational {
    pub const ZERO: Self = Self::integer(0);

    pub const fn integer(n: i64) -> Self {
        Self {
            numerator: n,
            denominator_log2: 0,
        }
    }

    /// Builds `numerator / 2^denominator_log2`, reducing to lowest terms.
    pub fn new(numerator: i64, denominator_log2: u32) -> Self {
        let mut n = numerator;
        let mut q = denominator_log2;
        while q > 0 && n % 2 == 0 {
            n /= 2;
            q -= 1;
        }
        Self {
            numerator: n,
            denominator_log2: q,
        }
    }

    /// Builds `numerator / denominator`; `None` unless the denominator is a
    /// positive power of two.
    pub fn from_fraction(numerator: i64, denominator: i64) -> Option<Self> {
        if denominator <= 0 || (denominator & (denominator - 1)) != 0 {
            return None;
        }
        Some(Self::new(numerator, denominator.trailing_zeros()))
    }

    pub const fn numerator(self) -> i64 {
        self.numerator
    }

    pub const fn denominator_log2(self) -> u32 {
        self.denominator_log2
    }

    pub const fn denominator(self) -> i64 {
        1 << self.denominator_log2
    }

    pub const fn is_integer(self) -> bool {
        self.denominator_log2 == 0
    }

    /// Largest integer `<= self`.
    pub fn floor(self) -> i64 {
        self.numerator.div_euclid(self.denominator())
    }

    /// Smallest integer `>= self`.
    pub fn ceil(self) -> i64 {
        -(-self).floor()
    }

    /// Numerators of `self` and `other` over a common power-of-two denominator.
    fn aligned(self, other: Self) -> (i64, i64, u32) {
        let q = self.denominator_log2.max(other.denominator_log2);
        (
            self.numerator << (q - self.denominator_log2),
            other.numerator << (q - other.denominator_log2),
            q,
        )
    }

    /// The simplest number strictly between `lower` and `upper`; either bound
    /// may be absent. Callers must ensure `lower < upper` when both are given.
    pub fn simplest_between(lower: Option<Self>, upper: Option<Self>) -> Self {
        match (lower, upper) {
            (None, None) => Self::ZERO,
            (Some(l), None) => {
                if l < Self::ZERO {
                    Self::ZERO
                } else {
                    Self::integer(l.floor() + 1)
                }
            }
            (None, Some(u)) => {
                if u > Self::ZERO {
                    Self::ZERO
                } else {
                    Self::integer(u.ceil() - 1)
                }
            }
            (Some(l), Some(u)) => {
                debug_assert!(l < u, "empty interval ({l}, {u})");
                if l < Self::ZERO && u > Self::ZERO {
                    return Self::ZERO;
                }
                // Smallest-magnitude integer strictly inside, if any.
                let lo_int = l.floor() + 1;
                let hi_int = u.ceil() - 1;
                if lo_int <= hi_int {
                    return if lo_int > 0 {
                        Self::integer(lo_int)
                    } else {
                        Self::integer(hi_int)
                    };
                }
                // Otherwise the unique point of smallest denominator.
                let mut q = 1;
                loop {
                    // smallest p with p/2^q > l
                    let candidate = Self::new(l.numerator_over(q) + 1, q);
                    if candidate < u {
                        return candidate;
                    }
                    q += 1;
                }
            }
        }
    }

    /// Numerator of `self` expressed over `2^q` (rounding toward -inf when
    /// `self` has a finer denominator).
    fn numerator_over(self, q: u32) -> i64 {
        if q >= self.denominator_log2 {
            self.numerator << (q - self.denominator_log2)
        } else {
            self.numerator.div_euclid(1 << (self.denominator_log2 - q))
        }
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for DyadicRational {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (a, b, q) = self.aligned(rhs);
        Self::new(a + b, q)
    }
}

impl Sub for DyadicRational {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for DyadicRational {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            numerator: -self.numerator,
            denominator_log2: self.denominator_log2,
        }
    }
}

impl From<i64> for DyadicRational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: i64, q: u32) -> DyadicRational {
        DyadicRational::new(n, q)
    }

    #[test]
    fn reduces_on_construction() {
        assert_eq!(d(4, 2), DyadicRational::integer(1));
        assert_eq!(d(6, 2), d(3, 1));
        assert_eq!(d(6, 2).numerator(), 3);
        assert_eq!(DyadicRational::from_fraction(-14, 4), Some(d(-7, 1)));
        assert_eq!(DyadicRational::from_fraction(1, 3), None);
        assert_eq!(DyadicRational::from_fraction(1, 0), None);
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(d(1, 1) + d(1, 1), DyadicRational::integer(1));
        assert_eq!(d(-3, 1) + d(1, 2), d(-5, 2));
        assert_eq!(-(d(7, 1)), d(-7, 1));
        assert!(d(-7, 1) < d(-3, 1));
        assert!(d(5, 2) > d(1, 0));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(d(-3, 1).floor(), -2);
        assert_eq!(d(-3, 1).ceil(), -1);
        assert_eq!(d(7, 1).floor(), 3);
        assert_eq!(DyadicRational::integer(-2).ceil(), -2);
    }

    #[test]
    fn simplest_between_prefers_integers_then_small_denominators() {
        let s = |l: Option<DyadicRational>, u: Option<DyadicRational>| {
            DyadicRational::simplest_between(l, u)
        };
        let i = DyadicRational::integer;
        assert_eq!(s(None, None), i(0));
        assert_eq!(s(Some(i(0)), None), i(1));
        assert_eq!(s(Some(d(5, 1)), None), i(3));
        assert_eq!(s(Some(i(-4)), None), i(0));
        assert_eq!(s(None, Some(i(-2))), i(-3));
        assert_eq!(s(Some(i(0)), Some(i(1))), d(1, 1));
        assert_eq!(s(Some(d(1, 1)), Some(i(1))), d(3, 2));
        assert_eq!(s(Some(i(-1)), Some(d(-1, 1))), d(-3, 2));
        assert_eq!(s(Some(i(1)), Some(i(5))), i(2));
        assert_eq!(s(Some(i(-5)), Some(i(-1))), i(-2));
        assert_eq!(s(Some(d(-1, 1)), Some(i(3))), i(0));
        assert_eq!(s(Some(d(1, 3)), Some(d(3, 3))), d(1, 2));
        assert_eq!(s(Some(d(5, 3)), Some(d(7, 3))), d(3, 2));
    }

    #[test]
    fn display_matches_fraction_notation() {
        assert_eq!(d(-7, 1).to_string(), "-7/2");
        assert_eq!(d(3, 2).to_string(), "3/4");
        assert_eq!(DyadicRational::integer(-3).to_string(), "-3");
    }
}

//! Non-negative dyadic rationals `n / 2^e`, kept in lowest terms.
//!
//! Every measure in depth-bounded Cantor space is dyadic, as are the
//! porosity density bounds and the small-sets tail products.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigUint,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigUint>, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator: numerator.into(),
            exponent,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::new(0u32, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1u32, 0)
    }

    /// `2^-exponent`.
    pub fn half_pow(exponent: u32) -> Self {
        Dyadic::new(1u32, exponent)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// Denominator is `2^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn denominator(&self) -> BigUint {
        BigUint::one() << self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn pow(&self, n: u32) -> Self {
        Dyadic::new(
            num_traits::pow(self.numerator.clone(), n as usize),
            self.exponent * n,
        )
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Dyadic) -> Option<Dyadic> {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        (a >= b).then(|| Dyadic::new(a - b, e))
    }

    pub fn to_f64(&self) -> f64 {
        let mut value = 0.0;
        for (i, digit) in self.numerator.to_u64_digits().iter().enumerate() {
            value += *digit as f64 * libm_pow2(64 * i as i32);
        }
        value * libm_pow2(-(self.exponent as i32))
    }

    /// `"n/d"` with the denominator written out.
    pub fn to_fraction_string(&self) -> String {
        alloc::format!("{}/{}", self.numerator, self.denominator())
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let shift = self
            .numerator
            .trailing_zeros()
            .unwrap_or(0)
            .min(u64::from(self.exponent)) as u32;
        self.numerator >>= shift;
        self.exponent -= shift;
    }
}

fn libm_pow2(e: i32) -> f64 {
    let mut v = 1.0;
    if e >= 0 {
        for _ in 0..e {
            v *= 2.0;
        }
    } else {
        for _ in 0..-e {
            v *= 0.5;
        }
    }
    v
}

impl Mul for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_to_lowest_terms() {
        assert_eq!(Dyadic::new(8u32, 5), Dyadic::new(1u32, 2));
        assert_eq!(Dyadic::new(6u32, 1), Dyadic::new(3u32, 0));
        assert_eq!(Dyadic::new(0u32, 9), Dyadic::zero());
        assert_eq!(Dyadic::new(3u32, 3).exponent(), 3);
    }

    #[test]
    fn arithmetic() {
        let three_quarters = Dyadic::new(3u32, 2);
        assert_eq!(three_quarters.pow(2), Dyadic::new(9u32, 4));
        assert_eq!(
            Dyadic::one().checked_sub(&three_quarters),
            Some(Dyadic::half_pow(2))
        );
        assert_eq!(three_quarters.checked_sub(&Dyadic::one()), None);
        assert!(Dyadic::half_pow(3) < Dyadic::new(3u32, 4));
        assert_eq!(&Dyadic::half_pow(1) * &Dyadic::new(3u32, 1), three_quarters);
        assert_eq!(three_quarters.to_fraction_string(), "3/4");
        assert_eq!(three_quarters.to_f64(), 0.75);
    }
}

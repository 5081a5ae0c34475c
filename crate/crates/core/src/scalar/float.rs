use std::fmt;

use super::{forward_binops, tick, Field, Rational};

/// binary64 scalar for the floating backend.
///
/// Arithmetic flushes to zero: a result below the normal range becomes a
/// signed zero. Entries of a large inverse decay geometrically, and without
/// the flush they spend long stretches in gradual underflow, where each
/// operation costs tens of times more. A product or quotient that is sure to
/// land below the normal range is never formed at all.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Float(pub f64);

/// Biased binary64 exponent: 0 for zero and subnormals, 0x7ff for inf/NaN.
#[inline]
fn biased_exp(x: f64) -> i32 {
    ((x.to_bits() >> 52) & 0x7ff) as i32
}

#[inline]
fn flush(x: f64) -> f64 {
    if biased_exp(x) == 0 {
        0.0f64.copysign(x)
    } else {
        x
    }
}

/// Zero with the sign `a·b` or `a/b` would have.
#[inline]
fn signed_zero(a: f64, b: f64) -> f64 {
    if a.is_sign_negative() != b.is_sign_negative() {
        -0.0
    } else {
        0.0
    }
}

impl Float {
    #[inline]
    fn add_ref(&self, rhs: &Self) -> Self {
        tick();
        Float(flush(self.0 + rhs.0))
    }

    #[inline]
    fn sub_ref(&self, rhs: &Self) -> Self {
        tick();
        Float(flush(self.0 - rhs.0))
    }

    #[inline]
    fn mul_ref(&self, rhs: &Self) -> Self {
        tick();
        let (a, b) = (self.0, rhs.0);
        let (ea, eb) = (biased_exp(a), biased_exp(b));
        // For normal operands |a·b| < 2^(ea+eb-2044), which is below 2^-1022
        // once ea+eb < 1023. Inf and NaN always pass the first test.
        if ea + eb >= 1023 || ea == 0 || eb == 0 {
            Float(flush(a * b))
        } else {
            Float(signed_zero(a, b))
        }
    }

    #[inline]
    fn div_ref(&self, rhs: &Self) -> Self {
        tick();
        let (a, b) = (self.0, rhs.0);
        let (ea, eb) = (biased_exp(a), biased_exp(b));
        // For normal operands |a/b| < 2^(ea-eb+1), which is below 2^-1022
        // once ea-eb < -1022.
        if ea - eb >= -1022 || ea == 0 || eb == 0 || eb == 0x7ff {
            Float(flush(a / b))
        } else {
            Float(signed_zero(a, b))
        }
    }
}

forward_binops!(Float,
    Add::add => add_ref,
    Sub::sub => sub_ref,
    Mul::mul => mul_ref,
    Div::div => div_ref,
);

impl std::ops::Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        tick();
        Float(-self.0)
    }
}

impl Field for Float {
    fn zero() -> Self {
        Float(0.0)
    }

    fn one() -> Self {
        Float(1.0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }

    fn from_rational(r: &Rational) -> Self {
        Float(flush(r.to_f64()))
    }

    fn magnitude(&self) -> Option<f64> {
        Some(self.0.abs())
    }
}

impl From<f64> for Float {
    fn from(v: f64) -> Self {
        Float(v)
    }
}

/// Shortest representation that round-trips.
impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn underflow_flushes_to_signed_zero() {
        let tiny = Float(1e-160);
        assert_eq!((tiny * tiny).0.to_bits(), 0.0f64.to_bits());
        assert_eq!((tiny * -tiny).0.to_bits(), (-0.0f64).to_bits());
        assert_eq!((Float(1e-300) / Float(1e10)).0, 0.0);
        assert_eq!((Float(f64::MIN_POSITIVE) - Float(f64::MIN_POSITIVE * 0.5)).0, 0.0);
    }

    #[test]
    fn normal_range_is_untouched() {
        let m = Float(f64::MIN_POSITIVE);
        assert_eq!((m * Float(1.0)).0, f64::MIN_POSITIVE);
        assert_eq!((Float(2.0f64.powi(-600)) * Float(2.0f64.powi(-422))).0, f64::MIN_POSITIVE);
        assert_eq!((Float(3.0) / Float(7.0)).0, 3.0 / 7.0);
        assert!((Float(1.0) / Float(0.0)).0.is_infinite());
        assert!((Float(f64::INFINITY) * Float(1e-300)).0.is_infinite());
    }
}

//! Scalar fields the solvers are generic over.
//!
//! Three carriers implement [`Field`]: exact [`Rational`]s, rational functions
//! [`RatFun`] in a single indeterminate `t`, and binary64 [`Float`]s. Every
//! arithmetic operation on them bumps a per-thread counter, read back with
//! [`field_ops`], which the complexity checks rely on.

mod float;
mod poly;
mod ratfun;
mod rational;

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use float::Float;
pub use poly::{poly_gcd, Poly};
pub use ratfun::{ratfun_normalize, RatFun};
pub use rational::Rational;

thread_local! {
    static FIELD_OPS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn tick() {
    FIELD_OPS.with(|c| c.set(c.get() + 1));
}

/// Field operations performed on the current thread since the last reset.
pub fn field_ops() -> u64 {
    FIELD_OPS.with(Cell::get)
}

pub fn reset_field_ops() {
    FIELD_OPS.with(|c| c.set(0));
}

/// Uniform field contract shared by the exact, symbolic and floating backends.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact zero test. The floating backend applies its tolerance elsewhere.
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;

    /// The symbolic indeterminate `t`, if this field carries one.
    fn indeterminate() -> Option<Self> {
        None
    }

    /// Absolute value for fields with a magnitude (floating point only).
    fn magnitude(&self) -> Option<f64> {
        None
    }

    /// Largest polynomial degree appearing in the value; zero for constants.
    fn degree(&self) -> usize {
        0
    }
}

/// `src - Σ a·b`, skipping nothing; used by every recurrence in the solvers.
pub(crate) fn sub_products<'a, F: Field + 'a>(
    src: F,
    terms: impl IntoIterator<Item = (&'a F, &'a F)>,
) -> F {
    terms
        .into_iter()
        .fold(src, |acc, (a, b)| acc - a.clone() * b)
}

macro_rules! forward_binops {
    ($ty:ty, $( $trait:ident :: $method:ident => $inner:ident ),* $(,)?) => {
        $(
            impl std::ops::$trait<$ty> for $ty {
                type Output = $ty;
                #[inline]
                fn $method(self, rhs: $ty) -> $ty {
                    self.$inner(&rhs)
                }
            }
            impl<'a> std::ops::$trait<&'a $ty> for $ty {
                type Output = $ty;
                #[inline]
                fn $method(self, rhs: &'a $ty) -> $ty {
                    self.$inner(rhs)
                }
            }
            impl<'a, 'b> std::ops::$trait<&'b $ty> for &'a $ty {
                type Output = $ty;
                #[inline]
                fn $method(self, rhs: &'b $ty) -> $ty {
                    self.$inner(rhs)
                }
            }
        )*
    };
}
pub(crate) use forward_binops;

//! Scalar abstraction for the exact kernel.
//!
//! Every algorithm in this crate needs exact zero tests: ranks, kernels and
//! the vanishing of tensors are answers, not approximations. [`Field`] is
//! therefore implemented only for exact rational types, never for floats.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field of characteristic zero.
pub trait Field:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Num
    + Neg<Output = Self>
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Embeds a machine integer.
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every exact field contains the integers")
    }

    /// Builds `num / den`.
    ///
    /// # Panics
    /// Panics when `den == 0`.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Field for BigRational {}

/// Fixed-width rationals. Elimination can overflow on large inputs, so use
/// these only for small, hand-sized problems.
impl Field for Ratio<i64> {}

impl Field for Ratio<i128> {}

/// Numerator and denominator of an arbitrary-precision rational in lowest terms.
pub fn parts(value: &BigRational) -> (&BigInt, &BigInt) {
    (value.numer(), value.denom())
}

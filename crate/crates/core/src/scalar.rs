//! Scalar traits shared by the generic polynomial and Chebyshev code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::{QuadElem, Rational};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl Field for Rational {}
impl Field for QuadElem {}
impl Field for f64 {}
impl Field for f32 {}

/// Image of an integer in a ring. Integer polynomials are mapped into
/// other coefficient rings through this.
pub trait FromBigInt {
    fn from_bigint(n: &BigInt) -> Self;
}

impl FromBigInt for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl FromBigInt for Rational {
    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

impl FromBigInt for QuadElem {
    fn from_bigint(n: &BigInt) -> Self {
        QuadElem::from(Rational::from_integer(n.clone()))
    }
}

impl FromBigInt for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromBigInt for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

/// Lossy conversion to `f64`, used for float hints and plots.
pub trait ToF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64 for Rational {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl ToF64 for BigInt {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl ToF64 for f64 {
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

//! Coefficient rings that constructible functions and ring homomorphisms can
//! take values in.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with an embedding of the integers.
///
/// Implemented for exact integers and rationals, for `f64`, and for
/// [`RingElement`](crate::euler_ring::RingElement).
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn from_integer(n: &BigInt) -> Self;

    fn scale(&self, n: &BigInt) -> Self {
        self.times(&Self::from_integer(n))
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn from_integer(n: &BigInt) -> Self {
        num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::NAN)
    }
}

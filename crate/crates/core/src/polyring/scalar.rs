use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient ring used by the polynomial types.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + fmt::Display
    + fmt::Debug
    + Send
    + Sync
{
    fn from_i128(v: i128) -> Self;
}

impl Scalar for i128 {
    fn from_i128(v: i128) -> Self {
        v
    }
}

impl Scalar for BigInt {
    fn from_i128(v: i128) -> Self {
        BigInt::from(v)
    }
}

impl Scalar for BigRational {
    fn from_i128(v: i128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_to_rational(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

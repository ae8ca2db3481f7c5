use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact coefficient ring for [`MultiPoly`](super::MultiPoly) and
/// [`PowerSeries`](super::PowerSeries).
///
/// Division is partial: [`Scalar::unit_inverse`] only succeeds on units and
/// [`Scalar::div_exact`] only when the quotient stays in the ring.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(value: i64) -> Self;

    /// Multiplicative inverse, if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// `self / divisor` when the quotient lies in the ring.
    fn div_exact(&self, divisor: i64) -> Option<Self>;

    fn to_rational(&self) -> BigRational;

    fn from_rational(value: &BigRational) -> Option<Self>;

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self);

    fn add_assign_ref(&mut self, other: &Self);
}

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn div_exact(&self, divisor: i64) -> Option<Self> {
        (divisor != 0).then(|| self / BigRational::from_integer(BigInt::from(divisor)))
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_rational(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let sum = self.numer() + a.numer() * b.numer();
            *self = BigRational::from_integer(sum);
        } else {
            *self += a * b;
        }
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if self.is_integer() && other.is_integer() {
            *self = BigRational::from_integer(self.numer() + other.numer());
        } else {
            *self += other;
        }
    }
}

impl Scalar for BigInt {
    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }

    fn div_exact(&self, divisor: i64) -> Option<Self> {
        if divisor == 0 {
            return None;
        }
        let (q, r) = self.div_rem(&BigInt::from(divisor));
        r.is_zero().then_some(q)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn from_rational(value: &BigRational) -> Option<Self> {
        value.is_integer().then(|| value.to_integer())
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Scalar for i128 {
    fn from_i64(value: i64) -> Self {
        value as i128
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.abs() == 1).then_some(*self)
    }

    fn div_exact(&self, divisor: i64) -> Option<Self> {
        let d = divisor as i128;
        (d != 0 && self % d == 0).then(|| self / d)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }

    fn from_rational(value: &BigRational) -> Option<Self> {
        if value.is_integer() {
            value.to_integer().to_i128()
        } else {
            None
        }
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        let product = a.checked_mul(*b).expect("i128 coefficient overflow");
        *self = self
            .checked_add(product)
            .expect("i128 coefficient overflow");
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.checked_add(*other).expect("i128 coefficient overflow");
    }
}

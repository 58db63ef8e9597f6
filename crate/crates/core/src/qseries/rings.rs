use super::{CoeffRing, QAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The integers, arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn add_assign(&self, acc: &mut BigInt, a: &BigInt) {
        *acc += a;
    }
    fn sub_assign(&self, acc: &mut BigInt, a: &BigInt) {
        *acc -= a;
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
}

/// The rationals, kept in lowest terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn add_assign(&self, acc: &mut BigRational, a: &BigRational) {
        *acc += a;
    }
    fn sub_assign(&self, acc: &mut BigRational, a: &BigRational) {
        *acc -= a;
    }
}

impl QAlgebra for Rationals {
    fn div_int(&self, a: &BigRational, n: i64) -> BigRational {
        a / BigRational::from_integer(n.into())
    }
}

/// The binary field, elements as `bool`. Used as a slow generic reference
/// for [`BitSeries`](super::BitSeries).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GF2;

impl CoeffRing for GF2 {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn sub(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn neg(&self, a: &bool) -> bool {
        *a
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        a & b
    }
    fn from_i64(&self, n: i64) -> bool {
        n.rem_euclid(2) == 1
    }
    fn unit_inverse(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }
}

//! Exact arithmetic in the imaginary quadratic field `K = Q(√−D)`.

use super::{CoeffRing, QAlgebra};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("division by zero in Q(√−{0})")]
    DivisionByZero(u64),
    #[error("element {0} is not integral in Q(√−{1})")]
    NotIntegral(String, u64),
}

/// `x + y·√−D`; the discriminant lives in the [`QuadField`] context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadElem {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        QuadElem { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QuadElem::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// `(xn/xd) + (yn/yd)·√−D`
    pub fn from_fracs(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        QuadElem::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(yn.into(), yd.into()),
        )
    }

    pub fn rational(x: BigRational) -> Self {
        QuadElem { x, y: BigRational::zero() }
    }

    /// `y·√−D`
    pub fn pure(y: BigRational) -> Self {
        QuadElem { x: BigRational::zero(), y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem { x: self.x.clone(), y: -&self.y }
    }

    /// Membership in `O_K = Z[(1+√−D)/2]` (valid for `D ≡ 3 mod 4`):
    /// `2y ∈ Z` and `x − y ∈ Z`.
    pub fn is_integral(&self) -> bool {
        let two = BigRational::from_integer(2.into());
        (&self.y * &two).is_integer() && (&self.x - &self.y).is_integer()
    }

    /// Writes the element as `u + v·ω` with `ω = (1+√−D)/2`, returning `(u, v)`.
    pub fn omega_coords(&self) -> Option<(BigInt, BigInt)> {
        if !self.is_integral() {
            return None;
        }
        let v = (&self.y * BigRational::from_integer(2.into())).to_integer();
        let u = (&self.x - &self.y).to_integer();
        Some((u, v))
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}·√−D", self.y),
            (false, false) => write!(f, "{} + {}·√−D", self.x, self.y),
        }
    }
}

/// The field `Q(√−D)` for a fixed positive square-free `D ≡ 3 mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadField {
    d: u64,
}

impl QuadField {
    pub fn new(d: u64) -> Self {
        QuadField { d }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }

    /// `√−D`
    pub fn sqrt_neg_d(&self) -> QuadElem {
        QuadElem::from_ints(0, 1)
    }

    /// `(1 + √−D)/2`, generator of the ring of integers.
    pub fn omega(&self) -> QuadElem {
        QuadElem::from_fracs(1, 2, 1, 2)
    }

    pub fn norm(&self, a: &QuadElem) -> BigRational {
        &a.x * &a.x + &a.y * &a.y * self.d_rat()
    }

    pub fn div(&self, a: &QuadElem, b: &QuadElem) -> Result<QuadElem, QuadError> {
        let n = self.norm(b);
        if n.is_zero() {
            return Err(QuadError::DivisionByZero(self.d));
        }
        let p = self.mul(a, &b.conj());
        Ok(QuadElem { x: p.x / &n, y: p.y / n })
    }

    /// Residue map `O_K → F_2` at the prime `(2, ω)`: `u + vω ↦ u mod 2`.
    /// Under this map `√−D = 2ω − 1 ↦ 1`.
    pub fn mod2(&self, a: &QuadElem) -> Result<bool, QuadError> {
        let (u, _) = a
            .omega_coords()
            .ok_or_else(|| QuadError::NotIntegral(a.to_string(), self.d))?;
        Ok(u.is_odd())
    }
}

impl CoeffRing for QuadField {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        QuadElem::from_ints(0, 0)
    }
    fn one(&self) -> QuadElem {
        QuadElem::from_ints(1, 0)
    }
    fn is_zero(&self, a: &QuadElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem { x: &a.x + &b.x, y: &a.y + &b.y }
    }
    fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem { x: &a.x - &b.x, y: &a.y - &b.y }
    }
    fn neg(&self, a: &QuadElem) -> QuadElem {
        QuadElem { x: -&a.x, y: -&a.y }
    }
    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        // (x1 + y1 s)(x2 + y2 s) with s² = −D
        let x = if a.y.is_zero() || b.y.is_zero() {
            &a.x * &b.x
        } else {
            &a.x * &b.x - &a.y * &b.y * self.d_rat()
        };
        let y = match (a.x.is_zero(), b.x.is_zero()) {
            (true, true) => BigRational::zero(),
            (true, false) => &a.y * &b.x,
            (false, true) => &a.x * &b.y,
            (false, false) => &a.x * &b.y + &a.y * &b.x,
        };
        QuadElem { x, y }
    }
    fn from_i64(&self, n: i64) -> QuadElem {
        QuadElem::from_ints(n, 0)
    }
    fn unit_inverse(&self, a: &QuadElem) -> Option<QuadElem> {
        self.div(&self.one(), a).ok()
    }
    fn add_assign(&self, acc: &mut QuadElem, a: &QuadElem) {
        acc.x += &a.x;
        acc.y += &a.y;
    }
    fn sub_assign(&self, acc: &mut QuadElem, a: &QuadElem) {
        acc.x -= &a.x;
        acc.y -= &a.y;
    }
    fn is_one(&self, a: &QuadElem) -> bool {
        a.x.is_one() && a.y.is_zero()
    }
}

impl QAlgebra for QuadField {
    fn div_int(&self, a: &QuadElem, n: i64) -> QuadElem {
        let n = BigRational::from_integer(n.into());
        QuadElem { x: &a.x / &n, y: &a.y / n }
    }
}

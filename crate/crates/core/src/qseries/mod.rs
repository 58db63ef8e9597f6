//! Truncated formal power series over exact coefficient rings.
//!
//! A [`Series`] stores the coefficients of `q^0 .. q^{N-1}`; `N` is its
//! truncation order. Arithmetic is written against a ring *object*
//! implementing [`CoeffRing`], so that coefficient domains carrying runtime
//! context (the discriminant of `Q(√−D)`, the modulus of a cyclotomic ring)
//! share one implementation with the plain integers.
//!
//! No operation silently extends precision: binary operations truncate to
//! the smaller order, and the strict variants refuse mismatched orders.

mod bits;
mod cyclo;
mod quad;
mod rings;

pub use bits::BitSeries;
pub use cyclo::{cyclotomic_polynomial, gauss_sum_embed, CycloElem, CycloRing};
pub use quad::{QuadElem, QuadError, QuadField};
pub use rings::{Integers, Rationals, GF2};

use num_bigint::BigInt;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not a unit")]
    NonUnitConstant,
    #[error("constant term must be zero")]
    NonzeroConstant,
    #[error("constant term must be one")]
    ConstantNotOne,
    #[error("empty series (order 0)")]
    Empty,
    #[error("Lambert term index must be positive")]
    ZeroIndex,
    #[error("substitution exponent must be positive")]
    BadExponent,
}

/// A commutative ring with identity, given as a context object.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Multiplicative inverse, if `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem) {
        *acc = self.add(acc, a);
    }

    fn sub_assign(&self, acc: &mut Self::Elem, a: &Self::Elem) {
        *acc = self.sub(acc, a);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A ring containing the rationals, so that division by nonzero integers
/// is defined. Needed by `exp` and `log`.
pub trait QAlgebra: CoeffRing {
    fn div_int(&self, a: &Self::Elem, n: i64) -> Self::Elem;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T> Series<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        Series { coeffs }
    }

    /// Truncation order: coefficients are known for `q^0 .. q^{order-1}`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Series<U> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<T: Clone> Series<T> {
    pub fn truncate(&self, order: usize) -> Self {
        Series { coeffs: self.coeffs[..order.min(self.order())].to_vec() }
    }
}

impl<T> std::ops::Index<usize> for Series<T> {
    type Output = T;
    fn index(&self, n: usize) -> &T {
        &self.coeffs[n]
    }
}

pub fn zero<R: CoeffRing>(ring: &R, order: usize) -> Series<R::Elem> {
    Series { coeffs: vec![ring.zero(); order] }
}

pub fn one<R: CoeffRing>(ring: &R, order: usize) -> Series<R::Elem> {
    monomial(ring, 0, ring.one(), order)
}

/// `c·q^n` at the given order (zero if `n ≥ order`).
pub fn monomial<R: CoeffRing>(ring: &R, n: usize, c: R::Elem, order: usize) -> Series<R::Elem> {
    let mut s = zero(ring, order);
    if n < order {
        s.coeffs[n] = c;
    }
    s
}

/// Series with integer coefficients embedded in `ring`.
pub fn from_ints<R: CoeffRing>(ring: &R, ints: &[i64]) -> Series<R::Elem> {
    Series { coeffs: ints.iter().map(|&n| ring.from_i64(n)).collect() }
}

pub fn add<R: CoeffRing>(ring: &R, f: &Series<R::Elem>, g: &Series<R::Elem>) -> Series<R::Elem> {
    let n = f.order().min(g.order());
    Series { coeffs: (0..n).map(|i| ring.add(&f[i], &g[i])).collect() }
}

pub fn sub<R: CoeffRing>(ring: &R, f: &Series<R::Elem>, g: &Series<R::Elem>) -> Series<R::Elem> {
    let n = f.order().min(g.order());
    Series { coeffs: (0..n).map(|i| ring.sub(&f[i], &g[i])).collect() }
}

pub fn neg<R: CoeffRing>(ring: &R, f: &Series<R::Elem>) -> Series<R::Elem> {
    f.map(|c| ring.neg(c))
}

pub fn scale<R: CoeffRing>(ring: &R, c: &R::Elem, f: &Series<R::Elem>) -> Series<R::Elem> {
    f.map(|x| ring.mul(c, x))
}

/// Cauchy product, truncated to the smaller of the two orders.
pub fn mul<R: CoeffRing>(ring: &R, f: &Series<R::Elem>, g: &Series<R::Elem>) -> Series<R::Elem> {
    let n = f.order().min(g.order());
    let mut out = vec![ring.zero(); n];
    for (i, fi) in f.coeffs[..n].iter().enumerate() {
        if ring.is_zero(fi) {
            continue;
        }
        for (j, gj) in g.coeffs[..n - i].iter().enumerate() {
            if ring.is_zero(gj) {
                continue;
            }
            let t = ring.mul(fi, gj);
            ring.add_assign(&mut out[i + j], &t);
        }
    }
    Series { coeffs: out }
}

/// Cauchy product that refuses operands of different order.
pub fn try_mul<R: CoeffRing>(
    ring: &R,
    f: &Series<R::Elem>,
    g: &Series<R::Elem>,
) -> Result<Series<R::Elem>, SeriesError> {
    if f.order() != g.order() {
        return Err(SeriesError::OrderMismatch { left: f.order(), right: g.order() });
    }
    Ok(mul(ring, f, g))
}

/// Multiplicative inverse; the constant term must be a unit of the ring.
pub fn inv<R: CoeffRing>(ring: &R, f: &Series<R::Elem>) -> Result<Series<R::Elem>, SeriesError> {
    let n = f.order();
    if n == 0 {
        return Err(SeriesError::Empty);
    }
    let c0 = ring.unit_inverse(&f[0]).ok_or(SeriesError::NonUnitConstant)?;
    let c0_is_one = ring.is_one(&c0);
    let mut g: Vec<R::Elem> = Vec::with_capacity(n);
    g.push(c0.clone());
    // f·g = 1  ⇒  g_k = −c0 · Σ_{j=1}^{k} f_j g_{k−j}
    let support: Vec<usize> = (1..n).filter(|&j| !ring.is_zero(&f[j])).collect();
    for k in 1..n {
        let mut acc = ring.zero();
        for &j in support.iter().take_while(|&&j| j <= k) {
            if ring.is_zero(&g[k - j]) {
                continue;
            }
            let t = ring.mul(&f[j], &g[k - j]);
            ring.add_assign(&mut acc, &t);
        }
        let gk = if c0_is_one { ring.neg(&acc) } else { ring.neg(&ring.mul(&c0, &acc)) };
        g.push(gk);
    }
    Ok(Series { coeffs: g })
}

/// `q·f'` (the Euler operator `q d/dq`).
pub fn theta<R: CoeffRing>(ring: &R, f: &Series<R::Elem>) -> Series<R::Elem> {
    Series {
        coeffs: f
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| ring.mul(&ring.from_i64(n as i64), c))
            .collect(),
    }
}

/// Logarithmic derivative normalized as `q·f'/f`.
pub fn qdlog<R: CoeffRing>(ring: &R, f: &Series<R::Elem>) -> Result<Series<R::Elem>, SeriesError> {
    let finv = inv(ring, f)?;
    Ok(mul(ring, &theta(ring, f), &finv))
}

/// Power-series exponential of a series with zero constant term.
pub fn exp<R: QAlgebra>(ring: &R, f: &Series<R::Elem>) -> Result<Series<R::Elem>, SeriesError> {
    let n = f.order();
    if n == 0 {
        return Err(SeriesError::Empty);
    }
    if !ring.is_zero(&f[0]) {
        return Err(SeriesError::NonzeroConstant);
    }
    // g = exp f satisfies q g' = (q f') g:  k·g_k = Σ_{j=1}^{k} (j f_j) g_{k−j}.
    let df = theta(ring, f);
    let support: Vec<usize> = (1..n).filter(|&j| !ring.is_zero(&df[j])).collect();
    let mut g: Vec<R::Elem> = Vec::with_capacity(n);
    g.push(ring.one());
    for k in 1..n {
        let mut acc = ring.zero();
        for &j in support.iter().take_while(|&&j| j <= k) {
            if ring.is_zero(&g[k - j]) {
                continue;
            }
            let t = ring.mul(&df[j], &g[k - j]);
            ring.add_assign(&mut acc, &t);
        }
        g.push(ring.div_int(&acc, k as i64));
    }
    Ok(Series { coeffs: g })
}

/// Power-series logarithm of a series with constant term one.
pub fn log<R: QAlgebra>(ring: &R, f: &Series<R::Elem>) -> Result<Series<R::Elem>, SeriesError> {
    let n = f.order();
    if n == 0 {
        return Err(SeriesError::Empty);
    }
    if !ring.is_one(&f[0]) {
        return Err(SeriesError::ConstantNotOne);
    }
    // With h = log f and d = q h' = θh:  θf = d·f, so
    //   d_k = k f_k − Σ_{j=1}^{k−1} d_j f_{k−j}.
    let support: Vec<usize> = (1..n).filter(|&j| !ring.is_zero(&f[j])).collect();
    let mut d: Vec<R::Elem> = Vec::with_capacity(n);
    d.push(ring.zero());
    for k in 1..n {
        let mut acc = ring.mul(&ring.from_i64(k as i64), &f[k]);
        for &i in support.iter().take_while(|&&i| i < k) {
            // term d_{k−i} f_i
            if ring.is_zero(&d[k - i]) {
                continue;
            }
            let t = ring.mul(&d[k - i], &f[i]);
            ring.sub_assign(&mut acc, &t);
        }
        d.push(acc);
    }
    let mut h = Vec::with_capacity(n);
    h.push(ring.zero());
    for (k, dk) in d.iter().enumerate().skip(1) {
        h.push(ring.div_int(dk, k as i64));
    }
    Ok(Series { coeffs: h })
}

/// Replaces `q` by `sign·q^k`, keeping the original truncation order.
pub fn substitute<R: CoeffRing>(
    ring: &R,
    f: &Series<R::Elem>,
    k: usize,
    sign: i8,
) -> Result<Series<R::Elem>, SeriesError> {
    if k == 0 {
        return Err(SeriesError::BadExponent);
    }
    let n = f.order();
    let mut out = vec![ring.zero(); n];
    for (i, c) in f.coeffs.iter().enumerate() {
        let e = i * k;
        if e >= n {
            break;
        }
        out[e] = if sign < 0 && i % 2 == 1 { ring.neg(c) } else { c.clone() };
    }
    Ok(Series { coeffs: out })
}

/// Multiplies `q^shift` in place, dropping coefficients past the order.
pub fn shift_up<R: CoeffRing>(ring: &R, f: &Series<R::Elem>, shift: usize) -> Series<R::Elem> {
    let n = f.order();
    let mut out = vec![ring.zero(); n];
    for i in shift..n {
        out[i] = f[i - shift].clone();
    }
    Series { coeffs: out }
}

/// `f · (1 + c·q^k)`, a sparse product in O(order).
pub fn mul_binomial<R: CoeffRing>(
    ring: &R,
    f: &Series<R::Elem>,
    c: &R::Elem,
    k: usize,
) -> Series<R::Elem> {
    let mut out = f.coeffs.clone();
    for i in (k..out.len()).rev() {
        if !ring.is_zero(&f[i - k]) {
            let t = ring.mul(c, &f[i - k]);
            ring.add_assign(&mut out[i], &t);
        }
    }
    Series { coeffs: out }
}

/// `f · (1 + c·q^k)^{-1}` for `k ≥ 1`, by the recurrence `g_i = f_i − c·g_{i−k}`.
pub fn div_binomial<R: CoeffRing>(
    ring: &R,
    f: &Series<R::Elem>,
    c: &R::Elem,
    k: usize,
) -> Series<R::Elem> {
    assert!(k >= 1);
    let mut out = f.coeffs.clone();
    for i in k..out.len() {
        if !ring.is_zero(&out[i - k]) {
            let t = ring.mul(c, &out[i - k]);
            ring.sub_assign(&mut out[i], &t);
        }
    }
    Series { coeffs: out }
}

/// `Σ_{j≥1} q^{mj}` truncated to `order`.
pub fn lambert_term(m: usize, order: usize) -> Result<Series<BigInt>, SeriesError> {
    if m == 0 {
        return Err(SeriesError::ZeroIndex);
    }
    let mut c = vec![BigInt::from(0); order];
    for e in (m..order).step_by(m) {
        c[e] = BigInt::from(1);
    }
    Ok(Series { coeffs: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn z(ints: &[i64]) -> Series<BigInt> {
        from_ints(&Integers, ints)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Euler's pentagonal expansion of ∏(1 − q^n), written out independently.
    fn pentagonal(order: usize) -> Series<BigInt> {
        let mut c = vec![0i64; order];
        c[0] = 1;
        for k in 1i64.. {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 >= order {
                break;
            }
            let s = if k % 2 == 0 { 1 } else { -1 };
            c[g1] += s;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 < order {
                c[g2] += s;
            }
        }
        z(&c)
    }

    #[test]
    fn difference_of_squares() {
        let p = mul(&Integers, &z(&[1, 1, 0]), &z(&[1, -1, 0]));
        assert_eq!(p, z(&[1, 0, -1]));
        let f = z(&[3, -1, 4, 1, -5]);
        assert_eq!(mul(&Integers, &f, &one(&Integers, 5)), f);
    }

    #[test]
    fn strict_mode_rejects_mismatch() {
        let err = try_mul(&Integers, &z(&[1, 2]), &z(&[1, 2, 3])).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 2, right: 3 });
        assert_eq!(mul(&Integers, &z(&[1, 2]), &z(&[1, 2, 3])).order(), 2);
    }

    #[test]
    fn partition_series_times_euler_product_is_one() {
        let n = 100;
        let mut euler = one(&Integers, n);
        for k in 1..n {
            euler = mul_binomial(&Integers, &euler, &BigInt::from(-1), k);
        }
        assert_eq!(euler, pentagonal(n));
        let parts = inv(&Integers, &euler).unwrap();
        assert_eq!(mul(&Integers, &parts, &euler), one(&Integers, n));
        assert_eq!(parts[4], BigInt::from(5));
        assert_eq!(parts[49], BigInt::from(173525));
    }

    #[test]
    fn inverse_of_geometric_and_involution() {
        let g = inv(&Integers, &z(&[1, -1, 0, 0, 0])).unwrap();
        assert_eq!(g, z(&[1, 1, 1, 1, 1]));
        let f = z(&[-1, 2, 0, 7, -3, 1]);
        assert_eq!(inv(&Integers, &inv(&Integers, &f).unwrap()).unwrap(), f);
        assert_eq!(inv(&Integers, &z(&[2, 1])), Err(SeriesError::NonUnitConstant));
    }

    #[test]
    fn exp_and_log_basics() {
        let q = Series::from_coeffs(vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
        let e = exp(&Rationals, &q).unwrap();
        assert_eq!(e.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 6)]);
        assert_eq!(exp(&Rationals, &zero(&Rationals, 4)).unwrap(), one(&Rationals, 4));

        let l = log(&Rationals, &from_ints(&Rationals, &[1, -1, 0, 0])).unwrap();
        assert_eq!(l.coeffs(), &[rat(0, 1), rat(-1, 1), rat(-1, 2), rat(-1, 3)]);
        assert_eq!(log(&Rationals, &one(&Rationals, 4)).unwrap(), zero(&Rationals, 4));

        let onep = from_ints(&Rationals, &[1, 1, 0, 0, 0, 0]);
        assert_eq!(exp(&Rationals, &log(&Rationals, &onep).unwrap()).unwrap(), onep);

        assert_eq!(exp(&Rationals, &one(&Rationals, 3)), Err(SeriesError::NonzeroConstant));
        assert_eq!(log(&Rationals, &zero(&Rationals, 3)), Err(SeriesError::ConstantNotOne));
    }

    #[test]
    fn qdlog_examples() {
        let d = qdlog(&Integers, &z(&[1, -1, 0, 0, 0, 0])).unwrap();
        assert_eq!(d, z(&[0, -1, -1, -1, -1, -1]));

        // q·P'/P = −q·E'/E = Σ σ(n) q^n for the partition series P = 1/E.
        let n = 10;
        let parts = inv(&Integers, &pentagonal(n)).unwrap();
        let d = qdlog(&Integers, &parts).unwrap();
        let sigma: Vec<i64> = (0..n as i64)
            .map(|k| if k == 0 { 0 } else { (1..=k).filter(|j| k % j == 0).sum() })
            .collect();
        assert_eq!(d, z(&sigma));
        assert_eq!(d[1], BigInt::from(1));
        assert_eq!(d[2], BigInt::from(3));
        assert_eq!(d[3], BigInt::from(4));
    }

    #[test]
    fn substitution() {
        let f = z(&[1, 1]);
        let mut padded = vec![0i64; 30];
        padded[0] = 1;
        padded[1] = 1;
        let s = substitute(&Integers, &z(&padded), 24, 1).unwrap();
        let mut want = vec![0i64; 30];
        want[0] = 1;
        want[24] = 1;
        assert_eq!(s, z(&want));
        assert_eq!(substitute(&Integers, &f, 1, 1).unwrap(), f);
        let g = z(&[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(substitute(&Integers, &g, 2, -1).unwrap(), z(&[1, 0, -2, 0, 3, 0, -4]));
        assert_eq!(substitute(&Integers, &g, 0, 1), Err(SeriesError::BadExponent));
    }

    #[test]
    fn lambert_terms() {
        assert_eq!(lambert_term(1, 5).unwrap(), z(&[0, 1, 1, 1, 1]));
        assert_eq!(lambert_term(3, 10).unwrap(), z(&[0, 0, 0, 1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(lambert_term(0, 10), Err(SeriesError::ZeroIndex));
    }

    #[test]
    fn binomial_division_matches_inverse() {
        let f = z(&[2, -1, 3, 0, 5, 1, -2, 4, 0, 1]);
        for k in 1..5 {
            for c in [-1i64, 1, 2] {
                let b = mul_binomial(&Integers, &one(&Integers, 10), &BigInt::from(c), k);
                let want = mul(&Integers, &f, &inv(&Integers, &b).unwrap());
                assert_eq!(div_binomial(&Integers, &f, &BigInt::from(c), k), want);
                assert_eq!(mul_binomial(&Integers, &f, &BigInt::from(c), k), mul(&Integers, &f, &b));
            }
        }
    }
}

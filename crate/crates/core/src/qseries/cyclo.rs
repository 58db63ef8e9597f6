//! The cyclotomic field `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
//!
//! Slow by construction; it only backs the independent oracle for the
//! Borcherds product factors, where `e(−b/D)` has to be a genuine root of
//! unity rather than a value of the closed form.

use super::{CoeffRing, QAlgebra};
use crate::arith::{kronecker_neg, totient};
use crate::InvalidDiscriminant;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of `Φ_n`, constant term first. `Φ_n` is monic of degree `φ(n)`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    // x^n − 1 = ∏_{d | n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quo
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    pub coords: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub struct CycloRing {
    n: u64,
    modulus: Vec<i64>,
}

impl CycloRing {
    pub fn new(n: u64) -> Self {
        CycloRing { n, modulus: cyclotomic_polynomial(n) }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces an arbitrary polynomial in `ζ` modulo `Φ_n`.
    pub fn reduce(&self, mut poly: Vec<BigRational>) -> CycloElem {
        let deg = self.degree();
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[i], BigRational::zero());
            for (j, &mj) in self.modulus[..deg].iter().enumerate() {
                if mj != 0 {
                    poly[i - deg + j] -= &c * BigRational::from_integer(mj.into());
                }
            }
        }
        poly.resize(deg, BigRational::zero());
        CycloElem { coords: poly }
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        let e = k.rem_euclid(self.n as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        self.reduce(poly)
    }

    pub fn from_rational(&self, r: BigRational) -> CycloElem {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = r;
        CycloElem { coords }
    }

    /// The Galois automorphism `ζ ↦ ζ^t`, `gcd(t, n) = 1`.
    pub fn galois(&self, a: &CycloElem, t: u64) -> CycloElem {
        let n = self.n as usize;
        let mut poly = vec![BigRational::zero(); n];
        for (i, c) in a.coords.iter().enumerate() {
            if !c.is_zero() {
                poly[(i * t as usize) % n] += c;
            }
        }
        self.reduce(poly)
    }

    /// `Σ_{b mod n} χ(b) ζ^b` for a function `χ` on residues.
    pub fn character_sum(&self, chi: impl Fn(u64) -> i64) -> CycloElem {
        let poly = (0..self.n).map(|b| BigRational::from_integer(chi(b).into())).collect();
        self.reduce(poly)
    }
}

impl CoeffRing for CycloRing {
    type Elem = CycloElem;

    fn zero(&self) -> CycloElem {
        CycloElem { coords: vec![BigRational::zero(); self.degree()] }
    }
    fn one(&self) -> CycloElem {
        self.from_rational(BigRational::one())
    }
    fn is_zero(&self, a: &CycloElem) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }
    fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }
    fn neg(&self, a: &CycloElem) -> CycloElem {
        CycloElem { coords: a.coords.iter().map(|x| -x).collect() }
    }
    fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let deg = self.degree();
        let mut poly = vec![BigRational::zero(); 2 * deg - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        self.reduce(poly)
    }
    fn from_i64(&self, n: i64) -> CycloElem {
        self.from_rational(BigRational::from_integer(n.into()))
    }
    /// Only rational scalars are inverted; that covers every constant term
    /// the oracle produces.
    fn unit_inverse(&self, a: &CycloElem) -> Option<CycloElem> {
        if a.coords[0].is_zero() || a.coords[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.from_rational(a.coords[0].recip()))
    }
    fn add_assign(&self, acc: &mut CycloElem, a: &CycloElem) {
        for (x, y) in acc.coords.iter_mut().zip(&a.coords) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
    fn sub_assign(&self, acc: &mut CycloElem, a: &CycloElem) {
        for (x, y) in acc.coords.iter_mut().zip(&a.coords) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

impl QAlgebra for CycloRing {
    fn div_int(&self, a: &CycloElem, n: i64) -> CycloElem {
        let n = BigRational::from_integer(n.into());
        CycloElem { coords: a.coords.iter().map(|x| x / &n).collect() }
    }
}

/// The quadratic Gauss sum `G = Σ_{b mod D} (−D/b) ζ_D^b`, the image of
/// `√−D` in `Q(ζ_D)`. Satisfies `G² = −D`.
pub fn gauss_sum_embed(d: u64) -> Result<(CycloRing, CycloElem), InvalidDiscriminant> {
    crate::check_discriminant(d)?;
    let ring = CycloRing::new(d);
    debug_assert_eq!(ring.degree() as u64, totient(d));
    let g = ring.character_sum(|b| kronecker_neg(d, b as i64) as i64);
    Ok((ring, g))
}

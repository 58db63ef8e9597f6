//! The twisted Borcherds product
//!
//! ```text
//! Ψ_D(q) = ∏_{m≥1} P_D(q^m)^{C(m mod 12; D m²)},   P_D(X) = ∏_{b mod D} (1 − ζ_D^{−b} X)^{(−D/b)}
//! ```
//!
//! over `K = Q(√−D)`, its reduction at the prime `(2, (1+√−D)/2)`, and the
//! partition Lambert series it is compared against.
//!
//! `Ψ_D` is computed as `exp` of its logarithm, through the integer
//! recurrence for its logarithmic derivative. Summing the twisted geometric
//! series against the Gauss sum collapses each factor to
//! `log P_D(X) = √−D · Σ_k (−D/k) X^k / k`. [`oracle_pd`] expands the
//! factors directly in `Q(ζ_D)` so the closed form can be checked against
//! the definition.

use crate::arith::{gcd, kronecker_neg};
use crate::maass::{build_components, required_order, ComponentTable, MaassError};
use crate::partitions::ParityBitmap;
use crate::qseries::{
    self as qs, gauss_sum_embed, BitSeries, CoeffRing, CycloElem, CycloRing, QuadElem, QuadError, QuadField,
    Series, SeriesError,
};
use crate::InvalidDiscriminant;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BorcherdsError {
    #[error(transparent)]
    InvalidDiscriminant(#[from] InvalidDiscriminant),
    #[error("component table: {0}")]
    Maass(#[from] MaassError),
    #[error("series: {0}")]
    Series(#[from] SeriesError),
    #[error("quadratic field: {0}")]
    Quad(#[from] QuadError),
    #[error("coefficient of q^{n} in Ψ_{d} is not an algebraic integer")]
    NotIntegral { d: u64, n: usize },
    #[error("constant term of Ψ_{0} is not 1")]
    ConstantTerm(u64),
    #[error("Ψ_{d} · Ψ_{d}^σ differs from 1 at q^{n}")]
    ConjugateInverse { d: u64, n: usize },
    #[error("parity bitmap covers {have} partition indices, {needed} needed")]
    BitmapTooShort { needed: usize, have: usize },
}

/// The Kronecker symbol `(−D/k)`.
pub fn kronecker(d: u64, k: i64) -> i8 {
    kronecker_neg(d, k)
}

/// `log Ψ_D` truncated at `order`; every coefficient is a rational multiple
/// of `√−D`:
/// `[q^n] = √−D · Σ_{m | n} C(m mod 12; D m²) · (−D/(n/m)) / (n/m)`.
pub fn log_psi(d: u64, order: usize, table: &ComponentTable) -> Result<Series<QuadElem>, BorcherdsError> {
    crate::check_discriminant(d)?;
    let mut y = vec![BigRational::zero(); order];
    for m in 1..order {
        let c = table.borcherds_exponent(d, m as u64)?;
        if c.is_zero() {
            continue;
        }
        for k in 1..=(order - 1) / m {
            let chi = kronecker(d, k as i64);
            if chi != 0 {
                y[m * k] += BigRational::new(&c * BigInt::from(chi), BigInt::from(k));
            }
        }
    }
    Ok(Series::from_coeffs(y.into_iter().map(QuadElem::pure).collect()))
}

/// `Ψ_D` with its logarithm, truncated at `order`.
#[derive(Clone, Debug)]
pub struct PsiExpansion {
    pub d: u64,
    pub order: usize,
    pub log_coeffs: Series<QuadElem>,
    pub coeffs: Series<QuadElem>,
}

/// Builds a component table just large enough and expands `Ψ_D`.
pub fn psi(d: u64, order: usize) -> Result<PsiExpansion, BorcherdsError> {
    crate::check_discriminant(d)?;
    let table = build_components(required_order(d, order))?;
    psi_with_table(d, order, &table)
}

/// `Ψ_D = exp(log Ψ_D)`, checked to have constant term 1, integral
/// coefficients and `Ψ_D · Ψ_D^σ = 1 + O(q^order)`.
pub fn psi_with_table(d: u64, order: usize, table: &ComponentTable) -> Result<PsiExpansion, BorcherdsError> {
    let log_coeffs = log_psi(d, order, table)?;
    let (xs, ys) = exp_integral(d, order, table)?;
    let half = |v: &BigInt| BigRational::new(v.clone(), BigInt::from(2));
    let coeffs = Series::from_coeffs(xs.iter().zip(&ys).map(|(x, y)| QuadElem::new(half(x), half(y))).collect());
    let p = PsiExpansion { d, order, log_coeffs, coeffs };
    check_invariants(&p)?;
    Ok(p)
}

/// `q · d/dq log Ψ_D = √−D · Σ L_n q^n` with
/// `L_n = Σ_{m | n} m · C(m mod 12; D m²) · (−D/(n/m))`, an integer.
fn log_derivative(d: u64, order: usize, table: &ComponentTable) -> Result<Vec<BigInt>, BorcherdsError> {
    let mut l = vec![BigInt::zero(); order];
    for m in 1..order {
        let c = table.borcherds_exponent(d, m as u64)?;
        if c.is_zero() {
            continue;
        }
        let mc = c * BigInt::from(m);
        for k in 1..=(order - 1) / m {
            match kronecker(d, k as i64) {
                1 => l[m * k] += &mc,
                -1 => l[m * k] -= &mc,
                _ => {}
            }
        }
    }
    Ok(l)
}

/// `exp` of `log Ψ_D` in coordinates `2Ψ_D = X + Y √−D`, from
/// `n Ψ_n = √−D Σ_{j=1}^{n} L_j Ψ_{n−j}`:
///
/// ```text
/// n X_n = −D Σ L_j Y_{n−j},   n Y_n = Σ L_j X_{n−j}
/// ```
///
/// Each division by `n` must be exact and `X_n ≡ Y_n mod 2`, or the
/// coefficient is not in the ring of integers.
fn exp_integral(d: u64, order: usize, table: &ComponentTable) -> Result<(Vec<BigInt>, Vec<BigInt>), BorcherdsError> {
    crate::check_discriminant(d)?;
    let l = log_derivative(d, order, table)?;
    let mut xs: Vec<BigInt> = Vec::with_capacity(order);
    let mut ys: Vec<BigInt> = Vec::with_capacity(order);
    if order == 0 {
        return Ok((xs, ys));
    }
    xs.push(BigInt::from(2));
    ys.push(BigInt::zero());
    let minus_d = -BigInt::from(d);
    for n in 1..order {
        let mut sx = BigInt::zero();
        let mut sy = BigInt::zero();
        for j in 1..=n {
            if l[j].is_zero() {
                continue;
            }
            if !ys[n - j].is_zero() {
                sx += &l[j] * &ys[n - j];
            }
            if !xs[n - j].is_zero() {
                sy += &l[j] * &xs[n - j];
            }
        }
        sx *= &minus_d;
        let nn = BigInt::from(n);
        let (x, rx) = sx.div_rem(&nn);
        let (y, ry) = sy.div_rem(&nn);
        if !rx.is_zero() || !ry.is_zero() || (&x - &y).is_odd() {
            return Err(BorcherdsError::NotIntegral { d, n });
        }
        xs.push(x);
        ys.push(y);
    }
    Ok((xs, ys))
}

fn check_invariants(p: &PsiExpansion) -> Result<(), BorcherdsError> {
    let k = QuadField::new(p.d);
    if p.order > 0 && !k.is_one(&p.coeffs[0]) {
        return Err(BorcherdsError::ConstantTerm(p.d));
    }
    if let Some(n) = p.coeffs.coeffs().iter().position(|c| !c.is_integral()) {
        return Err(BorcherdsError::NotIntegral { d: p.d, n });
    }
    // Ψ_n = (X_n + Y_n √−D)/2; [q^n] Ψ Ψ^σ = ¼ Σ_{i+j=n} (X_i X_j + D Y_i Y_j),
    // the √−D part cancelling between (i, j) and (j, i).
    let twice = |r: &BigRational| (r * BigInt::from(2)).to_integer();
    let xs: Vec<BigInt> = p.coeffs.coeffs().iter().map(|c| twice(&c.x)).collect();
    let ys: Vec<BigInt> = p.coeffs.coeffs().iter().map(|c| twice(&c.y)).collect();
    let d = BigInt::from(p.d);
    for n in 0..p.order {
        let mut sum = BigInt::zero();
        for i in 0..=n / 2 {
            let j = n - i;
            let mut t = &xs[i] * &xs[j] + &d * (&ys[i] * &ys[j]);
            if i != j {
                t *= 2;
            }
            sum += t;
        }
        let want = if n == 0 { 4 } else { 0 };
        if sum != BigInt::from(want) {
            return Err(BorcherdsError::ConjugateInverse { d: p.d, n });
        }
    }
    Ok(())
}

/// `Ψ_D` reduced coefficientwise at `(2, ω)`: `ω ↦ 0`, `√−D ↦ 1`.
pub fn psi_mod2(p: &PsiExpansion) -> Result<BitSeries, BorcherdsError> {
    let k = QuadField::new(p.d);
    let bits = p.coeffs.coeffs().iter().map(|c| k.mod2(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(BitSeries::from_bits(&bits))
}

/// `q Ψ_D' / Ψ_D` over the binary field.
pub fn qdlog_psi_mod2(p: &PsiExpansion) -> Result<BitSeries, BorcherdsError> {
    Ok(psi_mod2(p)?.qdlog()?)
}

/// Partition index needed by [`lambert_rhs`] at `order`.
pub fn lambert_index_bound(d: u64, order: usize) -> usize {
    let m = order.saturating_sub(1) as u64;
    ((d * m * m + 1) / 24) as usize + 1
}

/// `Σ_{(m,6)=1, m<order} p((Dm²+1)/24) · q^m/(1−q^m)` over the binary field.
pub fn lambert_rhs(d: u64, order: usize, bitmap: &ParityBitmap) -> Result<BitSeries, BorcherdsError> {
    crate::check_discriminant(d)?;
    let needed = lambert_index_bound(d, order);
    if bitmap.limit() < needed {
        return Err(BorcherdsError::BitmapTooShort { needed, have: bitmap.limit() });
    }
    let mut out = BitSeries::zero(order);
    for m in (1..order).filter(|m| gcd(*m as u64, 6) == 1) {
        let idx = ((d * (m * m) as u64 + 1) / 24) as usize;
        if bitmap.get(idx) == Some(true) {
            for e in (m..order).step_by(m) {
                out.flip(e);
            }
        }
    }
    Ok(out)
}

/// `Ω = Σ_{(m,6)=1} q^m/(1−q^m)` over the binary field: bit `n` is the
/// parity of the number of divisors of `n` prime to 6.
pub fn omega_series_mod2(order: usize) -> BitSeries {
    let mut out = BitSeries::zero(order);
    for m in (1..order).filter(|m| gcd(*m as u64, 6) == 1) {
        for e in (m..order).step_by(m) {
            out.flip(e);
        }
    }
    out
}

/// Indices where the two sides of the mod-2 Lambert comparison differ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LambertComparison {
    pub checked_to: usize,
    /// Every mismatching index `n ≥ 1`.
    pub mismatches: Vec<usize>,
    /// The mismatches with `gcd(n, D) = 1`.
    pub coprime_mismatches: Vec<usize>,
}

pub fn compare_lambert(d: u64, lhs: &BitSeries, rhs: &BitSeries) -> LambertComparison {
    let order = lhs.order().min(rhs.order());
    let mismatches: Vec<usize> = (1..order).filter(|&n| lhs.get(n) != rhs.get(n)).collect();
    let coprime_mismatches = mismatches.iter().copied().filter(|&n| gcd(n as u64, d) == 1).collect();
    LambertComparison { checked_to: order, mismatches, coprime_mismatches }
}

/// Whether `qdlog ≠ 0` exactly when `rhs` has a set bit at some `m` with
/// `(m, 6) = 1` and `gcd(m, D) = 1`.
pub fn nonsquare_linkage(d: u64, qdlog: &BitSeries, rhs: &BitSeries) -> bool {
    let witness = rhs.ones().any(|m| gcd(m as u64, 6) == 1 && gcd(m as u64, d) == 1);
    witness == !qdlog.is_zero()
}

/// `P_D(q^m)` truncated at `order`, expanded factor by factor in `Q(ζ_D)`.
pub fn oracle_pd(d: u64, m: usize, order: usize) -> Result<(CycloRing, Series<CycloElem>), BorcherdsError> {
    let (ring, _) = gauss_sum_embed(d)?;
    let s = oracle_pd_in(&ring, d, m, order)?;
    Ok((ring, s))
}

fn oracle_pd_in(ring: &CycloRing, d: u64, m: usize, order: usize) -> Result<Series<CycloElem>, BorcherdsError> {
    if m == 0 {
        return Err(SeriesError::ZeroIndex.into());
    }
    let mut s = qs::one(ring, order);
    for b in 1..d {
        let chi = kronecker(d, b as i64);
        if chi == 0 {
            continue;
        }
        // 1 − ζ^{−b} q^m
        let c = ring.neg(&ring.zeta_pow(-(b as i64)));
        s = if chi > 0 { qs::mul_binomial(ring, &s, &c, m) } else { qs::div_binomial(ring, &s, &c, m) };
    }
    Ok(s)
}

/// `Σ_m C(m mod 12; D m²) · log P_D(q^m)` from the factor-by-factor
/// expansion, together with the image of [`log_psi`] under `√−D ↦ G`.
pub fn oracle_log_psi(
    d: u64,
    order: usize,
    table: &ComponentTable,
) -> Result<(CycloRing, Series<CycloElem>, Series<CycloElem>), BorcherdsError> {
    let (ring, g) = gauss_sum_embed(d)?;
    let mut total = qs::zero(&ring, order);
    for m in 1..order {
        let c = table.borcherds_exponent(d, m as u64)?;
        if c.is_zero() {
            continue;
        }
        let factor = oracle_pd_in(&ring, d, m, order)?;
        let log = qs::log(&ring, &factor)?;
        let c = ring.from_rational(BigRational::from_integer(c));
        total = qs::add(&ring, &total, &qs::scale(&ring, &c, &log));
    }
    let closed = log_psi(d, order, table)?;
    let embedded = closed.map(|e| {
        debug_assert!(e.x.is_zero());
        ring.mul(&ring.from_rational(e.y.clone()), &g)
    });
    Ok((ring, total, embedded))
}

/// Whether every coefficient is fixed by `ζ ↦ ζ^t`.
pub fn galois_fixed(ring: &CycloRing, s: &Series<CycloElem>, t: u64) -> bool {
    s.coeffs().iter().all(|c| &ring.galois(c, t) == c)
}

/// `true` when every coefficient of `s` equals 1 at `q^0` and 0 elsewhere.
pub fn is_one_series<R: CoeffRing>(ring: &R, s: &Series<R::Elem>) -> bool {
    s.coeffs().iter().enumerate().all(|(n, c)| if n == 0 { ring.is_one(c) } else { ring.is_zero(c) })
}

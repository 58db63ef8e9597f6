//! Holomorphic parts `H_j^+`, `j mod 12`, of the weight-1/2 vector-valued
//! form built from `f` and `ω`:
//!
//! ```text
//! H_j^+ = 0                               j = 0, 3, 6, 9
//!       =  q^{−1} f(q^24)                 j = 1, 7
//!       = −q^{−1} f(q^24)                 j = 5, 11
//!       =  2q^8 (−ω(q^12) + ω(−q^12))     j = 2
//!       = −2q^8 ( ω(q^12) + ω(−q^12))     j = 4
//!       =  2q^8 ( ω(q^12) + ω(−q^12))     j = 8
//!       =  2q^8 ( ω(q^12) − ω(−q^12))     j = 10
//! ```
//!
//! The table only stores the coefficients of `f` and `ω` it needs and reads
//! `C(j; n)` off them; [`ComponentTable::series`] materializes a whole
//! component through substitution when one is wanted.

use crate::partitions::{mock_f_packed, mock_omega_packed, PackedInts};
use crate::qseries::{self as qs, Integers, Series};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaassError {
    #[error("exponent {n} is past the component table order {order}")]
    OutOfRange { n: i64, order: i64 },
    #[error("component table order must be at least 24, got {0}")]
    OrderTooSmall(i64),
}

/// A series `q^shift · Σ c_i q^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSeries {
    pub shift: i64,
    pub series: Series<BigInt>,
}

impl ShiftedSeries {
    /// Coefficient of `q^n`; zero outside the stored range.
    pub fn coeff(&self, n: i64) -> BigInt {
        let i = n - self.shift;
        if i < 0 {
            return BigInt::zero();
        }
        self.series.coeff(i as usize).cloned().unwrap_or_default()
    }
}

/// `C(j; n)` for every `j mod 12` and every exponent `n < order`.
#[derive(Clone, Debug)]
pub struct ComponentTable {
    order: i64,
    f: PackedInts,
    omega: PackedInts,
}

/// Builds the components through exponent `order − 1`.
pub fn build_components(order: i64) -> Result<ComponentTable, MaassError> {
    if order < 24 {
        return Err(MaassError::OrderTooSmall(order));
    }
    // f(q^24) at q^{24i−1} needs i ≤ order/24; ω(q^12) at q^{12k+8} needs k < (order−8)/12
    let nf = (order as usize) / 24 + 1;
    let nw = ((order - 8) as usize).div_ceil(12);
    Ok(ComponentTable { order, f: mock_f_packed(nf), omega: mock_omega_packed(nw) })
}

/// Exponent bound a table needs so every `C(m mod 12; D m²)` with `m < psi_order`
/// is available.
pub fn required_order(d: u64, psi_order: usize) -> i64 {
    let m = psi_order.saturating_sub(1) as i64;
    (d as i64 * m * m + 1).max(24)
}

impl ComponentTable {
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficients of `f` held by the table.
    pub fn f_coefficients(&self) -> Vec<BigInt> {
        self.f.to_vec()
    }

    /// Coefficients of `ω` held by the table.
    pub fn omega_coefficients(&self) -> Vec<BigInt> {
        self.omega.to_vec()
    }

    /// `C(j; n)`, zero off the support of `H_j^+`.
    pub fn coefficient(&self, j: u32, n: i64) -> Result<BigInt, MaassError> {
        if n >= self.order {
            return Err(MaassError::OutOfRange { n, order: self.order });
        }
        let j = j % 12;
        let out = match j {
            1 | 5 | 7 | 11 => {
                if n < -1 || (n + 1) % 24 != 0 {
                    BigInt::zero()
                } else {
                    let a = self.f.get(((n + 1) / 24) as usize).expect("within order");
                    if j == 5 || j == 11 {
                        -a
                    } else {
                        a
                    }
                }
            }
            2 | 4 | 8 | 10 => {
                if n < 8 || (n - 8) % 12 != 0 {
                    BigInt::zero()
                } else {
                    let k = ((n - 8) / 12) as usize;
                    let w = &self.omega.get(k).expect("within order");
                    let even = k % 2 == 0;
                    match (j, even) {
                        (2, false) => -(w * 4u32),
                        (4, true) => -(w * 4u32),
                        (8, true) | (10, false) => w * 4u32,
                        _ => BigInt::zero(),
                    }
                }
            }
            _ => BigInt::zero(),
        };
        Ok(out)
    }

    /// The Borcherds exponent `C(m mod 12; D m²)`.
    pub fn borcherds_exponent(&self, d: u64, m: u64) -> Result<BigInt, MaassError> {
        let n = (d as i128) * (m as i128) * (m as i128);
        let n = i64::try_from(n).unwrap_or(i64::MAX);
        self.coefficient((m % 12) as u32, n)
    }

    /// `C(1;n) − C(5;n) + C(7;n) − C(11;n)`.
    pub fn packet_functional(&self, n: i64) -> Result<BigInt, MaassError> {
        let c = |j| self.coefficient(j, n);
        Ok(c(1)? - c(5)? + c(7)? - c(11)?)
    }

    /// Materializes `H_j^+` through exponent `order − 1` by substituting
    /// into the stored `f` and `ω`.
    pub fn series(&self, j: u32) -> ShiftedSeries {
        let j = j % 12;
        let z = &Integers;
        match j {
            1 | 5 | 7 | 11 => {
                // q^{−1} f(q^24): exponents −1 .. order−1
                let len = (self.order + 1) as usize;
                let f = pad(Series::from_coeffs(self.f.to_vec()), len);
                let mut s = qs::substitute(z, &f, 24, 1).expect("k = 24");
                if j == 5 || j == 11 {
                    s = qs::neg(z, &s);
                }
                ShiftedSeries { shift: -1, series: s }
            }
            2 | 4 | 8 | 10 => {
                let len = (self.order - 8).max(0) as usize;
                let w = pad(Series::from_coeffs(self.omega.to_vec()), len);
                let plus = qs::substitute(z, &w, 12, 1).expect("k = 12");
                let minus = qs::substitute(z, &w, 12, -1).expect("k = 12");
                let two = BigInt::from(2);
                let inner = match j {
                    2 => qs::sub(z, &minus, &plus),
                    4 => qs::neg(z, &qs::add(z, &plus, &minus)),
                    8 => qs::add(z, &plus, &minus),
                    _ => qs::sub(z, &plus, &minus),
                };
                ShiftedSeries { shift: 8, series: qs::scale(z, &two, &inner) }
            }
            _ => ShiftedSeries { shift: 0, series: qs::zero(z, self.order as usize) },
        }
    }
}

/// Zero-pads or truncates to exactly `len` coefficients.
fn pad(s: Series<BigInt>, len: usize) -> Series<BigInt> {
    let mut c = s.into_coeffs();
    c.resize(len, BigInt::zero());
    Series::from_coeffs(c)
}

//! Exact kernels for studying the parity of `p((Dm²+1)/24)`.
//!
//! - [`qseries`]: truncated power series over the integers, rationals,
//!   `Q(√−D)`, cyclotomic fields and the binary field.
//! - [`partitions`]: `p(n)`, its parity bitmap, the Durfee-square identity
//!   and Ramanujan's third-order mock theta functions `f` and `ω`.
//! - [`maass`]: the twelve holomorphic components built from `f` and `ω`,
//!   and the Borcherds exponents read off them.
//! - [`heegner`]: binary quadratic forms, class groups, the restricted
//!   Heegner class set, genus characters and Frobenius orbits.
//! - [`borcherds`]: the twisted Borcherds product `Ψ_D`, its reduction mod 2,
//!   the partition Lambert series, and a cyclotomic oracle.
//! - [`harness`]: admissibility, first-parity searches, per-discriminant
//!   verification, range scans and reports.

pub mod arith;
pub mod borcherds;
pub mod harness;
pub mod heegner;
pub mod maass;
pub mod partitions;
pub mod qseries;

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("{d} is not a square-free integer congruent to 23 mod 24")]
pub struct InvalidDiscriminant {
    pub d: u64,
}

/// Accepts exactly the square-free `D ≡ 23 mod 24`.
pub fn check_discriminant(d: u64) -> Result<(), InvalidDiscriminant> {
    if d % 24 == 23 && arith::is_squarefree(d) {
        Ok(())
    } else {
        Err(InvalidDiscriminant { d })
    }
}

/// All square-free `D ≡ 23 mod 24` with `D ≤ d_max`, ascending.
pub fn discriminants_up_to(d_max: u64) -> Vec<u64> {
    (23..=d_max).step_by(24).filter(|&d| arith::is_squarefree(d)).collect()
}

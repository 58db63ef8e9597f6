//! Per-discriminant verification: class-side structure, the first `m` of
//! each parity and their bounds, and optionally the mod-2 Lambert comparison.

mod parity;
mod report;

pub use parity::{
    even_bound, first_even, first_odd, first_with_parity, odd_bound, partition_index, ParityCache,
    DEFAULT_PARITY_CAP,
};
pub use report::{read_json, write_csv, write_json, write_reports, CsvRow, ParityReport};

use crate::arith::prime_divisors;
use crate::borcherds::{self, compare_lambert, lambert_index_bound};
use crate::heegner::{self, OddOrderConditions, OrbitReport};
use crate::partitions::{durfee_series, mock_f, partition_series, partition_table, reduce_mod};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{stage} failed for D={d}: {message}")]
    Stage { stage: &'static str, d: u64, message: String },
    #[error("partition index {index} is past the parity cap {cap}")]
    ParityCap { index: usize, cap: usize },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

/// `D > 1`, `D ≡ 23 mod 24`, square-free, every prime factor `≡ 1, 7 mod 8`.
pub fn is_admissible(d: i64) -> bool {
    d > 1
        && d % 24 == 23
        && crate::arith::is_squarefree(d as u64)
        && prime_divisors(d as u64).iter().all(|l| l % 8 == 1 || l % 8 == 7)
}

/// Discriminants for which the Lambert comparison runs unless told otherwise.
pub const DEFAULT_LAMBERT_DS: [u64; 2] = [23, 47];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// `None` runs the Lambert comparison only for [`DEFAULT_LAMBERT_DS`].
    pub lambert: Option<bool>,
    pub lambert_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { lambert: None, lambert_order: 300 }
    }
}

fn stage<E: std::fmt::Display>(stage: &'static str, d: u64) -> impl FnOnce(E) -> HarnessError {
    move |e| HarnessError::Stage { stage, d, message: e.to_string() }
}

/// Class-side data for one discriminant.
pub fn class_side(d: u64) -> Result<(OrbitReport, OddOrderConditions), HarnessError> {
    let orbits = heegner::orbit_report(d).map_err(stage("orbit_report", d))?;
    let conditions = heegner::odd_order_conditions(d).map_err(stage("odd_order_conditions", d))?;
    Ok((orbits, conditions))
}

pub fn verify_discriminant(d: u64, opts: &VerifyOptions, cache: &ParityCache) -> Result<ParityReport, HarnessError> {
    crate::check_discriminant(d).map_err(stage("discriminant", d))?;
    let admissible = is_admissible(d as i64);
    let (orbits, conditions) = class_side(d)?;
    let h = orbits.h;
    let first_odd_m = first_odd(d, cache)?;
    let first_even_m = first_even(d, cache)?;
    let (ob, eb) = (odd_bound(h), even_bound(d, h));
    let bounds_ok = first_odd_m.is_some_and(|m| m <= ob) && first_even_m.is_some_and(|m| m <= eb);

    let mut r = ParityReport {
        d,
        admissible,
        h,
        frob_order: orbits.frob_order,
        orbit_count: orbits.orbits.len(),
        eps_profile: orbits.eps_profile(),
        first_odd_m,
        first_even_m,
        odd_bound: ob,
        even_bound: eb,
        bounds_ok,
        lambert_checked_to: 0,
        lambert_mismatches: Vec::new(),
        lambert_coprime_mismatches: Vec::new(),
        heegner_count: orbits.heegner.reps.len(),
        orbits_uniform: orbits.orbit_sizes_uniform(),
        odd_residue: orbits.has_odd_residue(),
        conditions,
        failures: Vec::new(),
    };

    if opts.lambert.unwrap_or(DEFAULT_LAMBERT_DS.contains(&d)) {
        let order = opts.lambert_order;
        let bitmap = cache.ensure(lambert_index_bound(d, order))?;
        let p = borcherds::psi(d, order).map_err(stage("psi", d))?;
        let lhs = borcherds::qdlog_psi_mod2(&p).map_err(stage("qdlog_psi_mod2", d))?;
        let rhs = borcherds::lambert_rhs(d, order, &bitmap).map_err(stage("lambert_rhs", d))?;
        let cmp = compare_lambert(d, &lhs, &rhs);
        r.lambert_checked_to = cmp.checked_to;
        r.lambert_mismatches = cmp.mismatches;
        r.lambert_coprime_mismatches = cmp.coprime_mismatches;
    }

    r.failures = r.collect_failures();
    Ok(r)
}

/// Every square-free `D ≡ 23 mod 24` up to `d_max`, in ascending order,
/// on `jobs` worker threads (0 = rayon's default).
pub fn scan(d_max: u64, opts: &VerifyOptions, jobs: usize, cache: &ParityCache) -> Vec<ParityReport> {
    let ds = crate::discriminants_up_to(d_max);
    let run = || {
        ds.par_iter()
            .map(|&d| verify_discriminant(d, opts, cache).unwrap_or_else(|e| ParityReport::errored(d, &e)))
            .collect::<Vec<_>>()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// One named pass/fail result from [`identities`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The Durfee identity, `P ≡ f mod 4`, and the three Ramanujan congruences,
/// all to the given order.
pub fn identities(order: usize) -> Vec<IdentityCheck> {
    let order = order.max(1);
    let p = partition_series(order);
    let durfee = durfee_series(order) == p;
    let mod4 = reduce_mod(&mock_f(order), 4) == reduce_mod(&p, 4);
    let mut out = vec![
        IdentityCheck { name: "durfee", passed: durfee, detail: format!("order {order}") },
        IdentityCheck { name: "f_mod_4", passed: mod4, detail: format!("order {order}") },
    ];
    let table = partition_table(order);
    for (name, modulus, offset) in [("ramanujan_5", 5u32, 4usize), ("ramanujan_7", 7, 5), ("ramanujan_11", 11, 6)] {
        let bad: Vec<usize> = (offset..order)
            .step_by(modulus as usize)
            .filter(|&n| table.get(n).unwrap() % modulus != 0.into())
            .collect();
        out.push(IdentityCheck {
            name,
            passed: bad.is_empty(),
            detail: format!("p({modulus}n+{offset}) for arguments < {order}, {} failures", bad.len()),
        });
    }
    out
}

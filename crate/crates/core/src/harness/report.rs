//! The per-discriminant report and its JSON / CSV forms.

use super::HarnessError;
use crate::heegner::OddOrderConditions;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub d: u64,
    pub admissible: bool,
    pub h: usize,
    pub frob_order: usize,
    pub orbit_count: usize,
    pub eps_profile: Vec<i8>,
    pub first_odd_m: Option<u64>,
    pub first_even_m: Option<u64>,
    pub odd_bound: u64,
    pub even_bound: u64,
    pub bounds_ok: bool,
    pub lambert_checked_to: usize,
    pub lambert_mismatches: Vec<usize>,
    pub lambert_coprime_mismatches: Vec<usize>,
    pub heegner_count: usize,
    pub orbits_uniform: bool,
    pub odd_residue: bool,
    pub conditions: OddOrderConditions,
    /// Named checks that did not hold; empty when everything passed.
    pub failures: Vec<String>,
}

impl ParityReport {
    /// A placeholder for a discriminant whose verification stopped early.
    pub fn errored(d: u64, err: &HarnessError) -> Self {
        ParityReport {
            d,
            admissible: super::is_admissible(d as i64),
            h: 0,
            frob_order: 0,
            orbit_count: 0,
            eps_profile: Vec::new(),
            first_odd_m: None,
            first_even_m: None,
            odd_bound: 0,
            even_bound: 0,
            bounds_ok: false,
            lambert_checked_to: 0,
            lambert_mismatches: Vec::new(),
            lambert_coprime_mismatches: Vec::new(),
            heegner_count: 0,
            orbits_uniform: false,
            odd_residue: false,
            conditions: OddOrderConditions {
                frob_order: 0,
                odd_order: false,
                is_square: false,
                genus_trivial: false,
                primes_1_7_mod_8: false,
            },
            failures: vec![format!("error: {err}")],
        }
    }

    /// Structural checks hold for every `D`; the parity statements are only
    /// expected for admissible `D`.
    pub(super) fn collect_failures(&self) -> Vec<String> {
        let mut f = Vec::new();
        if self.heegner_count != self.h {
            f.push(format!("heegner_count: {} representatives for h = {}", self.heegner_count, self.h));
        }
        if !self.orbits_uniform {
            f.push("orbit_sizes: orbits of unequal size".into());
        }
        if !self.conditions.genus_matches_primes() {
            f.push("genus_vs_primes: conditions (3) and (4) disagree".into());
        }
        if !self.lambert_coprime_mismatches.is_empty() {
            f.push(format!("lambert: mismatches at {:?}", self.lambert_coprime_mismatches));
        }
        if self.admissible {
            if self.frob_order % 2 == 0 {
                f.push(format!(
                    "odd_order: ord([p]) = {} is even although (2) square={}, (3) genus={}, (4) primes={}",
                    self.frob_order,
                    self.conditions.is_square,
                    self.conditions.genus_trivial,
                    self.conditions.primes_1_7_mod_8
                ));
            }
            if !self.odd_residue {
                f.push("odd_residue: no orbit has residue parity 1".into());
            }
            if !self.bounds_ok {
                f.push(format!(
                    "bounds: first_odd {:?} (bound {}), first_even {:?} (bound {})",
                    self.first_odd_m, self.odd_bound, self.first_even_m, self.even_bound
                ));
            }
        }
        f
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Scalar columns of a [`ParityReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub d: u64,
    pub admissible: bool,
    pub h: usize,
    pub frob_order: usize,
    pub orbit_count: usize,
    pub first_odd_m: Option<u64>,
    pub first_even_m: Option<u64>,
    pub odd_bound: u64,
    pub even_bound: u64,
    pub bounds_ok: bool,
    pub lambert_checked_to: usize,
    pub odd_order: bool,
    pub is_square: bool,
    pub genus_trivial: bool,
    pub primes_1_7_mod_8: bool,
    pub odd_residue: bool,
    pub failure_count: usize,
}

impl From<&ParityReport> for CsvRow {
    fn from(r: &ParityReport) -> Self {
        CsvRow {
            d: r.d,
            admissible: r.admissible,
            h: r.h,
            frob_order: r.frob_order,
            orbit_count: r.orbit_count,
            first_odd_m: r.first_odd_m,
            first_even_m: r.first_even_m,
            odd_bound: r.odd_bound,
            even_bound: r.even_bound,
            bounds_ok: r.bounds_ok,
            lambert_checked_to: r.lambert_checked_to,
            odd_order: r.conditions.odd_order,
            is_square: r.conditions.is_square,
            genus_trivial: r.conditions.genus_trivial,
            primes_1_7_mod_8: r.conditions.primes_1_7_mod_8,
            odd_residue: r.odd_residue,
            failure_count: r.failures.len(),
        }
    }
}

pub fn write_json(reports: &[ParityReport], w: impl Write) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(w, reports)?;
    Ok(())
}

pub fn read_json(path: impl AsRef<Path>) -> Result<Vec<ParityReport>, HarnessError> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

pub fn write_csv(reports: &[ParityReport], w: impl Write) -> Result<(), HarnessError> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in reports {
        wtr.serialize(CsvRow::from(r))?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes JSON or CSV by file extension.
pub fn write_reports(reports: &[ParityReport], path: impl AsRef<Path>) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let mut w = BufWriter::new(File::create(path)?);
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        write_csv(reports, &mut w)?;
    } else {
        write_json(reports, &mut w)?;
    }
    w.flush()?;
    Ok(())
}

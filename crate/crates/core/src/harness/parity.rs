//! Shared parity lookups and the least-`m` searches.

use super::HarnessError;
use crate::arith::gcd;
use crate::partitions::{parity_bitmap, ParityBitmap};
use std::sync::{Arc, RwLock};

/// Default ceiling on partition indices looked up.
pub const DEFAULT_PARITY_CAP: usize = 10_000_000;

/// A parity bitmap shared across workers that grows on demand, doubling,
/// up to a fixed index cap.
#[derive(Debug)]
pub struct ParityCache {
    bitmap: RwLock<Arc<ParityBitmap>>,
    cap: usize,
}

impl ParityCache {
    pub fn new(initial: usize, cap: usize) -> Self {
        let initial = initial.clamp(1, cap.max(1));
        ParityCache { bitmap: RwLock::new(Arc::new(parity_bitmap(initial))), cap }
    }

    pub fn from_bitmap(bitmap: ParityBitmap, cap: usize) -> Self {
        ParityCache { bitmap: RwLock::new(Arc::new(bitmap)), cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn limit(&self) -> usize {
        self.snapshot().limit()
    }

    pub fn snapshot(&self) -> Arc<ParityBitmap> {
        self.bitmap.read().expect("parity cache lock").clone()
    }

    /// Makes indices `< limit` available.
    pub fn ensure(&self, limit: usize) -> Result<Arc<ParityBitmap>, HarnessError> {
        if limit > self.cap {
            return Err(HarnessError::ParityCap { index: limit - 1, cap: self.cap });
        }
        let current = self.snapshot();
        if current.limit() >= limit {
            return Ok(current);
        }
        let mut guard = self.bitmap.write().expect("parity cache lock");
        if guard.limit() < limit {
            let target = limit.max(2 * guard.limit()).min(self.cap);
            *guard = Arc::new(parity_bitmap(target));
        }
        Ok(guard.clone())
    }

    /// `p(n) mod 2`.
    pub fn get(&self, n: usize) -> Result<bool, HarnessError> {
        let bm = self.ensure(n + 1)?;
        Ok(bm.get(n).expect("ensured"))
    }
}

/// `(D m² + 1) / 24`.
pub fn partition_index(d: u64, m: u64) -> u64 {
    (d * m * m + 1) / 24
}

/// Least `m` with `(m, 6) = 1` and `p((Dm²+1)/24) ≡ want_odd`, searching
/// until the partition index reaches the cache cap.
pub fn first_with_parity(d: u64, want_odd: bool, cache: &ParityCache) -> Result<Option<u64>, HarnessError> {
    for m in (1u64..).filter(|&m| gcd(m, 6) == 1) {
        let idx = partition_index(d, m) as usize;
        if idx >= cache.cap() {
            return Ok(None);
        }
        if cache.get(idx)? == want_odd {
            return Ok(Some(m));
        }
    }
    unreachable!()
}

pub fn first_odd(d: u64, cache: &ParityCache) -> Result<Option<u64>, HarnessError> {
    first_with_parity(d, true, cache)
}

pub fn first_even(d: u64, cache: &ParityCache) -> Result<Option<u64>, HarnessError> {
    first_with_parity(d, false, cache)
}

/// `12h + 2`
pub fn odd_bound(h: usize) -> u64 {
    12 * h as u64 + 2
}

/// `(12h + 2) ∏_{ℓ | D} (ℓ + 1)`
pub fn even_bound(d: u64, h: usize) -> u64 {
    odd_bound(h) * crate::arith::prime_divisors(d).iter().map(|l| l + 1).product::<u64>()
}

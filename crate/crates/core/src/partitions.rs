//! The partition function, its parity, the Durfee-square expansion of the
//! partition generating function, and Ramanujan's third-order mock theta
//! functions
//!
//! ```text
//! f(q) = 1 + Σ_{n≥1} q^{n²} / (1+q)²(1+q²)²⋯(1+q^n)²
//! ω(q) = Σ_{n≥0} q^{2n²+2n} / (1−q)²(1−q³)²⋯(1−q^{2n+1})²
//! ```
//!
//! `f` and `ω` are available two ways: [`mock_f`] / [`mock_omega`] expand
//! the defining sums, while [`mock_f_coefficients`] /
//! [`mock_omega_coefficients`] run Watson's Appell–Lerch identities
//!
//! ```text
//! (q;q)_∞ f(q)    = 1 + 4 Σ_{n≥1} (−1)^n q^{n(3n+1)/2} / (1+q^n)
//! (q²;q²)_∞ ω(q)  = Σ_{n≥0} (−1)^n q^{3n(n+1)} (1+q^{2n+1}) / (1−q^{2n+1})
//! ```
//!
//! as recurrences against the sparse pentagonal expansion. The second route
//! is what makes component tables reaching exponents in the millions
//! affordable.

use crate::qseries::{self as qs, Integers, Series};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;
use thiserror::Error;

/// Generalized pentagonal numbers `k(3k∓1)/2`, `k ≥ 1`, ascending, each with
/// its coefficient `(−1)^k` in `∏(1 − q^n)`, up to and including `limit`.
pub fn pentagonal_terms(limit: usize) -> Vec<(usize, i8)> {
    let mut out = Vec::new();
    for k in 1usize.. {
        let s = if k % 2 == 0 { 1 } else { -1 };
        let g1 = k * (3 * k - 1) / 2;
        if g1 > limit {
            break;
        }
        out.push((g1, s));
        let g2 = k * (3 * k + 1) / 2;
        if g2 <= limit {
            out.push((g2, s));
        }
    }
    out
}

/// `∏_{n≥1} (1 − q^n)` truncated, multiplied out factor by factor.
pub fn euler_product(order: usize) -> Series<BigInt> {
    let minus_one = BigInt::from(-1);
    (1..order).fold(qs::one(&Integers, order), |acc, n| {
        qs::mul_binomial(&Integers, &acc, &minus_one, n)
    })
}

/// `P(q) = Σ p(n) q^n = 1/∏(1 − q^n)` by series inversion.
pub fn partition_series(order: usize) -> Series<BigInt> {
    qs::inv(&Integers, &euler_product(order)).expect("Euler product has constant term 1")
}

/// Exact values `p(0), …, p(limit−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<BigInt>,
}

impl PartitionTable {
    pub fn limit(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn as_series(&self) -> Series<BigInt> {
        Series::from_coeffs(self.values.clone())
    }
}

/// `p(n)` for `n < limit` via Euler's pentagonal recurrence
/// `p(n) = Σ_{k≥1} (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)]`.
pub fn partition_table(limit: usize) -> PartitionTable {
    let pent = pentagonal_terms(limit);
    let mut values: Vec<BigInt> = Vec::with_capacity(limit);
    for n in 0..limit {
        if n == 0 {
            values.push(BigInt::from(1));
            continue;
        }
        let mut acc = BigInt::zero();
        for &(g, s) in pent.iter().take_while(|(g, _)| *g <= n) {
            // coefficient −s in the recurrence
            if s < 0 {
                acc += &values[n - g];
            } else {
                acc -= &values[n - g];
            }
        }
        values.push(acc);
    }
    PartitionTable { values }
}

const CACHE_MAGIC: &[u8; 5] = b"PPAR1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("not a parity cache file (bad magic)")]
    BadMagic,
    #[error("parity cache truncated: expected {expected} payload bytes, found {found}")]
    Truncated { expected: usize, found: usize },
}

/// Bit `n` is `p(n) mod 2`, for `n < limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityBitmap {
    bits: crate::qseries::BitSeries,
}

impl ParityBitmap {
    pub fn limit(&self) -> usize {
        self.bits.order()
    }

    /// `p(n) mod 2`; `None` past the computed range.
    pub fn get(&self, n: usize) -> Option<bool> {
        (n < self.limit()).then(|| self.bits.get(n))
    }

    pub fn as_bits(&self) -> &crate::qseries::BitSeries {
        &self.bits
    }

    pub fn count_odd(&self) -> usize {
        self.bits.count_ones()
    }

    /// Writes the `PPAR1` cache format: magic, little-endian `u64` count,
    /// then `⌈n/8⌉` bytes, least-significant bit first.
    pub fn write_to(&self, mut w: impl Write) -> io::Result<()> {
        let n = self.limit();
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&(n as u64).to_le_bytes())?;
        let nbytes = n.div_ceil(8);
        let mut payload: Vec<u8> = self.bits.words().iter().flat_map(|w| w.to_le_bytes()).collect();
        payload.truncate(nbytes);
        w.write_all(&payload)
    }

    pub fn read_from(mut r: impl Read) -> Result<Self, CacheError> {
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic).map_err(|_| CacheError::BadMagic)?;
        if &magic != CACHE_MAGIC {
            return Err(CacheError::BadMagic);
        }
        let mut len = [0u8; 8];
        r.read_exact(&mut len)?;
        let n = u64::from_le_bytes(len) as usize;
        let expected = n.div_ceil(8);
        let mut payload = Vec::with_capacity(expected);
        r.take(expected as u64).read_to_end(&mut payload)?;
        if payload.len() != expected {
            return Err(CacheError::Truncated { expected, found: payload.len() });
        }
        payload.resize(n.div_ceil(64) * 8, 0);
        let words = payload
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(ParityBitmap { bits: crate::qseries::BitSeries::from_words(n, words) })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> io::Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

/// `p(n) mod 2` for `n < limit`.
///
/// The pentagonal recurrence mod 2 is `p(n) = ⊕_g p(n − g)` over the
/// generalized pentagonal numbers `g ≤ n`. Bits are produced one 64-bit
/// word at a time: every `g ≥ 64` reads a whole already-finished word,
/// and only the twelve pentagonal numbers below 64 are resolved bit by bit.
pub fn parity_bitmap(limit: usize) -> ParityBitmap {
    let pent: Vec<usize> = pentagonal_terms(limit).into_iter().map(|(g, _)| g).collect();
    let small: Vec<usize> = pent.iter().copied().take_while(|&g| g < 64).collect();
    let large: &[usize] = &pent[small.len()..];
    let nwords = limit.div_ceil(64);
    let mut words = vec![0u64; nwords];

    // bits [pos, pos + 64) of the finished prefix; negative positions read 0
    let read_word = |words: &[u64], pos: isize| -> u64 {
        if pos <= -64 {
            0
        } else if pos < 0 {
            words[0] << (-pos)
        } else {
            let (wi, sh) = (pos as usize / 64, pos as usize % 64);
            if sh == 0 {
                words[wi]
            } else {
                (words[wi] >> sh) | (words[wi + 1] << (64 - sh))
            }
        }
    };

    for w in 0..nwords {
        let n0 = w * 64;
        let mut acc = 0u64;
        for &g in large {
            if g > n0 + 63 {
                break;
            }
            acc ^= read_word(&words, n0 as isize - g as isize);
        }
        let mut cur = 0u64;
        for i in 0..64 {
            let n = n0 + i;
            if n >= limit {
                break;
            }
            let mut bit = if n == 0 { 1 } else { (acc >> i) & 1 };
            for &g in small.iter().take_while(|&&g| g <= n) {
                let src = n - g;
                bit ^= if src >= n0 {
                    (cur >> (src - n0)) & 1
                } else {
                    (words[src / 64] >> (src % 64)) & 1
                };
            }
            cur |= bit << i;
        }
        words[w] = cur;
    }
    ParityBitmap { bits: crate::qseries::BitSeries::from_words(limit, words) }
}

/// Durfee-square form of the partition generating function,
/// `1 + Σ_{m≥1} q^{m²} / (1−q)²(1−q²)²⋯(1−q^m)²`.
pub fn durfee_series(order: usize) -> Series<BigInt> {
    let minus_one = BigInt::from(-1);
    let mut total = qs::one(&Integers, order);
    let mut term = qs::one(&Integers, order);
    for m in 1.. {
        if m * m >= order {
            break;
        }
        term = qs::shift_up(&Integers, &term, 2 * m - 1);
        term = qs::div_binomial(&Integers, &term, &minus_one, m);
        term = qs::div_binomial(&Integers, &term, &minus_one, m);
        total = qs::add(&Integers, &total, &term);
    }
    total
}

/// Ramanujan's third-order `f(q)`, summed from its definition.
pub fn mock_f(order: usize) -> Series<BigInt> {
    let one = BigInt::from(1);
    let mut total = qs::one(&Integers, order);
    let mut term = qs::one(&Integers, order);
    for n in 1.. {
        if n * n >= order {
            break;
        }
        term = qs::shift_up(&Integers, &term, 2 * n - 1);
        term = qs::div_binomial(&Integers, &term, &one, n);
        term = qs::div_binomial(&Integers, &term, &one, n);
        total = qs::add(&Integers, &total, &term);
    }
    total
}

/// Ramanujan's third-order `ω(q)`, summed from its definition.
pub fn mock_omega(order: usize) -> Series<BigInt> {
    let minus_one = BigInt::from(-1);
    let mut term = qs::one(&Integers, order);
    term = qs::div_binomial(&Integers, &term, &minus_one, 1);
    term = qs::div_binomial(&Integers, &term, &minus_one, 1);
    let mut total = term.clone();
    for n in 1.. {
        if 2 * n * n + 2 * n >= order {
            break;
        }
        term = qs::shift_up(&Integers, &term, 4 * n);
        term = qs::div_binomial(&Integers, &term, &minus_one, 2 * n + 1);
        term = qs::div_binomial(&Integers, &term, &minus_one, 2 * n + 1);
        total = qs::add(&Integers, &total, &term);
    }
    total
}

/// A sequence of signed integers stored as sign bits and little-endian
/// 64-bit magnitude limbs in one flat buffer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PackedInts {
    offsets: Vec<usize>,
    limbs: Vec<u64>,
    negative: Vec<bool>,
}

impl PackedInts {
    fn new() -> Self {
        PackedInts { offsets: vec![0], limbs: Vec::new(), negative: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.negative.is_empty()
    }

    fn magnitude_limbs(&self, i: usize) -> &[u64] {
        &self.limbs[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn get(&self, i: usize) -> Option<BigInt> {
        if i >= self.len() {
            return None;
        }
        let digits: Vec<u32> = self.magnitude_limbs(i).iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect();
        let sign = if self.negative[i] { Sign::Minus } else { Sign::Plus };
        Some(BigInt::from_biguint(sign, BigUint::new(digits)))
    }

    pub fn to_vec(&self) -> Vec<BigInt> {
        (0..self.len()).map(|i| self.get(i).expect("in range")).collect()
    }

    /// Appends the value held in two's-complement limbs `twos`.
    fn push_twos(&mut self, twos: &mut [u64], negative: bool) {
        if negative {
            let mut carry = true;
            for l in twos.iter_mut() {
                let (v, c) = (!*l).overflowing_add(carry as u64);
                *l = v;
                carry = c;
            }
        }
        let len = twos.iter().rposition(|&l| l != 0).map_or(0, |p| p + 1);
        self.limbs.extend_from_slice(&twos[..len]);
        self.offsets.push(self.limbs.len());
        self.negative.push(negative && len > 0);
    }
}

/// Solves `E(q^stride) · x = rhs` for `x`, where `E = ∏(1 − q^n)` is taken
/// in its pentagonal form. Coefficients are accumulated limb by limb in
/// `i128` columns, a block of consecutive indices at a time: offsets of at
/// least the block length read contiguous runs of finished values, the rest
/// are applied serially inside the block.
fn solve_against_pentagonal(rhs: &[i64], stride: usize) -> PackedInts {
    const BLOCK: usize = 256;
    let count = rhs.len();
    let pent = pentagonal_terms(count / stride.max(1) + 1);
    let mut out = PackedInts::new();
    let mut rows: Vec<Vec<i128>> = vec![Vec::new(); BLOCK];
    let mut twos: Vec<u64> = Vec::new();
    let mut max_len = 0usize;

    fn accumulate(row: &mut Vec<i128>, limbs: &[u64], add: bool) {
        if limbs.len() > row.len() {
            row.resize(limbs.len(), 0);
        }
        if add {
            for (c, &l) in row.iter_mut().zip(limbs) {
                *c += l as i128;
            }
        } else {
            for (c, &l) in row.iter_mut().zip(limbs) {
                *c -= l as i128;
            }
        }
    }

    for n0 in (0..count).step_by(BLOCK) {
        let b = BLOCK.min(count - n0);
        for (i, row) in rows.iter_mut().take(b).enumerate() {
            row.clear();
            row.resize(max_len + 1, 0);
            row[0] = rhs[n0 + i] as i128;
        }
        // x_n = rhs_n − Σ_g E_g x_{n−g}, with E_g = s
        for &(g, s) in &pent {
            let off = g * stride;
            if off < BLOCK {
                continue;
            }
            if off >= n0 + b {
                break;
            }
            for i in off.saturating_sub(n0)..b {
                let v = n0 + i - off;
                accumulate(&mut rows[i], out.magnitude_limbs(v), (s > 0) == out.negative[v]);
            }
        }
        for i in 0..b {
            let n = n0 + i;
            for &(g, s) in &pent {
                let off = g * stride;
                if off >= BLOCK || off > n {
                    break;
                }
                let v = n - off;
                accumulate(&mut rows[i], out.magnitude_limbs(v), (s > 0) == out.negative[v]);
            }
            // Column sums stay below 2^76, so one spare limb absorbs the carry.
            let row = &mut rows[i];
            row.push(0);
            twos.clear();
            let mut carry: i128 = 0;
            for &c in row.iter() {
                let t = c + carry;
                twos.push(t as u64);
                carry = t >> 64;
            }
            out.push_twos(&mut twos, carry < 0);
            max_len = max_len.max(out.magnitude_limbs(n).len());
        }
    }
    out
}

/// Coefficients of `f(q)` at `q^0 .. q^{count−1}` via the Appell–Lerch
/// recurrence.
pub fn mock_f_coefficients(count: usize) -> Vec<BigInt> {
    mock_f_packed(count).to_vec()
}

/// [`mock_f_coefficients`] in packed form.
pub fn mock_f_packed(count: usize) -> PackedInts {
    // 1 + 4 Σ_{n≥1} (−1)^n q^{n(3n+1)/2} Σ_{j≥0} (−1)^j q^{nj}
    let mut rhs = vec![0i64; count];
    if count == 0 {
        return PackedInts::new();
    }
    rhs[0] = 1;
    for n in 1usize.. {
        let e0 = n * (3 * n + 1) / 2;
        if e0 >= count {
            break;
        }
        for (j, e) in (e0..count).step_by(n).enumerate() {
            rhs[e] += if (n + j) % 2 == 0 { 4 } else { -4 };
        }
    }
    solve_against_pentagonal(&rhs, 1)
}

/// Coefficients of `ω(q)` at `q^0 .. q^{count−1}` via the Appell–Lerch
/// recurrence.
pub fn mock_omega_coefficients(count: usize) -> Vec<BigInt> {
    mock_omega_packed(count).to_vec()
}

/// [`mock_omega_coefficients`] in packed form.
pub fn mock_omega_packed(count: usize) -> PackedInts {
    // Σ_{n≥0} (−1)^n q^{3n(n+1)} (1 + 2 Σ_{j≥1} q^{(2n+1)j})
    let mut rhs = vec![0i64; count];
    for n in 0usize.. {
        let e0 = 3 * n * (n + 1);
        if e0 >= count {
            break;
        }
        let s = if n % 2 == 0 { 1 } else { -1 };
        rhs[e0] += s;
        for e in (e0 + 2 * n + 1..count).step_by(2 * n + 1) {
            rhs[e] += 2 * s;
        }
    }
    solve_against_pentagonal(&rhs, 2)
}

/// Reduction of an integer series modulo `m`, normalized to `0..m`.
pub fn reduce_mod(s: &Series<BigInt>, m: u32) -> Vec<u32> {
    let m = BigInt::from(m);
    s.coeffs()
        .iter()
        .map(|c| {
            let r = c % &m;
            let r = if r.is_negative() { r + &m } else { r };
            u32::try_from(r).expect("residue fits")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Bit-serial mod-2 pentagonal recurrence.
    fn naive_parity(limit: usize) -> Vec<bool> {
        let pent = pentagonal_terms(limit);
        let mut out = vec![false; limit];
        for n in 0..limit {
            out[n] = if n == 0 {
                true
            } else {
                pent.iter().take_while(|(g, _)| *g <= n).fold(false, |b, (g, _)| b ^ out[n - g])
            };
        }
        out
    }

    #[test]
    fn small_partition_values() {
        let t = partition_table(60);
        assert_eq!(&t.values()[..5], &ints(&[1, 1, 2, 3, 5])[..]);
        assert_eq!(t.get(9), Some(&BigInt::from(30)));
        assert_eq!(t.get(6), Some(&BigInt::from(11)));
        assert_eq!(t.get(11), Some(&BigInt::from(56)));
        assert_eq!(t.get(24), Some(&BigInt::from(1575)));
        assert_eq!(t.get(47), Some(&BigInt::from(124754)));
        assert_eq!(t.as_series(), partition_series(60));
    }

    #[test]
    fn table_is_monotone() {
        let t = partition_table(500);
        assert!(t.values().windows(2).skip(1).all(|w| w[0] <= w[1]));
        assert!(t.values().iter().all(|v| v.is_positive()));
    }

    #[test]
    fn parity_bitmap_matches_naive_and_exact() {
        let bm = parity_bitmap(3000);
        let naive = naive_parity(3000);
        let exact = partition_table(3000);
        for n in 0..3000 {
            assert_eq!(bm.get(n), Some(naive[n]), "n={n}");
            assert_eq!(naive[n], exact.get(n).unwrap().bit(0), "n={n}");
        }
        assert_eq!(bm.get(3000), None);
        assert_eq!((0..5).map(|n| bm.get(n).unwrap()).collect::<Vec<_>>(), [true, true, false, true, true]);
        assert_eq!(bm.get(47), Some(false));
    }

    #[test]
    fn parity_bitmap_odd_limits() {
        for limit in [1usize, 2, 63, 64, 65, 127, 129, 1000] {
            let bm = parity_bitmap(limit);
            let naive = naive_parity(limit);
            assert_eq!(bm.as_bits().to_bits(), naive, "limit={limit}");
        }
    }

    #[test]
    fn cache_file_layout() {
        let bm = parity_bitmap(13);
        let mut buf = Vec::new();
        bm.write_to(&mut buf).unwrap();
        assert_eq!(&buf[..5], b"PPAR1");
        assert_eq!(u64::from_le_bytes(buf[5..13].try_into().unwrap()), 13);
        assert_eq!(buf.len(), 13 + 2);
        // p(0..8) = 1,1,2,3,5,7,11,15 → bits 1,1,0,1,1,1,1,1
        assert_eq!(buf[13], 0b1111_1011);
        assert_eq!(ParityBitmap::read_from(&buf[..]).unwrap(), bm);

        assert!(matches!(ParityBitmap::read_from(&b"PPAR2xxxxxxxx"[..]), Err(CacheError::BadMagic)));
        assert!(matches!(
            ParityBitmap::read_from(&buf[..buf.len() - 1]),
            Err(CacheError::Truncated { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn durfee_and_mock_theta_heads() {
        assert_eq!(durfee_series(1).coeffs(), &ints(&[1])[..]);
        assert_eq!(durfee_series(5).coeffs(), &ints(&[1, 1, 2, 3, 5])[..]);
        assert_eq!(durfee_series(300), partition_series(300));

        // 1 + q − 2q² + 3q³ − 3q⁴ + 3q⁵ − 5q⁶ + 7q⁷
        assert_eq!(mock_f(8).coeffs(), &ints(&[1, 1, -2, 3, -3, 3, -5, 7])[..]);
        assert_eq!(mock_f(1).coeffs(), &ints(&[1])[..]);
        assert_eq!(mock_omega(8).coeffs(), &ints(&[1, 2, 3, 4, 6, 8, 10, 14])[..]);
    }

    #[test]
    fn appell_lerch_routes_agree_with_definitions() {
        let n = 2500;
        assert_eq!(mock_f_coefficients(n), mock_f(n).into_coeffs());
        assert_eq!(mock_omega_coefficients(n), mock_omega(n).into_coeffs());
        assert!(mock_f_coefficients(0).is_empty());
        assert_eq!(mock_omega_coefficients(1), ints(&[1]));
    }

    #[test]
    fn f_is_partition_series_mod_4() {
        let n = 1000;
        assert_eq!(reduce_mod(&mock_f(n), 4), reduce_mod(&partition_series(n), 4));
    }
}

//! Power series over the binary field, packed 64 coefficients per word.

use super::SeriesError;
use serde::{Deserialize, Serialize};

/// Bit `n` is the coefficient of `q^n` mod 2. Bits at or past `order` are
/// always clear.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitSeries {
    order: usize,
    words: Vec<u64>,
}

impl BitSeries {
    pub fn zero(order: usize) -> Self {
        BitSeries { order, words: vec![0; order.div_ceil(64)] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.set(0, true);
        }
        s
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        s
    }

    /// Builds from packed words; bits past `order` are cleared.
    pub fn from_words(order: usize, mut words: Vec<u64>) -> Self {
        words.resize(order.div_ceil(64), 0);
        let mut s = BitSeries { order, words };
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let r = self.order % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, n: usize) -> bool {
        n < self.order && (self.words[n / 64] >> (n % 64)) & 1 == 1
    }

    pub fn set(&mut self, n: usize, b: bool) {
        assert!(n < self.order, "bit {n} past order {}", self.order);
        let m = 1u64 << (n % 64);
        if b {
            self.words[n / 64] |= m;
        } else {
            self.words[n / 64] &= !m;
        }
    }

    pub fn flip(&mut self, n: usize) {
        assert!(n < self.order);
        self.words[n / 64] ^= 1u64 << (n % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.order).map(|i| self.get(i)).collect()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::from_words(order, self.words[..order.div_ceil(64)].to_vec())
    }

    /// Addition is exclusive-or; truncates to the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Self::from_words(order, words)
    }

    /// `self · q^k`, keeping the order.
    pub fn shifted(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for i in self.ones() {
            if i + k >= self.order {
                break;
            }
            out.set(i + k, true);
        }
        out
    }

    /// Carry-less product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let nw = order.div_ceil(64);
        let mut acc = vec![0u64; nw];
        for i in self.ones() {
            if i >= order {
                break;
            }
            // acc ^= other << i
            let (ws, bs) = (i / 64, i % 64);
            for j in 0..nw - ws {
                let w = other.words.get(j).copied().unwrap_or(0);
                acc[j + ws] ^= w << bs;
                if bs != 0 && j + ws + 1 < nw {
                    acc[j + ws + 1] ^= w >> (64 - bs);
                }
            }
        }
        Self::from_words(order, acc)
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.order == 0 {
            return Err(SeriesError::Empty);
        }
        if !self.get(0) {
            return Err(SeriesError::NonUnitConstant);
        }
        let support: Vec<usize> = self.ones().skip(1).collect();
        let mut g = Self::zero(self.order);
        g.set(0, true);
        for k in 1..self.order {
            let mut b = false;
            for &j in support.iter().take_while(|&&j| j <= k) {
                b ^= g.get(k - j);
            }
            if b {
                g.set(k, true);
            }
        }
        Ok(g)
    }

    /// `q·f'` over the binary field: keeps exactly the odd-index bits.
    pub fn theta(&self) -> Self {
        let words = self.words.iter().map(|w| w & 0xAAAA_AAAA_AAAA_AAAA).collect();
        Self::from_words(self.order, words)
    }

    /// `q·f'/f` over the binary field.
    pub fn qdlog(&self) -> Result<Self, SeriesError> {
        Ok(self.theta().mul(&self.inv()?))
    }

    /// `f²`, which over the binary field is `f(q²)`.
    pub fn square(&self) -> Self {
        let mut out = Self::zero(self.order);
        for i in self.ones() {
            if 2 * i >= self.order {
                break;
            }
            out.set(2 * i, true);
        }
        out
    }

    /// Square root at half precision: `g` of order `⌈order/2⌉` with
    /// `g² = self`, or `None` when some odd coefficient is set.
    pub fn sqrt(&self) -> Option<Self> {
        if !self.theta().is_zero() {
            return None;
        }
        let half = self.order.div_ceil(2);
        let mut g = Self::zero(half);
        for i in self.ones() {
            g.set(i / 2, true);
        }
        Some(g)
    }

    /// Zero-pads or truncates to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut words = self.words.clone();
        words.resize(order.div_ceil(64), 0);
        Self::from_words(order, words)
    }
}

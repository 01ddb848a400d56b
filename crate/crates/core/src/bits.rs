//! Fixed-length binary words.
//!
//! Bit 0 is the first (most significant) bit. Conversions to and from an
//! integer index use the big-endian convention, so rank `k` of a
//! distribution over `{0,1}^n` corresponds to `BitString::from_index(n, k - 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return domain("bit strings must have length >= 1");
        }
        Ok(Self {
            len,
            words: vec![0; len.div_ceil(64)],
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut s = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        Ok(s)
    }

    /// Big-endian encoding of `index` on `len` bits.
    pub fn from_index(len: usize, index: u64) -> Result<Self> {
        if len < 64 && index >> len != 0 {
            return domain(format!("index {index} does not fit in {len} bits"));
        }
        let mut s = Self::zeros(len)?;
        for i in 0..len.min(64) {
            let b = (index >> i) & 1 == 1;
            s.set(len - 1 - i, b);
        }
        Ok(s)
    }

    /// Big-endian integer value. Only defined for strings of at most 64 bits.
    pub fn to_index(&self) -> Result<u64> {
        if self.len > 64 {
            return domain(format!("{}-bit string has no u64 index", self.len));
        }
        Ok((0..self.len).fold(0u64, |acc, i| (acc << 1) | self.get(i) as u64))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn hamming(&self, other: &BitString) -> usize {
        assert_eq!(self.len, other.len, "Hamming distance needs equal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// The first `k` bits.
    pub fn prefix(&self, k: usize) -> Result<BitString> {
        if k == 0 || k > self.len {
            return domain(format!("prefix length {k} out of 1..={}", self.len));
        }
        let mut out = BitString::zeros(k)?;
        for i in 0..k {
            out.set(i, self.get(i));
        }
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

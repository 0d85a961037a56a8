//! Dense bit vectors with the word-level tricks the tree code needs.
//!
//! Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` are
//! always zero; every mutating operation restores that.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        v.clear_tail();
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    /// Low `len` bits of `value`; `len` must be at most 64.
    pub fn from_u64(value: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        let mut v = BitVec::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    /// Low 64 bits as an integer.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.len as u64
    }

    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn first_zero(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let i = wi * 64 + (!w).trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        self.zip(other, |a, b| a | b)
    }

    pub fn and_not(&self, other: &BitVec) -> BitVec {
        self.zip(other, |a, b| a & !b)
    }

    pub fn not(&self) -> BitVec {
        let mut v = BitVec {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        v.clear_tail();
        v
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// True when no bit in `lo..hi` is set.
    pub fn range_is_zero(&self, lo: usize, hi: usize) -> bool {
        debug_assert!(lo <= hi && hi <= self.len);
        if lo == hi {
            return true;
        }
        let (first, last) = (lo >> 6, (hi - 1) >> 6);
        for wi in first..=last {
            let mut w = self.words[wi];
            if wi == first {
                w &= u64::MAX << (lo & 63);
            }
            if wi == last && hi & 63 != 0 {
                w &= u64::MAX >> (64 - (hi & 63));
            }
            if w != 0 {
                return false;
            }
        }
        true
    }

    /// Copy of bits `lo..hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> BitVec {
        debug_assert!(lo <= hi && hi <= self.len);
        let mut out = BitVec::zeros(hi - lo);
        let (shift, base) = (lo & 63, lo >> 6);
        for (i, w) in out.words.iter_mut().enumerate() {
            let low = self.words[base + i] >> shift;
            let high = match (shift, self.words.get(base + i + 1)) {
                (0, _) | (_, None) => 0,
                (_, Some(&next)) => next << (64 - shift),
            };
            *w = low | high;
        }
        out.clear_tail();
        out
    }

    pub fn set_range(&mut self, lo: usize, hi: usize) {
        debug_assert!(lo <= hi && hi <= self.len);
        if lo == hi {
            return;
        }
        let (first, last) = (lo >> 6, (hi - 1) >> 6);
        for wi in first..=last {
            let mut m = u64::MAX;
            if wi == first {
                m &= u64::MAX << (lo & 63);
            }
            if wi == last && hi & 63 != 0 {
                m &= u64::MAX >> (64 - (hi & 63));
            }
            self.words[wi] |= m;
        }
    }

    /// Combine adjacent pairs `(2i, 2i+1)` with OR; the result has half the length.
    pub fn pair_or(&self) -> BitVec {
        self.pair_reduce(|w| (w | (w >> 1)) & EVEN_BITS)
    }

    /// Combine adjacent pairs `(2i, 2i+1)` with AND; the result has half the length.
    pub fn pair_and(&self) -> BitVec {
        self.pair_reduce(|w| (w & (w >> 1)) & EVEN_BITS)
    }

    /// Duplicate every bit: bit `i` becomes bits `2i` and `2i+1`.
    pub fn expand_pairs(&self) -> BitVec {
        let len = self.len * 2;
        let mut words = Vec::with_capacity(len.div_ceil(64));
        for &w in &self.words {
            words.push(spread(w & 0xffff_ffff));
            words.push(spread(w >> 32));
        }
        words.truncate(len.div_ceil(64));
        BitVec { words, len }
    }

    /// Little-endian hex: byte `j` holds bits `8j..8j+8`, lowest bit first.
    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = self
            .words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(self.len.div_ceil(8).max(1))
            .collect();
        hex::encode(bytes)
    }

    pub fn from_hex(s: &str, len: usize) -> Result<BitVec, Error> {
        let bytes = hex::decode(s.trim()).map_err(|e| Error::Parse(alloc::format!("hex: {e}")))?;
        let want = len.div_ceil(8).max(1);
        if bytes.len() != want {
            return Err(Error::Parse(alloc::format!(
                "expected {want} hex bytes for {len} bits, found {}",
                bytes.len()
            )));
        }
        let mut v = BitVec::zeros(len);
        for (j, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            if let Some(w) = v.words.get_mut(j) {
                *w = u64::from_le_bytes(buf);
            } else if u64::from_le_bytes(buf) != 0 {
                return Err(Error::Parse("bits set past vector length".into()));
            }
        }
        let before = v.clone();
        v.clear_tail();
        if v != before {
            return Err(Error::Parse("bits set past vector length".into()));
        }
        Ok(v)
    }

    fn zip(&self, other: &BitVec, f: impl Fn(u64, u64) -> u64) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            len: self.len,
        }
    }

    fn pair_reduce(&self, op: impl Fn(u64) -> u64) -> BitVec {
        debug_assert!(self.len.is_multiple_of(2) || self.len == 1);
        let len = self.len / 2;
        let mut out = BitVec::zeros(len);
        for (wi, &w) in self.words.iter().enumerate() {
            let half = compress(op(w));
            if half == 0 {
                continue;
            }
            let target = wi * 32;
            out.words[target >> 6] |= half << (target & 63);
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> (64 - rem);
            }
        }
    }
}

/// Gather the even-position bits of `x` into the low 32 bits.
#[inline]
fn compress(mut x: u64) -> u64 {
    x &= EVEN_BITS;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    (x | (x >> 16)) & 0x0000_0000_ffff_ffff
}

/// Inverse of `compress` followed by duplication into the odd positions.
#[inline]
fn spread(mut x: u64) -> u64 {
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & EVEN_BITS;
    x | (x << 1)
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}; {}]", self.len, self.to_hex())
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_matches_bitwise_copy() {
        let v = BitVec::from_fn(300, |i| (i * 11 + i / 7) % 3 == 0);
        for (lo, hi) in [(0, 300), (5, 70), (64, 128), (63, 65), (100, 100), (1, 299)] {
            let s = v.slice(lo, hi);
            assert_eq!(s, BitVec::from_fn(hi - lo, |i| v.get(lo + i)), "{lo}..{hi}");
        }
    }

    #[test]
    fn pair_reductions_match_bitwise_definition() {
        let v = BitVec::from_fn(256, |i| (i * 7 + i / 3) % 5 < 3);
        let or = v.pair_or();
        let and = v.pair_and();
        assert_eq!(or.len(), 128);
        for i in 0..128 {
            assert_eq!(or.get(i), v.get(2 * i) || v.get(2 * i + 1));
            assert_eq!(and.get(i), v.get(2 * i) && v.get(2 * i + 1));
        }
    }

    #[test]
    fn short_vectors_reduce_and_expand() {
        let v = BitVec::from_u64(0b1101, 4);
        assert_eq!(v.pair_or().to_u64(), 0b11);
        assert_eq!(v.pair_and().to_u64(), 0b10);
        let e = BitVec::from_u64(0b10, 2).expand_pairs();
        assert_eq!(e.len(), 4);
        assert_eq!(e.to_u64(), 0b1100);
        let single = BitVec::from_u64(1, 1).expand_pairs();
        assert_eq!(single.to_u64(), 0b11);
    }

    #[test]
    fn expand_then_and_roundtrips() {
        let v = BitVec::from_fn(200, |i| i % 3 == 0 || i % 11 == 4);
        let e = v.expand_pairs();
        for i in 0..200 {
            assert_eq!(e.get(2 * i), v.get(i));
            assert_eq!(e.get(2 * i + 1), v.get(i));
        }
        assert_eq!(e.pair_and(), v);
    }

    #[test]
    fn ranges() {
        let mut v = BitVec::zeros(300);
        v.set_range(70, 140);
        assert_eq!(v.count_ones(), 70);
        assert!(v.range_is_zero(0, 70));
        assert!(!v.range_is_zero(60, 71));
        assert!(v.range_is_zero(140, 300));
        assert!(!v.range_is_zero(139, 140));
    }

    #[test]
    fn hex_is_little_endian_by_index() {
        let v = BitVec::from_fn(4, |i| i == 1 || i == 3);
        assert_eq!(v.to_hex(), "0a");
        let w = BitVec::from_fn(12, |i| i == 0 || i == 8);
        assert_eq!(w.to_hex(), "0101");
        assert_eq!(BitVec::from_hex("0101", 12).unwrap(), w);
        assert!(BitVec::from_hex("0110", 12).is_err());
        assert!(BitVec::from_hex("01", 12).is_err());
    }

    #[test]
    fn ones_and_zeros() {
        let v = BitVec::from_fn(130, |i| i == 3 || i == 64 || i == 129);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), [3, 64, 129]);
        assert_eq!(BitVec::ones(130).first_zero(), None);
        assert_eq!(v.first_zero(), Some(0));
        assert_eq!(BitVec::ones(70).count_ones(), 70);
        assert_eq!(BitVec::ones(70).not().count_ones(), 0);
    }
}

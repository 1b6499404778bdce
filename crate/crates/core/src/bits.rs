//! Packed bit vectors.
//!
//! Bit `j` lives in word `j / 64` at position `j % 64`. Strings written in
//! the usual left-to-right order (`s_{L-1}, ..., s_0`) store their leftmost
//! element at the highest bit index, so the hex rendering of a vector is the
//! big-endian hexadecimal of the packed value and a right shift of the
//! written string is a right shift of the packed value.

use crate::error::{Error, Result};

/// Fixed-length bit vector packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// All-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Parses a big-endian hex string into a vector of exactly `4 * s.len()` bits.
    pub fn from_hex(s: &str) -> Result<Self> {
        let len = s.len() * 4;
        let mut v = BitVec::zeros(len);
        for (pos, ch) in s.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::BadHex(s.to_string()))? as u64;
            // first hex digit holds bits len-1 .. len-4
            let hi = len - 4 * pos; // one past the top bit of this nibble
            for k in 0..4 {
                if (nibble >> (3 - k)) & 1 == 1 {
                    v.set(hi - 1 - k, true);
                }
            }
        }
        Ok(v)
    }

    /// Big-endian lowercase hex; `len` must be a multiple of 4.
    pub fn to_hex(&self) -> String {
        assert!(self.len.is_multiple_of(4), "bit length not a multiple of 4");
        let mut out = String::with_capacity(self.len / 4);
        for d in (0..self.len / 4).rev() {
            let mut nibble = 0u32;
            for k in 0..4 {
                nibble = (nibble << 1) | self.get(4 * d + 3 - k) as u32;
            }
            out.push(char::from_digit(nibble, 16).unwrap());
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        debug_assert!(j < self.len);
        (self.words[j >> 6] >> (j & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, v: bool) {
        debug_assert!(j < self.len);
        let mask = 1u64 << (j & 63);
        if v {
            self.words[j >> 6] |= mask;
        } else {
            self.words[j >> 6] &= !mask;
        }
    }

    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Parity of the AND of two equal-length vectors (GF(2) inner product).
    pub fn and_parity(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Weight of `self & (self >> t)`: the overlap of the written string with
    /// itself shifted `t` places to the right.
    pub fn overlap_weight(&self, t: usize) -> u32 {
        if t >= self.len {
            return 0;
        }
        let (k, s) = (t / 64, (t % 64) as u32);
        let n = self.words.len();
        let mut acc = 0u32;
        for i in 0..n - k {
            let mut sh = self.words[i + k] >> s;
            if s > 0 && i + k + 1 < n {
                sh |= self.words[i + k + 1] << (64 - s);
            }
            acc += (self.words[i] & sh).count_ones();
        }
        acc
    }

    /// In-place shift one place toward bit 0 (`new[j] = old[j + 1]`).
    pub fn shr1(&mut self) {
        let n = self.words.len();
        for i in 0..n {
            let carry = if i + 1 < n {
                self.words[i + 1] << 63
            } else {
                0
            };
            self.words[i] = (self.words[i] >> 1) | carry;
        }
    }

    /// In-place shift one place away from bit 0 (`new[j] = old[j - 1]`,
    /// bit 0 cleared, bit `len - 1` of the old value dropped).
    pub fn shl1(&mut self) {
        let n = self.words.len();
        for i in (0..n).rev() {
            let carry = if i > 0 { self.words[i - 1] >> 63 } else { 0 };
            self.words[i] = (self.words[i] << 1) | carry;
        }
        self.mask_top();
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&j| self.get(j))
    }

    fn mask_top(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[{}; ", self.len)?;
        for j in (0..self.len).rev() {
            write!(f, "{}", self.get(j) as u8)?;
        }
        write!(f, "]")
    }
}

//! Scalar bit-manipulation primitives: index reversal (bitwise and by byte
//! table), count-leading-zeros, and the inductive XOR step that produces
//! `rev(i + 1)` from `rev(i)` without reversing anything.

use std::fmt;

use crate::error::{Error, Result};

/// Index math is done in a 64-bit machine word.
pub const WORD_BITS: u32 = usize::BITS;

/// Largest supported number of index bits.
pub const MAX_BITS: u32 = 48;

const _: () = assert!(WORD_BITS == 64, "index math assumes a 64-bit usize");

/// Number of index bits `b` of a problem of length `n = 2^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitWidth(u32);

impl BitWidth {
    pub fn new(bits: u32) -> Result<Self> {
        if (1..=MAX_BITS).contains(&bits) {
            Ok(Self(bits))
        } else {
            Err(Error::InvalidBitWidth(bits))
        }
    }

    /// Bit width of a slice length, which must be a power of two `>= 2`.
    pub fn from_len(len: usize) -> Result<Self> {
        if len.is_power_of_two() && len >= 2 {
            Self::new(len.trailing_zeros())
        } else {
            Err(Error::NotPowerOfTwo(len))
        }
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    /// `n = 2^b`; never zero.
    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub const fn len(self) -> usize {
        1 << self.0
    }

    /// Mask of the low `b` bits.
    #[inline]
    pub const fn mask(self) -> usize {
        self.len() - 1
    }

    pub(crate) fn check_len(self, actual: usize) -> Result<()> {
        if actual == self.len() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                bits: self.0,
                expected: self.len(),
                actual,
            })
        }
    }
}

impl TryFrom<u32> for BitWidth {
    type Error = Error;

    fn try_from(bits: u32) -> Result<Self> {
        Self::new(bits)
    }
}

impl fmt::Display for BitWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Reverses the low `bits` bits of `i`, one bit per step.
///
/// `bits` may be zero here (the empty string reverses to itself), which the
/// COBRA and schedule code rely on for degenerate middle segments.
///
/// # Panics
///
/// If `i >= 2^bits`.
#[inline]
pub fn rev_bits(mut i: usize, bits: u32) -> usize {
    assert!(
        bits >= WORD_BITS || i >> bits == 0,
        "index {i} out of range for {bits} bits"
    );
    let mut out = 0;
    for _ in 0..bits {
        out = (out << 1) | (i & 1);
        i >>= 1;
    }
    out
}

/// Bitwise reversal of a `b`-bit index.
///
/// # Panics
///
/// If `i >= 2^b`.
#[inline]
pub fn rev_naive(i: usize, b: BitWidth) -> usize {
    rev_bits(i, b.get())
}

/// Table of the 256 bit-reversed bytes.
#[derive(Clone, PartialEq, Eq)]
pub struct ByteReverseTable {
    entries: [u8; 256],
}

impl ByteReverseTable {
    #[inline]
    pub const fn entries(&self) -> &[u8; 256] {
        &self.entries
    }

    #[inline]
    pub const fn get(&self, byte: u8) -> u8 {
        self.entries[byte as usize]
    }
}

impl Default for ByteReverseTable {
    fn default() -> Self {
        BYTE_TABLE.clone()
    }
}

impl fmt::Debug for ByteReverseTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ByteReverseTable").finish_non_exhaustive()
    }
}

pub const fn build_byte_table() -> ByteReverseTable {
    let mut entries = [0u8; 256];
    let mut v = 0;
    while v < 256 {
        let mut byte = v as u8;
        let mut reversed = 0u8;
        let mut k = 0;
        while k < 8 {
            reversed = (reversed << 1) | (byte & 1);
            byte >>= 1;
            k += 1;
        }
        entries[v] = reversed;
        v += 1;
    }
    ByteReverseTable { entries }
}

/// Process-wide copy of the reversed-byte table.
pub static BYTE_TABLE: ByteReverseTable = build_byte_table();

/// Reverses a `b`-bit index by reversing the whole 64-bit word through the
/// byte table (8 lookups and a byte swap), then shifting right by `64 - b`.
///
/// # Panics
///
/// If `i >= 2^b`.
#[inline]
pub fn rev_bytetable(i: usize, b: BitWidth, table: &ByteReverseTable) -> usize {
    assert!(i >> b.get() == 0, "index {i} out of range for {b} bits");
    let bytes = i.to_le_bytes().map(|byte| table.get(byte));
    usize::from_be_bytes(bytes) >> (WORD_BITS - b.get())
}

/// Leading zero count of a nonzero word.
///
/// # Panics
///
/// If `x == 0`.
#[inline]
pub fn count_leading_zeros(x: usize) -> u32 {
    assert!(x != 0, "count_leading_zeros is undefined for zero");
    x.leading_zeros()
}

/// Software count-leading-zeros by binary bisection: test whether the upper
/// half of the remaining window holds a set bit, then narrow to that half.
///
/// # Panics
///
/// If `x == 0`.
pub fn clz_bisect(mut x: usize) -> u32 {
    assert!(x != 0, "count_leading_zeros is undefined for zero");
    let mut zeros = 0;
    let mut width = WORD_BITS / 2;
    while width > 0 {
        let upper_empty = x >> (WORD_BITS - width) == 0;
        if upper_empty {
            zeros += width;
            x <<= width;
        }
        width /= 2;
    }
    zeros
}

/// An index together with its bit-reversed value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RevPair {
    pub index: usize,
    pub reversed: usize,
}

impl RevPair {
    pub const ZERO: Self = Self {
        index: 0,
        reversed: 0,
    };
}

/// Advances `(i, rev(i))` to `(i + 1, rev(i + 1))`.
///
/// `i ^ (i + 1)` is a run of low ones; its reversal inside the `b`-bit frame
/// is the same run shifted to the top of the frame, and flipping those bits
/// in `rev(i)` yields `rev(i + 1)`.
#[inline]
pub fn xor_next(state: RevPair, b: BitWidth) -> RevPair {
    debug_assert!(state.index < b.mask(), "xor_next past the last index");
    debug_assert_eq!(state.reversed, rev_naive(state.index, b));
    let index = state.index + 1;
    let diff = state.index ^ index;
    let shift = count_leading_zeros(diff) - (WORD_BITS - b.get());
    RevPair {
        index,
        reversed: state.reversed ^ (diff << shift),
    }
}

/// Iterator over `(i, rev(i))` for `i` in `0..2^b`, driven by [`xor_next`].
#[derive(Clone, Debug)]
pub struct RevPairs {
    b: BitWidth,
    next: Option<RevPair>,
}

impl RevPairs {
    pub fn new(b: BitWidth) -> Self {
        Self {
            b,
            next: Some(RevPair::ZERO),
        }
    }
}

impl Iterator for RevPairs {
    type Item = RevPair;

    #[inline]
    fn next(&mut self) -> Option<RevPair> {
        let current = self.next?;
        self.next = (current.index < self.b.mask()).then(|| xor_next(current, self.b));
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.next.map_or(0, |p| self.b.len() - p.index);
        (left, Some(left))
    }
}

impl ExactSizeIterator for RevPairs {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bw(b: u32) -> BitWidth {
        BitWidth::new(b).unwrap()
    }

    fn string_rev(i: usize, b: u32) -> usize {
        let s = format!("{:0width$b}", i, width = b as usize);
        let r: String = s.chars().rev().collect();
        usize::from_str_radix(&r, 2).unwrap()
    }

    fn scan_clz(x: usize) -> u32 {
        let mut n = 0;
        let mut bit = 1usize << 63;
        while x & bit == 0 {
            n += 1;
            bit >>= 1;
        }
        n
    }

    #[test]
    fn bit_width_bounds() {
        assert!(BitWidth::new(0).is_err());
        assert!(BitWidth::new(49).is_err());
        assert_eq!(bw(48).len(), 1 << 48);
        assert_eq!(BitWidth::from_len(1024).unwrap().get(), 10);
        assert!(BitWidth::from_len(1).is_err());
        assert!(BitWidth::from_len(12).is_err());
    }

    #[test]
    fn rev_naive_examples() {
        assert_eq!(rev_naive(1, bw(3)), 4);
        for b in 1..=MAX_BITS {
            assert_eq!(rev_naive(0, bw(b)), 0);
        }
        assert_eq!(rev_naive(0b0110, bw(4)), 0b0110);
        let seq: Vec<_> = (0..8).map(|i| rev_naive(i, bw(3))).collect();
        assert_eq!(seq, [0, 4, 2, 6, 1, 5, 3, 7]);
    }

    #[test]
    fn rev_naive_matches_string_reversal() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..1000 {
            let i = rng.gen_range(0..1usize << 20);
            assert_eq!(rev_naive(i, bw(20)), string_rev(i, 20));
        }
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn rev_naive_rejects_wide_index() {
        rev_naive(8, bw(3));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn rev_bytetable_rejects_wide_index() {
        rev_bytetable(1 << 17, bw(17), &BYTE_TABLE);
    }

    #[test]
    fn byte_table() {
        let table = build_byte_table();
        assert_eq!(table.get(0x00), 0x00);
        assert_eq!(table.get(0x01), 0x80);
        assert_eq!(table.get(0xff), 0xff);
        for v in 0..=255u8 {
            assert_eq!(table.get(v) as usize, rev_naive(v as usize, bw(8)));
            assert_eq!(table.get(table.get(v)), v);
        }
        assert_eq!(table, ByteReverseTable::default());
    }

    #[test]
    fn rev_bytetable_agrees_with_naive() {
        let table = build_byte_table();
        assert_eq!(rev_bytetable(1, bw(3), &table), 4);
        assert_eq!(rev_bytetable(0, bw(17), &table), 0);
        for b in 1..=14 {
            for i in 0..1usize << b {
                assert_eq!(rev_bytetable(i, bw(b), &table), rev_naive(i, bw(b)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for b in 15..=30 {
            for _ in 0..500 {
                let i = rng.gen_range(0..1usize << b);
                assert_eq!(rev_bytetable(i, bw(b), &table), string_rev(i, b));
            }
        }
    }

    #[test]
    fn clz_examples() {
        assert_eq!(count_leading_zeros(1), WORD_BITS - 1);
        assert_eq!(count_leading_zeros(1 << 63), 0);
        assert_eq!(clz_bisect(1), WORD_BITS - 1);
        assert_eq!(clz_bisect(1 << 63), 0);
        assert_eq!(clz_bisect(usize::MAX), 0);
    }

    #[test]
    fn clz_matches_bit_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            // Spread magnitudes so every leading-zero count gets exercised.
            let x = rng.gen::<usize>() >> rng.gen_range(0..64);
            let x = x.max(1);
            assert_eq!(count_leading_zeros(x), scan_clz(x));
            assert_eq!(clz_bisect(x), scan_clz(x));
            assert_eq!(count_leading_zeros(x), WORD_BITS - 1 - x.ilog2());
        }
    }

    #[test]
    #[should_panic]
    fn clz_of_zero_panics() {
        count_leading_zeros(0);
    }

    #[test]
    fn xor_next_examples() {
        let b = bw(3);
        assert_eq!(
            xor_next(RevPair::ZERO, b),
            RevPair {
                index: 1,
                reversed: 4
            }
        );
        assert_eq!(
            xor_next(
                RevPair {
                    index: 3,
                    reversed: 6
                },
                b
            ),
            RevPair {
                index: 4,
                reversed: 1
            }
        );
    }

    #[test]
    fn xor_iteration_reproduces_rev_naive() {
        for b in 1..=16 {
            let b = bw(b);
            let mut count = 0;
            for pair in RevPairs::new(b) {
                assert_eq!(pair.reversed, rev_naive(pair.index, b));
                count += 1;
            }
            assert_eq!(count, b.len());
        }
    }

    #[test]
    fn rev_pairs_is_exact_size() {
        let mut it = RevPairs::new(bw(4));
        assert_eq!(it.len(), 16);
        it.next();
        assert_eq!(it.len(), 15);
        assert_eq!(it.by_ref().count(), 15);
        assert_eq!(it.len(), 0);
    }

    #[test]
    fn xor_reversed_values_form_a_permutation() {
        let b = bw(12);
        let mut seen = vec![false; b.len()];
        for p in RevPairs::new(b) {
            assert!(!seen[p.reversed]);
            seen[p.reversed] = true;
        }
        assert!(seen.into_iter().all(|s| s));
    }

    proptest! {
        #[test]
        fn involution(b in 1u32..=MAX_BITS, raw in any::<usize>()) {
            let b = bw(b);
            let i = raw & b.mask();
            prop_assert_eq!(rev_naive(rev_naive(i, b), b), i);
            prop_assert_eq!(rev_bytetable(i, b, &BYTE_TABLE), rev_naive(i, b));
        }

        #[test]
        fn increment_difference_is_low_run(i in 0usize..usize::MAX) {
            let d = i ^ (i + 1);
            prop_assert!(d.wrapping_add(1).is_power_of_two() || d == usize::MAX);
        }

        #[test]
        fn xor_next_matches_naive(b in 1u32..=MAX_BITS, raw in any::<usize>()) {
            let b = bw(b);
            let i = (raw & b.mask()).min(b.mask() - 1);
            let next = xor_next(RevPair { index: i, reversed: rev_naive(i, b) }, b);
            prop_assert_eq!(next.index, i + 1);
            prop_assert_eq!(next.reversed, rev_naive(i + 1, b));
        }
    }
}

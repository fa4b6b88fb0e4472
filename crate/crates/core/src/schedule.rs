//! Explicit swap schedules: every pair `(i, rev(i))` with `i < rev(i)`,
//! found by working inward from the outermost bit pair.
//!
//! For an index `p x s` with single outer bits `p` and `s`:
//!
//! * `1 x 0` is never below its reverse, so the branch is dropped;
//! * `0 x 1` is always below its reverse, so every middle `x` is emitted;
//! * `0 x 0` and `1 x 1` are below their reverse exactly when `x` is, which
//!   is the same question two bits smaller.
//!
//! The pair count obeys `r(b) = 2^(b-2) + 2 r(b-2)` with `r(1) = 0`,
//! `r(2) = 1`, which closes to `(2^b - 2^ceil(b/2)) / 2`.

use std::io::{self, Read, Write};

use crate::bits::{BitWidth, RevPairs};
use crate::error::{Error, Result};

/// Widest problem a schedule will be generated for. At `b = 26` the pair list
/// holds about 2^25 entries.
pub const SCHEDULE_MAX_BITS: u32 = 26;

/// Magic prefix of the serialized schedule stream.
pub const SCHEDULE_MAGIC: &[u8; 8] = b"BRSCHD01";

/// Ordered list of index pairs `(lo, hi)` with `hi = rev(lo)` and `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapSchedule {
    b: BitWidth,
    // u32 suffices below the 26-bit cap and halves the footprint.
    pairs: Vec<(u32, u32)>,
}

impl SwapSchedule {
    #[inline]
    pub fn bits(&self) -> BitWidth {
        self.b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.pairs
            .iter()
            .map(|&(lo, hi)| (lo as usize, hi as usize))
    }

    /// Applies every swap to `data`, which must have length `2^b`.
    pub fn apply<T>(&self, data: &mut [T]) -> Result<()> {
        self.b.check_len(data.len())?;
        self.apply_unchecked_len(data);
        Ok(())
    }

    /// Length must already be verified by the caller.
    #[inline]
    pub(crate) fn apply_unchecked_len<T>(&self, data: &mut [T]) {
        debug_assert_eq!(data.len(), self.b.len());
        let ptr = data.as_mut_ptr();
        for &(lo, hi) in &self.pairs {
            // SAFETY: every pair was generated for this `b`, so both indices
            // are below 2^b == data.len(), and lo != hi.
            unsafe { std::ptr::swap(ptr.add(lo as usize), ptr.add(hi as usize)) };
        }
    }

    /// Writes the schedule as `BRSCHD01`, one byte `b`, then little-endian
    /// 64-bit `lo`, `hi` pairs.
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(SCHEDULE_MAGIC)?;
        out.write_all(&[self.b.get() as u8])?;
        for &(lo, hi) in &self.pairs {
            out.write_all(&u64::from(lo).to_le_bytes())?;
            out.write_all(&u64::from(hi).to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads a stream written by [`SwapSchedule::write_to`] and checks every
    /// pair against the bit width in the header.
    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let io_err = |e: io::Error| Error::ScheduleFormat(e.to_string());
        let mut header = [0u8; 9];
        input.read_exact(&mut header).map_err(io_err)?;
        if &header[..8] != SCHEDULE_MAGIC {
            return Err(Error::ScheduleFormat("bad magic".into()));
        }
        let b = BitWidth::new(u32::from(header[8]))?;
        check_cap(b)?;
        let mut body = Vec::new();
        input.read_to_end(&mut body).map_err(io_err)?;
        if body.len() % 16 != 0 {
            return Err(Error::ScheduleFormat(format!(
                "trailing {} bytes",
                body.len() % 16
            )));
        }
        let mut pairs = Vec::with_capacity(body.len() / 16);
        for chunk in body.chunks_exact(16) {
            let lo = u64::from_le_bytes(chunk[..8].try_into().unwrap());
            let hi = u64::from_le_bytes(chunk[8..].try_into().unwrap());
            let valid = lo < hi
                && hi < b.len() as u64
                && crate::bits::rev_naive(lo as usize, b) == hi as usize;
            if !valid {
                return Err(Error::ScheduleFormat(format!(
                    "pair ({lo}, {hi}) is not a reversal pair for b={b}"
                )));
            }
            pairs.push((lo as u32, hi as u32));
        }
        Ok(Self { b, pairs })
    }
}

fn check_cap(b: BitWidth) -> Result<()> {
    if b.get() > SCHEDULE_MAX_BITS {
        Err(Error::ScheduleTooLarge {
            bits: b.get(),
            cap: SCHEDULE_MAX_BITS,
        })
    } else {
        Ok(())
    }
}

/// Generates all swaps of the `b`-bit permutation.
///
/// Emission order: at each level the `0 x 0` branch is expanded first, then
/// the `0 x 1` block (middle values ascending), then the `1 x 1` branch.
pub fn generate_swap_schedule(b: BitWidth) -> Result<SwapSchedule> {
    check_cap(b)?;
    let mut pairs = Vec::with_capacity(swap_count(b) as usize);
    expand(0, 0, b.get(), &mut pairs);
    debug_assert_eq!(pairs.len() as u64, swap_count(b));
    Ok(SwapSchedule { b, pairs })
}

/// `fixed` holds the palindromic outer bits decided so far; the undecided
/// middle occupies bits `offset .. offset + width`.
fn expand(fixed: usize, offset: u32, width: u32, out: &mut Vec<(u32, u32)>) {
    if width < 2 {
        return;
    }
    let top = 1usize << (offset + width - 1);
    let bottom = 1usize << offset;

    // 0 x 0
    expand(fixed, offset + 1, width - 2, out);

    // 0 x 1: index has the bottom bit, its reverse has the top bit, and the
    // inner bits reverse among themselves.
    let inner = width - 2;
    let lo_base = fixed | bottom;
    let hi_base = fixed | top;
    if inner == 0 {
        out.push((lo_base as u32, hi_base as u32));
    } else {
        let inner_bits = BitWidth::new(inner).expect("inner width is within range");
        for p in RevPairs::new(inner_bits) {
            let lo = lo_base | (p.index << (offset + 1));
            let hi = hi_base | (p.reversed << (offset + 1));
            out.push((lo as u32, hi as u32));
        }
    }

    // 1 x 1
    expand(fixed | top | bottom, offset + 1, width - 2, out);
}

/// Number of swaps for `b` bits, by the recurrence
/// `r(b) = 2^(b-2) + 2 r(b-2)`, `r(1) = 0`, `r(2) = 1`.
pub fn swap_count(b: BitWidth) -> u64 {
    swap_count_recurrence(b.get())
}

fn swap_count_recurrence(b: u32) -> u64 {
    match b {
        0 | 1 => 0,
        2 => 1,
        _ => (1u64 << (b - 2)) + 2 * swap_count_recurrence(b - 2),
    }
}

/// `(2^b - 2^ceil(b/2)) / 2`: every index except the palindromes, halved.
pub fn swap_count_closed_form(b: BitWidth) -> u64 {
    let b = b.get();
    ((1u64 << b) - (1u64 << b.div_ceil(2))) / 2
}

/// Applies `schedule` to `data`.
pub fn apply_schedule<T>(data: &mut [T], schedule: &SwapSchedule) -> Result<()> {
    schedule.apply(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::rev_naive;

    fn bw(b: u32) -> BitWidth {
        BitWidth::new(b).unwrap()
    }

    fn brute_pairs(b: BitWidth) -> Vec<(usize, usize)> {
        (0..b.len())
            .filter_map(|i| {
                let r = rev_naive(i, b);
                (i < r).then_some((i, r))
            })
            .collect()
    }

    #[test]
    fn base_cases() {
        assert!(generate_swap_schedule(bw(1)).unwrap().is_empty());
        let two: Vec<_> = generate_swap_schedule(bw(2)).unwrap().pairs().collect();
        assert_eq!(two, [(1, 2)]);
        assert_eq!(generate_swap_schedule(bw(3)).unwrap().len(), 2);
        assert_eq!(generate_swap_schedule(bw(4)).unwrap().len(), 6);
    }

    #[test]
    fn emission_order_b4() {
        let got: Vec<_> = generate_swap_schedule(bw(4)).unwrap().pairs().collect();
        // 0x0 -> (0010, 0100); 0x1 -> 0001,0011,0101,0111; 1x1 -> (1011, 1101)
        assert_eq!(got, [(2, 4), (1, 8), (3, 12), (5, 10), (7, 14), (11, 13)]);
    }

    #[test]
    fn matches_brute_force() {
        for b in 1..=16 {
            let b = bw(b);
            let mut got: Vec<_> = generate_swap_schedule(b).unwrap().pairs().collect();
            got.sort_unstable();
            assert_eq!(got, brute_pairs(b), "b={b}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(swap_count(bw(1)), 0);
        assert_eq!(swap_count(bw(2)), 1);
        assert_eq!(swap_count(bw(4)), 6);
        for b in 1..=40 {
            assert_eq!(swap_count(bw(b)), swap_count_closed_form(bw(b)), "b={b}");
        }
        for b in 3..=40 {
            assert_eq!(
                swap_count(bw(b)),
                (1 << (b - 2)) + 2 * swap_count(bw(b - 2))
            );
        }
    }

    #[test]
    fn disjoint_pairs() {
        let b = bw(14);
        let mut seen = vec![false; b.len()];
        for (lo, hi) in generate_swap_schedule(b).unwrap().pairs() {
            assert!(lo < hi);
            assert!(!seen[lo] && !seen[hi]);
            seen[lo] = true;
            seen[hi] = true;
        }
    }

    #[test]
    fn apply_examples() {
        let mut v: Vec<u32> = (0..8).collect();
        apply_schedule(&mut v, &generate_swap_schedule(bw(3)).unwrap()).unwrap();
        assert_eq!(v, [0, 4, 2, 6, 1, 5, 3, 7]);

        let mut two = [7u8, 9];
        apply_schedule(&mut two, &generate_swap_schedule(bw(1)).unwrap()).unwrap();
        assert_eq!(two, [7, 9]);
    }

    #[test]
    fn apply_twice_is_identity() {
        let s = generate_swap_schedule(bw(11)).unwrap();
        let orig: Vec<u64> = (0..1u64 << 11).map(|i| i * 7 + 3).collect();
        let mut v = orig.clone();
        s.apply(&mut v).unwrap();
        assert_ne!(v, orig);
        s.apply(&mut v).unwrap();
        assert_eq!(v, orig);
    }

    #[test]
    fn apply_rejects_wrong_length() {
        let s = generate_swap_schedule(bw(3)).unwrap();
        let mut v = [0u8; 4];
        assert!(matches!(s.apply(&mut v), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            generate_swap_schedule(bw(27)),
            Err(Error::ScheduleTooLarge { bits: 27, cap: 26 })
        );
    }

    #[test]
    fn serialization_round_trip() {
        let s = generate_swap_schedule(bw(9)).unwrap();
        let mut bytes = Vec::new();
        s.write_to(&mut bytes).unwrap();
        assert_eq!(&bytes[..8], b"BRSCHD01");
        assert_eq!(bytes[8], 9);
        assert_eq!(bytes.len(), 9 + 16 * s.len());
        let (lo, hi) = s.pairs().next().unwrap();
        assert_eq!(&bytes[9..17], &(lo as u64).to_le_bytes());
        assert_eq!(&bytes[17..25], &(hi as u64).to_le_bytes());
        assert_eq!(SwapSchedule::read_from(bytes.as_slice()).unwrap(), s);
    }

    #[test]
    fn deserialization_rejects_garbage() {
        assert!(SwapSchedule::read_from(&b"BRSCHD02\x03"[..]).is_err());
        let mut bytes = b"BRSCHD01\x03".to_vec();
        bytes.extend_from_slice(&1u64.to_le_bytes());
        bytes.extend_from_slice(&2u64.to_le_bytes());
        assert!(matches!(
            SwapSchedule::read_from(bytes.as_slice()),
            Err(Error::ScheduleFormat(_))
        ));
        bytes.truncate(9 + 12);
        assert!(SwapSchedule::read_from(bytes.as_slice()).is_err());
    }
}

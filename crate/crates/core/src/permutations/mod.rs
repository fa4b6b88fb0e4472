//! Loop-based bit-reversed permutations: Stockham auto-sort, the bitwise and
//! byte-table `rev` loops, the inductive XOR loop, pairwise bit exchange,
//! and COBRA (in [`cobra`]).
//!
//! All of them leave `data[i] = old[rev(i)]`.

mod cobra;

pub use cobra::{cobra_in_place, cobra_out_of_place, Cobra, CobraConfig};

use crate::bits::{rev_bytetable, rev_naive, BitWidth, ByteReverseTable, RevPairs};
use crate::element::Element;
use crate::error::Result;
use crate::scratch::Scratch;

/// Stockham auto-sort: every even-odd split of the recursive FFT performed up
/// front, largest block first, each through `scratch` (capacity `n`).
pub fn stockham_permute<T: Element>(
    data: &mut [T],
    b: BitWidth,
    scratch: &mut Scratch<T>,
) -> Result<()> {
    b.check_len(data.len())?;
    let buf = scratch.take(data.len())?;
    let mut block = data.len();
    while block >= 2 {
        even_odd_blocks(data, block, buf);
        block /= 2;
    }
    Ok(())
}

/// Within each aligned `block`, moves even offsets to the front half and odd
/// offsets to the back half.
fn even_odd_blocks<T: Copy>(data: &mut [T], block: usize, buf: &mut [T]) {
    let half = block / 2;
    let buf = &mut buf[..block];
    for chunk in data.chunks_exact_mut(block) {
        let (evens, odds) = buf.split_at_mut(half);
        for (j, pair) in chunk.chunks_exact(2).enumerate() {
            evens[j] = pair[0];
            odds[j] = pair[1];
        }
        chunk.copy_from_slice(buf);
    }
}

/// Swaps `i` with `rev(i)` whenever `i < rev(i)`, reversing bit by bit.
pub fn naive_bitwise_permute<T>(data: &mut [T], b: BitWidth) -> Result<()> {
    b.check_len(data.len())?;
    for index in 1..data.len() - 1 {
        let reversed = rev_naive(index, b);
        // Each unordered pair is swapped once.
        if index < reversed {
            data.swap(index, reversed);
        }
    }
    Ok(())
}

/// Same loop as [`naive_bitwise_permute`] with table-driven reversal.
pub fn bytetable_permute<T>(data: &mut [T], b: BitWidth, table: &ByteReverseTable) -> Result<()> {
    b.check_len(data.len())?;
    for index in 1..data.len() - 1 {
        let reversed = rev_bytetable(index, b, table);
        if index < reversed {
            data.swap(index, reversed);
        }
    }
    Ok(())
}

/// Walks `(i, rev(i))` with the inductive XOR step; no reversal is computed.
pub fn xor_permute<T>(data: &mut [T], b: BitWidth) -> Result<()> {
    b.check_len(data.len())?;
    for p in RevPairs::new(b) {
        if p.index < p.reversed {
            data.swap(p.index, p.reversed);
        }
    }
    Ok(())
}

/// Exchanges bit positions `k` and `b-1-k` for every `k < b/2`, one pass per
/// pair; the composition of all passes is full reversal.
pub fn pair_bitwise_permute<T>(data: &mut [T], b: BitWidth) -> Result<()> {
    b.check_len(data.len())?;
    pair_bitwise_swaps(b, |i, j| data.swap(i, j));
    Ok(())
}

/// Drives the swap pattern of [`pair_bitwise_permute`]. For pass `k`, every
/// index with bit `b-1-k` set and bit `k` clear is paired with the index that
/// has both bits toggled. The low bits below `k` vary fastest so consecutive
/// swaps touch contiguous runs.
pub(crate) fn pair_bitwise_swaps(b: BitWidth, mut swap: impl FnMut(usize, usize)) {
    let bits = b.get();
    for k in 0..bits / 2 {
        let hi_bit = bits - 1 - k;
        let lo_bit = k;
        let low_run = 1usize << lo_bit;
        let mid_count = 1usize << (hi_bit - lo_bit - 1);
        let top_count = 1usize << (bits - 1 - hi_bit);
        for top in 0..top_count {
            for mid in 0..mid_count {
                let shared = (top << (hi_bit + 1)) | (mid << (lo_bit + 1));
                let from = shared | (1 << hi_bit);
                let to = shared | (1 << lo_bit);
                for low in 0..low_run {
                    swap(from | low, to | low);
                }
            }
        }
    }
}

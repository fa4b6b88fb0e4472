//! COBRA: cache-optimal bit reversal through a `2^q x 2^q` buffer.
//!
//! An index is split as `x y z` with `|x| = |z| = q` and `|y| = b - 2q`, so
//! `rev(x y z) = rev(z) rev(y) rev(x)`. For each `y` the block of all `x, z`
//! is staged in the buffer at `[rev(x), z]` (contiguous in `z`), then drained
//! to `[rev(z), rev(y), x]` (contiguous in `x`).

use crate::bits::{rev_bits, BitWidth};
use crate::element::Element;
use crate::error::{Error, Result};

/// Block-bit parameter `q`; the buffer holds `t = 2^(2q)` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CobraConfig {
    q: u32,
}

impl CobraConfig {
    /// Largest `q` picked by [`CobraConfig::default_for`]: a 4096-element
    /// buffer, 64 KiB of 16-byte elements.
    pub const DEFAULT_MAX_Q: u32 = 6;

    pub const fn new(q: u32) -> Self {
        Self { q }
    }

    /// `min(b / 2, 6)`.
    pub fn default_for(b: BitWidth) -> Self {
        Self::new((b.get() / 2).min(Self::DEFAULT_MAX_Q))
    }

    #[inline]
    pub const fn block_bits(self) -> u32 {
        self.q
    }

    #[inline]
    pub const fn buffer_len(self) -> usize {
        1 << (2 * self.q)
    }

    /// Width of the middle segment `y`.
    fn middle_bits(self, b: BitWidth) -> Result<u32> {
        b.get()
            .checked_sub(2 * self.q)
            .ok_or(Error::CobraBlockBits {
                q: self.q,
                bits: b.get(),
            })
    }
}

/// COBRA with its buffer and the cached `rev(x)` table for `q`-bit values.
#[derive(Clone, Debug)]
pub struct Cobra<T> {
    config: CobraConfig,
    buffer: Vec<T>,
    rev_block: Vec<usize>,
}

impl<T: Element> Cobra<T> {
    pub fn new(config: CobraConfig) -> Self {
        let side = 1usize << config.q;
        Self {
            config,
            buffer: vec![T::default(); config.buffer_len()],
            rev_block: (0..side).map(|x| rev_bits(x, config.q)).collect(),
        }
    }

    pub fn config(&self) -> CobraConfig {
        self.config
    }

    /// `dest[rev(i)] = source[i]`. Reads only `source`, writes only `dest`.
    pub fn out_of_place(&mut self, source: &[T], dest: &mut [T], b: BitWidth) -> Result<()> {
        b.check_len(source.len())?;
        b.check_len(dest.len())?;
        let middle = self.config.middle_bits(b)?;
        for y in 0..1usize << middle {
            let ry = rev_bits(y, middle);
            self.fill(source, y, b);
            self.drain(dest, ry, b);
        }
        Ok(())
    }

    /// In-place variant. Each pair of middle values `{y, rev(y)}` is handled
    /// once, from the smaller side: the `y` block is staged in the buffer, the
    /// buffer is swapped against its destinations in the `rev(y)` block, and
    /// what came back is written over the `y` block. Self-paired blocks
    /// (`y = rev(y)`) only need staging and a drain.
    pub fn in_place(&mut self, data: &mut [T], b: BitWidth) -> Result<()> {
        b.check_len(data.len())?;
        let middle = self.config.middle_bits(b)?;
        for y in 0..1usize << middle {
            let ry = rev_bits(y, middle);
            if y > ry {
                continue;
            }
            self.fill(data, y, b);
            if y == ry {
                self.drain(data, ry, b);
            } else {
                self.swap_drain(data, ry, b);
                self.store_back(data, y, b);
            }
        }
        Ok(())
    }

    /// `buffer[rev(x), z] = source[x y z]`.
    #[inline]
    fn fill(&mut self, source: &[T], y: usize, b: BitWidth) {
        let q = self.config.q;
        let side = 1usize << q;
        let x_shift = b.get() - q;
        let y_base = y << q;
        for (x, &rx) in self.rev_block.iter().enumerate() {
            let src = (x << x_shift) | y_base;
            self.buffer[rx * side..][..side].copy_from_slice(&source[src..src + side]);
        }
    }

    /// `dest[rev(z) rev(y) x] = buffer[x, z]`.
    #[inline]
    fn drain(&self, dest: &mut [T], ry: usize, b: BitWidth) {
        let q = self.config.q;
        let side = 1usize << q;
        let x_shift = b.get() - q;
        for (z, &rz) in self.rev_block.iter().enumerate() {
            let dst = (rz << x_shift) | (ry << q);
            for (x, cell) in dest[dst..dst + side].iter_mut().enumerate() {
                *cell = self.buffer[x * side + z];
            }
        }
    }

    /// Like [`Cobra::drain`] but swaps, leaving the displaced `rev(y)` block
    /// contents in the buffer.
    #[inline]
    fn swap_drain(&mut self, data: &mut [T], ry: usize, b: BitWidth) {
        let q = self.config.q;
        let side = 1usize << q;
        let x_shift = b.get() - q;
        for (z, &rz) in self.rev_block.iter().enumerate() {
            let dst = (rz << x_shift) | (ry << q);
            for (x, cell) in data[dst..dst + side].iter_mut().enumerate() {
                std::mem::swap(cell, &mut self.buffer[x * side + z]);
            }
        }
    }

    /// Inverse of [`Cobra::fill`]: `data[x y z] = buffer[rev(x), z]`.
    #[inline]
    fn store_back(&self, data: &mut [T], y: usize, b: BitWidth) {
        let q = self.config.q;
        let side = 1usize << q;
        let x_shift = b.get() - q;
        let y_base = y << q;
        for (x, &rx) in self.rev_block.iter().enumerate() {
            let dst = (x << x_shift) | y_base;
            data[dst..dst + side].copy_from_slice(&self.buffer[rx * side..][..side]);
        }
    }
}

/// One-shot out-of-place COBRA; allocates its buffer.
pub fn cobra_out_of_place<T: Element>(
    source: &[T],
    dest: &mut [T],
    config: CobraConfig,
    b: BitWidth,
) -> Result<()> {
    Cobra::new(config).out_of_place(source, dest, b)
}

/// One-shot in-place COBRA; allocates its buffer.
pub fn cobra_in_place<T: Element>(data: &mut [T], config: CobraConfig, b: BitWidth) -> Result<()> {
    Cobra::new(config).in_place(data, b)
}

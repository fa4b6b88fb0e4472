//! Cache-oblivious recursive bit-reversed permutation.
//!
//! With `b` even and the index split into equal halves `x y`, reversal is
//! three steps: reverse `y` inside every contiguous row (`x rev(y)`), swap
//! the halves by transposing the `2^(b/2)`-square matrix (`rev(y) x`), and
//! reverse the low half again (`rev(y) rev(x)`). With `b` odd, one even-odd
//! split moves the lowest bit to the top and the two halves are solved at
//! `b - 1` bits.
//!
//! Small problems, and every sub-problem past the depth limit, run the
//! precomputed swap schedule. With a depth limit of one the total work is
//! `2 * 2^(b/2) * 2^(b/2) + 2^b`, linear in `n`; unlimited depth is
//! `Theta(n log n)` but stays cache-oblivious.

mod transpose;

pub use transpose::{transpose_square_inplace, SquareView, LEAF_SIDE};

pub(crate) use transpose::{swap_transposed, transpose_diagonal};

use crate::bits::BitWidth;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::schedule::{generate_swap_schedule, SwapSchedule, SCHEDULE_MAX_BITS};
use crate::scratch::Scratch;

/// When recursion stops and the swap schedule takes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RecursionPolicy {
    /// Problems of at most this many bits use the schedule directly.
    pub base_bits: u32,
    /// Maximum number of square splits before sub-problems use the schedule.
    /// `None` recurses all the way down to `base_bits`.
    pub depth_limit: Option<u32>,
}

impl RecursionPolicy {
    pub const DEFAULT_BASE_BITS: u32 = 9;

    pub fn new(base_bits: u32, depth_limit: Option<u32>) -> Result<Self> {
        if base_bits == 0 {
            return Err(Error::InvalidBaseBits(base_bits));
        }
        if base_bits > SCHEDULE_MAX_BITS {
            return Err(Error::ScheduleTooLarge {
                bits: base_bits,
                cap: SCHEDULE_MAX_BITS,
            });
        }
        if depth_limit == Some(0) {
            return Err(Error::InvalidDepthLimit);
        }
        Ok(Self {
            base_bits,
            depth_limit,
        })
    }

    /// Fully recursive policy.
    pub fn recursive(base_bits: u32) -> Result<Self> {
        Self::new(base_bits, None)
    }

    /// Depth-limited ("semi-recursive") policy.
    pub fn semi_recursive(base_bits: u32, depth_limit: u32) -> Result<Self> {
        Self::new(base_bits, Some(depth_limit))
    }

    fn is_base(&self, bits: u32, depth: u32) -> bool {
        bits <= self.base_bits || bits == 1 || self.depth_limit.is_some_and(|d| depth >= d)
    }
}

impl Default for RecursionPolicy {
    fn default() -> Self {
        Self {
            base_bits: Self::DEFAULT_BASE_BITS,
            depth_limit: None,
        }
    }
}

/// What one execution did, for checking the shape of the recursion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecursionStats {
    /// Swap-schedule invocations.
    pub base_cases: usize,
    /// Even-odd splits performed (one per odd level visited).
    pub even_odd_passes: usize,
    /// Square transpositions performed.
    pub transposes: usize,
}

/// A recursion tree for one problem size with the swap schedules it needs.
#[derive(Clone, Debug)]
pub struct RecursivePlan {
    b: BitWidth,
    policy: RecursionPolicy,
    schedules: Vec<Option<SwapSchedule>>,
    has_odd_level: bool,
}

impl RecursivePlan {
    pub fn new(b: BitWidth, policy: RecursionPolicy) -> Result<Self> {
        let policy = RecursionPolicy::new(policy.base_bits, policy.depth_limit)?;
        let mut plan = Self {
            b,
            policy,
            schedules: vec![None; b.get() as usize + 1],
            has_odd_level: false,
        };
        plan.prepare(b.get(), 0)?;
        Ok(plan)
    }

    fn prepare(&mut self, bits: u32, depth: u32) -> Result<()> {
        if self.policy.is_base(bits, depth) {
            let slot = &mut self.schedules[bits as usize];
            if slot.is_none() {
                *slot = Some(generate_swap_schedule(BitWidth::new(bits)?)?);
            }
        } else if bits % 2 == 1 {
            self.has_odd_level = true;
            self.prepare(bits - 1, depth)?;
        } else {
            self.prepare(bits / 2, depth + 1)?;
        }
        Ok(())
    }

    pub fn bits(&self) -> BitWidth {
        self.b
    }

    pub fn policy(&self) -> RecursionPolicy {
        self.policy
    }

    /// Scratch elements required by [`RecursivePlan::execute`]: `n / 2` if
    /// any odd level occurs, else zero.
    pub fn scratch_len(&self) -> usize {
        if self.has_odd_level {
            self.b.len() / 2
        } else {
            0
        }
    }

    pub fn execute<T: Element>(
        &self,
        data: &mut [T],
        scratch: &mut Scratch<T>,
    ) -> Result<RecursionStats> {
        self.b.check_len(data.len())?;
        let buf = scratch.take(self.scratch_len())?;
        let mut stats = RecursionStats::default();
        self.run(data, self.b.get(), 0, buf, &mut stats);
        Ok(stats)
    }

    fn run<T: Element>(
        &self,
        data: &mut [T],
        bits: u32,
        depth: u32,
        buf: &mut [T],
        stats: &mut RecursionStats,
    ) {
        if self.policy.is_base(bits, depth) {
            self.schedules[bits as usize]
                .as_ref()
                .expect("schedule prepared for every base width")
                .apply_unchecked_len(data);
            stats.base_cases += 1;
        } else if bits % 2 == 1 {
            even_odd_split(data, buf);
            stats.even_odd_passes += 1;
            let (low, high) = data.split_at_mut(data.len() / 2);
            self.run(low, bits - 1, depth, buf, stats);
            self.run(high, bits - 1, depth, buf, stats);
        } else {
            let half = bits / 2;
            let side = 1usize << half;
            for row in data.chunks_exact_mut(side) {
                self.run(row, half, depth + 1, buf, stats);
            }
            // SAFETY: `data` is exactly side * side elements and exclusively borrowed.
            unsafe { transpose_diagonal(data.as_mut_ptr(), side, 0, side) };
            stats.transposes += 1;
            for row in data.chunks_exact_mut(side) {
                self.run(row, half, depth + 1, buf, stats);
            }
        }
    }
}

/// `new[j] = old[2j]`, `new[n/2 + j] = old[2j + 1]`: odds go to `scratch`,
/// evens are compacted in place, and the odds are copied to the top half.
pub fn even_odd_permute<T: Element>(
    data: &mut [T],
    b: BitWidth,
    scratch: &mut Scratch<T>,
) -> Result<()> {
    b.check_len(data.len())?;
    let buf = scratch.take(data.len() / 2)?;
    even_odd_split(data, buf);
    Ok(())
}

pub(crate) fn even_odd_split<T: Copy>(data: &mut [T], buf: &mut [T]) {
    let half = data.len() / 2;
    let odds = &mut buf[..half];
    for (j, slot) in odds.iter_mut().enumerate() {
        *slot = data[2 * j + 1];
    }
    // Reads at 2j never fall behind the write at j.
    for j in 1..half {
        data[j] = data[2 * j];
    }
    data[half..].copy_from_slice(odds);
}

/// Recursive bit-reversed permutation under `policy`. `scratch` needs `n / 2`
/// elements when `b` or some sub-problem width is odd.
pub fn recursive_permute<T: Element>(
    data: &mut [T],
    b: BitWidth,
    policy: RecursionPolicy,
    scratch: &mut Scratch<T>,
) -> Result<RecursionStats> {
    RecursivePlan::new(b, policy)?.execute(data, scratch)
}

/// [`recursive_permute`] with at most `depth_limit` square splits.
pub fn semi_recursive_permute<T: Element>(
    data: &mut [T],
    b: BitWidth,
    base_bits: u32,
    depth_limit: u32,
    scratch: &mut Scratch<T>,
) -> Result<RecursionStats> {
    let policy = RecursionPolicy::semi_recursive(base_bits, depth_limit)?;
    recursive_permute(data, b, policy, scratch)
}

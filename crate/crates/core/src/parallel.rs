//! Multi-threaded semi-recursive permutation (one level of square splitting).
//!
//! Three barrier-separated phases over an even-width problem: the row
//! sub-permutations (each row is one work item), the transposition split into
//! disjoint tile pairs, and the row sub-permutations again. For odd `b` the
//! even-odd split runs on the calling thread and the two halves then run as
//! independent jobs.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::bits::BitWidth;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::recursive::{even_odd_split, swap_transposed, transpose_diagonal, RecursionPolicy};
use crate::schedule::{generate_swap_schedule, SwapSchedule};
use crate::scratch::Scratch;

/// Environment variable consulted when the thread count is left at zero.
pub const THREADS_ENV: &str = "BITREV_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParallelConfig {
    /// Worker count; `0` reads [`THREADS_ENV`] and falls back to the number
    /// of available cores.
    pub threads: usize,
    pub base_bits: u32,
}

impl Default for ParallelConfig {
    fn default() -> Self {
        Self {
            threads: 0,
            base_bits: RecursionPolicy::DEFAULT_BASE_BITS,
        }
    }
}

impl ParallelConfig {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads,
            ..Self::default()
        }
    }

    /// Depth limit of the parallel method; always one square split.
    pub const fn depth_limit(&self) -> u32 {
        1
    }

    pub fn resolved_threads(&self) -> usize {
        if self.threads > 0 {
            return self.threads;
        }
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&t| t > 0)
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|n| n.get())
                    .unwrap_or(1)
            })
    }
}

/// A prepared parallel permutation for one problem size: worker pool and the
/// swap schedule used by every sub-permutation.
pub struct ParallelPermuter {
    b: BitWidth,
    pool: ThreadPool,
    schedule: SwapSchedule,
    direct: bool,
}

impl std::fmt::Debug for ParallelPermuter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParallelPermuter")
            .field("b", &self.b)
            .field("threads", &self.pool.current_num_threads())
            .field("direct", &self.direct)
            .finish_non_exhaustive()
    }
}

impl ParallelPermuter {
    pub fn new(b: BitWidth, config: ParallelConfig) -> Result<Self> {
        let policy = RecursionPolicy::semi_recursive(config.base_bits, config.depth_limit())?;
        let direct = b.get() <= policy.base_bits || b.get() == 1;
        let schedule_bits = if direct { b.get() } else { b.get() / 2 };
        let schedule = generate_swap_schedule(BitWidth::new(schedule_bits)?)?;
        let pool = ThreadPoolBuilder::new()
            .num_threads(config.resolved_threads())
            .thread_name(|i| format!("bitrev-{i}"))
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        Ok(Self {
            b,
            pool,
            schedule,
            direct,
        })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn scratch_len(&self) -> usize {
        if !self.direct && self.b.get() % 2 == 1 {
            self.b.len() / 2
        } else {
            0
        }
    }

    pub fn execute<T: Element>(&self, data: &mut [T], scratch: &mut Scratch<T>) -> Result<()> {
        self.b.check_len(data.len())?;
        if self.direct {
            self.schedule.apply_unchecked_len(data);
            return Ok(());
        }
        if self.b.get() % 2 == 1 {
            let buf = scratch.take(self.scratch_len())?;
            even_odd_split(data, buf);
            let (low, high) = data.split_at_mut(data.len() / 2);
            self.pool.install(|| {
                rayon::join(|| self.square_level(low), || self.square_level(high));
            });
        } else {
            self.pool.install(|| self.square_level(data));
        }
        Ok(())
    }

    fn square_level<T: Element>(&self, data: &mut [T]) {
        let half = data.len().trailing_zeros() / 2;
        let side = 1usize << half;
        debug_assert_eq!(self.schedule.bits().get(), half);
        data.par_chunks_mut(side)
            .for_each(|row| self.schedule.apply_unchecked_len(row));
        parallel_transpose(data, half);
        data.par_chunks_mut(side)
            .for_each(|row| self.schedule.apply_unchecked_len(row));
    }
}

/// One transposition work item: tile `(row, col)` and its mirror, `row <= col`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct TileJob {
    pub row: usize,
    pub col: usize,
}

/// Tiles have `2^(h-3)` rows (at least one), giving an 8 x 8 tile grid once
/// `h >= 3`.
pub(crate) fn tile_bits(h: u32) -> u32 {
    h.saturating_sub(3)
}

pub(crate) fn tile_jobs(h: u32) -> Vec<TileJob> {
    let grid = 1usize << (h - tile_bits(h));
    (0..grid)
        .flat_map(|row| (row..grid).map(move |col| TileJob { row, col }))
        .collect()
}

/// Element indices a job may write, in a `2^h`-square matrix.
pub(crate) fn job_write_set(job: TileJob, h: u32) -> impl Iterator<Item = usize> {
    let tile = 1usize << tile_bits(h);
    let side = 1usize << h;
    let cells = move |r0: usize, c0: usize| {
        (r0..r0 + tile).flat_map(move |r| (c0..c0 + tile).map(move |c| r * side + c))
    };
    let mirror = (job.row != job.col).then(|| cells(job.col * tile, job.row * tile));
    cells(job.row * tile, job.col * tile).chain(mirror.into_iter().flatten())
}

/// Panics unless every cell of the matrix is written by exactly one job.
pub(crate) fn assert_partition(jobs: &[TileJob], h: u32) {
    let mut owner = vec![false; 1usize << (2 * h)];
    for &job in jobs {
        for cell in job_write_set(job, h) {
            assert!(
                !owner[cell],
                "cell {cell} written by two transposition jobs"
            );
            owner[cell] = true;
        }
    }
    assert!(
        owner.iter().all(|&w| w),
        "transposition jobs leave cells untouched"
    );
}

#[derive(Clone, Copy)]
struct SharedPtr<T>(*mut T);

// SAFETY: only used to hand out pointers to disjoint tile pairs; see
// `parallel_transpose`.
unsafe impl<T: Send> Send for SharedPtr<T> {}
unsafe impl<T: Send> Sync for SharedPtr<T> {}

impl<T> SharedPtr<T> {
    fn get(self) -> *mut T {
        self.0
    }
}

fn parallel_transpose<T: Element>(data: &mut [T], h: u32) {
    let side = 1usize << h;
    debug_assert_eq!(data.len(), side * side);
    let jobs = tile_jobs(h);
    if cfg!(debug_assertions) {
        assert_partition(&jobs, h);
    }
    let tile = 1usize << tile_bits(h);
    let base = SharedPtr(data.as_mut_ptr());
    jobs.par_iter().for_each(|job| {
        let ptr = base.get();
        // SAFETY: jobs partition the matrix (checked above in debug builds),
        // so each tile pair is touched by exactly one job, and `data` stays
        // exclusively borrowed for the duration of the parallel loop.
        unsafe {
            if job.row == job.col {
                transpose_diagonal(ptr, side, job.row * tile, tile);
            } else {
                swap_transposed(ptr, side, job.row * tile, job.col * tile, tile);
            }
        }
    });
}

/// Prepares and runs the parallel semi-recursive permutation.
pub fn parallel_semi_recursive_permute<T: Element>(
    data: &mut [T],
    b: BitWidth,
    config: ParallelConfig,
    scratch: &mut Scratch<T>,
) -> Result<()> {
    ParallelPermuter::new(b, config)?.execute(data, scratch)
}

//! Uniform access to every method: an identifier, its options, and a
//! prepared [`Permuter`] that owns whatever buffers, schedules, or worker
//! pool the method needs so repeated runs allocate nothing.

use std::fmt;
use std::str::FromStr;

use crate::bits::{BitWidth, BYTE_TABLE};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::parallel::{ParallelConfig, ParallelPermuter};
use crate::permutations::{
    bytetable_permute, naive_bitwise_permute, pair_bitwise_permute, stockham_permute, xor_permute,
    Cobra, CobraConfig,
};
use crate::recursive::{RecursionPolicy, RecursivePlan};
use crate::schedule::{generate_swap_schedule, SwapSchedule, SCHEDULE_MAX_BITS};
use crate::scratch::Scratch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodId {
    Stockham,
    Bitwise,
    Bytewise,
    Pair,
    Cobra,
    CobraInPlace,
    Xor,
    Unrolled,
    Recursive,
    SemiRecursive,
    Parallel,
}

impl MethodId {
    pub const ALL: [MethodId; 11] = [
        MethodId::Stockham,
        MethodId::Bitwise,
        MethodId::Bytewise,
        MethodId::Pair,
        MethodId::Cobra,
        MethodId::CobraInPlace,
        MethodId::Xor,
        MethodId::Unrolled,
        MethodId::Recursive,
        MethodId::SemiRecursive,
        MethodId::Parallel,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            MethodId::Stockham => "stockham",
            MethodId::Bitwise => "bitwise",
            MethodId::Bytewise => "bytewise",
            MethodId::Pair => "pair",
            MethodId::Cobra => "cobra",
            MethodId::CobraInPlace => "cobra_inplace",
            MethodId::Xor => "xor",
            MethodId::Unrolled => "unrolled",
            MethodId::Recursive => "recursive",
            MethodId::SemiRecursive => "semirecursive",
            MethodId::Parallel => "parallel",
        }
    }

    /// Writes into a separate destination instead of permuting in place.
    pub const fn is_out_of_place(self) -> bool {
        matches!(self, MethodId::Cobra)
    }

    /// Widest problem the method accepts, if narrower than the global cap.
    pub const fn max_bits(self) -> Option<u32> {
        match self {
            MethodId::Unrolled => Some(SCHEDULE_MAX_BITS),
            _ => None,
        }
    }

    /// Elements of working storage needed beyond the array itself.
    pub const fn extra_elements(self, b: BitWidth) -> usize {
        match self {
            MethodId::Stockham | MethodId::Cobra => b.len(),
            MethodId::Recursive | MethodId::SemiRecursive | MethodId::Parallel => b.len() / 2,
            _ => 0,
        }
    }

    /// Whether preparing the method builds swap schedules.
    pub const fn uses_schedule(self) -> bool {
        matches!(
            self,
            MethodId::Unrolled | MethodId::Recursive | MethodId::SemiRecursive | MethodId::Parallel
        )
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MethodId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_owned()))
    }
}

/// Tunables shared by all methods; each method reads the fields it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MethodOptions {
    /// COBRA block bits; `None` uses [`CobraConfig::default_for`].
    pub cobra_q: Option<u32>,
    pub base_bits: u32,
    /// Depth limit of the semi-recursive method.
    pub depth_limit: u32,
    /// Parallel worker count, `0` for automatic.
    pub threads: usize,
}

impl Default for MethodOptions {
    fn default() -> Self {
        Self {
            cobra_q: None,
            base_bits: RecursionPolicy::DEFAULT_BASE_BITS,
            depth_limit: 1,
            threads: 0,
        }
    }
}

impl MethodOptions {
    pub fn cobra_config(&self, b: BitWidth) -> CobraConfig {
        self.cobra_q
            .map_or_else(|| CobraConfig::default_for(b), CobraConfig::new)
    }
}

enum Engine<T> {
    Stockham(Scratch<T>),
    Bitwise,
    Bytewise,
    Pair,
    Cobra {
        cobra: Cobra<T>,
        dest: Vec<T>,
    },
    CobraInPlace(Cobra<T>),
    Xor,
    Unrolled(SwapSchedule),
    Recursive {
        plan: RecursivePlan,
        scratch: Scratch<T>,
    },
    Parallel {
        permuter: ParallelPermuter,
        scratch: Scratch<T>,
    },
}

/// A method prepared for one problem size.
pub struct Permuter<T> {
    method: MethodId,
    b: BitWidth,
    engine: Engine<T>,
}

impl<T> fmt::Debug for Permuter<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Permuter")
            .field("method", &self.method)
            .field("b", &self.b)
            .finish_non_exhaustive()
    }
}

impl<T: Element> Permuter<T> {
    pub fn new(method: MethodId, b: BitWidth, options: &MethodOptions) -> Result<Self> {
        let engine = match method {
            MethodId::Stockham => Engine::Stockham(Scratch::new(b.len())),
            MethodId::Bitwise => Engine::Bitwise,
            MethodId::Bytewise => Engine::Bytewise,
            MethodId::Pair => Engine::Pair,
            MethodId::Xor => Engine::Xor,
            MethodId::Cobra | MethodId::CobraInPlace => {
                let config = options.cobra_config(b);
                if 2 * config.block_bits() > b.get() {
                    return Err(Error::CobraBlockBits {
                        q: config.block_bits(),
                        bits: b.get(),
                    });
                }
                let cobra = Cobra::new(config);
                if method == MethodId::Cobra {
                    Engine::Cobra {
                        cobra,
                        dest: Vec::new(),
                    }
                } else {
                    Engine::CobraInPlace(cobra)
                }
            }
            MethodId::Unrolled => Engine::Unrolled(generate_swap_schedule(b)?),
            MethodId::Recursive | MethodId::SemiRecursive => {
                let depth = (method == MethodId::SemiRecursive).then_some(options.depth_limit);
                let plan = RecursivePlan::new(b, RecursionPolicy::new(options.base_bits, depth)?)?;
                let scratch = Scratch::new(plan.scratch_len());
                Engine::Recursive { plan, scratch }
            }
            MethodId::Parallel => {
                let config = ParallelConfig {
                    threads: options.threads,
                    base_bits: options.base_bits,
                };
                let permuter = ParallelPermuter::new(b, config)?;
                let scratch = Scratch::new(permuter.scratch_len());
                Engine::Parallel { permuter, scratch }
            }
        };
        Ok(Self { method, b, engine })
    }

    pub fn method(&self) -> MethodId {
        self.method
    }

    pub fn bits(&self) -> BitWidth {
        self.b
    }

    /// Permutes `data` in place. Out-of-place methods go through an internal
    /// destination buffer and copy back.
    pub fn apply(&mut self, data: &mut [T]) -> Result<()> {
        let b = self.b;
        match &mut self.engine {
            Engine::Stockham(scratch) => stockham_permute(data, b, scratch),
            Engine::Bitwise => naive_bitwise_permute(data, b),
            Engine::Bytewise => bytetable_permute(data, b, &BYTE_TABLE),
            Engine::Pair => pair_bitwise_permute(data, b),
            Engine::Xor => xor_permute(data, b),
            Engine::Cobra { cobra, dest } => {
                dest.resize(data.len(), T::default());
                cobra.out_of_place(data, dest, b)?;
                data.copy_from_slice(dest);
                Ok(())
            }
            Engine::CobraInPlace(cobra) => cobra.in_place(data, b),
            Engine::Unrolled(schedule) => schedule.apply(data),
            Engine::Recursive { plan, scratch } => plan.execute(data, scratch).map(drop),
            Engine::Parallel { permuter, scratch } => permuter.execute(data, scratch),
        }
    }

    /// Writes the permutation of `source` into `dest`. Only the out-of-place
    /// methods avoid the initial copy.
    pub fn apply_out_of_place(&mut self, source: &[T], dest: &mut [T]) -> Result<()> {
        if let Engine::Cobra { cobra, .. } = &mut self.engine {
            return cobra.out_of_place(source, dest, self.b);
        }
        self.b.check_len(source.len())?;
        self.b.check_len(dest.len())?;
        dest.copy_from_slice(source);
        self.apply(dest)
    }
}

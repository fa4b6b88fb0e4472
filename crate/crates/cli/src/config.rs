use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Duration;

use bitrev_core::schedule::SCHEDULE_MAX_BITS;
use bitrev_core::{MethodId, RecursionPolicy};

use crate::error::{BenchError, Result};

/// Largest size run without `allow_large`: 2^26 16-byte elements is 1 GiB.
pub const DESK_MAX_BITS: u32 = 26;
/// Hard ceiling with `allow_large`.
pub const LARGE_MAX_BITS: u32 = 30;
/// Below this width a timing sample repeats the permutation.
pub const LOOPED_SAMPLE_BELOW_BITS: u32 = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ElementKind {
    /// Two `f64`s, 16 bytes.
    #[default]
    Pair,
    U64,
    U32,
}

impl ElementKind {
    pub const fn size_bytes(self) -> usize {
        match self {
            ElementKind::Pair => 16,
            ElementKind::U64 => 8,
            ElementKind::U32 => 4,
        }
    }
}

impl FromStr for ElementKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pair" | "complex" => Ok(ElementKind::Pair),
            "u64" => Ok(ElementKind::U64),
            "u32" => Ok(ElementKind::U32),
            other => Err(format!("unknown element kind `{other}` (pair, u64, u32)")),
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Pair => "pair",
            ElementKind::U64 => "u64",
            ElementKind::U32 => "u32",
        })
    }
}

/// How COBRA's block bits are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CobraQ {
    /// `min(b / 2, 6)`.
    #[default]
    Default,
    Fixed(u32),
    /// Tune per size before measuring.
    Auto,
}

impl FromStr for CobraQ {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(CobraQ::Auto),
            "default" => Ok(CobraQ::Default),
            n => n
                .parse()
                .map(CobraQ::Fixed)
                .map_err(|_| format!("expected a block-bit count or `auto`, got `{n}`")),
        }
    }
}

/// Parses `MIN..MAX` (inclusive) or a single `N`.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("`{t}` is not a non-negative integer"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok(parse(lo)?..=parse(hi)?)
        }
        None => {
            let n = parse(s)?;
            Ok(n..=n)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub methods: Vec<MethodId>,
    pub b_min: u32,
    pub b_max: u32,
    pub replicates: usize,
    pub warmup: usize,
    pub element: ElementKind,
    pub cobra_q: CobraQ,
    pub base_bits: u32,
    /// Depth limit of the semi-recursive method.
    pub depth_limit: u32,
    /// Parallel worker count, `0` for automatic.
    pub threads: usize,
    pub seed: u64,
    /// Check the last replicate's output against the oracle.
    pub verify: bool,
    /// The unrolled method is skipped above this width.
    pub unrolled_max_bits: u32,
    /// Permit sizes up to [`LARGE_MAX_BITS`].
    pub allow_large: bool,
    /// Estimated array plus working storage must stay below this.
    pub memory_cap_bytes: u64,
    /// Minimum duration of one looped timing sample.
    pub min_sample: Duration,
    /// Replicates per candidate when `cobra_q` is `Auto`.
    pub tune_replicates: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            methods: MethodId::ALL.to_vec(),
            b_min: 8,
            b_max: 20,
            replicates: 100,
            warmup: 3,
            element: ElementKind::Pair,
            cobra_q: CobraQ::Default,
            base_bits: RecursionPolicy::DEFAULT_BASE_BITS,
            depth_limit: 1,
            threads: 0,
            seed: 0x5eed,
            verify: false,
            unrolled_max_bits: 16,
            allow_large: false,
            memory_cap_bytes: 4 << 30,
            min_sample: Duration::from_millis(1),
            tune_replicates: 5,
        }
    }
}

impl BenchConfig {
    pub fn size_cap(&self) -> u32 {
        if self.allow_large {
            LARGE_MAX_BITS
        } else {
            DESK_MAX_BITS
        }
    }

    pub fn bits(&self) -> RangeInclusive<u32> {
        self.b_min..=self.b_max
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(BenchError::InvalidConfig(msg));
        if self.methods.is_empty() {
            return fail("no methods selected".into());
        }
        if self.b_min == 0 || self.b_min > self.b_max {
            return fail(format!("bad size range {}..{}", self.b_min, self.b_max));
        }
        if self.b_max > self.size_cap() {
            return fail(format!(
                "b={} exceeds the size cap of {} bits{}",
                self.b_max,
                self.size_cap(),
                if self.allow_large {
                    ""
                } else {
                    " (pass --allow-large for up to 30)"
                }
            ));
        }
        if self.replicates == 0 {
            return fail("replicates must be at least 1".into());
        }
        if self.base_bits == 0 || self.base_bits > SCHEDULE_MAX_BITS {
            return fail(format!("base_bits must be in 1..={SCHEDULE_MAX_BITS}"));
        }
        if self.depth_limit == 0 {
            return fail("depth_limit must be at least 1".into());
        }
        if self.unrolled_max_bits > SCHEDULE_MAX_BITS {
            return fail(format!(
                "unrolled cap {} above the schedule cap {SCHEDULE_MAX_BITS}",
                self.unrolled_max_bits
            ));
        }
        if let CobraQ::Fixed(q) = self.cobra_q {
            if 2 * q > self.b_min {
                return fail(format!("cobra q={q} needs b >= {}", 2 * q));
            }
        }
        if self.cobra_q == CobraQ::Auto && self.tune_replicates == 0 {
            return fail("tune_replicates must be at least 1".into());
        }
        Ok(())
    }

    /// Widest size `method` is run at.
    pub fn method_cap(&self, method: MethodId) -> u32 {
        let cap = match method {
            MethodId::Unrolled => self.unrolled_max_bits,
            _ => method.max_bits().unwrap_or(u32::MAX),
        };
        cap.min(self.size_cap())
    }

    /// Bytes needed for the array and the method's working storage.
    pub fn memory_estimate(&self, method: MethodId, b: u32) -> u64 {
        let n = 1u64 << b;
        let extra = match bitrev_core::BitWidth::new(b) {
            Ok(w) => method.extra_elements(w) as u64,
            Err(_) => n,
        };
        (n + extra) * self.element.size_bytes() as u64
    }
}

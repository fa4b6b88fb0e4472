//! Replicated timing of each method at each size.
//!
//! Per (method, size): prepare the method (schedules, buffers, pool) and
//! allocate once, run the warmups, then time one permutation per replicate on
//! a freshly refilled array. Sizes below [`LOOPED_SAMPLE_BELOW_BITS`] repeat
//! the permutation until a sample lasts at least `min_sample` and report the
//! mean of those repetitions.

use std::time::{Duration, Instant};

use bitrev_core::verify::oracle_permute;
use bitrev_core::{BitWidth, ComplexPair, Element, MethodId, MethodOptions, Permuter};
use log::{info, warn};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{BenchConfig, CobraQ, ElementKind, LOOPED_SAMPLE_BELOW_BITS};
use crate::error::{BenchError, Result};
use crate::tune::{default_candidates, tune_cobra_typed};

/// One timed permutation.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkRecord {
    pub method: String,
    pub b: u32,
    pub replicate: usize,
    pub elapsed_s: f64,
}

impl BenchmarkRecord {
    pub fn n(&self) -> u64 {
        1u64 << self.b
    }

    pub fn per_element_s(&self) -> f64 {
        self.elapsed_s / self.n() as f64
    }
}

/// A (method, size) combination that was not measured, and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub method: MethodId,
    pub b: u32,
    pub reason: String,
}

/// Wall time spent generating swap schedules while preparing a method.
#[derive(Clone, Debug, PartialEq)]
pub struct PrepareTime {
    pub method: MethodId,
    pub b: u32,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchOutcome {
    pub records: Vec<BenchmarkRecord>,
    pub skipped: Vec<Skipped>,
    pub prepare_times: Vec<PrepareTime>,
    /// COBRA block bits chosen per size when tuning automatically.
    pub tuned_q: Vec<(u32, u32)>,
    /// (method, size) pairs whose output was checked against the oracle.
    pub verified: usize,
}

impl BenchOutcome {
    /// Mean per-element time of `method` at `b`, if measured.
    pub fn mean_per_element(&self, method: &str, b: u32) -> Option<f64> {
        let values: Vec<f64> = self
            .records
            .iter()
            .filter(|r| r.method == method && r.b == b)
            .map(BenchmarkRecord::per_element_s)
            .collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Deterministic contents for one replicate; identical across methods.
pub(crate) fn fill<T: Element>(data: &mut [T], seed: u64, b: u32, replicate: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(b) << 48) ^ replicate as u64);
    for cell in data {
        *cell = T::from_key(rng.gen());
    }
}

fn try_alloc<T: Element>(len: usize) -> Option<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).ok()?;
    v.resize(len, T::default());
    Some(v)
}

/// Timing parameters shared by the harness and the COBRA tuner.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Protocol {
    pub replicates: usize,
    pub warmup: usize,
    pub seed: u64,
    pub min_sample: Duration,
}

/// A prepared method with its arrays, ready to be timed.
pub(crate) struct Bench<T> {
    permuter: Permuter<T>,
    data: Vec<T>,
    dest: Option<Vec<T>>,
}

impl<T: Element> Bench<T> {
    pub fn prepare(method: MethodId, b: BitWidth, options: &MethodOptions) -> Result<Self> {
        let permuter = Permuter::new(method, b, options)?;
        let alloc_err =
            || BenchError::InvalidConfig(format!("allocation of 2^{b} elements failed"));
        let data = try_alloc(b.len()).ok_or_else(alloc_err)?;
        let dest = if method.is_out_of_place() {
            Some(try_alloc(b.len()).ok_or_else(alloc_err)?)
        } else {
            None
        };
        Ok(Self {
            permuter,
            data,
            dest,
        })
    }

    fn run_once(&mut self) -> Result<()> {
        match &mut self.dest {
            Some(dest) => self.permuter.apply_out_of_place(&self.data, dest)?,
            None => self.permuter.apply(&mut self.data)?,
        }
        Ok(())
    }

    /// Output of the last run.
    fn output(&self) -> &[T] {
        self.dest.as_deref().unwrap_or(&self.data)
    }

    /// Times `protocol.replicates` samples and returns elapsed seconds each.
    pub fn measure(&mut self, protocol: &Protocol) -> Result<Vec<f64>> {
        let b = self.permuter.bits().get();
        let mut single = Duration::ZERO;
        for w in 0..protocol.warmup.max(1) {
            fill(&mut self.data, protocol.seed, b, usize::MAX - w);
            let start = Instant::now();
            self.run_once()?;
            single = start.elapsed();
        }
        let repeats = if b < LOOPED_SAMPLE_BELOW_BITS {
            let per_run = single.as_nanos().max(1);
            protocol
                .min_sample
                .as_nanos()
                .div_ceil(per_run)
                .clamp(1, 1 << 20) as u32
        } else {
            1
        };

        let mut samples = Vec::with_capacity(protocol.replicates);
        for replicate in 0..protocol.replicates {
            fill(&mut self.data, protocol.seed, b, replicate);
            let start = Instant::now();
            for _ in 0..repeats {
                self.run_once()?;
            }
            let elapsed = start.elapsed() / repeats;
            samples.push(elapsed.as_secs_f64());
        }
        Ok(samples)
    }

    /// Refills with replicate `replicate`'s contents, permutes once, and
    /// compares with the oracle. Returns the number of wrong cells.
    pub fn verify(&mut self, seed: u64, replicate: usize) -> Result<usize> {
        let b = self.permuter.bits();
        fill(&mut self.data, seed, b.get(), replicate);
        let expected = oracle_permute(&self.data, b)?;
        self.run_once()?;
        Ok(expected
            .iter()
            .zip(self.output())
            .filter(|(e, a)| e != a)
            .count())
    }
}

/// Runs the configured benchmark.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchOutcome> {
    cfg.validate()?;
    match cfg.element {
        ElementKind::Pair => run_typed::<ComplexPair>(cfg),
        ElementKind::U64 => run_typed::<u64>(cfg),
        ElementKind::U32 => run_typed::<u32>(cfg),
    }
}

fn run_typed<T: Element>(cfg: &BenchConfig) -> Result<BenchOutcome> {
    let mut outcome = BenchOutcome::default();
    let mut order_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let protocol = Protocol {
        replicates: cfg.replicates,
        warmup: cfg.warmup,
        seed: cfg.seed,
        min_sample: cfg.min_sample,
    };

    for bits in cfg.bits() {
        let b = BitWidth::new(bits)?;
        let mut methods = cfg.methods.clone();
        methods.dedup();
        methods.shuffle(&mut order_rng);

        for method in methods {
            let mut skip = |reason: String| {
                info!("skipping {method} at b={bits}: {reason}");
                outcome.skipped.push(Skipped {
                    method,
                    b: bits,
                    reason,
                });
            };
            if bits > cfg.method_cap(method) {
                skip(format!(
                    "above the {}-bit cap for this method",
                    cfg.method_cap(method)
                ));
                continue;
            }
            let needed = cfg.memory_estimate(method, bits);
            if needed > cfg.memory_cap_bytes {
                skip(format!(
                    "needs {needed} bytes, cap is {}",
                    cfg.memory_cap_bytes
                ));
                continue;
            }

            let mut options = MethodOptions {
                cobra_q: None,
                base_bits: cfg.base_bits,
                depth_limit: cfg.depth_limit,
                threads: cfg.threads,
            };
            if matches!(method, MethodId::Cobra | MethodId::CobraInPlace) {
                options.cobra_q = match cfg.cobra_q {
                    CobraQ::Default => None,
                    CobraQ::Fixed(q) => Some(q),
                    CobraQ::Auto => {
                        let tuned = tune_cobra_typed::<T>(
                            b,
                            &default_candidates(b),
                            &Protocol {
                                replicates: cfg.tune_replicates,
                                ..protocol
                            },
                        )?;
                        outcome.tuned_q.push((bits, tuned.best_q));
                        Some(tuned.best_q)
                    }
                };
            }

            let start = Instant::now();
            let mut bench = match Bench::<T>::prepare(method, b, &options) {
                Ok(bench) => bench,
                Err(e) => {
                    warn!("{method} at b={bits}: {e}");
                    skip(e.to_string());
                    continue;
                }
            };
            if method.uses_schedule() {
                let seconds = start.elapsed().as_secs_f64();
                info!("{method} b={bits}: schedule generation {seconds:.6} s");
                outcome.prepare_times.push(PrepareTime {
                    method,
                    b: bits,
                    seconds,
                });
            }

            let samples = bench.measure(&protocol)?;
            outcome.records.extend(samples.into_iter().enumerate().map(
                |(replicate, elapsed_s)| BenchmarkRecord {
                    method: method.as_str().to_owned(),
                    b: bits,
                    replicate,
                    elapsed_s,
                },
            ));

            if cfg.verify {
                let wrong = bench.verify(cfg.seed, cfg.replicates - 1)?;
                if wrong > 0 {
                    return Err(BenchError::Verification {
                        method: method.to_string(),
                        bits,
                        mismatches: wrong,
                    });
                }
                outcome.verified += 1;
            }
        }
    }
    Ok(outcome)
}

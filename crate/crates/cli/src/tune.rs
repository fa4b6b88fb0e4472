//! Per-size search for COBRA's block bits.

use std::time::Duration;

use bitrev_core::{BitWidth, ComplexPair, Element, MethodId, MethodOptions};

use crate::error::{BenchError, Result};
use crate::harness::{Bench, BenchmarkRecord, Protocol};

/// Timings for one candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateTiming {
    pub q: u32,
    pub mean_per_element_s: f64,
    pub records: Vec<BenchmarkRecord>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CobraTuning {
    pub b: u32,
    pub best_q: u32,
    /// One row per candidate, ascending `q`.
    pub table: Vec<CandidateTiming>,
}

impl CobraTuning {
    /// All samples, labelled `cobra_q{q}`.
    pub fn records(&self) -> impl Iterator<Item = &BenchmarkRecord> {
        self.table.iter().flat_map(|c| &c.records)
    }

    pub fn mean_for(&self, q: u32) -> Option<f64> {
        self.table
            .iter()
            .find(|c| c.q == q)
            .map(|c| c.mean_per_element_s)
    }
}

/// `1..=min(b / 2, 10)`.
pub fn default_candidates(b: BitWidth) -> Vec<u32> {
    (1..=(b.get() / 2).min(10)).collect()
}

/// Times out-of-place COBRA on 16-byte elements for each candidate and
/// returns the one with the lowest mean per-element time. Ties go to the
/// smaller `q`.
pub fn tune_cobra(b: u32, candidates: &[u32], replicates: usize, seed: u64) -> Result<CobraTuning> {
    let protocol = Protocol {
        replicates,
        warmup: 1,
        seed,
        min_sample: Duration::from_millis(1),
    };
    tune_cobra_typed::<ComplexPair>(BitWidth::new(b)?, candidates, &protocol)
}

pub(crate) fn tune_cobra_typed<T: Element>(
    b: BitWidth,
    candidates: &[u32],
    protocol: &Protocol,
) -> Result<CobraTuning> {
    if candidates.is_empty() {
        return Err(BenchError::NoCandidates);
    }
    if protocol.replicates == 0 {
        return Err(BenchError::InvalidConfig(
            "replicates must be at least 1".into(),
        ));
    }
    let mut qs = candidates.to_vec();
    qs.sort_unstable();
    qs.dedup();
    if let Some(&q) = qs.iter().find(|&&q| q == 0 || 2 * q > b.get()) {
        return Err(BenchError::InvalidConfig(format!(
            "cobra q={q} outside 1..={} for b={b}",
            b.get() / 2
        )));
    }

    let mut table = Vec::with_capacity(qs.len());
    for q in qs {
        let options = MethodOptions {
            cobra_q: Some(q),
            ..MethodOptions::default()
        };
        let mut bench = Bench::<T>::prepare(MethodId::Cobra, b, &options)?;
        let samples = bench.measure(protocol)?;
        let label = format!("cobra_q{q}");
        let records: Vec<BenchmarkRecord> = samples
            .into_iter()
            .enumerate()
            .map(|(replicate, elapsed_s)| BenchmarkRecord {
                method: label.clone(),
                b: b.get(),
                replicate,
                elapsed_s,
            })
            .collect();
        let mean_per_element_s = records
            .iter()
            .map(BenchmarkRecord::per_element_s)
            .sum::<f64>()
            / records.len() as f64;
        table.push(CandidateTiming {
            q,
            mean_per_element_s,
            records,
        });
    }

    let best_q = argmin(&table);
    Ok(CobraTuning {
        b: b.get(),
        best_q,
        table,
    })
}

fn argmin(table: &[CandidateTiming]) -> u32 {
    let mut best = &table[0];
    for row in &table[1..] {
        if row.mean_per_element_s < best.mean_per_element_s {
            best = row;
        }
    }
    best.q
}

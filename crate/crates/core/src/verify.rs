//! Ground truth for every method: a brute-force out-of-place permutation,
//! equivalence and involution checks over sentinel arrays, and an audit of
//! the swap-count laws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{rev_naive, BitWidth};
use crate::error::Result;
use crate::schedule::{generate_swap_schedule, swap_count, swap_count_closed_form};

/// Reports keep at most this many mismatches.
pub const MAX_REPORTED_MISMATCHES: usize = 16;

/// `out[rev(i)] = source[i]`.
pub fn oracle_permute<T: Clone>(source: &[T], b: BitWidth) -> Result<Vec<T>> {
    b.check_len(source.len())?;
    let mut out = source.to_vec();
    for (i, value) in source.iter().enumerate() {
        out[rev_naive(i, b)] = value.clone();
    }
    Ok(out)
}

/// Sentinel array for one trial. Trial 0 is `value = index`; later trials use
/// a seeded affine bijection `index * odd + offset`, so values stay distinct
/// and any misplaced value still names its source index.
pub fn sentinel_fill(b: BitWidth, trial: usize, seed: u64) -> Vec<u64> {
    if trial == 0 {
        return (0..b.len() as u64).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ (u64::from(b.get()) << 32) ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
    );
    let odd = rng.gen::<u64>() | 1;
    let offset = rng.gen::<u64>();
    (0..b.len() as u64)
        .map(|i| i.wrapping_mul(odd).wrapping_add(offset))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub b: u32,
    pub trial: usize,
    pub index: usize,
    pub expected: u64,
    pub actual: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub method: String,
    pub bits: Vec<u32>,
    pub trials: usize,
    pub seed: u64,
    /// First [`MAX_REPORTED_MISMATCHES`] offending cells.
    pub mismatches: Vec<Mismatch>,
    /// Total offending cells, including those not listed.
    pub mismatch_count: usize,
    /// Errors returned by the method itself.
    pub errors: Vec<String>,
}

impl EquivalenceReport {
    fn new(method: &str, bits: Vec<u32>, trials: usize, seed: u64) -> Self {
        Self {
            method: method.to_owned(),
            bits,
            trials,
            seed,
            mismatches: Vec::new(),
            mismatch_count: 0,
            errors: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatch_count == 0 && self.errors.is_empty()
    }

    fn record(&mut self, b: u32, trial: usize, expected: &[u64], actual: &[u64]) {
        for (index, (&e, &a)) in expected.iter().zip(actual).enumerate() {
            if e != a {
                self.mismatch_count += 1;
                if self.mismatches.len() < MAX_REPORTED_MISMATCHES {
                    self.mismatches.push(Mismatch {
                        b,
                        trial,
                        index,
                        expected: e,
                        actual: a,
                    });
                }
            }
        }
    }
}

/// Runs `method` on sentinel arrays for every `b` in `1..=b_max` and compares
/// against [`oracle_permute`].
pub fn check_method<F>(
    name: &str,
    method: F,
    b_max: u32,
    trials: usize,
    seed: u64,
) -> EquivalenceReport
where
    F: FnMut(&mut [u64], BitWidth) -> Result<()>,
{
    check_method_at(name, method, 1..=b_max, trials, seed)
}

/// [`check_method`] over an explicit list of sizes.
pub fn check_method_at<F, I>(
    name: &str,
    mut method: F,
    sizes: I,
    trials: usize,
    seed: u64,
) -> EquivalenceReport
where
    F: FnMut(&mut [u64], BitWidth) -> Result<()>,
    I: IntoIterator<Item = u32>,
{
    let bits: Vec<u32> = sizes.into_iter().collect();
    let mut report = EquivalenceReport::new(name, bits.clone(), trials, seed);
    for &raw in &bits {
        let b = match BitWidth::new(raw) {
            Ok(b) => b,
            Err(e) => {
                report.errors.push(format!("b={raw}: {e}"));
                continue;
            }
        };
        for trial in 0..trials {
            let input = sentinel_fill(b, trial, seed);
            let expected = oracle_permute(&input, b).expect("length matches by construction");
            let mut actual = input;
            match method(&mut actual, b) {
                Ok(()) => report.record(raw, trial, &expected, &actual),
                Err(e) => report.errors.push(format!("b={raw} trial={trial}: {e}")),
            }
        }
    }
    report
}

/// Checks that applying `method` twice restores the input, for `b` in
/// `1..=b_max`.
pub fn check_involution<F>(
    name: &str,
    mut method: F,
    b_max: u32,
    trials: usize,
    seed: u64,
) -> EquivalenceReport
where
    F: FnMut(&mut [u64], BitWidth) -> Result<()>,
{
    let mut report = EquivalenceReport::new(name, (1..=b_max).collect(), trials, seed);
    for raw in 1..=b_max {
        let Ok(b) = BitWidth::new(raw) else {
            report.errors.push(format!("b={raw}: invalid width"));
            continue;
        };
        for trial in 0..trials {
            let input = sentinel_fill(b, trial, seed);
            let mut actual = input.clone();
            let outcome = method(&mut actual, b).and_then(|()| method(&mut actual, b));
            match outcome {
                Ok(()) => report.record(raw, trial, &input, &actual),
                Err(e) => report.errors.push(format!("b={raw} trial={trial}: {e}")),
            }
        }
    }
    report
}

/// Counts for one width from three independent routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapAudit {
    pub b: u32,
    pub generated: u64,
    pub recurrence: u64,
    pub closed_form: u64,
    pub brute_force: u64,
}

impl SwapAudit {
    pub fn passed(&self) -> bool {
        self.generated == self.recurrence
            && self.recurrence == self.closed_form
            && self.closed_form == self.brute_force
    }
}

/// Compares schedule length, recurrence, closed form, and a brute-force count
/// of `i < rev(i)` for every `b` in `1..=b_max`.
pub fn audit_swap_counts(b_max: u32) -> Result<Vec<SwapAudit>> {
    (1..=b_max)
        .map(|raw| {
            let b = BitWidth::new(raw)?;
            let generated = generate_swap_schedule(b)?.len() as u64;
            let brute_force = (0..b.len()).filter(|&i| i < rev_naive(i, b)).count() as u64;
            Ok(SwapAudit {
                b: raw,
                generated,
                recurrence: swap_count(b),
                closed_form: swap_count_closed_form(b),
                brute_force,
            })
        })
        .collect()
}

/// Number of `i` with `rev(i) = i`.
pub fn fixed_point_count(b: BitWidth) -> usize {
    (0..b.len()).filter(|&i| rev_naive(i, b) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutations::naive_bitwise_permute;

    fn bw(b: u32) -> BitWidth {
        BitWidth::new(b).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let v: Vec<u32> = (0..8).collect();
        assert_eq!(oracle_permute(&v, bw(3)).unwrap(), [0, 4, 2, 6, 1, 5, 3, 7]);
        assert_eq!(oracle_permute(&[3, 9], bw(1)).unwrap(), [3, 9]);
        assert!(oracle_permute(&[1, 2, 3], bw(2)).is_err());
    }

    #[test]
    fn oracle_is_involution() {
        for b in 1..=16 {
            let b = bw(b);
            let v = sentinel_fill(b, 1, 42);
            let twice = oracle_permute(&oracle_permute(&v, b).unwrap(), b).unwrap();
            assert_eq!(twice, v);
        }
    }

    #[test]
    fn fixed_points_are_palindromes() {
        for b in 1..=18 {
            assert_eq!(fixed_point_count(bw(b)), 1 << b.div_ceil(2));
        }
    }

    #[test]
    fn sentinels_are_distinct_and_reproducible() {
        let b = bw(12);
        let a = sentinel_fill(b, 3, 7);
        assert_eq!(a, sentinel_fill(b, 3, 7));
        assert_ne!(a, sentinel_fill(b, 4, 7));
        let mut sorted = a.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), a.len());
        assert_eq!(sentinel_fill(b, 0, 7)[5], 5);
    }

    #[test]
    fn naive_passes() {
        let report = check_method("bitwise", naive_bitwise_permute, 16, 2, 1);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.bits.len(), 16);
    }

    #[test]
    fn planted_fault_is_located() {
        // Skips index 1, so the pair (1, rev(1)) is never swapped.
        let broken = |data: &mut [u64], b: BitWidth| -> Result<()> {
            for i in 2..data.len() - 1 {
                let r = rev_naive(i, b);
                if i < r {
                    data.swap(i, r);
                }
            }
            Ok(())
        };
        let report = check_method_at("broken", broken, [5], 1, 0);
        assert!(!report.passed());
        let idx: Vec<_> = report.mismatches.iter().map(|m| m.index).collect();
        assert_eq!(idx, [1, 16]);
        assert_eq!(report.mismatch_count, 2);
        // value = index: cell 1 still holds 1 instead of 16.
        assert_eq!(report.mismatches[0].expected, 16);
        assert_eq!(report.mismatches[0].actual, 1);
    }

    #[test]
    fn method_errors_fail_the_report() {
        let failing = |_: &mut [u64], b: BitWidth| -> Result<()> {
            Err(crate::Error::InvalidBitWidth(b.get()))
        };
        let report = check_method("failing", failing, 2, 1, 0);
        assert!(!report.passed());
        assert_eq!(report.errors.len(), 2);
    }

    #[test]
    fn involution_checker() {
        assert!(check_involution("bitwise", naive_bitwise_permute, 12, 2, 5).passed());
        let not_involution = |d: &mut [u64], _: BitWidth| -> Result<()> {
            d.rotate_left(1);
            Ok(())
        };
        assert!(!check_involution("rotate", not_involution, 3, 1, 5).passed());
    }

    #[test]
    fn audit() {
        let audits = audit_swap_counts(20).unwrap();
        assert_eq!(audits.len(), 20);
        assert!(audits.iter().all(SwapAudit::passed));
        assert_eq!(audits[0].generated, 0);
        assert_eq!(audits[1].generated, 1);
        assert_eq!(audits[3].brute_force, 6);
    }
}

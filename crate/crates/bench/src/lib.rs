//! Shared setup for the criterion benches.

use bitrev_core::{BitWidth, ComplexPair, Element, MethodId, MethodOptions, Permuter};

/// Sizes benched by default: one cache-resident, one L2-sized, one large.
pub const SIZES: [u32; 3] = [10, 16, 20];

/// `2^b` 16-byte elements holding their own index.
pub fn input(b: BitWidth) -> Vec<ComplexPair> {
    (0..b.len() as u64).map(ComplexPair::from_key).collect()
}

/// A prepared permuter, or `None` if the method does not support `b`.
pub fn prepare<T: Element>(method: MethodId, b: BitWidth) -> Option<Permuter<T>> {
    if method.max_bits().is_some_and(|cap| b.get() > cap) {
        return None;
    }
    Permuter::new(method, b, &MethodOptions::default()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_method_prepares_at_bench_sizes() {
        for b in SIZES {
            let b = BitWidth::new(b).unwrap();
            for m in MethodId::ALL {
                assert!(prepare::<ComplexPair>(m, b).is_some(), "{m} b={b}");
            }
            assert_eq!(input(b).len(), b.len());
        }
    }
}

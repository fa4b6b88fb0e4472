use bitrev_core::verify::{check_involution, check_method, check_method_at, oracle_permute};
use bitrev_core::{BitWidth, ComplexPair, Element, MethodId, MethodOptions, Permuter};
use proptest::prelude::*;

fn options() -> MethodOptions {
    MethodOptions {
        base_bits: 4,
        threads: 3,
        ..MethodOptions::default()
    }
}

fn run(method: MethodId) -> impl FnMut(&mut [u64], BitWidth) -> bitrev_core::Result<()> {
    move |data, b| Permuter::new(method, b, &options())?.apply(data)
}

#[test]
fn every_method_matches_oracle_up_to_16_bits() {
    for method in MethodId::ALL {
        let report = check_method(method.as_str(), run(method), 16, 2, 0xb17);
        assert!(report.passed(), "{report:#?}");
    }
}

#[test]
fn larger_sampled_sizes() {
    for method in [
        MethodId::Pair,
        MethodId::Cobra,
        MethodId::CobraInPlace,
        MethodId::Recursive,
        MethodId::SemiRecursive,
        MethodId::Parallel,
    ] {
        let report = check_method_at(method.as_str(), run(method), [19, 21], 1, 3);
        assert!(report.passed(), "{report:#?}");
    }
}

#[test]
fn in_place_methods_are_involutions() {
    for method in MethodId::ALL {
        let report = check_involution(method.as_str(), run(method), 14, 1, 11);
        assert!(report.passed(), "{report:#?}");
    }
}

#[test]
fn complex_elements() {
    let b = BitWidth::new(13).unwrap();
    let input: Vec<ComplexPair> = (0..b.len() as u64).map(ComplexPair::from_key).collect();
    let expect = oracle_permute(&input, b).unwrap();
    for method in MethodId::ALL {
        let mut p = Permuter::new(method, b, &MethodOptions::default()).unwrap();
        let mut v = input.clone();
        p.apply(&mut v).unwrap();
        assert_eq!(v, expect, "{method}");
    }
}

#[test]
fn cobra_never_touches_source() {
    let b = BitWidth::new(12).unwrap();
    let src: Vec<u64> = (0..b.len() as u64).collect();
    let snapshot = src.clone();
    let mut dst = vec![u64::MAX; b.len()];
    let mut p = Permuter::new(MethodId::Cobra, b, &MethodOptions::default()).unwrap();
    p.apply_out_of_place(&src, &mut dst).unwrap();
    assert_eq!(src, snapshot);
    assert_eq!(dst, oracle_permute(&src, b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn methods_agree_on_random_data(
        b in 1u32..=12,
        q in 0u32..=6,
        base in 1u32..=9,
        depth in 1u32..=4,
        seed in any::<u64>(),
    ) {
        let b = BitWidth::new(b).unwrap();
        let data: Vec<u64> = (0..b.len() as u64)
            .map(|i| i.wrapping_mul(seed | 1).rotate_left(17))
            .collect();
        let expect = oracle_permute(&data, b).unwrap();
        let opts = MethodOptions {
            cobra_q: Some(q.min(b.get() / 2)),
            base_bits: base,
            depth_limit: depth,
            threads: 2,
        };
        for method in MethodId::ALL {
            let mut v = data.clone();
            Permuter::new(method, b, &opts).unwrap().apply(&mut v).unwrap();
            prop_assert_eq!(&v, &expect, "{}", method);
        }
    }
}

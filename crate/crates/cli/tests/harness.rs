use std::time::Duration;

use bitrev_bench::{
    read_csv, run_benchmark, tune_cobra, write_csv, BenchConfig, BenchError, ElementKind,
};
use bitrev_core::MethodId;

fn fast(methods: Vec<MethodId>, b_min: u32, b_max: u32) -> BenchConfig {
    BenchConfig {
        methods,
        b_min,
        b_max,
        replicates: 1,
        warmup: 0,
        element: ElementKind::U32,
        min_sample: Duration::from_micros(20),
        ..BenchConfig::default()
    }
}

#[test]
fn unrolled_only_up_to_its_cap() {
    let cfg = BenchConfig {
        unrolled_max_bits: 16,
        ..fast(vec![MethodId::Unrolled], 8, 20)
    };
    let out = run_benchmark(&cfg).unwrap();
    let widths: Vec<u32> = out.records.iter().map(|r| r.b).collect();
    assert_eq!(widths, (8..=16).collect::<Vec<_>>());
    let skipped: Vec<u32> = out.skipped.iter().map(|s| s.b).collect();
    assert_eq!(skipped, [17, 18, 19, 20]);
}

#[test]
fn record_count_is_methods_sizes_replicates() {
    let cfg = BenchConfig {
        replicates: 4,
        ..fast(
            vec![MethodId::Xor, MethodId::Pair, MethodId::Recursive],
            8,
            11,
        )
    };
    let out = run_benchmark(&cfg).unwrap();
    assert_eq!(out.records.len(), 3 * 4 * 4);
    for r in &out.records {
        assert!(r.elapsed_s > 0.0);
        assert_eq!(r.per_element_s(), r.elapsed_s / (1u64 << r.b) as f64);
    }
}

#[test]
fn invalid_config_rejected_before_running() {
    let cfg = BenchConfig {
        replicates: 0,
        ..fast(vec![MethodId::Xor], 8, 8)
    };
    assert!(matches!(
        run_benchmark(&cfg),
        Err(BenchError::InvalidConfig(_))
    ));
}

#[test]
fn tuner_table_round_trips_through_csv() {
    let t = tune_cobra(16, &[1, 2, 3, 4, 5, 6, 7, 8], 2, 3).unwrap();
    let best = t.mean_for(t.best_q).unwrap();
    assert!(t.table.iter().all(|c| best <= c.mean_per_element_s));
    let records: Vec<_> = t.records().cloned().collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tune.csv");
    write_csv(&records, &path).unwrap();
    assert_eq!(read_csv(&path).unwrap(), records);
}

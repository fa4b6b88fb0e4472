use std::io;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use bitrev_bench::report::write_records;
use bitrev_bench::{parse_range, run_benchmark, tune_cobra, BenchConfig, CobraQ, ElementKind};
use bitrev_core::verify::{audit_swap_counts, check_method};
use bitrev_core::{MethodId, MethodOptions, Permuter};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bitrev-bench",
    version,
    about = "Bit-reversed permutation benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time methods over a range of sizes and emit CSV.
    Run(RunArgs),
    /// Time COBRA for each block size at one problem size.
    TuneCobra(TuneArgs),
    /// Check every method against the oracle and audit swap counts.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated method names, or `all`.
    #[arg(long, default_value = "all")]
    methods: String,
    /// `MIN..MAX` (inclusive) or a single width.
    #[arg(long, default_value = "8..20", value_parser = parse_range)]
    bits: RangeInclusive<u32>,
    #[arg(long, default_value_t = 100)]
    replicates: usize,
    #[arg(long, default_value_t = 3)]
    warmup: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Block bits for COBRA, `default`, or `auto` to tune per size.
    #[arg(long, default_value = "default")]
    cobra_q: CobraQ,
    #[arg(long, default_value_t = bitrev_core::RecursionPolicy::DEFAULT_BASE_BITS)]
    base_bits: u32,
    #[arg(long, default_value_t = 1)]
    depth_limit: u32,
    /// Parallel workers; 0 reads BITREV_THREADS or uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Check the last replicate of every run against the oracle.
    #[arg(long)]
    verify: bool,
    /// pair (16 bytes), u64, or u32.
    #[arg(long, default_value = "pair")]
    element: ElementKind,
    #[arg(long, default_value_t = 16)]
    unrolled_max_bits: u32,
    /// Allow sizes up to 2^30.
    #[arg(long)]
    allow_large: bool,
    /// Skip runs whose estimated footprint exceeds this.
    #[arg(long, default_value_t = 4.0)]
    mem_cap_gib: f64,
    /// Write schedule-generation times here as CSV.
    #[arg(long)]
    schedule_times: Option<PathBuf>,
    /// Output CSV; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TuneArgs {
    #[arg(long)]
    bits: u32,
    /// Candidate block bits, `MIN..MAX` or a single value.
    #[arg(long, value_parser = parse_range)]
    q: Option<RangeInclusive<u32>>,
    #[arg(long, default_value_t = 20)]
    replicates: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Per-sample CSV; a summary goes to stderr either way.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest width checked; every width from 1 up is covered.
    #[arg(long, default_value_t = 16)]
    bits: u32,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

fn parse_methods(list: &str) -> anyhow::Result<Vec<MethodId>> {
    if list == "all" {
        return Ok(MethodId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let m: MethodId = name.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

fn emit<R: std::borrow::Borrow<bitrev_bench::BenchmarkRecord>>(
    records: impl IntoIterator<Item = R>,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            write_records(records, io::BufWriter::new(file), path)?;
        }
        None => write_records(records, io::stdout().lock(), Path::new("<stdout>"))?,
    }
    Ok(())
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let cfg = BenchConfig {
        methods: parse_methods(&args.methods)?,
        b_min: *args.bits.start(),
        b_max: *args.bits.end(),
        replicates: args.replicates,
        warmup: args.warmup,
        element: args.element,
        cobra_q: args.cobra_q,
        base_bits: args.base_bits,
        depth_limit: args.depth_limit,
        threads: args.threads,
        seed: args.seed,
        verify: args.verify,
        unrolled_max_bits: args.unrolled_max_bits,
        allow_large: args.allow_large,
        memory_cap_bytes: (args.mem_cap_gib * (1u64 << 30) as f64) as u64,
        min_sample: Duration::from_millis(1),
        ..BenchConfig::default()
    };
    let outcome = run_benchmark(&cfg)?;
    emit(&outcome.records, args.out.as_deref())?;

    for s in &outcome.skipped {
        eprintln!("skipped {} b={}: {}", s.method, s.b, s.reason);
    }
    for (b, q) in &outcome.tuned_q {
        eprintln!("cobra b={b}: tuned q={q}");
    }
    if cfg.verify {
        eprintln!(
            "verified {} method/size runs against the oracle",
            outcome.verified
        );
    }
    if let Some(path) = args.schedule_times {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(&path)
            .with_context(|| format!("creating {}", path.display()))?;
        w.write_record(["method", "b", "seconds"])?;
        for p in &outcome.prepare_times {
            w.write_record([p.method.to_string(), p.b.to_string(), p.seconds.to_string()])?;
        }
        w.flush()?;
    }
    Ok(())
}

fn tune(args: TuneArgs) -> anyhow::Result<()> {
    let b = bitrev_core::BitWidth::new(args.bits)?;
    let candidates: Vec<u32> = match args.q {
        Some(range) => range.collect(),
        None => bitrev_bench::default_candidates(b),
    };
    let tuning = tune_cobra(args.bits, &candidates, args.replicates, args.seed)?;
    for row in &tuning.table {
        let mark = if row.q == tuning.best_q { " *" } else { "" };
        eprintln!(
            "q={:>2}  {:.4e} s/element{mark}",
            row.q, row.mean_per_element_s
        );
    }
    if let Some(base) = tuning.mean_for(1) {
        let best = tuning.mean_for(tuning.best_q).unwrap_or(base);
        eprintln!(
            "best q={} at {:.3}x the q=1 time",
            tuning.best_q,
            best / base
        );
    }
    println!("{}", tuning.best_q);
    if let Some(path) = args.out {
        emit(tuning.records(), Some(&path))?;
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> anyhow::Result<bool> {
    if args.bits == 0 {
        bail!("--bits must be at least 1");
    }
    let mut ok = true;
    let options = MethodOptions::default();
    for method in MethodId::ALL {
        let max = args.bits.min(method.max_bits().unwrap_or(u32::MAX));
        let report = check_method(
            method.as_str(),
            |data: &mut [u64], b| Permuter::new(method, b, &options)?.apply(data),
            max,
            args.trials,
            args.seed,
        );
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<14} b=1..={max} trials={} mismatches={} errors={}",
            method.as_str(),
            args.trials,
            report.mismatch_count,
            report.errors.len()
        );
        for m in &report.mismatches {
            println!(
                "     b={} trial={} index={} expected={} actual={}",
                m.b, m.trial, m.index, m.expected, m.actual
            );
        }
        for e in &report.errors {
            println!("     error: {e}");
        }
        ok &= report.passed();
    }

    let audit_max = args.bits.min(bitrev_core::schedule::SCHEDULE_MAX_BITS);
    let audits = audit_swap_counts(audit_max)?;
    let bad: Vec<_> = audits.iter().filter(|a| !a.passed()).collect();
    println!(
        "{} swap counts b=1..={audit_max}{}",
        if bad.is_empty() { "PASS" } else { "FAIL" },
        if bad.is_empty() {
            String::new()
        } else {
            format!(" {bad:?}")
        }
    );
    Ok(ok && bad.is_empty())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args).map(|()| true),
        Command::TuneCobra(args) => tune(args).map(|()| true),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

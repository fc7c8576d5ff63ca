//! Timing harness for the benchmark kernels: correctness first, then
//! median/min wall-clock times over a configured number of iterations.

use std::hint::black_box;
use std::time::Instant;

use rosetta_core::bench::{BenchConfig, KERNELS};
use serde::Serialize;
use thiserror::Error;

/// Harness configuration: kernel sizes plus the iteration count.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Kernel sizes and seed.
    pub bench: BenchConfig,
    /// Timed iterations per kernel (at least 1).
    pub iterations: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            bench: BenchConfig::default(),
            iterations: 10,
        }
    }
}

/// One benchmark's outcome. Timing fields vary run to run; the checksum is
/// deterministic for a given config.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    /// Kernel name.
    pub name: String,
    /// Timed iterations.
    pub iterations: u32,
    /// Median wall-clock seconds across iterations.
    pub median_seconds: f64,
    /// Fastest iteration in seconds.
    pub min_seconds: f64,
    /// The kernel's checksum, validated before timing.
    pub checksum: f64,
}

/// Harness failure: a kernel's correctness predicate rejected its checksum,
/// so its timing is untrusted and the suite stops.
#[derive(Debug, Error)]
pub enum SuiteError {
    /// The named kernel failed its correctness check.
    #[error("correctness check failed for `{0}`")]
    Correctness(String),
}

/// Runs the seven kernels sequentially: checksum, correctness gate, then
/// timing.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<BenchRecord>, SuiteError> {
    run_suite_with_injection(config, None)
}

/// [`run_suite`] with a fault-injection hook: the named kernel's checksum is
/// corrupted before validation, forcing a correctness failure. Used to test
/// the failure path end to end.
pub fn run_suite_with_injection(
    config: &SuiteConfig,
    inject_failure: Option<&str>,
) -> Result<Vec<BenchRecord>, SuiteError> {
    let iterations = config.iterations.max(1);
    let mut records = Vec::with_capacity(KERNELS.len());
    for kernel in KERNELS {
        let mut checksum = (kernel.run)(&config.bench);
        if inject_failure == Some(kernel.name) {
            checksum += 1.0;
        }
        if !(kernel.check)(&config.bench, checksum) {
            return Err(SuiteError::Correctness(kernel.name.to_string()));
        }

        let mut times = Vec::with_capacity(iterations as usize);
        for _ in 0..iterations {
            let start = Instant::now();
            black_box((kernel.run)(black_box(&config.bench)));
            times.push(start.elapsed().as_secs_f64());
        }
        times.sort_by(|a, b| a.partial_cmp(b).expect("durations are finite"));
        let min_seconds = times[0];
        let median_seconds = if times.len() % 2 == 1 {
            times[times.len() / 2]
        } else {
            let hi = times.len() / 2;
            (times[hi - 1] + times[hi]) / 2.0
        };
        records.push(BenchRecord {
            name: kernel.name.to_string(),
            iterations,
            median_seconds,
            min_seconds,
            checksum,
        });
    }
    Ok(records)
}

/// Renders the human summary: absolute times plus each kernel's median
/// normalized to the `fib` median, so run-to-run shapes stay comparable
/// across machines.
pub fn summary_table(records: &[BenchRecord]) -> String {
    let fib_median = records
        .iter()
        .find(|r| r.name == "fib")
        .map(|r| r.median_seconds)
        .unwrap_or(f64::NAN);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<14} {:>12} {:>12} {:>10}\n",
        "benchmark", "median (s)", "min (s)", "vs fib"
    ));
    for r in records {
        out.push_str(&format!(
            "{:<14} {:>12.6} {:>12.6} {:>10.3}\n",
            r.name,
            r.median_seconds,
            r.min_seconds,
            r.median_seconds / fib_median
        ));
    }
    out
}

//! The seven standard microbenchmark kernels with their correctness checks.
//!
//! Kernels are pure and single-threaded; timing lives in the companion CLI
//! crate. Each kernel produces a deterministic checksum for a given
//! [`BenchConfig`], and carries a correctness predicate that must pass
//! before any timing of that kernel is trusted. Randomized kernels draw from
//! [`SplitMix64`], so checksums are reproducible from the seed alone.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rng::SplitMix64;

/// Escape-time sum over the fixed Mandelbrot grid (`re` in `-2.0..=0.5`,
/// `im` in `-1.0..=1.0`, step `0.1`, 80 iterations), frozen from an
/// independent straightforward implementation of the same grid.
pub const MANDEL_GRID_CHECKSUM: u64 = 14791;

/// High-precision value of `sum(1/k^2, k = 1..10000)`, computed externally
/// with 50-digit arithmetic and rounded to the nearest double.
pub const PI_SUM_REFERENCE: f64 = 1.6448340718480598;

/// Sizes and seed for one suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    /// Seed for the randomized kernels.
    pub seed: u64,
    /// Argument of the recursive Fibonacci kernel.
    pub fib_n: u32,
    /// Hex round-trips performed by `parse_int`.
    pub parse_int_trials: u32,
    /// Vector length sorted by `quicksort`.
    pub quicksort_len: usize,
    /// Trials accumulated by `rand_mat_stat`.
    pub rand_mat_stat_trials: u32,
    /// Matrix dimension multiplied by `rand_mat_mul`.
    pub rand_mat_mul_n: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            fib_n: 20,
            parse_int_trials: 1000,
            quicksort_len: 5000,
            rand_mat_stat_trials: 1000,
            rand_mat_mul_n: 200,
        }
    }
}

/// Naive doubly-recursive Fibonacci; the point is call overhead, not speed.
pub fn fib(n: u32) -> u64 {
    if n < 2 {
        n as u64
    } else {
        fib(n - 1) + fib(n - 2)
    }
}

/// Linear-time Fibonacci used as the independent check of [`fib`].
pub fn fib_iterative(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let next = a + b;
        a = b;
        b = next;
    }
    a
}

/// Formats random 32-bit values as hex and parses them back; returns the
/// number of exact round-trips (equal to `trials` when correct).
pub fn parse_int_bench(trials: u32, seed: u64) -> u64 {
    let mut rng = SplitMix64::new(seed);
    let mut ok = 0u64;
    for _ in 0..trials {
        let v = rng.next_u32();
        let hex = format_hex(v);
        match u32::from_str_radix(&hex, 16) {
            Ok(parsed) if parsed == v => ok += 1,
            _ => {}
        }
    }
    ok
}

fn format_hex(v: u32) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    write!(s, "{v:x}").expect("formatting into String");
    s
}

/// Escape count for one point: iterations applied before `|z| > 2`, with
/// `z` starting at `c`, capped at `max_iter`.
pub fn mandel_escape(re: f64, im: f64, max_iter: u32) -> u32 {
    let (mut zr, mut zi) = (re, im);
    for n in 0..max_iter {
        if zr * zr + zi * zi > 4.0 {
            return n;
        }
        let next_r = zr * zr - zi * zi + re;
        zi = 2.0 * zr * zi + im;
        zr = next_r;
    }
    max_iter
}

/// Escape-time sum over the fixed grid; see [`MANDEL_GRID_CHECKSUM`].
pub fn mandel_bench() -> u64 {
    let mut total = 0u64;
    for k in 0..26 {
        let re = -2.0 + 0.1 * k as f64;
        for j in 0..21 {
            let im = -1.0 + 0.1 * j as f64;
            total += mandel_escape(re, im, 80) as u64;
        }
    }
    total
}

/// In-place recursive quicksort with a median-of-first/middle/last pivot.
/// Inputs must be free of NaN.
pub fn quicksort(values: &mut [f64]) {
    if values.len() > 1 {
        qsort(values, 0, values.len() as i64 - 1);
    }
}

fn median3(a: f64, b: f64, c: f64) -> f64 {
    a.max(b).min(a.min(b).max(c))
}

fn qsort(a: &mut [f64], lo: i64, hi: i64) {
    if lo >= hi {
        return;
    }
    let pivot = median3(
        a[lo as usize],
        a[((lo + hi) / 2) as usize],
        a[hi as usize],
    );
    let (mut i, mut j) = (lo, hi);
    while i <= j {
        while a[i as usize] < pivot {
            i += 1;
        }
        while a[j as usize] > pivot {
            j -= 1;
        }
        if i <= j {
            a.swap(i as usize, j as usize);
            i += 1;
            j -= 1;
        }
    }
    qsort(a, lo, j);
    qsort(a, i, hi);
}

/// One pass of the slow pi series: `sum(1/k^2, k = 1..=terms)`.
pub fn pi_sum_terms(terms: u32) -> f64 {
    let mut sum = 0.0;
    for k in 1..=terms as u64 {
        sum += 1.0 / (k * k) as f64;
    }
    sum
}

/// The benchmark kernel: 500 repetitions of the 10000-term series; every
/// repetition recomputes the same value, and the final sum is returned.
pub fn pi_sum() -> f64 {
    let mut sum = 0.0;
    for _ in 0..500 {
        sum = pi_sum_terms(10_000);
    }
    sum
}

/// Plain row-major matrix multiply (`a` is `ar x ac`, `b` is `ac x bc`).
pub fn mat_mul(a: &[f64], ar: usize, ac: usize, b: &[f64], bc: usize) -> Vec<f64> {
    debug_assert_eq!(a.len(), ar * ac);
    debug_assert_eq!(b.len(), ac * bc);
    let mut c = vec![0.0; ar * bc];
    for i in 0..ar {
        for k in 0..ac {
            let aik = a[i * ac + k];
            let brow = &b[k * bc..(k + 1) * bc];
            let crow = &mut c[i * bc..(i + 1) * bc];
            for (cj, bj) in crow.iter_mut().zip(brow) {
                *cj += aik * bj;
            }
        }
    }
    c
}

fn transpose(a: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut t = vec![0.0; a.len()];
    for r in 0..rows {
        for c in 0..cols {
            t[c * rows + r] = a[r * cols + c];
        }
    }
    t
}

fn trace(a: &[f64], n: usize) -> f64 {
    (0..n).map(|i| a[i * n + i]).sum()
}

/// `trace((X' X)^4)` for a `rows x cols` block `X`.
fn gram_fourth_power_trace(x: &[f64], rows: usize, cols: usize) -> f64 {
    let xt = transpose(x, rows, cols);
    let g = mat_mul(&xt, cols, rows, x, cols); // cols x cols
    let g2 = mat_mul(&g, cols, cols, &g, cols);
    let g4 = mat_mul(&g2, cols, cols, &g2, cols);
    trace(&g4, cols)
}

/// Random matrix statistics with an injectable block source, used by tests
/// to substitute deterministic blocks for the RNG.
///
/// Per trial, four 5x5 blocks `a, b, c, d` are drawn in order (each filled
/// row-major); `P = [a b c d]` (5x20) and `Q = [a b; c d]` (10x10) are
/// assembled and `trace((P' P)^4)` / `trace((Q' Q)^4)` accumulated. The
/// statistics are the coefficients of variation (sample std over mean) of
/// the two accumulations; fewer than two trials yield zero dispersion.
pub fn rand_mat_stat_with<F: FnMut() -> [f64; 25]>(trials: u32, mut next_block: F) -> (f64, f64) {
    let t = trials as usize;
    let mut v = Vec::with_capacity(t);
    let mut w = Vec::with_capacity(t);
    for _ in 0..t {
        let a = next_block();
        let b = next_block();
        let c = next_block();
        let d = next_block();

        // P = [a b c d], 5 rows x 20 cols.
        let mut p = vec![0.0; 5 * 20];
        for (bi, block) in [&a, &b, &c, &d].into_iter().enumerate() {
            for r in 0..5 {
                for col in 0..5 {
                    p[r * 20 + bi * 5 + col] = block[r * 5 + col];
                }
            }
        }
        // Q = [a b; c d], 10 rows x 10 cols.
        let mut q = vec![0.0; 10 * 10];
        for r in 0..5 {
            for col in 0..5 {
                q[r * 10 + col] = a[r * 5 + col];
                q[r * 10 + 5 + col] = b[r * 5 + col];
                q[(5 + r) * 10 + col] = c[r * 5 + col];
                q[(5 + r) * 10 + 5 + col] = d[r * 5 + col];
            }
        }

        v.push(gram_fourth_power_trace(&p, 5, 20));
        w.push(gram_fourth_power_trace(&q, 10, 10));
    }
    (coefficient_of_variation(&v), coefficient_of_variation(&w))
}

/// Random matrix statistics over `trials` Gaussian trials.
pub fn rand_mat_stat(trials: u32, seed: u64) -> (f64, f64) {
    let mut rng = SplitMix64::new(seed);
    rand_mat_stat_with(trials, move || {
        let mut block = [0.0; 25];
        for slot in &mut block {
            *slot = rng.next_normal();
        }
        block
    })
}

fn coefficient_of_variation(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    libm::sqrt(ss / (n - 1.0)) / mean
}

/// Multiplies two uniform random `n x n` matrices and returns `C[1,1]`
/// (the first entry). `A` is filled row-major from the stream first, then `B`.
pub fn rand_mat_mul(n: usize, seed: u64) -> f64 {
    let mut rng = SplitMix64::new(seed);
    let a: Vec<f64> = (0..n * n).map(|_| rng.next_f64()).collect();
    let b: Vec<f64> = (0..n * n).map(|_| rng.next_f64()).collect();
    let c = mat_mul(&a, n, n, &b, n);
    c[0]
}

/// One benchmark kernel: a checksum-producing run plus the correctness
/// predicate that gates its timing.
pub struct KernelSpec {
    /// Kernel name, matching the published suite.
    pub name: &'static str,
    /// Computes the checksum for a config.
    pub run: fn(&BenchConfig) -> f64,
    /// Validates a previously produced checksum.
    pub check: fn(&BenchConfig, f64) -> bool,
}

/// The seven kernels in suite order.
pub const KERNELS: &[KernelSpec] = &[
    KernelSpec {
        name: "fib",
        run: run_fib,
        check: check_fib,
    },
    KernelSpec {
        name: "parse_int",
        run: run_parse_int,
        check: check_parse_int,
    },
    KernelSpec {
        name: "mandel",
        run: run_mandel,
        check: check_mandel,
    },
    KernelSpec {
        name: "quicksort",
        run: run_quicksort,
        check: check_quicksort,
    },
    KernelSpec {
        name: "pi_sum",
        run: run_pi_sum,
        check: check_pi_sum,
    },
    KernelSpec {
        name: "rand_mat_stat",
        run: run_rand_mat_stat,
        check: check_rand_mat_stat,
    },
    KernelSpec {
        name: "rand_mat_mul",
        run: run_rand_mat_mul,
        check: check_rand_mat_mul,
    },
];

fn run_fib(cfg: &BenchConfig) -> f64 {
    fib(cfg.fib_n) as f64
}

fn check_fib(cfg: &BenchConfig, checksum: f64) -> bool {
    checksum == fib_iterative(cfg.fib_n) as f64
}

fn run_parse_int(cfg: &BenchConfig) -> f64 {
    parse_int_bench(cfg.parse_int_trials, cfg.seed) as f64
}

fn check_parse_int(cfg: &BenchConfig, checksum: f64) -> bool {
    checksum == cfg.parse_int_trials as f64
}

fn run_mandel(_cfg: &BenchConfig) -> f64 {
    mandel_bench() as f64
}

fn check_mandel(_cfg: &BenchConfig, checksum: f64) -> bool {
    checksum == MANDEL_GRID_CHECKSUM as f64
}

fn quicksort_input(cfg: &BenchConfig) -> Vec<f64> {
    let mut rng = SplitMix64::new(cfg.seed);
    (0..cfg.quicksort_len).map(|_| rng.next_f64()).collect()
}

fn run_quicksort(cfg: &BenchConfig) -> f64 {
    let mut v = quicksort_input(cfg);
    quicksort(&mut v);
    v.iter().sum()
}

fn check_quicksort(cfg: &BenchConfig, checksum: f64) -> bool {
    let input = quicksort_input(cfg);
    let input_sum: f64 = input.iter().sum();
    let mut v = input;
    quicksort(&mut v);
    let sorted = v.windows(2).all(|p| p[0] <= p[1]);
    let sum: f64 = v.iter().sum();
    sorted && sum == checksum && (sum - input_sum).abs() < 1e-9
}

fn run_pi_sum(_cfg: &BenchConfig) -> f64 {
    pi_sum()
}

fn check_pi_sum(_cfg: &BenchConfig, checksum: f64) -> bool {
    (checksum - PI_SUM_REFERENCE).abs() < 1e-6
}

fn run_rand_mat_stat(cfg: &BenchConfig) -> f64 {
    let (s1, s2) = rand_mat_stat(cfg.rand_mat_stat_trials, cfg.seed);
    s1 + s2
}

fn check_rand_mat_stat(cfg: &BenchConfig, checksum: f64) -> bool {
    let (s1, s2) = rand_mat_stat(cfg.rand_mat_stat_trials, cfg.seed);
    if s1 + s2 != checksum || !s1.is_finite() || !s2.is_finite() {
        return false;
    }
    if cfg.rand_mat_stat_trials < 2 {
        return s1 == 0.0 && s2 == 0.0;
    }
    if cfg.rand_mat_stat_trials >= 1000 {
        // Dispersion of the trace statistic concentrates for large samples.
        return (0.3..1.0).contains(&s1) && (0.3..1.0).contains(&s2);
    }
    s1 >= 0.0 && s2 >= 0.0
}

fn run_rand_mat_mul(cfg: &BenchConfig) -> f64 {
    rand_mat_mul(cfg.rand_mat_mul_n, cfg.seed)
}

fn check_rand_mat_mul(cfg: &BenchConfig, checksum: f64) -> bool {
    // Independent evaluation of C[1,1]: dot of A's first row with B's first
    // column, regenerated from the same stream.
    let n = cfg.rand_mat_mul_n;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut a_row = vec![0.0; n];
    let mut b_col = vec![0.0; n];
    for (i, slot) in a_row.iter_mut().enumerate() {
        debug_assert!(i < n);
        *slot = rng.next_f64();
    }
    for _ in n..n * n {
        rng.next_u64();
    }
    for slot in b_col.iter_mut() {
        *slot = rng.next_f64();
        for _ in 1..n {
            rng.next_u64();
        }
    }
    let dot: f64 = a_row.iter().zip(&b_col).map(|(x, y)| x * y).sum();
    (checksum - dot).abs() <= 1e-9 * dot.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fib_base_cases_and_known_value() {
        assert_eq!(fib(0), 0);
        assert_eq!(fib(1), 1);
        assert_eq!(fib(20), 6765);
    }

    #[test]
    fn fib_recursive_matches_iterative() {
        for n in 0..=30 {
            assert_eq!(fib(n), fib_iterative(n), "n = {n}");
        }
    }

    #[test]
    fn parse_int_roundtrips() {
        assert_eq!(parse_int_bench(0, 1), 0);
        assert_eq!(parse_int_bench(1000, 12345), 1000);
        // Degenerate value formats and parses cleanly.
        assert_eq!(format_hex(0), "0");
        assert_eq!(u32::from_str_radix("0", 16).unwrap(), 0);
    }

    #[test]
    fn mandel_point_cases() {
        // c = 0 never escapes.
        assert_eq!(mandel_escape(0.0, 0.0, 80), 80);
        // c = 2: |2| is not > 2, first update gives z = 6, escape count 1.
        assert_eq!(mandel_escape(2.0, 0.0, 80), 1);
    }

    #[test]
    fn mandel_grid_matches_frozen_checksum() {
        assert_eq!(mandel_bench(), MANDEL_GRID_CHECKSUM);
    }

    #[test]
    fn quicksort_small_cases() {
        let mut empty: Vec<f64> = vec![];
        quicksort(&mut empty);
        assert!(empty.is_empty());

        let mut v = vec![3.0, 1.0, 2.0];
        quicksort(&mut v);
        assert_eq!(v, vec![1.0, 2.0, 3.0]);

        let mut dup = vec![2.0, 2.0, 1.0, 2.0];
        quicksort(&mut dup);
        assert_eq!(dup, vec![1.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn quicksort_matches_insertion_sort_oracle() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..50 {
            let input: Vec<f64> = (0..200).map(|_| rng.next_f64() * 100.0).collect();
            let mut fast = input.clone();
            quicksort(&mut fast);
            let mut slow = input;
            // Insertion sort oracle.
            for i in 1..slow.len() {
                let mut j = i;
                while j > 0 && slow[j - 1] > slow[j] {
                    slow.swap(j - 1, j);
                    j -= 1;
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn pi_sum_values() {
        assert_eq!(pi_sum_terms(1), 1.0);
        assert!((pi_sum_terms(10_000) - PI_SUM_REFERENCE).abs() < 1e-12);
        // Each repetition recomputes the same sum.
        assert_eq!(pi_sum(), pi_sum_terms(10_000));
    }

    #[test]
    fn rand_mat_stat_single_trial_has_zero_dispersion() {
        assert_eq!(rand_mat_stat(1, 9), (0.0, 0.0));
        assert_eq!(rand_mat_stat(0, 9), (0.0, 0.0));
    }

    #[test]
    fn rand_mat_stat_identity_stub_hand_oracle() {
        // With every block the 5x5 identity: P'P = J4 (x) I5 and
        // Q'Q = 2 J2 (x) I5, so both fourth-power traces are 4^3*20 = 1280
        // and 16*8*10 = 1280. Two identical trials give zero dispersion,
        // which the accumulators must reproduce exactly.
        let identity = || {
            let mut block = [0.0; 25];
            for i in 0..5 {
                block[i * 5 + i] = 1.0;
            }
            block
        };
        // Inspect the traces through a two-trial run with a probe.
        let mut traces = Vec::new();
        let (s1, s2) = rand_mat_stat_with(2, || {
            traces.push(());
            identity()
        });
        assert_eq!(traces.len(), 8, "four blocks per trial");
        assert_eq!((s1, s2), (0.0, 0.0));

        // Direct hand-oracle check of the underlying traces.
        let block = identity();
        let mut p = vec![0.0; 5 * 20];
        for bi in 0..4 {
            for r in 0..5 {
                for c in 0..5 {
                    p[r * 20 + bi * 5 + c] = block[r * 5 + c];
                }
            }
        }
        assert_eq!(gram_fourth_power_trace(&p, 5, 20), 1280.0);
        let mut q = vec![0.0; 100];
        for r in 0..5 {
            for c in 0..5 {
                q[r * 10 + c] = block[r * 5 + c];
                q[r * 10 + 5 + c] = block[r * 5 + c];
                q[(5 + r) * 10 + c] = block[r * 5 + c];
                q[(5 + r) * 10 + 5 + c] = block[r * 5 + c];
            }
        }
        assert_eq!(gram_fourth_power_trace(&q, 10, 10), 1280.0);
    }

    #[test]
    fn rand_mat_stat_seeded_range() {
        let (s1, s2) = rand_mat_stat(1000, 42);
        assert!((0.3..1.0).contains(&s1), "s1 = {s1}");
        assert!((0.3..1.0).contains(&s2), "s2 = {s2}");
        // Determinism.
        assert_eq!(rand_mat_stat(1000, 42), (s1, s2));
    }

    #[test]
    fn rand_mat_mul_tiny_cases() {
        // n = 1: the product is just a*b; regenerate the two draws.
        let mut rng = SplitMix64::new(5);
        let a = rng.next_f64();
        let b = rng.next_f64();
        assert_eq!(rand_mat_mul(1, 5), a * b);

        // Identity times anything is that thing.
        let eye = vec![1.0, 0.0, 0.0, 1.0];
        let m = vec![1.0, 2.0, 3.0, 4.0];
        assert_eq!(mat_mul(&eye, 2, 2, &m, 2), m);
    }

    #[test]
    fn rand_mat_mul_associativity_spot_check() {
        let n = 20;
        let mut rng = SplitMix64::new(11);
        let a: Vec<f64> = (0..n * n).map(|_| rng.next_f64()).collect();
        let b: Vec<f64> = (0..n * n).map(|_| rng.next_f64()).collect();
        let mut e1 = vec![0.0; n];
        e1[0] = 1.0;
        let ab = mat_mul(&a, n, n, &b, n);
        let ab_e1 = mat_mul(&ab, n, n, &e1, 1);
        let b_e1 = mat_mul(&b, n, n, &e1, 1);
        let a_be1 = mat_mul(&a, n, n, &b_e1, 1);
        for (x, y) in ab_e1.iter().zip(&a_be1) {
            assert!((x - y).abs() <= 1e-9 * y.abs().max(1.0));
        }
    }

    #[test]
    fn every_kernel_checks_its_own_run() {
        let cfg = BenchConfig {
            rand_mat_stat_trials: 100,
            rand_mat_mul_n: 50,
            quicksort_len: 500,
            ..BenchConfig::default()
        };
        for kernel in KERNELS {
            let checksum = (kernel.run)(&cfg);
            assert!(
                (kernel.check)(&cfg, checksum),
                "kernel {} failed its own check",
                kernel.name
            );
        }
    }

    #[test]
    fn kernel_checks_reject_corrupt_checksums() {
        let cfg = BenchConfig {
            rand_mat_stat_trials: 10,
            rand_mat_mul_n: 20,
            quicksort_len: 100,
            ..BenchConfig::default()
        };
        for kernel in KERNELS {
            let checksum = (kernel.run)(&cfg);
            assert!(
                !(kernel.check)(&cfg, checksum + 1.0),
                "kernel {} accepted a corrupt checksum",
                kernel.name
            );
        }
    }
}

//! Seedable random number generation with a fixed, documented algorithm.
//!
//! Benchmark checksums and synthetic images must be reproducible from a seed
//! alone, so the generator is pinned to SplitMix64 (Steele, Lea & Flood's
//! `splitmix64` finalizer) rather than an implementation-defined source:
//!
//! * `next_u64`: `state += 0x9E3779B97F4A7C15`, then the 30/27/31-shift
//!   xor-multiply finalizer.
//! * `next_f64`: top 53 bits of `next_u64`, scaled into `[0, 1)`.
//! * `next_normal`: Box-Muller with a fresh pair `(u1, u2)` per call, where
//!   `u1` lies in `(0, 1]`; only the cosine branch is returned.

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Creates a generator whose entire output stream is determined by `seed`.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Returns the next 64-bit value in the stream.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Returns the upper 32 bits of the next value.
    pub fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    /// Uniform draw from `[0, 1)` using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `(0, 1]`; used where a logarithm of the draw is taken.
    pub fn next_f64_open_zero(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)` by rejection-free scaling.
    ///
    /// The tiny modulo bias of the scaling is irrelevant for the image and
    /// placement uses here; what matters is that the mapping is fixed.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        // 128-bit multiply-shift keeps the draw in range without division.
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Standard normal draw via Box-Muller (cosine branch only).
    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_f64_open_zero();
        let u2 = self.next_f64();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        radius * libm::cos(2.0 * core::f64::consts::PI * u2)
    }
}

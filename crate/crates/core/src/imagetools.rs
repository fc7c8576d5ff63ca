//! MATLAB-semantics image routines: histogramming, Otsu threshold selection,
//! binarization, gray-range normalization and connected-component labeling.
//!
//! Intensities live in `[0, 1]`. Thresholding quantizes them into 256 bins
//! (`bin = round(p * 255)`), selects the integer threshold `t*` maximizing
//! the between-class variance of the background/foreground split, and
//! reports the level `t*/255`. When several thresholds tie — which happens
//! whenever the winning split is separated by empty bins — the arithmetic
//! mean of all maximizers is used, matching MATLAB's `graythresh`.

use alloc::vec;
use alloc::vec::Vec;

use crate::mathtools::Matrix;

/// Errors from image construction and thresholding.
#[derive(Debug, Clone, PartialEq)]
pub enum ImageError {
    /// Zero rows or columns, or a pixel count that does not match.
    BadDimensions {
        /// Declared rows.
        rows: usize,
        /// Declared columns.
        cols: usize,
        /// Supplied pixel count.
        len: usize,
    },
    /// A gray pixel fell outside `[0, 1]`.
    PixelOutOfRange {
        /// Flat index of the offending pixel.
        index: usize,
        /// The value found there.
        value: f64,
    },
    /// A pixel of a binary image was neither 0 nor 1.
    NotBinary {
        /// Flat index of the offending pixel.
        index: usize,
    },
    /// A threshold level outside `[0, 1]` was passed to [`im2bw`].
    LevelOutOfRange {
        /// The offending level.
        level: f64,
    },
}

impl core::fmt::Display for ImageError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ImageError::BadDimensions { rows, cols, len } => {
                write!(f, "{rows}x{cols} image needs {} pixels, got {len}", rows * cols)
            }
            ImageError::PixelOutOfRange { index, value } => {
                write!(f, "pixel {index} = {value} outside [0, 1]")
            }
            ImageError::NotBinary { index } => write!(f, "pixel {index} is not 0 or 1"),
            ImageError::LevelOutOfRange { level } => {
                write!(f, "threshold level {level} outside [0, 1]")
            }
        }
    }
}

/// Grayscale image with row-major intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    rows: usize,
    cols: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    /// Builds an image, validating shape and the `[0, 1]` intensity range.
    pub fn new(rows: usize, cols: usize, pixels: Vec<f64>) -> Result<Self, ImageError> {
        if rows == 0 || cols == 0 || pixels.len() != rows * cols {
            return Err(ImageError::BadDimensions {
                rows,
                cols,
                len: pixels.len(),
            });
        }
        for (index, &value) in pixels.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(ImageError::PixelOutOfRange { index, value });
            }
        }
        Ok(Self { rows, cols, pixels })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major pixel slice.
    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    /// Pixel at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.cols + col]
    }
}

/// Binary image; pixels are exactly 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl BinaryImage {
    /// Builds a binary image, validating shape and strict binarity.
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self, ImageError> {
        if rows == 0 || cols == 0 || pixels.len() != rows * cols {
            return Err(ImageError::BadDimensions {
                rows,
                cols,
                len: pixels.len(),
            });
        }
        if let Some(index) = pixels.iter().position(|&p| p > 1) {
            return Err(ImageError::NotBinary { index });
        }
        Ok(Self { rows, cols, pixels })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major pixel slice (values 0 or 1).
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Pixel at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.cols + col]
    }
}

/// 256-bin intensity histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256 {
    /// Counts per bin; bin `i` holds pixels with `round(p * 255) == i`.
    pub bins: [u64; 256],
}

impl Histogram256 {
    /// Total mass across all bins.
    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }

    /// Number of bins with nonzero mass.
    pub fn nonzero_bins(&self) -> usize {
        self.bins.iter().filter(|&&b| b > 0).count()
    }
}

/// Histogram of an image: pixel `p` lands in bin `round(p * 255)`
/// (round half up; `p` is non-negative).
pub fn imhist(img: &GrayImage) -> Histogram256 {
    let mut bins = [0u64; 256];
    for &p in img.pixels() {
        let bin = (p * 255.0 + 0.5) as usize;
        bins[bin.min(255)] += 1;
    }
    Histogram256 { bins }
}

/// Otsu's criterion over a histogram: the mean of all integer thresholds
/// `t` in `0..=255` maximizing the between-class variance
/// `w0(t) * w1(t) * (mu0(t) - mu1(t))^2`, where class 0 holds bins `0..=t`
/// and class 1 holds bins `t+1..=255`. Returns `None` when fewer than two
/// bins are populated (no valid split exists).
///
/// The variance is evaluated from exact integer cumulants as
/// `(s0*W - S*w0)^2 / (w0 * (W - w0))`, which depends on `t` only through
/// `(w0, s0)`; thresholds inside a run of empty bins therefore produce
/// bit-identical scores and tie exactly.
pub fn otsu_threshold(hist: &Histogram256) -> Option<f64> {
    if hist.nonzero_bins() < 2 {
        return None;
    }
    let total: u64 = hist.total();
    let total_weighted: u64 = hist
        .bins
        .iter()
        .enumerate()
        .map(|(i, &c)| i as u64 * c)
        .sum();

    let w = total as f64;
    let s = total_weighted as f64;

    let mut best = f64::NEG_INFINITY;
    let mut maximizers: Vec<usize> = Vec::new();
    let mut w0: u64 = 0;
    let mut s0: u64 = 0;
    for t in 0..256 {
        w0 += hist.bins[t];
        s0 += t as u64 * hist.bins[t];
        let w1 = total - w0;
        if w0 == 0 || w1 == 0 {
            continue;
        }
        let diff = s0 as f64 * w - s * w0 as f64;
        let sigma_b = diff * diff / (w0 as f64 * w1 as f64);
        if sigma_b > best {
            best = sigma_b;
            maximizers.clear();
            maximizers.push(t);
        } else if sigma_b == best {
            maximizers.push(t);
        }
    }
    let sum: usize = maximizers.iter().sum();
    Some(sum as f64 / maximizers.len() as f64)
}

/// Result of [`graythresh`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdLevel {
    /// Normalized threshold in `[0, 1]` (`t*/255`).
    pub level: f64,
    /// True when the histogram had a single populated bin; `level` is 0.
    pub degenerate: bool,
}

/// Otsu threshold of an image, normalized to `[0, 1]`.
///
/// A constant image has no valid split; the result is level 0 with the
/// `degenerate` flag set rather than an arbitrary cut.
pub fn graythresh(img: &GrayImage) -> ThresholdLevel {
    match otsu_threshold(&imhist(img)) {
        Some(t) => ThresholdLevel {
            level: t / 255.0,
            degenerate: false,
        },
        None => ThresholdLevel {
            level: 0.0,
            degenerate: true,
        },
    }
}

/// Binarizes with the MATLAB convention: foreground is `pixel > level`,
/// strictly.
pub fn im2bw(img: &GrayImage, level: f64) -> Result<BinaryImage, ImageError> {
    if !(0.0..=1.0).contains(&level) {
        return Err(ImageError::LevelOutOfRange { level });
    }
    let pixels = img.pixels().iter().map(|&p| u8::from(p > level)).collect();
    BinaryImage::new(img.rows(), img.cols(), pixels)
}

/// Rescales an arbitrary finite matrix linearly onto `[0, 1]`:
/// `(x - min) / (max - min)`. A constant matrix maps to all zeros.
pub fn mat2gray(m: &Matrix) -> GrayImage {
    let data = m.data();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in data {
        if x < lo {
            lo = x;
        }
        if x > hi {
            hi = x;
        }
    }
    let span = hi - lo;
    let pixels: Vec<f64> = if span == 0.0 {
        vec![0.0; data.len()]
    } else {
        data.iter()
            .map(|&x| ((x - lo) / span).clamp(0.0, 1.0))
            .collect()
    };
    GrayImage::new(m.rows(), m.cols(), pixels).expect("rescaled pixels are in range")
}

/// Pixel adjacency used by [`bwlabel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    /// North, south, east, west neighbors.
    Four,
    /// All eight surrounding pixels.
    #[default]
    Eight,
}

/// Connected-component labeling of the foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    rows: usize,
    cols: usize,
    labels: Vec<u32>,
    num_labels: u32,
}

impl LabelMap {
    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major labels; 0 is background, components are `1..=num_labels`.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Label at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.cols + col]
    }

    /// Number of connected foreground components.
    pub fn num_labels(&self) -> u32 {
        self.num_labels
    }
}

/// Union-find over provisional labels, with path halving.
struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new() -> Self {
        // Slot 0 is the background pseudo-label and never unioned.
        Self { parent: vec![0] }
    }

    fn make_set(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Attach the larger root to the smaller to keep roots stable
            // with respect to first-encounter order.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Two-pass connected-component labeling.
///
/// Final labels are assigned in raster-scan order of first encounter: the
/// component whose first pixel appears earliest in row-major order gets
/// label 1, and so on, with no gaps.
pub fn bwlabel(img: &BinaryImage, connectivity: Connectivity) -> LabelMap {
    let rows = img.rows();
    let cols = img.cols();
    let mut provisional = vec![0u32; rows * cols];
    let mut sets = DisjointSets::new();

    // Pass 1: provisional labels from already-visited neighbors.
    let mut neighbors = [0u32; 4];
    for r in 0..rows {
        for c in 0..cols {
            if img.get(r, c) == 0 {
                continue;
            }
            let mut n = 0;
            if c > 0 && img.get(r, c - 1) == 1 {
                neighbors[n] = provisional[r * cols + c - 1];
                n += 1;
            }
            if r > 0 {
                if img.get(r - 1, c) == 1 {
                    neighbors[n] = provisional[(r - 1) * cols + c];
                    n += 1;
                }
                if connectivity == Connectivity::Eight {
                    if c > 0 && img.get(r - 1, c - 1) == 1 {
                        neighbors[n] = provisional[(r - 1) * cols + c - 1];
                        n += 1;
                    }
                    if c + 1 < cols && img.get(r - 1, c + 1) == 1 {
                        neighbors[n] = provisional[(r - 1) * cols + c + 1];
                        n += 1;
                    }
                }
            }
            let label = if n == 0 {
                sets.make_set()
            } else {
                let mut m = neighbors[0];
                for &nb in &neighbors[1..n] {
                    if nb < m {
                        m = nb;
                    }
                }
                for &nb in &neighbors[..n] {
                    sets.union(m, nb);
                }
                m
            };
            provisional[r * cols + c] = label;
        }
    }

    // Pass 2: map roots to final labels in first-encounter order.
    let mut root_to_final = vec![0u32; sets.parent.len()];
    let mut labels = vec![0u32; rows * cols];
    let mut next = 0u32;
    for (i, &p) in provisional.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let root = sets.find(p);
        if root_to_final[root as usize] == 0 {
            next += 1;
            root_to_final[root as usize] = next;
        }
        labels[i] = root_to_final[root as usize];
    }

    LabelMap {
        rows,
        cols,
        labels,
        num_labels: next,
    }
}

/// Number of foreground (1) pixels.
pub fn count_foreground(img: &BinaryImage) -> u64 {
    img.pixels().iter().map(|&p| p as u64).sum()
}

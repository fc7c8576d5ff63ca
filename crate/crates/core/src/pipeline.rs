//! The two reference image-analysis pipelines and a deterministic synthetic
//! micrograph generator used to exercise them without external datasets.
//!
//! * [`janus`] — threshold a grayscale image with Otsu's method, binarize,
//!   and count connected components ("number of nuclei").
//! * [`janus2`] — per image, count foreground pixels after Otsu binarization
//!   and min/max-normalize the counts onto a `[0, 7000]` death-signal scale
//!   between caller-supplied calibration anchors.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::imagetools::{
    bwlabel, count_foreground, graythresh, im2bw, BinaryImage, Connectivity, GrayImage,
};
use crate::rng::SplitMix64;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Upper anchor of the normalized death-signal scale.
pub const DEATH_SIGNAL_MAX: f64 = 7000.0;

/// Outcome of the object-counting pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct JanusResult {
    /// Otsu threshold used for the binarization, in `[0, 1]`.
    #[cfg_attr(feature = "serde", serde(rename = "level"))]
    pub threshold_level: f64,
    /// Number of connected foreground components.
    #[cfg_attr(feature = "serde", serde(rename = "count"))]
    pub object_count: u32,
    /// True when the image was constant and no split existed; the count is 0.
    pub degenerate: bool,
}

/// Foreground-pixel count normalized onto the death-signal scale.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DeathSignal {
    /// Raw foreground pixel count.
    pub raw_count: u64,
    /// `7000 * (raw - min_ref) / (max_ref - min_ref)`, clamped to `[0, 7000]`.
    pub normalized: f64,
}

/// Pipeline errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    /// `max_ref <= min_ref` passed to [`janus2`].
    BadCalibration {
        /// Lower anchor supplied.
        min_ref: u64,
        /// Upper anchor supplied.
        max_ref: u64,
    },
    /// A synthetic spec violated its own constraints.
    InvalidSyntheticSpec(String),
    /// Blob placement failed within the attempt budget.
    PlacementInfeasible,
}

impl core::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PipelineError::BadCalibration { min_ref, max_ref } => {
                write!(f, "calibration requires max_ref > min_ref, got {min_ref}..{max_ref}")
            }
            PipelineError::InvalidSyntheticSpec(reason) => {
                write!(f, "invalid synthetic spec: {reason}")
            }
            PipelineError::PlacementInfeasible => {
                f.write_str("could not place all blobs with the required separation")
            }
        }
    }
}

/// Runs the counting pipeline with 8-connectivity.
pub fn janus(img: &GrayImage) -> JanusResult {
    janus_with_connectivity(img, Connectivity::Eight)
}

/// Runs the counting pipeline with explicit connectivity.
///
/// A degenerate (single-bin) image yields the all-background binarization:
/// level 0, count 0, `degenerate` set.
pub fn janus_with_connectivity(img: &GrayImage, connectivity: Connectivity) -> JanusResult {
    let t = graythresh(img);
    if t.degenerate {
        return JanusResult {
            threshold_level: 0.0,
            object_count: 0,
            degenerate: true,
        };
    }
    let bw = im2bw(img, t.level).expect("graythresh level is in [0, 1]");
    let labels = bwlabel(&bw, connectivity);
    JanusResult {
        threshold_level: t.level,
        object_count: labels.num_labels(),
        degenerate: false,
    }
}

/// Otsu-binarized foreground count of one image; a degenerate image counts 0.
pub fn death_signal_raw(img: &GrayImage) -> u64 {
    let t = graythresh(img);
    if t.degenerate {
        return 0;
    }
    let bw = im2bw(img, t.level).expect("graythresh level is in [0, 1]");
    count_foreground(&bw)
}

/// Normalizes one raw count onto the `[0, 7000]` scale between the anchors.
pub fn normalize_death_signal(raw: u64, min_ref: u64, max_ref: u64) -> f64 {
    debug_assert!(max_ref > min_ref);
    let span = (max_ref - min_ref) as f64;
    let centered = raw as f64 - min_ref as f64;
    (DEATH_SIGNAL_MAX * centered / span).clamp(0.0, DEATH_SIGNAL_MAX)
}

/// Quantifies a sequence of micrographs: per image, binarize with the Otsu
/// level, count foreground pixels, and normalize between the anchors.
pub fn janus2(
    images: &[GrayImage],
    min_ref: u64,
    max_ref: u64,
) -> Result<Vec<DeathSignal>, PipelineError> {
    if max_ref <= min_ref {
        return Err(PipelineError::BadCalibration { min_ref, max_ref });
    }
    Ok(images
        .iter()
        .map(|img| {
            let raw = death_signal_raw(img);
            DeathSignal {
                raw_count: raw,
                normalized: normalize_death_signal(raw, min_ref, max_ref),
            }
        })
        .collect())
}

/// Mean and standard deviation of the normalized signal across one replica
/// group.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GroupSummary {
    /// Mean normalized signal.
    pub mean: f64,
    /// Sample standard deviation (n-1 denominator; 0 for a single replica).
    pub std_dev: f64,
    /// Number of replicas summarized.
    pub n: usize,
}

/// Summarizes one replica group of death signals.
pub fn summarize_group(signals: &[DeathSignal]) -> GroupSummary {
    let n = signals.len();
    if n == 0 {
        return GroupSummary {
            mean: 0.0,
            std_dev: 0.0,
            n: 0,
        };
    }
    let mean = signals.iter().map(|s| s.normalized).sum::<f64>() / n as f64;
    let std_dev = if n < 2 {
        0.0
    } else {
        let ss = signals
            .iter()
            .map(|s| {
                let d = s.normalized - mean;
                d * d
            })
            .sum::<f64>();
        libm::sqrt(ss / (n - 1) as f64)
    };
    GroupSummary { mean, std_dev, n }
}

/// Parameters of the synthetic micrograph generator: bright disks on a dark
/// background with optional Gaussian noise.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SyntheticSpec {
    /// Image rows.
    pub rows: usize,
    /// Image columns.
    pub cols: usize,
    /// Number of disks to place.
    pub num_blobs: u32,
    /// Disk radius in pixels.
    pub blob_radius: u32,
    /// Background intensity in `[0, 1]`.
    pub background_level: f64,
    /// Foreground (disk) intensity in `[0, 1]`; must exceed
    /// `background_level + 4 * noise_sigma`.
    pub foreground_level: f64,
    /// Standard deviation of the additive Gaussian noise.
    pub noise_sigma: f64,
    /// Seed of the generator; determines the image completely.
    pub seed: u64,
}

impl SyntheticSpec {
    fn validate(&self) -> Result<(), PipelineError> {
        let fail = |m: &str| Err(PipelineError::InvalidSyntheticSpec(String::from(m)));
        if self.rows == 0 || self.cols == 0 {
            return fail("image dimensions must be positive");
        }
        if !(0.0..=1.0).contains(&self.background_level)
            || !(0.0..=1.0).contains(&self.foreground_level)
        {
            return fail("levels must lie in [0, 1]");
        }
        if self.noise_sigma < 0.0 {
            return fail("noise sigma must be non-negative");
        }
        if self.num_blobs > 0 {
            if self.blob_radius == 0 {
                return fail("blob radius must be positive when blobs are requested");
            }
            if self.foreground_level <= self.background_level + 4.0 * self.noise_sigma {
                return fail("foreground level must exceed background by more than 4 sigma");
            }
        }
        Ok(())
    }
}

/// Generates a synthetic micrograph. Returns the image and the ground-truth
/// object count (always `spec.num_blobs` on success).
///
/// Disk centers are rejection-sampled at least `2r + 4` apart, keeping at
/// least two empty pixels between disks so components never merge; the
/// budget is bounded, and exhaustion reports [`PipelineError::PlacementInfeasible`].
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<(GrayImage, u32), PipelineError> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let r = spec.blob_radius as i64;
    let rows = spec.rows as i64;
    let cols = spec.cols as i64;

    let mut centers: Vec<(i64, i64)> = Vec::with_capacity(spec.num_blobs as usize);
    if spec.num_blobs > 0 {
        // Keep whole disks inside the frame.
        if rows <= 2 * r || cols <= 2 * r {
            return Err(PipelineError::PlacementInfeasible);
        }
        let min_sep_sq = (2 * r + 4) * (2 * r + 4);
        let row_range = (rows - 2 * r) as u64;
        let col_range = (cols - 2 * r) as u64;
        let budget = 1000 * spec.num_blobs as u64 + 1000;
        let mut attempts = 0;
        while centers.len() < spec.num_blobs as usize {
            if attempts >= budget {
                return Err(PipelineError::PlacementInfeasible);
            }
            attempts += 1;
            let cr = r + rng.next_below(row_range) as i64;
            let cc = r + rng.next_below(col_range) as i64;
            let ok = centers.iter().all(|&(pr, pc)| {
                let dr = pr - cr;
                let dc = pc - cc;
                dr * dr + dc * dc >= min_sep_sq
            });
            if ok {
                centers.push((cr, cc));
            }
        }
    }

    let mut base = vec![spec.background_level; spec.rows * spec.cols];
    for &(cr, cc) in &centers {
        for dr in -r..=r {
            for dc in -r..=r {
                if dr * dr + dc * dc <= r * r {
                    let (pr, pc) = (cr + dr, cc + dc);
                    base[(pr * cols + pc) as usize] = spec.foreground_level;
                }
            }
        }
    }

    let pixels: Vec<f64> = if spec.noise_sigma > 0.0 {
        base.iter()
            .map(|&v| (v + spec.noise_sigma * rng.next_normal()).clamp(0.0, 1.0))
            .collect()
    } else {
        base
    };

    let img = GrayImage::new(spec.rows, spec.cols, pixels).expect("clamped pixels are in range");
    Ok((img, spec.num_blobs))
}

/// Convenience for tests and callers: binarize at a fixed level and count
/// components, bypassing threshold selection.
pub fn count_objects_at_level(
    img: &GrayImage,
    level: f64,
    connectivity: Connectivity,
) -> Option<u32> {
    im2bw(img, level)
        .ok()
        .map(|bw: BinaryImage| bwlabel(&bw, connectivity).num_labels())
}

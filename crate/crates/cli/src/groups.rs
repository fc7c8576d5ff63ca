//! Directory-of-wells driver for the death-signal pipeline: each immediate
//! subdirectory is one replica group; a directory without subdirectories is
//! treated as a single group.

use std::fs;
use std::path::{Path, PathBuf};

use crate::imageio::{infer_format, load_gray, LoadError};
use rosetta_core::imagetools::GrayImage;
use rosetta_core::pipeline::{janus2, summarize_group, DeathSignal};
use serde::Serialize;
use thiserror::Error;

/// One summarized replica group.
#[derive(Debug, Clone, Serialize)]
pub struct Janus2Group {
    /// Group (subdirectory) name.
    pub group: String,
    /// Number of replica images.
    pub n: usize,
    /// Mean normalized death signal.
    pub mean: f64,
    /// Sample standard deviation of the normalized signal.
    pub std_dev: f64,
    /// Per-image signals, in sorted file order.
    pub signals: Vec<DeathSignal>,
}

/// Full output of a quantification run.
#[derive(Debug, Clone, Serialize)]
pub struct Janus2Output {
    /// Lower calibration anchor (maps to signal 0).
    pub min_ref: u64,
    /// Upper calibration anchor (maps to signal 7000).
    pub max_ref: u64,
    /// Groups in name order.
    pub groups: Vec<Janus2Group>,
}

/// Errors from the directory driver.
#[derive(Debug, Error)]
pub enum Janus2Error {
    /// Directory walking failed.
    #[error("{path}: {source}")]
    Io {
        /// Offending path.
        path: PathBuf,
        /// The I/O error.
        source: std::io::Error,
    },
    /// An image failed to load.
    #[error(transparent)]
    Load(#[from] LoadError),
    /// No loadable images were found under the directory.
    #[error("no .pgm or .csv images found under {0}")]
    NoImages(PathBuf),
    /// Anchors do not satisfy `max_ref > min_ref`.
    #[error("calibration requires max_ref > min_ref, got {min_ref}..{max_ref}")]
    BadCalibration {
        /// Lower anchor.
        min_ref: u64,
        /// Upper anchor.
        max_ref: u64,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Janus2Error + '_ {
    move |source| Janus2Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Lists the replica groups under `dir`: each subdirectory is a group; if
/// there are none, `dir` itself is the single group. Groups and files come
/// back sorted.
pub fn collect_groups(dir: &Path) -> Result<Vec<(String, Vec<PathBuf>)>, Janus2Error> {
    let mut subdirs: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir())
        .collect();
    subdirs.sort();

    let image_files = |d: &Path| -> Result<Vec<PathBuf>, Janus2Error> {
        let mut files: Vec<PathBuf> = fs::read_dir(d)
            .map_err(io_err(d))?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.is_file() && infer_format(p).is_some())
            .collect();
        files.sort();
        Ok(files)
    };

    let mut groups = Vec::new();
    if subdirs.is_empty() {
        let name = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| String::from("group"));
        groups.push((name, image_files(dir)?));
    } else {
        for sub in subdirs {
            let name = sub
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let files = image_files(&sub)?;
            if !files.is_empty() {
                groups.push((name, files));
            }
        }
    }
    if groups.iter().all(|(_, files)| files.is_empty()) {
        return Err(Janus2Error::NoImages(dir.to_path_buf()));
    }
    Ok(groups)
}

/// Loads every group, quantifies the death signal per image, and summarizes
/// per group. When anchors are not supplied, the dataset's own min/max raw
/// counts are used, so the extremes map exactly to 0 and 7000.
pub fn run_janus2(
    dir: &Path,
    min_ref: Option<u64>,
    max_ref: Option<u64>,
) -> Result<Janus2Output, Janus2Error> {
    let groups = collect_groups(dir)?;
    let mut loaded: Vec<(String, Vec<GrayImage>)> = Vec::with_capacity(groups.len());
    for (name, files) in groups {
        let mut images = Vec::with_capacity(files.len());
        for file in files {
            let format = infer_format(&file).expect("collect_groups keeps known formats");
            images.push(load_gray(&file, format)?);
        }
        loaded.push((name, images));
    }

    let raw_counts: Vec<u64> = loaded
        .iter()
        .flat_map(|(_, images)| images.iter().map(rosetta_core::pipeline::death_signal_raw))
        .collect();
    let min_ref = min_ref.unwrap_or_else(|| raw_counts.iter().copied().min().unwrap_or(0));
    let max_ref = max_ref.unwrap_or_else(|| raw_counts.iter().copied().max().unwrap_or(0));
    if max_ref <= min_ref {
        return Err(Janus2Error::BadCalibration { min_ref, max_ref });
    }

    let mut out_groups = Vec::with_capacity(loaded.len());
    for (name, images) in loaded {
        let signals = janus2(&images, min_ref, max_ref)
            .expect("anchors validated above");
        let summary = summarize_group(&signals);
        out_groups.push(Janus2Group {
            group: name,
            n: summary.n,
            mean: summary.mean,
            std_dev: summary.std_dev,
            signals,
        });
    }
    Ok(Janus2Output {
        min_ref,
        max_ref,
        groups: out_groups,
    })
}

/// Human-readable table of a quantification run.
pub fn render_janus2(output: &Janus2Output) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "calibration: min_ref={} max_ref={}\n",
        output.min_ref, output.max_ref
    ));
    s.push_str(&format!(
        "{:<20} {:>4} {:>12} {:>12}\n",
        "group", "n", "mean", "std_dev"
    ));
    for g in &output.groups {
        s.push_str(&format!(
            "{:<20} {:>4} {:>12.2} {:>12.2}\n",
            g.group, g.n, g.mean, g.std_dev
        ));
    }
    s
}

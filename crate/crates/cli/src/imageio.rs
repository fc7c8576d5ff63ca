//! Grayscale image loading: PGM (P2 ASCII and P5 binary, maxval up to
//! 65535) and CSV matrices rescaled through `mat2gray`.

use std::fs;
use std::io::Write;
use std::path::Path;

use rosetta_core::imagetools::{mat2gray, GrayImage};
use rosetta_core::mathtools::Matrix;
use thiserror::Error;

/// Supported on-disk image formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    /// Portable graymap, P2 (ASCII) or P5 (binary).
    Pgm,
    /// Comma-separated reals, one row per line, rescaled onto `[0, 1]`.
    Csv,
}

/// Errors from image loading.
#[derive(Debug, Error)]
pub enum LoadError {
    /// Underlying I/O failure.
    #[error("{path}: {source}")]
    Io {
        /// Offending path.
        path: String,
        /// The I/O error.
        source: std::io::Error,
    },
    /// The file does not parse under the stated format.
    #[error("{path}:{line}: {reason}")]
    Malformed {
        /// Offending path.
        path: String,
        /// What went wrong.
        reason: String,
        /// 1-based line of the problem (best effort for binary data).
        line: usize,
    },
}

impl LoadError {
    fn malformed(path: &Path, reason: impl Into<String>, line: usize) -> Self {
        LoadError::Malformed {
            path: path.display().to_string(),
            reason: reason.into(),
            line,
        }
    }
}

/// Guesses the format from the file extension.
pub fn infer_format(path: &Path) -> Option<ImageFormat> {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .as_deref()
    {
        Some("pgm") => Some(ImageFormat::Pgm),
        Some("csv") => Some(ImageFormat::Csv),
        _ => None,
    }
}

/// Loads a grayscale image in the stated format.
pub fn load_gray(path: &Path, format: ImageFormat) -> Result<GrayImage, LoadError> {
    match format {
        ImageFormat::Pgm => read_pgm(path),
        ImageFormat::Csv => read_csv(path),
    }
}

/// Header tokenizer for PNM: skips whitespace and `#` comments, tracking
/// the current line for error reports.
struct PnmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> PnmCursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self {
            bytes,
            pos: 0,
            line: 1,
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'\n' => {
                    self.line += 1;
                    self.pos += 1;
                }
                b' ' | b'\t' | b'\r' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => return,
            }
        }
    }

    fn next_token(&mut self) -> Option<&'a [u8]> {
        self.skip_separators();
        if self.pos >= self.bytes.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && self.bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        Some(&self.bytes[start..self.pos])
    }

    fn next_u32(&mut self, path: &Path, what: &str) -> Result<u32, LoadError> {
        let line = self.line;
        let token = self
            .next_token()
            .ok_or_else(|| LoadError::malformed(path, format!("missing {what}"), line))?;
        std::str::from_utf8(token)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                LoadError::malformed(
                    path,
                    format!("invalid {what} `{}`", String::from_utf8_lossy(token)),
                    self.line,
                )
            })
    }
}

/// Reads a P2 or P5 PGM file, normalizing samples by the header maxval.
pub fn read_pgm(path: &Path) -> Result<GrayImage, LoadError> {
    let bytes = fs::read(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut cur = PnmCursor::new(&bytes);
    let magic = cur
        .next_token()
        .ok_or_else(|| LoadError::malformed(path, "empty file", 1))?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other => {
            return Err(LoadError::malformed(
                path,
                format!("unsupported magic `{}`", String::from_utf8_lossy(other)),
                1,
            ))
        }
    };
    let cols = cur.next_u32(path, "width")? as usize;
    let rows = cur.next_u32(path, "height")? as usize;
    let maxval = cur.next_u32(path, "maxval")?;
    if cols == 0 || rows == 0 {
        return Err(LoadError::malformed(path, "zero image dimension", cur.line));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(LoadError::malformed(
            path,
            format!("maxval {maxval} outside 1..=65535"),
            cur.line,
        ));
    }

    let count = rows * cols;
    let mut samples = Vec::with_capacity(count);
    if binary {
        // Exactly one separator byte after the maxval, then raw samples.
        if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
            return Err(LoadError::malformed(
                path,
                "missing separator before binary data",
                cur.line,
            ));
        }
        let mut pos = cur.pos + 1;
        let wide = maxval > 255;
        let needed = count * if wide { 2 } else { 1 };
        if bytes.len() - pos < needed {
            return Err(LoadError::malformed(
                path,
                format!("truncated raster: need {needed} bytes, have {}", bytes.len() - pos),
                cur.line,
            ));
        }
        if bytes.len() - pos > needed {
            return Err(LoadError::malformed(path, "trailing bytes after raster", cur.line));
        }
        for _ in 0..count {
            let v = if wide {
                let hi = bytes[pos] as u32;
                let lo = bytes[pos + 1] as u32;
                pos += 2;
                (hi << 8) | lo
            } else {
                let v = bytes[pos] as u32;
                pos += 1;
                v
            };
            samples.push(v);
        }
    } else {
        for i in 0..count {
            let v = cur.next_u32(path, &format!("sample {i}"))?;
            samples.push(v);
        }
        if cur.next_token().is_some() {
            return Err(LoadError::malformed(path, "trailing data after raster", cur.line));
        }
    }

    for (i, &v) in samples.iter().enumerate() {
        if v > maxval {
            return Err(LoadError::malformed(
                path,
                format!("sample {i} = {v} exceeds maxval {maxval}"),
                cur.line,
            ));
        }
    }
    let scale = f64::from(maxval);
    let pixels: Vec<f64> = samples.into_iter().map(|v| f64::from(v) / scale).collect();
    GrayImage::new(rows, cols, pixels)
        .map_err(|e| LoadError::malformed(path, e.to_string(), cur.line))
}

/// Reads a CSV of reals and rescales it onto `[0, 1]` with `mat2gray`.
pub fn read_csv(path: &Path) -> Result<GrayImage, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if raw_line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for cell in raw_line.split(',') {
            let v: f64 = cell.trim().parse().map_err(|_| {
                LoadError::malformed(path, format!("invalid number `{}`", cell.trim()), line_no)
            })?;
            if !v.is_finite() {
                return Err(LoadError::malformed(path, "non-finite value", line_no));
            }
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(LoadError::malformed(
                    path,
                    format!("row has {} columns, expected {}", row.len(), first.len()),
                    line_no,
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(LoadError::malformed(path, "no data rows", 1));
    }
    let cols = rows[0].len();
    let data: Vec<f64> = rows.into_iter().flatten().collect();
    let matrix = Matrix::new(data.len() / cols, cols, data)
        .map_err(|e| LoadError::malformed(path, e.to_string(), 1))?;
    Ok(mat2gray(&matrix))
}

/// Writes an image as ASCII PGM (P2) with the given maxval, one image row
/// per line.
pub fn write_pgm_p2(img: &GrayImage, path: &Path, maxval: u16) -> std::io::Result<()> {
    let mut out = Vec::new();
    writeln!(out, "P2")?;
    writeln!(out, "{} {}", img.cols(), img.rows())?;
    writeln!(out, "{maxval}")?;
    for r in 0..img.rows() {
        let mut line = String::new();
        for c in 0..img.cols() {
            if c > 0 {
                line.push(' ');
            }
            let v = (img.get(r, c) * f64::from(maxval) + 0.5) as u32;
            line.push_str(&v.min(u32::from(maxval)).to_string());
        }
        writeln!(out, "{line}")?;
    }
    fs::write(path, out)
}

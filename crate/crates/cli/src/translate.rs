//! File-level source conversion: read an `.m` file, tokenize, rewrite,
//! and write the `.jl` output atomically (temp file + rename), plus a
//! directory mode that mirrors a tree of sources.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rosetta_core::lexer::tokenize;
use rosetta_core::translit::{transliterate, RuleSet, TranslationReport, TranslitWarning};
use thiserror::Error;
use walkdir::WalkDir;

/// Errors from file translation. Lexer problems are not errors: they are
/// folded into the report's warnings and translation proceeds best-effort.
#[derive(Debug, Error)]
pub enum TranslateError {
    /// Reading the input or writing the output failed.
    #[error("{path}: {source}")]
    Io {
        /// Offending path.
        path: PathBuf,
        /// The I/O error.
        source: std::io::Error,
    },
    /// The input is not valid UTF-8 and cannot be lexed.
    #[error("{path}: input is not valid UTF-8")]
    InvalidUtf8 {
        /// Offending path.
        path: PathBuf,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> TranslateError + '_ {
    move |source| TranslateError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Converts one string of source text, merging lexer diagnostics into the
/// report's warnings (ordered by input position).
pub fn convert_source(source: &str, rules: &RuleSet) -> (String, TranslationReport) {
    let lexed = tokenize(source);
    let (output, mut report) = transliterate(&lexed.tokens, rules);
    for diag in &lexed.diagnostics {
        report.warnings.push(TranslitWarning {
            span: diag.span(),
            message: diag.message().to_string(),
        });
    }
    report
        .warnings
        .sort_by_key(|w| (w.span.byte_start, w.span.byte_end));
    (output, report)
}

/// Translates `input` into `output`: read, tokenize, rewrite, atomic write.
///
/// The output's parent directories are created as needed; the write goes to
/// a temporary file in the destination directory and is renamed into place,
/// so a failing run never leaves a partial output.
pub fn rosetta(
    input: &Path,
    output: &Path,
    rules: &RuleSet,
) -> Result<TranslationReport, TranslateError> {
    let bytes = fs::read(input).map_err(io_err(input))?;
    let source = String::from_utf8(bytes).map_err(|_| TranslateError::InvalidUtf8 {
        path: input.to_path_buf(),
    })?;
    let (converted, report) = convert_source(&source, rules);

    let parent = match output.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent).map_err(io_err(output))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&parent).map_err(io_err(output))?;
    tmp.write_all(converted.as_bytes()).map_err(io_err(output))?;
    tmp.persist(output).map_err(|e| TranslateError::Io {
        path: output.to_path_buf(),
        source: e.error,
    })?;
    Ok(report)
}

/// One translated file of a directory run.
#[derive(Debug)]
pub struct FileTranslation {
    /// Source path.
    pub input: PathBuf,
    /// Destination path.
    pub output: PathBuf,
    /// Per-file report.
    pub report: TranslationReport,
}

/// Translates every `.m` file under `input_dir` into a mirrored tree under
/// `output_dir`, each renamed to `.jl`. Files are processed in sorted path
/// order, so results are deterministic.
pub fn translate_tree(
    input_dir: &Path,
    output_dir: &Path,
    rules: &RuleSet,
) -> Result<Vec<FileTranslation>, TranslateError> {
    let mut sources: Vec<PathBuf> = WalkDir::new(input_dir)
        .sort_by_file_name()
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file())
        .map(|e| e.into_path())
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("m"))
        .collect();
    sources.sort();

    let mut out = Vec::with_capacity(sources.len());
    for input in sources {
        let rel = input
            .strip_prefix(input_dir)
            .expect("walked path is under the input dir");
        let output = output_dir.join(rel).with_extension("jl");
        let report = rosetta(&input, &output, rules)?;
        out.push(FileTranslation {
            input,
            output,
            report,
        });
    }
    Ok(out)
}

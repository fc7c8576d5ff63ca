//! `rosetta` — MATLAB/Octave-to-Julia conversion toolkit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rosetta_cli::groups::{render_janus2, run_janus2, Janus2Error};
use rosetta_cli::harness::{run_suite_with_injection, summary_table, SuiteConfig};
use rosetta_cli::imageio::{infer_format, load_gray, ImageFormat, LoadError};
use rosetta_cli::manifest::{shipped_manifest, RegistryManifest};
use rosetta_cli::translate::{rosetta, translate_tree, TranslateError};
use rosetta_core::bench::BenchConfig;
use rosetta_core::imagetools::Connectivity;
use rosetta_core::pipeline::janus_with_connectivity;
use rosetta_core::registry::default_registry;
use rosetta_core::translit::{default_ruleset, RuleSet, TranslationReport};

/// Exit codes, also listed in `--help`.
mod exit {
    /// Bad flags, bad arguments, bad configuration.
    pub const USAGE: u8 = 1;
    /// Unreadable input or unwritable output.
    pub const IO: u8 = 2;
    /// `--strict` was set and the translation produced warnings.
    pub const STRICT_WARNINGS: u8 = 3;
    /// A benchmark kernel failed its correctness check.
    pub const CORRECTNESS: u8 = 4;
}

const EXIT_HELP: &str = "Exit codes:
  0  success
  1  usage error (bad flags, bad configuration)
  2  I/O error (unreadable input, unwritable output)
  3  translation produced warnings and --strict was set
  4  benchmark correctness failure";

#[derive(Parser)]
#[command(
    name = "rosetta",
    version,
    about = "Convert MATLAB/Octave source to Julia dialect and run the compatibility pipelines",
    after_help = EXIT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate one .m file, or every .m file under a directory.
    #[command(alias = "rosetta", alias = "rossetta", after_help = EXIT_HELP)]
    Translate {
        /// Input .m file or directory of .m files.
        input: PathBuf,
        /// Output .jl file, or output directory in directory mode.
        #[arg(long)]
        out: PathBuf,
        /// Rule set JSON file (default: built-in rules, or $ROSETTA_RULES).
        #[arg(long)]
        rules: Option<PathBuf>,
        /// Exit with status 3 if any warning is produced.
        #[arg(long)]
        strict: bool,
        /// Write the translation report as JSON to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Count bright objects in a micrograph (threshold, binarize, label).
    #[command(after_help = EXIT_HELP)]
    Janus {
        /// Image path (.pgm or .csv).
        image: PathBuf,
        /// Image format; inferred from the extension when omitted.
        #[arg(long, value_enum)]
        format: Option<FormatOpt>,
        /// Pixel connectivity for component labeling.
        #[arg(long, value_enum, default_value_t = ConnOpt::Eight)]
        connectivity: ConnOpt,
        /// Emit machine-readable JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Quantify death signals for grouped well images under a directory.
    #[command(after_help = EXIT_HELP)]
    Janus2 {
        /// Directory whose subdirectories are replica groups of images.
        dir: PathBuf,
        /// Raw count mapping to signal 0 (default: dataset minimum).
        #[arg(long)]
        min_ref: Option<u64>,
        /// Raw count mapping to signal 7000 (default: dataset maximum).
        #[arg(long)]
        max_ref: Option<u64>,
        /// Emit machine-readable JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Run the seven microbenchmark kernels with correctness checks.
    #[command(after_help = EXIT_HELP)]
    Bench {
        /// Timed iterations per kernel.
        #[arg(long, default_value_t = 10)]
        iterations: u32,
        /// Seed for the randomized kernels.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write one JSON record per kernel to this path (JSON lines).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Test hook: corrupt the named kernel's checksum.
        #[arg(long, hide = true)]
        inject_failure: Option<String>,
    },
    /// Inspect the compatibility-function registry.
    #[command(after_help = EXIT_HELP)]
    Manifest {
        /// List every registered function with module and conflict flag.
        #[arg(long)]
        list: bool,
        /// Print how a name resolves before and after module imports.
        #[arg(long, value_name = "NAME")]
        check: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatOpt {
    Pgm,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConnOpt {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

impl From<ConnOpt> for Connectivity {
    fn from(c: ConnOpt) -> Self {
        match c {
            ConnOpt::Four => Connectivity::Four,
            ConnOpt::Eight => Connectivity::Eight,
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: exit::IO,
            message: message.into(),
        }
    }
}

impl From<TranslateError> for CliError {
    fn from(e: TranslateError) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::io(e.to_string())
    }
}

fn main() -> ExitCode {
    // Die silently on a closed pipe (e.g. `rosetta manifest | head`) the way
    // ordinary unix tools do, instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => exit::USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Translate {
            input,
            out,
            rules,
            strict,
            report,
        } => cmd_translate(&input, &out, rules.as_deref(), strict, report.as_deref()),
        Command::Janus {
            image,
            format,
            connectivity,
            json,
        } => cmd_janus(&image, format, connectivity, json),
        Command::Janus2 {
            dir,
            min_ref,
            max_ref,
            json,
        } => cmd_janus2(&dir, min_ref, max_ref, json),
        Command::Bench {
            iterations,
            seed,
            out,
            inject_failure,
        } => cmd_bench(iterations, seed, out.as_deref(), inject_failure.as_deref()),
        Command::Manifest { list, check } => cmd_manifest(list, check.as_deref()),
    }
}

/// Loads the rule set: `--rules` path, then `$ROSETTA_RULES`, then built-in.
fn load_rules(explicit: Option<&Path>) -> Result<RuleSet, CliError> {
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os("ROSETTA_RULES").map(PathBuf::from),
    };
    let Some(path) = path else {
        return Ok(default_ruleset());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let rules: RuleSet = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: invalid rule set: {e}", path.display())))?;
    rules
        .validate()
        .map_err(|e| CliError::usage(format!("{}: invalid rule set: {e}", path.display())))?;
    Ok(rules)
}

#[derive(Serialize)]
struct BatchReportEntry {
    input: String,
    output: String,
    report: TranslationReport,
}

#[derive(Serialize)]
struct BatchReport {
    files: Vec<BatchReportEntry>,
}

fn print_warnings(input: &Path, report: &TranslationReport) {
    for w in &report.warnings {
        eprintln!(
            "warning: {}:{}:{}: {}",
            input.display(),
            w.span.line,
            w.span.col,
            w.message
        );
    }
}

fn cmd_translate(
    input: &Path,
    out: &Path,
    rules_path: Option<&Path>,
    strict: bool,
    report_path: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let rules = load_rules(rules_path)?;
    let mut any_warnings = false;

    let report_json = if input.is_dir() {
        let results = translate_tree(input, out, &rules)?;
        for r in &results {
            print_warnings(&r.input, &r.report);
            any_warnings |= !r.report.warnings.is_empty();
            println!(
                "translated {} -> {} ({} rewrites, {} warnings)",
                r.input.display(),
                r.output.display(),
                r.report.total_fired(),
                r.report.warnings.len()
            );
        }
        let batch = BatchReport {
            files: results
                .iter()
                .map(|r| BatchReportEntry {
                    input: r.input.display().to_string(),
                    output: r.output.display().to_string(),
                    report: r.report.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&batch).expect("report serializes")
    } else {
        let report = rosetta(input, out, &rules)?;
        print_warnings(input, &report);
        any_warnings = !report.warnings.is_empty();
        println!(
            "translated {} -> {} ({} rewrites, {} warnings)",
            input.display(),
            out.display(),
            report.total_fired(),
            report.warnings.len()
        );
        serde_json::to_string_pretty(&report).expect("report serializes")
    };

    if let Some(path) = report_path {
        std::fs::write(path, report_json.as_bytes())
            .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    }

    if strict && any_warnings {
        eprintln!("error: warnings present and --strict set");
        return Ok(ExitCode::from(exit::STRICT_WARNINGS));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_janus(
    image: &Path,
    format: Option<FormatOpt>,
    connectivity: ConnOpt,
    json: bool,
) -> Result<ExitCode, CliError> {
    let format = match format {
        Some(FormatOpt::Pgm) => ImageFormat::Pgm,
        Some(FormatOpt::Csv) => ImageFormat::Csv,
        None => infer_format(image).ok_or_else(|| {
            CliError::usage(format!(
                "{}: cannot infer image format; pass --format pgm|csv",
                image.display()
            ))
        })?,
    };
    let img = load_gray(image, format)?;
    let result = janus_with_connectivity(&img, connectivity.into());
    if json {
        println!(
            "{}",
            serde_json::to_string(&result).expect("result serializes")
        );
    } else {
        println!("threshold level: {:.5}", result.threshold_level);
        println!("object count: {}", result.object_count);
        if result.degenerate {
            println!("degenerate: constant image, no threshold exists");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_janus2(
    dir: &Path,
    min_ref: Option<u64>,
    max_ref: Option<u64>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let output = run_janus2(dir, min_ref, max_ref).map_err(|e| match e {
        Janus2Error::BadCalibration { .. } => CliError::usage(e.to_string()),
        other => CliError::io(other.to_string()),
    })?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&output).expect("output serializes")
        );
    } else {
        print!("{}", render_janus2(&output));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(
    iterations: u32,
    seed: u64,
    out: Option<&Path>,
    inject_failure: Option<&str>,
) -> Result<ExitCode, CliError> {
    let config = SuiteConfig {
        bench: BenchConfig {
            seed,
            ..BenchConfig::default()
        },
        iterations,
    };
    let records = match run_suite_with_injection(&config, inject_failure) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(exit::CORRECTNESS));
        }
    };
    if let Some(path) = out {
        let mut lines = String::new();
        for r in &records {
            lines.push_str(&serde_json::to_string(r).expect("record serializes"));
            lines.push('\n');
        }
        std::fs::write(path, lines.as_bytes())
            .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    }
    print!("{}", summary_table(&records));
    Ok(ExitCode::SUCCESS)
}

fn cmd_manifest(list: bool, check: Option<&str>) -> Result<ExitCode, CliError> {
    let registry = shipped_manifest()
        .map_err(|e| CliError::usage(format!("shipped manifest is invalid: {e}")))?
        .to_registry()
        .map_err(|e| CliError::usage(format!("shipped manifest is invalid: {e}")))?;
    debug_assert_eq!(registry, default_registry());

    if let Some(name) = check {
        let default_res = registry.resolve(name);
        let imported_res = registry.with_all_imports().resolve(name);
        println!("{name}: {default_res} / {imported_res}");
        return Ok(ExitCode::SUCCESS);
    }

    // --list is also the default action.
    let _ = list;
    let manifest = RegistryManifest::from_registry(&registry);
    println!("{:<12} {:<12} conflicts_with_base", "name", "module");
    for f in &manifest.functions {
        println!(
            "{:<12} {:<12} {}",
            f.name,
            f.module_tag.name(),
            f.conflicts_with_base
        );
    }
    Ok(ExitCode::SUCCESS)
}

//! File formats, timing harness and command drivers for the rosetta
//! MATLAB/Octave-to-Julia toolkit. The pure algorithms live in
//! `rosetta-core`; this crate owns everything that touches the filesystem,
//! the clock, or a terminal.

pub mod compat_io;
pub mod groups;
pub mod harness;
pub mod imageio;
pub mod manifest;
pub mod translate;

pub use harness::{run_suite, BenchRecord, SuiteConfig};
pub use imageio::{infer_format, load_gray, ImageFormat};
pub use translate::{rosetta, translate_tree};

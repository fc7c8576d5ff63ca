//! Output-side compatibility functions that need a terminal: `disp` and
//! `printf`. The pure formatting they rely on lives in the core crate.

use rosetta_core::stringtools::{sprintf, FormatArg, FormatError};

/// MATLAB `disp`: prints the text followed by a newline.
pub fn disp(text: &str) {
    println!("{text}");
}

/// Octave `printf`: formats with [`sprintf`] and writes to stdout without
/// appending a newline.
pub fn printf(format: &str, args: &[FormatArg]) -> Result<(), FormatError> {
    print!("{}", sprintf(format, args)?);
    Ok(())
}

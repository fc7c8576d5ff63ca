#![cfg_attr(not(test), no_std)]

//! Core routines for converting MATLAB/Octave source to a Julia dialect and
//! for running the converted programs against MATLAB-semantics replacements.
//!
//! The crate is split along the two halves of the conversion strategy:
//!
//! * **Source rewriting** — [`lexer`] turns `.m` source into a lossless token
//!   stream (resolving the single-quote string/transpose ambiguity) and
//!   [`translit`] applies an ordered rule set to emit `.jl`-dialect text.
//! * **Runtime compatibility** — [`registry`] models the conflict-aware
//!   namespace export policy, while [`mathtools`], [`stringtools`] and
//!   [`imagetools`] provide MATLAB-semantics implementations (column-wise
//!   `max`, Otsu `graythresh`, `bwlabel` connected components, ...).
//!
//! [`pipeline`] composes the image routines into the two reference analysis
//! programs (`janus` object counting and `janus2` death-signal quantification)
//! plus a deterministic synthetic-micrograph generator, and [`mod@bench`] holds
//! the seven standard microbenchmark kernels with their correctness checks.
//!
//! The crate is `no_std` (with `alloc`); all file formats, timing, and the
//! command-line surface live in the companion `rosetta-cli` crate.

extern crate alloc;

pub mod bench;
pub mod imagetools;
pub mod lexer;
pub mod mathtools;
pub mod pipeline;
pub mod registry;
pub mod rng;
pub mod stringtools;
pub mod translit;

pub use lexer::{tokenize, SourceSpan, Token, TokenKind};
pub use registry::{ModuleTag, NamespaceRegistry, Resolution};
pub use translit::{default_ruleset, transliterate, RuleSet, TranslationReport};

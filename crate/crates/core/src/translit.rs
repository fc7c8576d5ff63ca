//! Rule-driven rewriting of a MATLAB/Octave token stream into Julia-dialect
//! source text.
//!
//! The rewriter is deliberately conservative: it walks the token stream once,
//! and at each position either a rule fires (consuming a fixed window of one
//! to three tokens and emitting replacement text) or the token is copied
//! verbatim. Nothing is ever dropped silently — the one rule that removes
//! text, the line-continuation drop, records a warning in the report.
//!
//! The shipped [`default_ruleset`] performs the syntax-level conversions that
//! the target dialect requires:
//!
//! * single-quoted strings become double-quoted (with `''` collapsed to `'`
//!   and embedded `"` escaped),
//! * `%` comments become `#` comments and `%{ ... %}` blocks become
//!   `#= ... =#`,
//! * `~=` becomes `!=`,
//! * transposes, element-wise operators and known runtime-resolved
//!   identifiers (`printf`, `disp`) pass through unchanged,
//! * `...` line continuations are dropped with a warning, preserving any
//!   trailing commentary as a `#` comment.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lexer::{SourceSpan, Token, TokenKind};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Output dialect a rule set targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum TargetDialect {
    /// The legacy (0.x-era) Julia dialect.
    JuliaLegacy,
}

/// Predicate over a token's exact text.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum TextPred {
    /// Text equals the given string.
    Eq(String),
    /// Text starts with the given prefix.
    StartsWith(String),
    /// Text equals one of the given strings.
    OneOf(Vec<String>),
}

impl TextPred {
    fn matches(&self, text: &str) -> bool {
        match self {
            TextPred::Eq(s) => text == s,
            TextPred::StartsWith(p) => text.starts_with(p.as_str()),
            TextPred::OneOf(options) => options.iter().any(|s| s == text),
        }
    }
}

/// One slot of a rule's match window: an optional kind plus an optional text
/// predicate. An empty matcher matches any token.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TokenMatcher {
    /// Required token kind, if any.
    pub kind: Option<TokenKind>,
    /// Required text shape, if any.
    pub text: Option<TextPred>,
}

impl TokenMatcher {
    /// Matcher on kind alone.
    pub fn kind(kind: TokenKind) -> Self {
        Self {
            kind: Some(kind),
            text: None,
        }
    }

    /// Matcher on kind plus text predicate.
    pub fn kind_text(kind: TokenKind, text: TextPred) -> Self {
        Self {
            kind: Some(kind),
            text: Some(text),
        }
    }

    fn matches(&self, token: &Token) -> bool {
        if let Some(kind) = self.kind {
            if token.kind != kind {
                return false;
            }
        }
        if let Some(pred) = &self.text {
            if !pred.matches(&token.text) {
                return false;
            }
        }
        true
    }
}

/// How a matched window is rendered into output text.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Emitter {
    /// Copy the matched text unchanged.
    Verbatim,
    /// Replace the window with fixed text.
    Literal(String),
    /// Substitute `$0`..`$9` placeholders with the matched tokens' texts.
    Template(String),
    /// Convert a single-quoted literal to a double-quoted one: the outer
    /// quotes flip, internal `''` becomes `'`, and `"` becomes `\"`.
    /// Warns when the literal contains a backslash, since the target dialect
    /// interprets backslash escapes at compile time.
    ConvertSingleQuoted,
    /// Convert `%`-style comments to `#`-style; `%{ ... %}` blocks become
    /// `#= ... =#`. Comments already starting with `#` are left alone.
    ConvertComment,
    /// Drop a `...` line continuation, keeping any trailing commentary as a
    /// `#` comment. Always warns: the target only continues lines that are
    /// syntactically incomplete.
    DropContinuation,
}

/// A single transliteration rule: a fixed-length token pattern and the text
/// it emits.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RewriteRule {
    /// Stable name, unique within a rule set.
    pub id: String,
    /// Match window, one to three tokens.
    pub matcher: Vec<TokenMatcher>,
    /// Output production.
    pub emitter: Emitter,
    /// Disabled rules are skipped during matching.
    pub enabled: bool,
}

/// An ordered rule list. At each stream position the first enabled rule
/// whose whole window matches wins.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RuleSet {
    /// Rule set version string, carried into reports and serialized files.
    pub version: String,
    /// Dialect the emitters target.
    pub target_dialect: TargetDialect,
    /// Rules in application order.
    pub rules: Vec<RewriteRule>,
}

/// Structural problems in a rule set, reported by [`RuleSet::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleSetError {
    /// Two rules share an id.
    DuplicateId(String),
    /// A matcher window is empty or longer than three tokens.
    BadWindow { id: String, len: usize },
    /// A template references a token index outside its window.
    BadTemplateIndex { id: String, index: usize },
}

impl core::fmt::Display for RuleSetError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RuleSetError::DuplicateId(id) => write!(f, "duplicate rule id `{id}`"),
            RuleSetError::BadWindow { id, len } => {
                write!(f, "rule `{id}` has a window of {len} tokens (must be 1..=3)")
            }
            RuleSetError::BadTemplateIndex { id, index } => {
                write!(f, "rule `{id}` template references ${index} outside its window")
            }
        }
    }
}

impl RuleSet {
    /// Checks id uniqueness, window lengths and template indices.
    pub fn validate(&self) -> Result<(), RuleSetError> {
        let mut seen = Vec::with_capacity(self.rules.len());
        for rule in &self.rules {
            if seen.contains(&rule.id.as_str()) {
                return Err(RuleSetError::DuplicateId(rule.id.clone()));
            }
            seen.push(rule.id.as_str());
            let len = rule.matcher.len();
            if !(1..=3).contains(&len) {
                return Err(RuleSetError::BadWindow {
                    id: rule.id.clone(),
                    len,
                });
            }
            if let Emitter::Template(template) = &rule.emitter {
                for index in template_indices(template) {
                    if index >= len {
                        return Err(RuleSetError::BadTemplateIndex {
                            id: rule.id.clone(),
                            index,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn template_indices(template: &str) -> Vec<usize> {
    let bytes = template.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < bytes.len() {
        if bytes[i] == b'$' && bytes[i + 1].is_ascii_digit() {
            out.push((bytes[i + 1] - b'0') as usize);
            i += 2;
        } else {
            i += 1;
        }
    }
    out
}

/// A non-fatal observation made during transliteration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TranslitWarning {
    /// Where in the input the warning applies.
    pub span: SourceSpan,
    /// Human-readable description.
    pub message: String,
}

/// Accounting for one transliteration run.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TranslationReport {
    /// Count of text-changing firings per rule id. Rules that matched but
    /// emitted the source text unchanged are not counted, so the totals here
    /// equal the number of sites where output differs from input.
    pub rules_fired: BTreeMap<String, u64>,
    /// Warnings, ordered by input position.
    pub warnings: Vec<TranslitWarning>,
    /// Number of input tokens processed.
    pub input_tokens: u64,
    /// Byte length of the produced output.
    pub output_bytes: u64,
}

impl TranslationReport {
    /// Total number of text-changing rule firings.
    pub fn total_fired(&self) -> u64 {
        self.rules_fired.values().sum()
    }

    /// True when the run produced no warnings.
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// The shipped rule set targeting the legacy Julia dialect.
pub fn default_ruleset() -> RuleSet {
    use Emitter::*;
    let rules = vec![
        RewriteRule {
            id: String::from("quote-string"),
            matcher: vec![TokenMatcher::kind_text(
                TokenKind::StringLiteral,
                TextPred::StartsWith(String::from("'")),
            )],
            emitter: ConvertSingleQuoted,
            enabled: true,
        },
        RewriteRule {
            id: String::from("comment-hash"),
            matcher: vec![TokenMatcher::kind(TokenKind::Comment)],
            emitter: ConvertComment,
            enabled: true,
        },
        RewriteRule {
            id: String::from("neq-op"),
            matcher: vec![TokenMatcher::kind_text(
                TokenKind::Operator,
                TextPred::Eq(String::from("~=")),
            )],
            emitter: Literal(String::from("!=")),
            enabled: true,
        },
        RewriteRule {
            id: String::from("transpose-pass"),
            matcher: vec![TokenMatcher::kind(TokenKind::Transpose)],
            emitter: Verbatim,
            enabled: true,
        },
        RewriteRule {
            id: String::from("elementwise-pass"),
            matcher: vec![TokenMatcher::kind_text(
                TokenKind::Operator,
                TextPred::StartsWith(String::from(".")),
            )],
            emitter: Verbatim,
            enabled: true,
        },
        RewriteRule {
            id: String::from("io-ident-pass"),
            matcher: vec![TokenMatcher::kind_text(
                TokenKind::Identifier,
                TextPred::OneOf(vec![String::from("printf"), String::from("disp")]),
            )],
            emitter: Verbatim,
            enabled: true,
        },
        RewriteRule {
            id: String::from("continuation-drop"),
            matcher: vec![TokenMatcher::kind(TokenKind::LineContinuation)],
            emitter: DropContinuation,
            enabled: true,
        },
    ];
    let set = RuleSet {
        version: String::from("1.0.0"),
        target_dialect: TargetDialect::JuliaLegacy,
        rules,
    };
    debug_assert!(set.validate().is_ok());
    set
}

/// Applies `rules` to `tokens` and returns the output text together with a
/// report. Unmatched tokens are copied verbatim; the result is deterministic.
pub fn transliterate(tokens: &[Token], rules: &RuleSet) -> (String, TranslationReport) {
    let mut out = String::new();
    let mut report = TranslationReport {
        input_tokens: tokens.len() as u64,
        ..TranslationReport::default()
    };

    let mut pos = 0;
    while pos < tokens.len() {
        let fired = rules
            .rules
            .iter()
            .filter(|r| r.enabled)
            .find(|r| window_matches(r, tokens, pos));
        match fired {
            Some(rule) => {
                let window = &tokens[pos..pos + rule.matcher.len()];
                let emitted = emit(rule, window, &mut report.warnings);
                let source_len: usize = window.iter().map(|t| t.text.len()).sum();
                let changed = emitted.len() != source_len
                    || !window
                        .iter()
                        .flat_map(|t| t.text.bytes())
                        .eq(emitted.bytes());
                if changed {
                    *report.rules_fired.entry(rule.id.clone()).or_insert(0) += 1;
                }
                out.push_str(&emitted);
                pos += rule.matcher.len();
            }
            None => {
                out.push_str(&tokens[pos].text);
                pos += 1;
            }
        }
    }

    report.output_bytes = out.len() as u64;
    (out, report)
}

fn window_matches(rule: &RewriteRule, tokens: &[Token], pos: usize) -> bool {
    let w = rule.matcher.len();
    if pos + w > tokens.len() {
        return false;
    }
    rule.matcher
        .iter()
        .zip(&tokens[pos..pos + w])
        .all(|(m, t)| m.matches(t))
}

fn emit(rule: &RewriteRule, window: &[Token], warnings: &mut Vec<TranslitWarning>) -> String {
    match &rule.emitter {
        Emitter::Verbatim => window.iter().map(|t| t.text.as_str()).collect(),
        Emitter::Literal(text) => text.clone(),
        Emitter::Template(template) => expand_template(template, window),
        Emitter::ConvertSingleQuoted => convert_single_quoted(&window[0], warnings),
        Emitter::ConvertComment => convert_comment(&window[0].text),
        Emitter::DropContinuation => drop_continuation(&window[0], warnings),
    }
}

fn expand_template(template: &str, window: &[Token]) -> String {
    let bytes = template.as_bytes();
    let mut out = String::with_capacity(template.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'$' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
            let index = (bytes[i + 1] - b'0') as usize;
            if let Some(token) = window.get(index) {
                out.push_str(&token.text);
            }
            i += 2;
        } else {
            // Template text is produced by validated rule sets; copy bytes.
            out.push(bytes[i] as char);
            i += 1;
        }
    }
    out
}

fn convert_single_quoted(token: &Token, warnings: &mut Vec<TranslitWarning>) -> String {
    let text = &token.text;
    debug_assert!(text.len() >= 2 && text.starts_with('\'') && text.ends_with('\''));
    let inner = &text[1..text.len() - 1];
    let mut out = String::with_capacity(text.len());
    out.push('"');
    let mut chars = inner.chars().peekable();
    let mut saw_backslash = false;
    while let Some(c) = chars.next() {
        match c {
            '\'' => {
                // The lexer only leaves quotes inside a literal in doubled
                // form; collapse each pair to one literal quote.
                if chars.peek() == Some(&'\'') {
                    chars.next();
                }
                out.push('\'');
            }
            '"' => out.push_str("\\\""),
            '\\' => {
                saw_backslash = true;
                out.push('\\');
            }
            other => out.push(other),
        }
    }
    out.push('"');
    if saw_backslash {
        warnings.push(TranslitWarning {
            span: token.span,
            message: String::from(
                "converted string contains a backslash; target escape semantics differ",
            ),
        });
    }
    out
}

fn convert_comment(text: &str) -> String {
    if let Some(middle) = text
        .strip_prefix("%{")
        .and_then(|rest| rest.strip_suffix("%}"))
    {
        let mut out = String::with_capacity(text.len() + 2);
        out.push_str("#=");
        out.push_str(middle);
        out.push_str("=#");
        out
    } else if let Some(rest) = text.strip_prefix('%') {
        let mut out = String::with_capacity(text.len());
        out.push('#');
        out.push_str(rest);
        out
    } else {
        // Already a `#` comment (Octave input); nothing to do.
        String::from(text)
    }
}

fn drop_continuation(token: &Token, warnings: &mut Vec<TranslitWarning>) -> String {
    warnings.push(TranslitWarning {
        span: token.span,
        message: String::from("line continuation `...` dropped"),
    });
    let tail = &token.text[3..];
    if tail.trim().is_empty() {
        String::new()
    } else {
        let mut out = String::with_capacity(tail.len() + 1);
        out.push('#');
        out.push_str(tail);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::tokenize;

    fn convert(src: &str) -> (String, TranslationReport) {
        let lexed = tokenize(src);
        assert!(lexed.diagnostics.is_empty(), "clean sources only here");
        transliterate(&lexed.tokens, &default_ruleset())
    }

    #[test]
    fn default_ruleset_is_valid_and_has_quote_rule() {
        let rules = default_ruleset();
        rules.validate().unwrap();
        let quote = rules.rules.iter().find(|r| r.id == "quote-string").unwrap();
        assert!(quote.enabled);
    }

    #[test]
    fn empty_stream_is_identity() {
        let (out, report) = transliterate(&[], &default_ruleset());
        assert_eq!(out, "");
        assert_eq!(report.input_tokens, 0);
        assert_eq!(report.output_bytes, 0);
        assert!(report.rules_fired.is_empty());
    }

    #[test]
    fn quote_substitution_in_a_call() {
        let (out, report) = convert("imshow('img.png')");
        assert_eq!(out, "imshow(\"img.png\")");
        assert_eq!(report.rules_fired.get("quote-string"), Some(&1));
    }

    #[test]
    fn transpose_is_never_a_string() {
        let (out, report) = convert("B = A';");
        assert_eq!(out, "B = A';");
        assert_eq!(report.rules_fired.get("quote-string"), None);
        assert_eq!(report.total_fired(), 0);
    }

    #[test]
    fn doubled_quote_and_embedded_double_quote() {
        let (out, _) = convert("s = 'it''s \"x\"'");
        assert_eq!(out, "s = \"it's \\\"x\\\"\"");
    }

    #[test]
    fn empty_string_converts() {
        let (out, _) = convert("x = ''");
        assert_eq!(out, "x = \"\"");
    }

    #[test]
    fn comment_conversion() {
        let (out, report) = convert("% count nuclei");
        assert_eq!(out, "# count nuclei");
        assert_eq!(report.rules_fired.get("comment-hash"), Some(&1));
    }

    #[test]
    fn block_comment_conversion() {
        let (out, _) = convert("%{\nnotes\n%}\n");
        assert_eq!(out, "#=\nnotes\n=#\n");
    }

    #[test]
    fn neq_operator_rewrites() {
        let (out, _) = convert("if a ~= b\nend\n");
        assert_eq!(out, "if a != b\nend\n");
    }

    #[test]
    fn continuation_dropped_with_warning() {
        let (out, report) = convert("x = 1 + ...\n2\n");
        assert_eq!(out, "x = 1 + \n2\n");
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.rules_fired.get("continuation-drop"), Some(&1));
    }

    #[test]
    fn continuation_tail_becomes_comment() {
        let (out, _) = convert("x = 1 + ... keep me\n2\n");
        assert_eq!(out, "x = 1 + # keep me\n2\n");
    }

    #[test]
    fn backslash_in_string_warns_but_converts() {
        let (out, report) = convert("printf('a\\nb')");
        assert_eq!(out, "printf(\"a\\nb\")");
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].message.contains("backslash"));
    }

    #[test]
    fn already_target_dialect_is_fixpoint() {
        let src = "x = \"done\" # note\ny = x\n";
        let (out, report) = convert(src);
        assert_eq!(out, src);
        assert_eq!(report.total_fired(), 0);
    }

    #[test]
    fn pass_through_rules_do_not_count_as_fired() {
        let (out, report) = convert("y = A' .* B.'");
        assert_eq!(out, "y = A' .* B.'");
        assert_eq!(report.total_fired(), 0);
    }

    #[test]
    fn disabled_rule_is_skipped() {
        let mut rules = default_ruleset();
        rules
            .rules
            .iter_mut()
            .find(|r| r.id == "comment-hash")
            .unwrap()
            .enabled = false;
        let lexed = tokenize("% keep\n");
        let (out, _) = transliterate(&lexed.tokens, &rules);
        assert_eq!(out, "% keep\n");
    }

    #[test]
    fn custom_two_token_window_rule() {
        let mut rules = default_ruleset();
        rules.rules.insert(
            0,
            RewriteRule {
                id: String::from("square-idx"),
                matcher: vec![
                    TokenMatcher::kind_text(
                        TokenKind::Identifier,
                        TextPred::Eq(String::from("idx")),
                    ),
                    TokenMatcher::kind(TokenKind::Transpose),
                ],
                emitter: Emitter::Template(String::from("transpose($0)")),
                enabled: true,
            },
        );
        rules.validate().unwrap();
        let lexed = tokenize("y = idx';");
        let (out, report) = transliterate(&lexed.tokens, &rules);
        assert_eq!(out, "y = transpose(idx);");
        assert_eq!(report.rules_fired.get("square-idx"), Some(&1));
    }

    #[test]
    fn duplicate_rule_ids_rejected() {
        let mut rules = default_ruleset();
        let dup = rules.rules[0].clone();
        rules.rules.push(dup);
        assert!(matches!(
            rules.validate(),
            Err(RuleSetError::DuplicateId(_))
        ));
    }

    #[test]
    fn template_index_out_of_window_rejected() {
        let rules = RuleSet {
            version: String::from("t"),
            target_dialect: TargetDialect::JuliaLegacy,
            rules: vec![RewriteRule {
                id: String::from("bad"),
                matcher: vec![TokenMatcher::kind(TokenKind::Identifier)],
                emitter: Emitter::Template(String::from("$1")),
                enabled: true,
            }],
        };
        assert!(matches!(
            rules.validate(),
            Err(RuleSetError::BadTemplateIndex { index: 1, .. })
        ));
    }
}

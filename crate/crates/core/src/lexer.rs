//! Lossless tokenizer for MATLAB/Octave source text.
//!
//! The token stream is the unit the rewriter operates on, so the lexer makes
//! two promises that a conventional compiler front end would not:
//!
//! * **Losslessness** — every input byte lands in exactly one token, in
//!   order. Concatenating `Token::text` over the stream reproduces the input
//!   byte-for-byte, including whitespace, newlines and comments.
//! * **Quote disambiguation** — a single quote is either a transpose
//!   operator or a string delimiter. It is classified [`TokenKind::Transpose`]
//!   exactly when the nearest preceding non-whitespace token is value-like:
//!   an identifier, a number literal, a closing `)`/`]`/`}`, another
//!   transpose, or a string literal. A newline blocks this lookback, so a
//!   quote at the start of a line always opens a string. Inside an open
//!   string, a doubled quote (`''`) is a single literal quote and never
//!   terminates the literal.
//!
//! There is deliberately no grammar here: MATLAB has no official one, and the
//! rewriter only needs token classes, not structure. Constructs outside the
//! supported subset (for example command syntax such as `hold on`) tokenize
//! as plain identifiers and pass through conversion untouched.

use alloc::string::String;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Byte range and human position of a token in its source text.
///
/// Spans of consecutive tokens are adjacent: `byte_end` of one token equals
/// `byte_start` of the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SourceSpan {
    /// 0-based byte offset of the first byte.
    pub byte_start: usize,
    /// 0-based byte offset one past the last byte.
    pub byte_end: usize,
    /// 1-based line of the first byte.
    pub line: u32,
    /// 1-based character column of the first byte within its line.
    pub col: u32,
}

/// Bracketing and separator punctuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum PunctKind {
    /// `(`
    OpenParen,
    /// `)`
    CloseParen,
    /// `[`
    OpenBracket,
    /// `]`
    CloseBracket,
    /// `{`
    OpenBrace,
    /// `}`
    CloseBrace,
    /// `,`
    Comma,
    /// `;`
    Semicolon,
}

impl PunctKind {
    /// True for `)`, `]` and `}` — the closers that allow a following
    /// transpose quote.
    pub fn is_closing(self) -> bool {
        matches!(
            self,
            PunctKind::CloseParen | PunctKind::CloseBracket | PunctKind::CloseBrace
        )
    }
}

/// The category of a lexical token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum TokenKind {
    /// Names: variables, function calls, command words.
    Identifier,
    /// One of the fixed control keywords (`function`, `end`, `if`, `elseif`,
    /// `else`, `for`, `while`, `return`, `break`, `continue`).
    Keyword,
    /// Integer or floating literal, including exponent forms.
    NumberLiteral,
    /// A complete string literal. Single-quoted literals begin and end with
    /// `'` and carry doubled `''` for embedded quotes; double-quoted
    /// (Octave-style) literals are also classified here.
    StringLiteral,
    /// Any operator, including the element-wise `.*`, `./`, `.\`, `.^`.
    Operator,
    /// A transpose: a bare `'` in value position, or the two-character `.'`.
    Transpose,
    /// A `%`/`#` comment to end of line, or a whole `%{ ... %}` block.
    Comment,
    /// A line terminator (`\n`, `\r\n`, or a lone `\r`).
    Newline,
    /// A run of spaces and tabs.
    Whitespace,
    /// Brackets, parentheses, braces, comma, semicolon.
    Punct(PunctKind),
    /// `...` plus any trailing same-line text (MATLAB treats text after the
    /// dots as commentary belonging to the continuation).
    LineContinuation,
    /// Anything the lexer does not recognize, kept verbatim. Also used for
    /// the remainder of a line when a string literal is unterminated.
    Unknown,
}

/// A classified lexeme with its exact source text and location.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Token {
    /// The category of this token.
    pub kind: TokenKind,
    /// The exact source substring, byte-for-byte.
    pub text: String,
    /// Location of `text` in the source.
    pub span: SourceSpan,
}

/// Problems found while lexing. The stream is still produced in full; these
/// are diagnostics, not hard failures.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum LexDiagnostic {
    /// A quote opened a string but the line ended before it closed. The
    /// offending fragment is emitted as an [`TokenKind::Unknown`] token.
    UnterminatedString {
        /// Span of the fragment from the opening quote to end of line.
        span: SourceSpan,
    },
    /// A `%{` block comment ran to end of input without its closing `%}`.
    UnterminatedBlockComment {
        /// Span of the whole unterminated block.
        span: SourceSpan,
    },
}

impl LexDiagnostic {
    /// Span the diagnostic refers to.
    pub fn span(&self) -> SourceSpan {
        match self {
            LexDiagnostic::UnterminatedString { span } => *span,
            LexDiagnostic::UnterminatedBlockComment { span } => *span,
        }
    }

    /// Short human-readable description.
    pub fn message(&self) -> &'static str {
        match self {
            LexDiagnostic::UnterminatedString { .. } => "unterminated string literal",
            LexDiagnostic::UnterminatedBlockComment { .. } => "unterminated block comment",
        }
    }
}

/// Result of [`tokenize`]: the full token stream plus any diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexed {
    /// Tokens covering the entire input.
    pub tokens: Vec<Token>,
    /// Recoverable problems encountered along the way.
    pub diagnostics: Vec<LexDiagnostic>,
}

/// The fixed keyword set. Everything else alphanumeric is an identifier.
pub const KEYWORDS: [&str; 10] = [
    "function", "end", "if", "elseif", "else", "for", "while", "return", "break", "continue",
];

fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident_continue(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Tokenizes MATLAB/Octave source into a lossless stream.
///
/// The function is pure: identical inputs produce identical streams. Inputs
/// are `&str`, so UTF-8 validity is established before lexing begins;
/// callers reading files must reject invalid UTF-8 themselves.
pub fn tokenize(source: &str) -> Lexed {
    Lexer::new(source).run()
}

/// Names that are applied to an argument list: every identifier directly
/// followed (ignoring horizontal whitespace) by `(`, in stream order.
///
/// Indexing and calling are indistinguishable at token level, so indexed
/// variables appear too; that is fine for comparing two programs
/// structurally, as long as both sides are extracted the same way.
pub fn call_sequence(tokens: &[Token]) -> Vec<String> {
    let mut out = Vec::new();
    for (i, token) in tokens.iter().enumerate() {
        if token.kind != TokenKind::Identifier {
            continue;
        }
        let next = tokens[i + 1..]
            .iter()
            .find(|t| t.kind != TokenKind::Whitespace);
        if matches!(next, Some(t) if t.kind == TokenKind::Punct(PunctKind::OpenParen)) {
            out.push(token.text.clone());
        }
    }
    out
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
    line_start: usize,
    tokens: Vec<Token>,
    diagnostics: Vec<LexDiagnostic>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            line: 1,
            line_start: 0,
            tokens: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn run(mut self) -> Lexed {
        while self.pos < self.bytes.len() {
            self.next_token();
        }
        Lexed {
            tokens: self.tokens,
            diagnostics: self.diagnostics,
        }
    }

    fn peek(&self, offset: usize) -> Option<u8> {
        self.bytes.get(self.pos + offset).copied()
    }

    /// Emits the token covering `start..end` and advances line bookkeeping
    /// past any newlines the token swallowed (block comments, newlines).
    fn push(&mut self, kind: TokenKind, start: usize, end: usize) {
        debug_assert!(start < end, "empty token");
        let text = &self.src[start..end];
        let col = self.src[self.line_start..start].chars().count() as u32 + 1;
        self.tokens.push(Token {
            kind,
            text: String::from(text),
            span: SourceSpan {
                byte_start: start,
                byte_end: end,
                line: self.line,
                col,
            },
        });
        let mut newlines = 0u32;
        let mut last_nl = None;
        for (i, b) in text.bytes().enumerate() {
            if b == b'\n' {
                newlines += 1;
                last_nl = Some(i);
            }
        }
        if let Some(i) = last_nl {
            self.line += newlines;
            self.line_start = start + i + 1;
        }
        self.pos = end;
    }

    /// The nearest preceding token that is not horizontal whitespace.
    /// Newlines are not skipped; they deliberately break the lookback.
    fn prev_significant(&self) -> Option<&Token> {
        self.tokens
            .iter()
            .rev()
            .find(|t| t.kind != TokenKind::Whitespace)
    }

    /// True when only whitespace separates the cursor from the line start,
    /// i.e. a `%{` here can open a block comment.
    fn at_line_start(&self) -> bool {
        matches!(
            self.prev_significant().map(|t| t.kind),
            None | Some(TokenKind::Newline)
        )
    }

    /// True at a statement boundary: line start or right after `;`/`,`.
    /// Octave `#` comments are honored only here.
    fn at_statement_start(&self) -> bool {
        matches!(
            self.prev_significant().map(|t| t.kind),
            None | Some(TokenKind::Newline)
                | Some(TokenKind::Punct(PunctKind::Semicolon))
                | Some(TokenKind::Punct(PunctKind::Comma))
        )
    }

    /// Decides whether a quote at the cursor is a transpose.
    fn quote_is_transpose(&self) -> bool {
        match self.prev_significant() {
            Some(t) => match t.kind {
                TokenKind::Identifier
                | TokenKind::NumberLiteral
                | TokenKind::Transpose
                | TokenKind::StringLiteral => true,
                TokenKind::Punct(p) => p.is_closing(),
                _ => false,
            },
            None => false,
        }
    }

    fn next_token(&mut self) {
        let start = self.pos;
        let b = self.bytes[start];
        match b {
            b'\r' => {
                let end = if self.peek(1) == Some(b'\n') {
                    start + 2
                } else {
                    start + 1
                };
                self.push(TokenKind::Newline, start, end);
            }
            b'\n' => self.push(TokenKind::Newline, start, start + 1),
            b' ' | b'\t' => {
                let mut end = start + 1;
                while matches!(self.bytes.get(end), Some(b' ') | Some(b'\t')) {
                    end += 1;
                }
                self.push(TokenKind::Whitespace, start, end);
            }
            b'%' => self.lex_percent(start),
            b'#' => {
                if self.at_statement_start() {
                    let end = self.line_end(start);
                    self.push(TokenKind::Comment, start, end);
                } else {
                    // Octave allows `#` comments anywhere, but only the
                    // statement-start form is recognized here; elsewhere the
                    // character is preserved as-is.
                    self.push(TokenKind::Unknown, start, start + 1);
                }
            }
            b'\'' => {
                if self.quote_is_transpose() {
                    self.push(TokenKind::Transpose, start, start + 1);
                } else {
                    self.lex_single_quoted(start);
                }
            }
            b'"' => self.lex_double_quoted(start),
            b'0'..=b'9' => self.lex_number(start),
            b'.' => self.lex_dot(start),
            b'(' => self.push(TokenKind::Punct(PunctKind::OpenParen), start, start + 1),
            b')' => self.push(TokenKind::Punct(PunctKind::CloseParen), start, start + 1),
            b'[' => self.push(TokenKind::Punct(PunctKind::OpenBracket), start, start + 1),
            b']' => self.push(TokenKind::Punct(PunctKind::CloseBracket), start, start + 1),
            b'{' => self.push(TokenKind::Punct(PunctKind::OpenBrace), start, start + 1),
            b'}' => self.push(TokenKind::Punct(PunctKind::CloseBrace), start, start + 1),
            b',' => self.push(TokenKind::Punct(PunctKind::Comma), start, start + 1),
            b';' => self.push(TokenKind::Punct(PunctKind::Semicolon), start, start + 1),
            _ if is_ident_start(b) => {
                let mut end = start + 1;
                while self.bytes.get(end).copied().is_some_and(is_ident_continue) {
                    end += 1;
                }
                let kind = if is_keyword(&self.src[start..end]) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                };
                self.push(kind, start, end);
            }
            b'=' | b'~' | b'!' | b'<' | b'>' => {
                let end = if self.peek(1) == Some(b'=') {
                    start + 2
                } else {
                    start + 1
                };
                self.push(TokenKind::Operator, start, end);
            }
            b'&' | b'|' => {
                let end = if self.peek(1) == Some(b) {
                    start + 2
                } else {
                    start + 1
                };
                self.push(TokenKind::Operator, start, end);
            }
            b'+' | b'-' | b'*' | b'/' | b'\\' | b'^' | b'@' | b':' => {
                self.push(TokenKind::Operator, start, start + 1);
            }
            _ => {
                // Preserve one whole UTF-8 character of unrecognized input.
                let ch_len = self.src[start..]
                    .chars()
                    .next()
                    .map(char::len_utf8)
                    .unwrap_or(1);
                self.push(TokenKind::Unknown, start, start + ch_len);
            }
        }
    }

    /// Byte offset of the end of the current line (exclusive of the
    /// terminator), starting the search at `from`.
    fn line_end(&self, from: usize) -> usize {
        let mut end = from;
        while let Some(&b) = self.bytes.get(end) {
            if b == b'\n' || b == b'\r' {
                break;
            }
            end += 1;
        }
        end
    }

    /// `%` introduces a line comment, or a `%{ ... %}` block when the marker
    /// sits alone on its line. Blocks nest, matching Octave.
    fn lex_percent(&mut self, start: usize) {
        if self.peek(1) == Some(b'{') && self.at_line_start() {
            let after_marker = self.line_end(start + 2);
            if self.src[start + 2..after_marker].trim().is_empty() {
                self.lex_block_comment(start);
                return;
            }
        }
        let end = self.line_end(start);
        self.push(TokenKind::Comment, start, end);
    }

    fn lex_block_comment(&mut self, start: usize) {
        let mut depth = 1usize;
        // Scan subsequent lines for bare `%{` / `%}` markers.
        let mut cursor = self.line_end(start);
        loop {
            if cursor >= self.bytes.len() {
                let end = self.bytes.len();
                self.push(TokenKind::Comment, start, end);
                let span = self.tokens.last().expect("just pushed").span;
                self.diagnostics
                    .push(LexDiagnostic::UnterminatedBlockComment { span });
                return;
            }
            // Step over the line terminator.
            if self.bytes[cursor] == b'\r' && self.bytes.get(cursor + 1) == Some(&b'\n') {
                cursor += 2;
            } else {
                cursor += 1;
            }
            let line_end = self.line_end(cursor);
            let line = self.src[cursor..line_end].trim();
            if line == "%{" {
                depth += 1;
            } else if line == "%}" {
                depth -= 1;
                if depth == 0 {
                    // Token ends at the `%}` marker, keeping trailing
                    // whitespace and the newline outside the comment.
                    let marker = self.src[cursor..line_end]
                        .find("%}")
                        .expect("trimmed line is %}");
                    self.push(TokenKind::Comment, start, cursor + marker + 2);
                    return;
                }
            }
            cursor = line_end;
        }
    }

    /// Single-quoted string; `''` inside is one literal quote. If the line
    /// ends first, the fragment is preserved as `Unknown` with a diagnostic
    /// and lexing resumes at the newline.
    fn lex_single_quoted(&mut self, start: usize) {
        let mut i = start + 1;
        loop {
            match self.bytes.get(i) {
                Some(b'\'') => {
                    if self.bytes.get(i + 1) == Some(&b'\'') {
                        i += 2; // doubled quote: stay inside the literal
                    } else {
                        self.push(TokenKind::StringLiteral, start, i + 1);
                        return;
                    }
                }
                Some(b'\n') | Some(b'\r') | None => {
                    self.push(TokenKind::Unknown, start, i);
                    let span = self.tokens.last().expect("just pushed").span;
                    self.diagnostics
                        .push(LexDiagnostic::UnterminatedString { span });
                    return;
                }
                Some(_) => i += 1,
            }
        }
    }

    /// Octave-style double-quoted string with backslash escapes. These are
    /// already in target syntax and pass through conversion untouched.
    fn lex_double_quoted(&mut self, start: usize) {
        let mut i = start + 1;
        loop {
            match self.bytes.get(i) {
                Some(b'"') => {
                    self.push(TokenKind::StringLiteral, start, i + 1);
                    return;
                }
                Some(b'\\') if !matches!(self.bytes.get(i + 1), Some(b'\n') | Some(b'\r') | None) =>
                {
                    i += 2;
                }
                Some(b'\n') | Some(b'\r') | None => {
                    self.push(TokenKind::Unknown, start, i);
                    let span = self.tokens.last().expect("just pushed").span;
                    self.diagnostics
                        .push(LexDiagnostic::UnterminatedString { span });
                    return;
                }
                Some(_) => i += 1,
            }
        }
    }

    /// Number literal: integer part, optional fraction, optional exponent.
    /// A `.` is folded into the number only when it does not begin a `..`
    /// run, so `2...` still lexes as `2` plus a line continuation.
    fn lex_number(&mut self, start: usize) {
        let mut end = start;
        while self.bytes.get(end).copied().is_some_and(|b| b.is_ascii_digit()) {
            end += 1;
        }
        if self.bytes.get(end) == Some(&b'.') && self.bytes.get(end + 1) != Some(&b'.') {
            end += 1;
            while self.bytes.get(end).copied().is_some_and(|b| b.is_ascii_digit()) {
                end += 1;
            }
        }
        end = self.lex_exponent(end);
        self.push(TokenKind::NumberLiteral, start, end);
    }

    fn lex_exponent(&self, mut end: usize) -> usize {
        if matches!(self.bytes.get(end), Some(b'e') | Some(b'E')) {
            let mut j = end + 1;
            if matches!(self.bytes.get(j), Some(b'+') | Some(b'-')) {
                j += 1;
            }
            if self.bytes.get(j).copied().is_some_and(|b| b.is_ascii_digit()) {
                end = j;
                while self.bytes.get(end).copied().is_some_and(|b| b.is_ascii_digit()) {
                    end += 1;
                }
            }
        }
        end
    }

    /// `.` starts a continuation (`...`), the `.'` transpose, an element-wise
    /// operator, a leading-dot number, or stands alone as field access.
    fn lex_dot(&mut self, start: usize) {
        match (self.peek(1), self.peek(2)) {
            (Some(b'.'), Some(b'.')) => {
                // The rest of the line after `...` is commentary that
                // belongs to the continuation; keep it in one token.
                let end = self.line_end(start);
                self.push(TokenKind::LineContinuation, start, end);
            }
            (Some(b'\''), _) => self.push(TokenKind::Transpose, start, start + 2),
            (Some(b'*'), _) | (Some(b'/'), _) | (Some(b'\\'), _) | (Some(b'^'), _) => {
                self.push(TokenKind::Operator, start, start + 2);
            }
            (Some(d), _) if d.is_ascii_digit() => {
                let mut end = start + 1;
                while self.bytes.get(end).copied().is_some_and(|b| b.is_ascii_digit()) {
                    end += 1;
                }
                end = self.lex_exponent(end);
                self.push(TokenKind::NumberLiteral, start, end);
            }
            _ => self.push(TokenKind::Operator, start, start + 1),
        }
    }
}

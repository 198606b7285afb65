//! Indentation-aware tokenizer for Python source.
//!
//! Produces just enough structure for function extraction: names, string
//! literals, operators and brackets, logical-line ends and INDENT/DEDENT
//! markers. Comments and non-logical newlines are dropped.

use super::ParseFailure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Name,
    Number,
    String,
    Op,
    Newline,
    Indent,
    Dedent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn text<'a>(&self, src: &'a str) -> &'a str {
        &src[self.start..self.end]
    }

    pub fn is_op(&self, src: &str, op: &str) -> bool {
        self.kind == TokenKind::Op && self.text(src) == op
    }

    pub fn is_name(&self, src: &str, name: &str) -> bool {
        self.kind == TokenKind::Name && self.text(src) == name
    }
}

const OPS3: &[&str] = &["**=", "//=", ">>=", "<<=", "..."];
const OPS2: &[&str] = &[
    "->", ":=", "==", "!=", "<=", ">=", "**", "//", "<<", ">>", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=", "^=", "@=",
];
const OPS1: &[u8] = b"+-*/%@&|^~<>=.,:;";

const STRING_PREFIXES: &[&str] = &[
    "r", "u", "b", "f", "t", "br", "rb", "fr", "rf", "tr", "rt",
];

pub(crate) struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line_starts: &'a [usize],
    brackets: Vec<(u8, usize)>,
    indents: Vec<usize>,
    at_line_start: bool,
    tokens: Vec<Token>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str, start: usize, line_starts: &'a [usize]) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: start,
            line_starts,
            brackets: Vec::new(),
            indents: vec![0],
            at_line_start: true,
            tokens: Vec::new(),
        }
    }

    fn fail(&self, reason: impl Into<String>, at: usize) -> ParseFailure {
        ParseFailure {
            reason: reason.into(),
            line: Some(line_of(self.line_starts, at)),
        }
    }

    fn push(&mut self, kind: TokenKind, start: usize, end: usize) {
        self.tokens.push(Token { kind, start, end });
    }

    pub fn tokenize(mut self) -> Result<Vec<Token>, ParseFailure> {
        let len = self.bytes.len();
        loop {
            if self.at_line_start && self.brackets.is_empty() && !self.handle_indentation()? {
                break;
            }
            while self.pos < len && matches!(self.bytes[self.pos], b' ' | b'\t' | b'\x0c') {
                self.pos += 1;
            }
            if self.pos >= len {
                break;
            }
            let c = self.bytes[self.pos];
            match c {
                b'#' => self.skip_comment(),
                b'\n' => self.newline(self.pos, 1),
                b'\r' => {
                    if self.bytes.get(self.pos + 1) == Some(&b'\n') {
                        self.newline(self.pos, 2);
                    } else {
                        self.newline(self.pos, 1);
                    }
                }
                b'\\' => {
                    let next = &self.bytes[self.pos + 1..];
                    let skip = if next.starts_with(b"\r\n") {
                        3
                    } else if next.starts_with(b"\n") || next.starts_with(b"\r") {
                        2
                    } else {
                        return Err(self.fail("unexpected character after line continuation", self.pos));
                    };
                    self.pos += skip;
                    if self.pos >= len {
                        return Err(self.fail("unexpected EOF after line continuation", self.pos - 1));
                    }
                }
                b'"' | b'\'' => {
                    let start = self.pos;
                    let end = self.scan_string(start, start)?;
                    self.push(TokenKind::String, start, end);
                    self.pos = end;
                }
                b'0'..=b'9' => self.scan_number(),
                b'.' if self.bytes.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                    self.scan_number()
                }
                b'(' | b'[' | b'{' => {
                    self.brackets.push((c, self.pos));
                    self.push(TokenKind::Op, self.pos, self.pos + 1);
                    self.pos += 1;
                }
                b')' | b']' | b'}' => {
                    let want = match c {
                        b')' => b'(',
                        b']' => b'[',
                        _ => b'{',
                    };
                    match self.brackets.pop() {
                        Some((open, _)) if open == want => {}
                        Some(_) => return Err(self.fail("mismatched closing bracket", self.pos)),
                        None => return Err(self.fail("unmatched closing bracket", self.pos)),
                    }
                    self.push(TokenKind::Op, self.pos, self.pos + 1);
                    self.pos += 1;
                }
                _ if c == b'_' || c.is_ascii_alphabetic() || c >= 0x80 => self.scan_name()?,
                _ => self.scan_op()?,
            }
        }

        if let Some(&(_, at)) = self.brackets.last() {
            return Err(self.fail("bracket was never closed", at));
        }
        if self
            .tokens
            .last()
            .is_some_and(|t| !matches!(t.kind, TokenKind::Newline | TokenKind::Dedent))
        {
            self.push(TokenKind::Newline, len, len);
        }
        while self.indents.len() > 1 {
            self.indents.pop();
            self.push(TokenKind::Dedent, len, len);
        }
        Ok(self.tokens)
    }

    /// Measures the indentation of the next non-blank line and emits
    /// INDENT/DEDENT tokens. Returns false at end of input.
    fn handle_indentation(&mut self) -> Result<bool, ParseFailure> {
        let len = self.bytes.len();
        loop {
            let mut col = 0usize;
            let mut p = self.pos;
            while p < len {
                match self.bytes[p] {
                    b' ' => col += 1,
                    b'\t' => col = (col / 8 + 1) * 8,
                    b'\x0c' => col = 0,
                    _ => break,
                }
                p += 1;
            }
            if p >= len {
                self.pos = p;
                return Ok(false);
            }
            match self.bytes[p] {
                b'#' => {
                    self.pos = p;
                    self.skip_comment();
                    self.skip_line_end();
                    continue;
                }
                b'\n' | b'\r' => {
                    self.pos = p;
                    self.skip_line_end();
                    continue;
                }
                _ => {}
            }
            self.pos = p;
            self.at_line_start = false;
            let top = *self.indents.last().unwrap_or(&0);
            if col > top {
                self.indents.push(col);
                self.push(TokenKind::Indent, p, p);
            } else if col < top {
                while col < *self.indents.last().unwrap_or(&0) {
                    self.indents.pop();
                    self.push(TokenKind::Dedent, p, p);
                }
                if col != *self.indents.last().unwrap_or(&0) {
                    return Err(self.fail(
                        "unindent does not match any outer indentation level",
                        p,
                    ));
                }
            }
            return Ok(true);
        }
    }

    fn skip_comment(&mut self) {
        while self.pos < self.bytes.len() && !matches!(self.bytes[self.pos], b'\n' | b'\r') {
            self.pos += 1;
        }
    }

    fn skip_line_end(&mut self) {
        if self.bytes[self.pos..].starts_with(b"\r\n") {
            self.pos += 2;
        } else if self.pos < self.bytes.len() {
            self.pos += 1;
        }
    }

    fn newline(&mut self, at: usize, width: usize) {
        if self.brackets.is_empty() {
            self.push(TokenKind::Newline, at, at + width);
            self.at_line_start = true;
        }
        self.pos = at + width;
    }

    /// Scans a string literal whose prefix starts at `start` and whose
    /// opening quote is at `quote_at`. Returns the end offset.
    fn scan_string(&self, start: usize, quote_at: usize) -> Result<usize, ParseFailure> {
        let b = self.bytes;
        let quote = b[quote_at];
        let triple = b.get(quote_at + 1) == Some(&quote) && b.get(quote_at + 2) == Some(&quote);
        if triple {
            let mut p = quote_at + 3;
            loop {
                if p >= b.len() {
                    return Err(self.fail("unterminated triple-quoted string literal", start));
                }
                if b[p] == b'\\' {
                    p += 2;
                } else if b[p] == quote && b.get(p + 1) == Some(&quote) && b.get(p + 2) == Some(&quote) {
                    return Ok(p + 3);
                } else {
                    p += 1;
                }
            }
        } else {
            let mut p = quote_at + 1;
            loop {
                if p >= b.len() || b[p] == b'\n' || b[p] == b'\r' {
                    return Err(self.fail("unterminated string literal", start));
                }
                if b[p] == b'\\' {
                    p += if b[p + 1..].starts_with(b"\r\n") { 3 } else { 2 };
                } else if b[p] == quote {
                    return Ok(p + 1);
                } else {
                    p += 1;
                }
            }
        }
    }

    fn scan_number(&mut self) {
        let start = self.pos;
        let b = self.bytes;
        let mut p = self.pos;
        while p < b.len() {
            let c = b[p];
            let exponent_sign = (c == b'+' || c == b'-') && matches!(b[p - 1], b'e' | b'E') && !is_hex(&b[start..p]);
            if !(c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || exponent_sign) {
                break;
            }
            p += 1;
        }
        self.push(TokenKind::Number, start, p);
        self.pos = p;
    }

    fn scan_name(&mut self) -> Result<(), ParseFailure> {
        let start = self.pos;
        let mut chars = self.src[start..].char_indices();
        let Some((_, first)) = chars.next() else {
            return Ok(());
        };
        if !(first == '_' || first.is_alphabetic() || (!first.is_ascii() && !first.is_whitespace())) {
            return Err(self.fail(format!("invalid character {first:?}"), start));
        }
        let mut end = start + first.len_utf8();
        for (off, ch) in chars {
            if ch == '_' || ch.is_alphanumeric() || (!ch.is_ascii() && !ch.is_whitespace()) {
                end = start + off + ch.len_utf8();
            } else {
                break;
            }
        }
        let word = &self.src[start..end];
        if matches!(self.bytes.get(end), Some(b'"' | b'\''))
            && STRING_PREFIXES.contains(&word.to_ascii_lowercase().as_str())
        {
            let close = self.scan_string(start, end)?;
            self.push(TokenKind::String, start, close);
            self.pos = close;
        } else {
            self.push(TokenKind::Name, start, end);
            self.pos = end;
        }
        Ok(())
    }

    fn scan_op(&mut self) -> Result<(), ParseFailure> {
        let rest = &self.bytes[self.pos..];
        let width = if OPS3.iter().any(|op| rest.starts_with(op.as_bytes())) {
            3
        } else if OPS2.iter().any(|op| rest.starts_with(op.as_bytes())) {
            2
        } else if OPS1.contains(&rest[0]) {
            1
        } else {
            let ch = self.src[self.pos..].chars().next().unwrap_or('?');
            return Err(self.fail(format!("invalid character {ch:?}"), self.pos));
        };
        self.push(TokenKind::Op, self.pos, self.pos + width);
        self.pos += width;
        Ok(())
    }
}

fn is_hex(prefix: &[u8]) -> bool {
    prefix.len() > 1 && prefix[0] == b'0' && matches!(prefix[1], b'x' | b'X')
}

/// Byte offsets at which each line begins.
pub(crate) fn line_starts(src: &str) -> Vec<usize> {
    let mut starts = vec![0];
    let b = src.as_bytes();
    for (i, &c) in b.iter().enumerate() {
        if c == b'\n' || (c == b'\r' && b.get(i + 1) != Some(&b'\n')) {
            starts.push(i + 1);
        }
    }
    starts
}

/// 1-based line number of a byte offset.
pub(crate) fn line_of(starts: &[usize], offset: usize) -> usize {
    match starts.binary_search(&offset) {
        Ok(i) => i + 1,
        Err(i) => i,
    }
}

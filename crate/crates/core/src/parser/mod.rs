//! Python function and docstring extraction.
//!
//! The parser is lexical: it tokenizes the file, tracks indentation, and
//! recognises `def`, `async def`, `class` and decorator lines. It does not
//! build a full syntax tree. Any file it cannot structure is reported as a
//! [`ParseFailure`] and contributes no records.

mod docstring;
mod lexer;
mod strip;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use docstring::{clean_docstring, QuoteStyle};
pub use strip::strip_docstring;

use docstring::{count_lines, split_literal};
use lexer::{line_of, line_starts, Lexer, Token, TokenKind};

/// Location of a fragment within one source file.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file_id: String,
    pub start_line: usize,
    pub end_line: usize,
    pub start_byte: usize,
    pub end_byte: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub annotation: Option<String>,
    pub default: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DocstringBlock {
    /// Exact literal source, prefix and quotes included.
    pub raw_literal: String,
    /// Dequoted, unescaped and dedented text.
    pub content: String,
    pub quote_style: QuoteStyle,
    pub line_count: usize,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionRecord {
    /// Dotted path of enclosing classes and functions, e.g. `Outer.method`.
    pub qualified_name: String,
    /// `def`/`async def` header through the closing colon.
    pub signature_text: String,
    pub params: Vec<Param>,
    pub is_async: bool,
    /// Nearest enclosing class or function scope is a class.
    pub is_method: bool,
    /// Some enclosing scope is a function.
    pub is_nested: bool,
    pub decorators: Vec<String>,
    /// Source from just after the header colon to the end of the last
    /// statement of the suite.
    pub body_source: String,
    pub docstring: Option<DocstringBlock>,
    pub span: SourceSpan,
}

impl FunctionRecord {
    pub fn name(&self) -> &str {
        self.qualified_name
            .rsplit('.')
            .next()
            .unwrap_or(&self.qualified_name)
    }

    /// Function source from `def` (or `async`) to the end of its body.
    pub fn source(&self) -> String {
        let mut s = String::with_capacity(self.signature_text.len() + self.body_source.len());
        s.push_str(&self.signature_text);
        s.push_str(&self.body_source);
        s
    }
}

/// A file that could not be tokenized or structured.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseFailure {
    pub reason: String,
    pub line: Option<usize>,
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

impl ParseFailure {
    fn new(reason: impl Into<String>, line: Option<usize>) -> Self {
        Self {
            reason: reason.into(),
            line,
        }
    }
}

/// Extracts every function definition from one file, in source order.
pub fn scan_module(source: &[u8], file_id: &str) -> Result<Vec<FunctionRecord>, ParseFailure> {
    let text = std::str::from_utf8(source).map_err(|e| {
        let line = source[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        ParseFailure::new("source is not valid UTF-8", Some(line))
    })?;
    scan_str(text, file_id)
}

/// Same as [`scan_module`] for text that is already known to be UTF-8.
pub fn scan_str(text: &str, file_id: &str) -> Result<Vec<FunctionRecord>, ParseFailure> {
    check_encoding_declaration(text)?;
    let starts = line_starts(text);
    let begin = if text.starts_with('\u{feff}') { 3 } else { 0 };
    let tokens = Lexer::new(text, begin, &starts).tokenize()?;
    Builder {
        src: text,
        file_id,
        starts: &starts,
        tokens: &tokens,
        records: Vec::new(),
        frames: Vec::new(),
    }
    .run()
}

/// Parses a standalone function source and returns its outermost function.
/// Fails unless the text holds exactly one top-level function.
pub fn parse_single_function(source: &str) -> Result<FunctionRecord, ParseFailure> {
    let records = scan_str(source, "<function>")?;
    let mut top = records.into_iter().filter(|r| !r.is_nested && !r.is_method);
    match (top.next(), top.next()) {
        (Some(record), None) => Ok(record),
        (None, _) => Err(ParseFailure::new("no function definition found", None)),
        (Some(_), Some(second)) => Err(ParseFailure::new(
            "more than one top-level function",
            Some(second.span.start_line),
        )),
    }
}

fn check_encoding_declaration(text: &str) -> Result<(), ParseFailure> {
    static COOKIE: std::sync::OnceLock<regex::Regex> = std::sync::OnceLock::new();
    let cookie = COOKIE.get_or_init(|| {
        regex::Regex::new(r"^[ \t\x0c]*#.*?coding[:=][ \t]*([-\w.]+)").expect("static regex")
    });
    for (i, line) in text.lines().take(2).enumerate() {
        if let Some(caps) = cookie.captures(line) {
            let name = caps[1].to_ascii_lowercase().replace('_', "-");
            if name == "utf-8" || name == "utf8" || name.starts_with("utf-8-") {
                return Ok(());
            }
            return Err(ParseFailure::new(
                format!("unsupported source encoding {:?}", &caps[1]),
                Some(i + 1),
            ));
        }
        let trimmed = line.trim_start_matches('\u{feff}').trim();
        if !(trimmed.is_empty() || trimmed.starts_with('#')) {
            break;
        }
    }
    Ok(())
}

enum FrameKind {
    Class(String),
    Def(usize),
    Other,
}

struct Frame {
    kind: FrameKind,
}

struct Builder<'a> {
    src: &'a str,
    file_id: &'a str,
    starts: &'a [usize],
    tokens: &'a [Token],
    records: Vec<FunctionRecord>,
    frames: Vec<Frame>,
}

/// What the next INDENT opens.
enum Pending {
    Nothing,
    Block(FrameKind),
}

impl<'a> Builder<'a> {
    fn line(&self, offset: usize) -> usize {
        line_of(self.starts, offset)
    }

    fn fail(&self, reason: &str, offset: usize) -> ParseFailure {
        ParseFailure::new(reason, Some(self.line(offset)))
    }

    fn span(&self, start: usize, end: usize) -> SourceSpan {
        SourceSpan {
            file_id: self.file_id.to_string(),
            start_line: self.line(start),
            end_line: self.line(end.saturating_sub(1).max(start)),
            start_byte: start,
            end_byte: end,
        }
    }

    fn run(mut self) -> Result<Vec<FunctionRecord>, ParseFailure> {
        let tokens = self.tokens;
        let mut pending = Pending::Nothing;
        let mut decorators: Vec<String> = Vec::new();
        // Record whose suite has just been opened and still needs its first
        // statement inspected for a docstring.
        let mut awaiting_doc: Option<usize> = None;
        let mut last_stmt_end = 0usize;
        let mut i = 0;

        while i < tokens.len() {
            let tok = tokens[i];
            match tok.kind {
                TokenKind::Indent => {
                    match std::mem::replace(&mut pending, Pending::Nothing) {
                        Pending::Block(kind) => {
                            if let FrameKind::Def(idx) = kind {
                                awaiting_doc = Some(idx);
                            }
                            self.frames.push(Frame { kind });
                        }
                        Pending::Nothing => return Err(self.fail("unexpected indent", tok.start)),
                    }
                    i += 1;
                }
                TokenKind::Dedent => {
                    let frame = self
                        .frames
                        .pop()
                        .ok_or_else(|| self.fail("unbalanced dedent", tok.start))?;
                    if let FrameKind::Def(idx) = frame.kind {
                        self.finish(idx, last_stmt_end);
                    }
                    i += 1;
                }
                TokenKind::Newline => i += 1,
                _ => {
                    if matches!(pending, Pending::Block(_)) {
                        return Err(self.fail("expected an indented block", tok.start));
                    }
                    let end = tokens[i..]
                        .iter()
                        .position(|t| t.kind == TokenKind::Newline)
                        .map(|p| i + p)
                        .unwrap_or(tokens.len());
                    let line = &tokens[i..end];
                    if let Some(idx) = awaiting_doc.take() {
                        let first = first_statement(self.src, line);
                        if let Some(doc) = self.docstring_from(first) {
                            self.records[idx].docstring = Some(doc);
                        }
                    }
                    pending = self.logical_line(line, &mut decorators)?;
                    last_stmt_end = line.last().map_or(tok.end, |t| t.end);
                    i = end;
                }
            }
        }
        if matches!(pending, Pending::Block(_)) {
            return Err(ParseFailure::new(
                "expected an indented block",
                Some(self.starts.len()),
            ));
        }
        if !decorators.is_empty() {
            return Err(ParseFailure::new(
                "decorator without a following definition",
                Some(self.starts.len()),
            ));
        }
        Ok(self.records)
    }

    fn logical_line(
        &mut self,
        line: &[Token],
        decorators: &mut Vec<String>,
    ) -> Result<Pending, ParseFailure> {
        let src = self.src;
        let first = line[0];
        if first.is_op(src, "@") {
            let Some(last) = line.last().filter(|_| line.len() > 1) else {
                return Err(self.fail("empty decorator", first.start));
            };
            decorators.push(src[line[1].start..last.end].trim().to_string());
            return Ok(Pending::Nothing);
        }
        let is_async = first.is_name(src, "async") && line.get(1).is_some_and(|t| t.is_name(src, "def"));
        if is_async || first.is_name(src, "def") {
            let decorators = std::mem::take(decorators);
            return self.def_header(line, usize::from(is_async), decorators);
        }
        if first.is_name(src, "class") {
            decorators.clear();
            return self.class_header(line);
        }
        if !decorators.is_empty() {
            return Err(self.fail("decorator must precede a definition", first.start));
        }
        Ok(if line.last().is_some_and(|t| t.is_op(src, ":")) {
            Pending::Block(FrameKind::Other)
        } else {
            Pending::Nothing
        })
    }

    fn scope_names(&self) -> Vec<&str> {
        self.frames
            .iter()
            .filter_map(|f| match &f.kind {
                FrameKind::Class(name) => Some(name.as_str()),
                FrameKind::Def(idx) => Some(self.records[*idx].name()),
                FrameKind::Other => None,
            })
            .collect()
    }

    fn def_header(
        &mut self,
        line: &[Token],
        def_at: usize,
        decorators: Vec<String>,
    ) -> Result<Pending, ParseFailure> {
        let src = self.src;
        let start = line[0].start;
        let name_tok = line
            .get(def_at + 1)
            .filter(|t| t.kind == TokenKind::Name)
            .ok_or_else(|| self.fail("expected function name after 'def'", start))?;
        let mut k = def_at + 2;
        if line.get(k).is_some_and(|t| t.is_op(src, "[")) {
            k = matching_close(src, line, k).ok_or_else(|| self.fail("unclosed type parameters", start))? + 1;
        }
        if !line.get(k).is_some_and(|t| t.is_op(src, "(")) {
            return Err(self.fail("expected '(' in function definition", name_tok.start));
        }
        let close = matching_close(src, line, k)
            .ok_or_else(|| self.fail("unclosed parameter list", name_tok.start))?;
        let params = parse_params(src, &line[k + 1..close]);
        let colon = colon_after(src, line, close + 1)
            .ok_or_else(|| self.fail("expected ':' after function signature", name_tok.start))?;

        let scopes = self.scope_names();
        let qualified_name = scopes
            .iter()
            .copied()
            .chain(std::iter::once(name_tok.text(src)))
            .collect::<Vec<_>>()
            .join(".");
        let enclosing = self
            .frames
            .iter()
            .rev()
            .find(|f| !matches!(f.kind, FrameKind::Other));
        let is_method = matches!(enclosing.map(|f| &f.kind), Some(FrameKind::Class(_)));
        let is_nested = self.frames.iter().any(|f| matches!(f.kind, FrameKind::Def(_)));

        let colon_end = line[colon].end;
        let idx = self.records.len();
        self.records.push(FunctionRecord {
            qualified_name,
            signature_text: src[start..colon_end].to_string(),
            params,
            is_async: def_at == 1,
            is_method,
            is_nested,
            decorators,
            body_source: String::new(),
            docstring: None,
            span: self.span(start, colon_end),
        });

        if colon + 1 == line.len() {
            return Ok(Pending::Block(FrameKind::Def(idx)));
        }
        let suite = &line[colon + 1..];
        let doc = self.docstring_from(first_statement(src, suite));
        self.records[idx].docstring = doc;
        self.finish(idx, line[line.len() - 1].end);
        Ok(Pending::Nothing)
    }

    fn class_header(&mut self, line: &[Token]) -> Result<Pending, ParseFailure> {
        let src = self.src;
        let name = line
            .get(1)
            .filter(|t| t.kind == TokenKind::Name)
            .ok_or_else(|| self.fail("expected class name", line[0].start))?;
        let colon = colon_after(src, line, 2)
            .ok_or_else(|| self.fail("expected ':' after class header", name.start))?;
        Ok(if colon + 1 == line.len() {
            Pending::Block(FrameKind::Class(name.text(src).to_string()))
        } else {
            Pending::Nothing
        })
    }

    fn finish(&mut self, idx: usize, end: usize) {
        let start = self.records[idx].span.start_byte;
        let header_end = start + self.records[idx].signature_text.len();
        let span = self.span(start, end);
        let record = &mut self.records[idx];
        record.body_source = self.src[header_end..end].to_string();
        record.span = span;
    }

    /// Builds the docstring if the statement is a bare constant string
    /// expression (one literal, or adjacent literals sharing a quote style).
    fn docstring_from(&self, stmt: &[Token]) -> Option<DocstringBlock> {
        if stmt.is_empty() || stmt.iter().any(|t| t.kind != TokenKind::String) {
            return None;
        }
        let pieces: Vec<_> = stmt
            .iter()
            .map(|t| split_literal(t.text(self.src)))
            .collect::<Option<_>>()?;
        let style = pieces[0].style;
        if pieces.iter().any(|p| !p.is_constant_str() || p.style != style) {
            return None;
        }
        let value: String = pieces.iter().map(|p| p.value()).collect();
        let content = clean_docstring(&value);
        let (start, end) = (stmt[0].start, stmt[stmt.len() - 1].end);
        Some(DocstringBlock {
            raw_literal: self.src[start..end].to_string(),
            line_count: count_lines(&content),
            content,
            quote_style: style,
            span: self.span(start, end),
        })
    }
}

/// Tokens of the first simple statement on a logical line.
fn first_statement<'t>(src: &str, line: &'t [Token]) -> &'t [Token] {
    let mut depth = 0i32;
    for (i, t) in line.iter().enumerate() {
        if t.kind != TokenKind::Op {
            continue;
        }
        match t.text(src) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            ";" if depth == 0 => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Index of the bracket closing the one opened at `open`.
fn matching_close(src: &str, line: &[Token], open: usize) -> Option<usize> {
    let mut depth = 0i32;
    for (i, t) in line.iter().enumerate().skip(open) {
        if t.kind != TokenKind::Op {
            continue;
        }
        match t.text(src) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// First depth-0 `:` at or after `from`.
fn colon_after(src: &str, line: &[Token], from: usize) -> Option<usize> {
    let mut depth = 0i32;
    for (i, t) in line.iter().enumerate().skip(from) {
        if t.kind != TokenKind::Op {
            continue;
        }
        match t.text(src) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            ":" if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn parse_params(src: &str, tokens: &[Token]) -> Vec<Param> {
    let mut groups: Vec<&[Token]> = Vec::new();
    let mut depth = 0i32;
    let mut begin = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.kind != TokenKind::Op {
            continue;
        }
        match t.text(src) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            "," if depth == 0 => {
                groups.push(&tokens[begin..i]);
                begin = i + 1;
            }
            _ => {}
        }
    }
    groups.push(&tokens[begin..]);

    let text = |ts: &[Token]| -> Option<String> {
        let (a, b) = (ts.first()?, ts.last()?);
        Some(src[a.start..b.end].trim().to_string())
    };

    groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .filter(|g| !(g.len() == 1 && (g[0].is_op(src, "*") || g[0].is_op(src, "/"))))
        .map(|g| {
            let star = usize::from(g[0].is_op(src, "*") || g[0].is_op(src, "**"));
            let name = text(&g[..(star + 1).min(g.len())]).unwrap_or_default();
            let rest = &g[(star + 1).min(g.len())..];
            let mut depth = 0i32;
            let mut eq = None;
            for (i, t) in rest.iter().enumerate() {
                if t.kind != TokenKind::Op {
                    continue;
                }
                match t.text(src) {
                    "(" | "[" | "{" => depth += 1,
                    ")" | "]" | "}" => depth -= 1,
                    "=" if depth == 0 => {
                        eq = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let (ann_part, default_part) = match eq {
                Some(e) => (&rest[..e], Some(&rest[e + 1..])),
                None => (rest, None),
            };
            let annotation = match ann_part.first() {
                Some(t) if t.is_op(src, ":") => text(&ann_part[1..]),
                _ => None,
            };
            Param {
                name,
                annotation,
                default: default_part.and_then(text),
            }
        })
        .collect()
}

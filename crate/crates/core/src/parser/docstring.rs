//! String-literal decoding and docstring cleanup.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuoteStyle {
    TripleDouble,
    TripleSingle,
    SingleDouble,
    SingleSingle,
}

impl QuoteStyle {
    pub fn delimiter(self) -> &'static str {
        match self {
            QuoteStyle::TripleDouble => "\"\"\"",
            QuoteStyle::TripleSingle => "'''",
            QuoteStyle::SingleDouble => "\"",
            QuoteStyle::SingleSingle => "'",
        }
    }
}

/// One string literal token split into its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Literal<'a> {
    pub prefix: &'a str,
    pub style: QuoteStyle,
    pub body: &'a str,
}

impl Literal<'_> {
    pub fn is_raw(&self) -> bool {
        self.prefix.contains(['r', 'R'])
    }

    /// Bytes and f-/t-strings are never docstrings.
    pub fn is_constant_str(&self) -> bool {
        !self.prefix.contains(['b', 'B', 'f', 'F', 't', 'T'])
    }

    pub fn value(&self) -> String {
        let body = normalize_newlines(self.body);
        if self.is_raw() {
            body
        } else {
            unescape(&body)
        }
    }
}

/// Splits a complete literal token (prefix, quotes and all).
pub(crate) fn split_literal(token: &str) -> Option<Literal<'_>> {
    let quote_at = token.find(['"', '\''])?;
    let (prefix, rest) = token.split_at(quote_at);
    let style = if rest.starts_with("\"\"\"") && rest.len() >= 6 {
        QuoteStyle::TripleDouble
    } else if rest.starts_with("'''") && rest.len() >= 6 {
        QuoteStyle::TripleSingle
    } else if rest.starts_with('"') {
        QuoteStyle::SingleDouble
    } else {
        QuoteStyle::SingleSingle
    };
    let q = style.delimiter().len();
    if rest.len() < 2 * q || !rest.ends_with(style.delimiter()) {
        return None;
    }
    Some(Literal {
        prefix,
        style,
        body: &rest[q..rest.len() - q],
    })
}

fn normalize_newlines(s: &str) -> String {
    s.replace("\r\n", "\n").replace('\r', "\n")
}

/// Evaluates backslash escapes the way a non-raw Python `str` literal does.
/// Malformed `\x`, `\u`, `\U` escapes and `\N{...}` are kept verbatim.
fn unescape(body: &str) -> String {
    let mut out = String::with_capacity(body.len());
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        let Some(&next) = chars.peek() else {
            out.push('\\');
            break;
        };
        match next {
            '\n' => {
                chars.next();
            }
            '\\' | '\'' | '"' => {
                out.push(next);
                chars.next();
            }
            'a' | 'b' | 'f' | 'n' | 'r' | 't' | 'v' => {
                chars.next();
                out.push(match next {
                    'a' => '\x07',
                    'b' => '\x08',
                    'f' => '\x0c',
                    'n' => '\n',
                    'r' => '\r',
                    't' => '\t',
                    _ => '\x0b',
                });
            }
            '0'..='7' => {
                let mut value = 0u32;
                for _ in 0..3 {
                    match chars.peek() {
                        Some(&d @ '0'..='7') => {
                            value = value * 8 + d.to_digit(8).unwrap_or(0);
                            chars.next();
                        }
                        _ => break,
                    }
                }
                out.push(char::from_u32(value).unwrap_or('\u{fffd}'));
            }
            'x' | 'u' | 'U' => {
                let width = match next {
                    'x' => 2,
                    'u' => 4,
                    _ => 8,
                };
                let lookahead: String = chars.clone().skip(1).take(width).collect();
                let decoded = (lookahead.len() == width
                    && lookahead.chars().all(|d| d.is_ascii_hexdigit()))
                .then(|| u32::from_str_radix(&lookahead, 16).ok())
                .flatten()
                .and_then(char::from_u32);
                match decoded {
                    Some(ch) => {
                        out.push(ch);
                        for _ in 0..=width {
                            chars.next();
                        }
                    }
                    None => out.push('\\'),
                }
            }
            _ => out.push('\\'),
        }
    }
    out
}

/// Cleans a docstring value: the first line is kept verbatim, the common
/// leading whitespace of the remaining non-blank lines is removed, blank
/// lines become empty, and leading/trailing blank lines are dropped.
pub fn clean_docstring(value: &str) -> String {
    let lines: Vec<&str> = value.split('\n').collect();
    let is_blank = |l: &str| l.chars().all(char::is_whitespace);
    let margin = lines
        .iter()
        .skip(1)
        .filter(|l| !is_blank(l))
        .map(|l| l.chars().take_while(|c| c.is_whitespace()).count())
        .min()
        .unwrap_or(0);

    let mut cleaned: Vec<String> = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if i == 0 {
            cleaned.push((*line).to_string());
        } else if is_blank(line) {
            cleaned.push(String::new());
        } else {
            cleaned.push(line.chars().skip(margin).collect());
        }
    }
    let first = cleaned.iter().position(|l| !is_blank(l));
    let last = cleaned.iter().rposition(|l| !is_blank(l));
    match (first, last) {
        (Some(a), Some(b)) => cleaned[a..=b].join("\n"),
        _ => String::new(),
    }
}

pub(crate) fn count_lines(content: &str) -> usize {
    if content.is_empty() {
        0
    } else {
        content.split('\n').count()
    }
}

use super::FunctionRecord;

/// Returns the function source with its docstring statement removed.
///
/// A docstring that is the only statement of its suite is replaced by
/// `pass` so the result still parses. Without a docstring the source is
/// returned unchanged.
pub fn strip_docstring(record: &FunctionRecord) -> String {
    let source = record.source();
    let Some(doc) = &record.docstring else {
        return source;
    };
    let base = record.span.start_byte;
    let lit_start = doc.span.start_byte - base;
    let lit_end = doc.span.end_byte - base;

    if doc.span.end_byte == record.span.end_byte {
        let mut out = String::with_capacity(source.len());
        out.push_str(&source[..lit_start]);
        out.push_str("pass");
        out.push_str(&source[lit_end..]);
        return out;
    }

    let after = &source[lit_end..];
    let gap = after.len() - after.trim_start_matches([' ', '\t', '\x0c']).len();
    if after[gap..].starts_with(';') {
        let rest = &after[gap + 1..];
        let skip = rest.len() - rest.trim_start_matches([' ', '\t', '\x0c']).len();
        let resume = lit_end + gap + 1 + skip;
        return format!("{}{}", &source[..lit_start], &source[resume..]);
    }

    // Docstring occupies its own line(s): drop them, newline included.
    let line_start = source[..lit_start].rfind('\n').map_or(0, |i| i + 1);
    let line_end = match source[lit_end..].find('\n') {
        Some(i) => lit_end + i + 1,
        None => source.len(),
    };
    format!("{}{}", &source[..line_start], &source[line_end..])
}

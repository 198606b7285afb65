//! Atomic file output: write to a temporary sibling, then rename.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

struct Counting<W> {
    inner: W,
    written: u64,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.written += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Runs `fill` against a temporary file next to `path` and moves it into
/// place only if `fill` succeeds. Returns the number of bytes written.
pub fn write_atomic<F>(path: &Path, fill: F) -> io::Result<u64>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::Builder::new()
        .prefix(".documint-")
        .tempfile_in(dir)?;
    let written = {
        let mut w = Counting {
            inner: BufWriter::new(tmp.as_file_mut()),
            written: 0,
        };
        fill(&mut w)?;
        w.flush()?;
        w.written
    };
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(written)
}

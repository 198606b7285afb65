//! Inputs shared by the criterion benchmarks.

use std::fmt::Write as _;
use std::path::PathBuf;

/// Root of the core crate's test fixtures.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

/// A synthetic module with `functions` documented functions, half of them
/// methods of a class.
pub fn synthetic_module(functions: usize) -> String {
    let mut src = String::from("import os\n\n\nclass Store:\n");
    let methods = functions / 2;
    for i in 0..methods {
        let _ = write!(
            src,
            "    def get_{i}(self, key, default=None):\n        \"\"\"Return entry {i} for key, or default.\"\"\"\n        return self.data.get((key, {i}), default)\n\n"
        );
    }
    if methods == 0 {
        src.push_str("    pass\n");
    }
    for i in methods..functions {
        let _ = write!(
            src,
            "\n\ndef helper_{i}(path: str, *, strict: bool = False) -> bool:\n    '''Check that path {i} exists.\n\n    Args:\n        path: file to test.\n    '''\n    if strict:\n        return os.path.isfile(path)\n    return os.path.exists(path)\n"
        );
    }
    src
}

/// Docstring-like prose of roughly `words` words.
pub fn prose(words: usize) -> String {
    const VOCAB: [&str; 12] = [
        "Return", "the", "parsed", "configuration", "value", "for", "key.", "Raises", "KeyError", "when", "missing.", "Args:\n",
    ];
    (0..words).map(|i| VOCAB[i % VOCAB.len()]).collect::<Vec<_>>().join(" ")
}

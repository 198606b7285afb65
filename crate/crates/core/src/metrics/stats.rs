//! Word, sentence and syllable counting for readability scoring.

use serde::{Deserialize, Serialize};

use super::MetricError;

/// Counts feeding the reading-ease formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TextStats {
    pub words: u64,
    pub sentences: u64,
    pub syllables: u64,
}

impl TextStats {
    /// Builds stats from raw counts, checking `w >= 1`, `l >= 1`, `s >= w`.
    pub fn new(words: u64, sentences: u64, syllables: u64) -> Result<Self, MetricError> {
        if words == 0 || sentences == 0 || syllables < words {
            return Err(MetricError::InvalidStats {
                words,
                sentences,
                syllables,
            });
        }
        Ok(Self {
            words,
            sentences,
            syllables,
        })
    }
}

/// Maximal runs of alphanumeric characters. Underscores and punctuation
/// separate words, so `param_1` is two words.
pub fn words(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
}

/// Segments terminated by `.`, `!`, `?` or a newline that contain at least
/// one word. Never less than one for text that has words.
pub fn sentence_count(text: &str) -> u64 {
    let n = text
        .split(['.', '!', '?', '\n'])
        .filter(|seg| seg.chars().any(char::is_alphanumeric))
        .count() as u64;
    n.max(1)
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Vowel-group syllable estimate with a silent-e rule, at least 1.
pub fn syllables(word: &str) -> u64 {
    let lower: Vec<char> = word.to_lowercase().chars().collect();
    let mut groups = 0u64;
    let mut prev_vowel = false;
    for &c in &lower {
        let v = is_vowel(c);
        if v && !prev_vowel {
            groups += 1;
        }
        prev_vowel = v;
    }
    let n = lower.len();
    if n > 0 && lower[n - 1] == 'e' {
        let consonant_le = n >= 3
            && lower[n - 2] == 'l'
            && lower[n - 3].is_alphabetic()
            && !is_vowel(lower[n - 3]);
        if !consonant_le {
            groups = groups.saturating_sub(1);
        }
    }
    groups.max(1)
}

/// Counts words, sentences and syllables of a text.
pub fn text_stats(text: &str) -> Result<TextStats, MetricError> {
    if text.trim().is_empty() {
        return Err(MetricError::EmptyText);
    }
    let (mut w, mut s) = (0u64, 0u64);
    for word in words(text) {
        w += 1;
        s += syllables(word);
    }
    if w == 0 {
        return Err(MetricError::EmptyText);
    }
    Ok(TextStats {
        words: w,
        sentences: sentence_count(text),
        syllables: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_counted_examples() {
        let st = text_stats("The cat sat on the mat.").unwrap();
        assert_eq!((st.words, st.sentences, st.syllables), (6, 1, 6));
        let st = text_stats("Hi.").unwrap();
        assert_eq!((st.words, st.sentences, st.syllables), (1, 1, 1));
        let st = text_stats("Returns the index.\nRaises ValueError.").unwrap();
        assert_eq!(st.sentences, 2);
    }

    #[test]
    fn syllable_rules() {
        let cases = [
            ("the", 1),
            ("table", 2),
            ("make", 1),
            ("apple", 2),
            ("see", 1),
            ("rhythm", 1),
            ("beautiful", 3),
            ("ValueError", 3),
            ("42", 1),
            ("x", 1),
            ("queue", 1),
            ("ale", 1),
        ];
        for (w, n) in cases {
            assert_eq!(syllables(w), n, "{w}");
        }
    }

    #[test]
    fn words_split_on_underscore_and_punctuation() {
        let ws: Vec<_> = words("param_1 is self.value, isn't it?").collect();
        assert_eq!(ws, ["param", "1", "is", "self", "value", "isn", "t", "it"]);
    }

    #[test]
    fn sentence_segments() {
        assert_eq!(sentence_count("One. Two! Three?"), 3);
        assert_eq!(sentence_count("Wait... what"), 2);
        assert_eq!(sentence_count("no terminator"), 1);
        assert_eq!(sentence_count("Args:\n    x: value.\n\n"), 2);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(text_stats("   \n\t"), Err(MetricError::EmptyText));
        assert_eq!(text_stats("..."), Err(MetricError::EmptyText));
        assert!(TextStats::new(0, 1, 0).is_err());
        assert!(TextStats::new(2, 1, 1).is_err());
    }
}

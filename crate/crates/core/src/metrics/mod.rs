//! Docstring quality metrics: accuracy, conciseness and clarity.
//!
//! - accuracy: cosine similarity of generated and reference embeddings
//! - conciseness: raw DEFLATE (level 6) size over UTF-8 size, clamped to `[0, 1]`
//! - clarity: `206.835 - 1.015 * (w / l) - 84.6 * (s / w)`, unclamped

mod stats;

use std::fmt;
use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize, Serializer};

pub use stats::{sentence_count, syllables, text_stats, words, TextStats};

/// DEFLATE level used for conciseness.
pub const DEFLATE_LEVEL: u32 = 6;

pub const CONCISENESS_IDEAL: (f64, f64) = (0.5, 0.6);
pub const CLARITY_IDEAL: (f64, f64) = (50.0, 70.0);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("text is empty or contains no words")]
    EmptyText,
    #[error("invalid text stats (words={words}, sentences={sentences}, syllables={syllables})")]
    InvalidStats {
        words: u64,
        sentences: u64,
        syllables: u64,
    },
    #[error("embedding dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("embedding vector is all zeros")]
    ZeroVector,
    #[error("embedding contains a non-finite value")]
    NonFinite,
    #[error("improvement base must be positive, got {0}")]
    NonPositiveBase(f64),
    #[error("cannot aggregate an empty run")]
    EmptyRun,
}

/// One (accuracy, conciseness, clarity) triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricVector {
    pub accuracy: f64,
    pub conciseness: f64,
    pub clarity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConcisenessBand {
    TooTerse,
    Ideal,
    Verbose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClarityBand {
    TooSimple,
    Ideal,
    TooComplex,
}

impl fmt::Display for ConcisenessBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConcisenessBand::TooTerse => "too_terse",
            ConcisenessBand::Ideal => "ideal",
            ConcisenessBand::Verbose => "verbose",
        })
    }
}

impl fmt::Display for ClarityBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClarityBand::TooSimple => "too_simple",
            ClarityBand::Ideal => "ideal",
            ClarityBand::TooComplex => "too_complex",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandVerdict {
    pub conciseness: ConcisenessBand,
    pub clarity: ClarityBand,
}

/// Reading-ease score of the given counts.
pub fn clarity(stats: &TextStats) -> f64 {
    let w = stats.words as f64;
    let l = stats.sentences as f64;
    let s = stats.syllables as f64;
    206.835 - 1.015 * (w / l) - 84.6 * (s / w)
}

/// Length of the raw DEFLATE stream (no zlib/gzip framing).
pub fn deflate_len(bytes: &[u8]) -> usize {
    let mut enc = DeflateEncoder::new(Vec::new(), Compression::new(DEFLATE_LEVEL));
    enc.write_all(bytes).expect("writing to a Vec cannot fail");
    enc.finish().expect("writing to a Vec cannot fail").len()
}

/// Compressed-to-original size ratio, clamped into `[0, 1]`.
pub fn conciseness(text: &str) -> Result<f64, MetricError> {
    if text.trim().is_empty() {
        return Err(MetricError::EmptyText);
    }
    let ratio = deflate_len(text.as_bytes()) as f64 / text.len() as f64;
    Ok(ratio.clamp(0.0, 1.0))
}

/// Cosine similarity, clamped into `[-1, 1]`.
pub fn accuracy(generated: &[f64], expert: &[f64]) -> Result<f64, MetricError> {
    if generated.len() != expert.len() {
        return Err(MetricError::DimensionMismatch {
            left: generated.len(),
            right: expert.len(),
        });
    }
    if generated.iter().chain(expert).any(|v| !v.is_finite()) {
        return Err(MetricError::NonFinite);
    }
    let dot: f64 = generated.iter().zip(expert).map(|(a, b)| a * b).sum();
    let sq_g: f64 = generated.iter().map(|a| a * a).sum();
    let sq_e: f64 = expert.iter().map(|b| b * b).sum();
    if sq_g == 0.0 || sq_e == 0.0 {
        return Err(MetricError::ZeroVector);
    }
    // sqrt of the product keeps cos(v, v) exactly 1.
    let denom = match (sq_g * sq_e).sqrt() {
        d if d.is_finite() && d > 0.0 => d,
        _ => sq_g.sqrt() * sq_e.sqrt(),
    };
    let cos = dot / denom;
    if !cos.is_finite() {
        return Err(MetricError::NonFinite);
    }
    Ok(cos.clamp(-1.0, 1.0))
}

pub fn conciseness_band(value: f64) -> ConcisenessBand {
    let (lo, hi) = CONCISENESS_IDEAL;
    if value < lo {
        ConcisenessBand::TooTerse
    } else if value > hi {
        ConcisenessBand::Verbose
    } else {
        ConcisenessBand::Ideal
    }
}

pub fn clarity_band(value: f64) -> ClarityBand {
    let (lo, hi) = CLARITY_IDEAL;
    if value < lo {
        ClarityBand::TooComplex
    } else if value > hi {
        ClarityBand::TooSimple
    } else {
        ClarityBand::Ideal
    }
}

pub fn band_verdict(m: &MetricVector) -> BandVerdict {
    BandVerdict {
        conciseness: conciseness_band(m.conciseness),
        clarity: clarity_band(m.clarity),
    }
}

/// A percentage held in tenths, truncated toward zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Improvement {
    tenths: i64,
}

impl Improvement {
    pub fn from_tenths(tenths: i64) -> Self {
        Self { tenths }
    }

    pub fn tenths(self) -> i64 {
        self.tenths
    }

    pub fn percent(self) -> f64 {
        self.tenths as f64 / 10.0
    }
}

impl fmt::Display for Improvement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.tenths < 0 { "-" } else { "" };
        let abs = self.tenths.unsigned_abs();
        write!(f, "{sign}{}.{}", abs / 10, abs % 10)
    }
}

impl Serialize for Improvement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.percent())
    }
}

impl<'de> Deserialize<'de> for Improvement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pct = f64::deserialize(d)?;
        Ok(Self::from_tenths((pct * 10.0).round() as i64))
    }
}

/// `100 * (tuned - base) / base`, truncated toward zero at one decimal.
pub fn relative_improvement(base: f64, tuned: f64) -> Result<Improvement, MetricError> {
    if base.is_nan() || base <= 0.0 || base.is_infinite() {
        return Err(MetricError::NonPositiveBase(base));
    }
    let tenths = 1000.0 * (tuned - base) / base;
    // Values within float noise of an exact tenth are not truncated down.
    let nearest = tenths.round();
    let snapped = if (tenths - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest
    } else {
        tenths.trunc()
    };
    Ok(Improvement::from_tenths(snapped as i64))
}

/// Component-wise arithmetic mean.
pub fn aggregate(vectors: &[MetricVector]) -> Result<MetricVector, MetricError> {
    if vectors.is_empty() {
        return Err(MetricError::EmptyRun);
    }
    let n = vectors.len() as f64;
    let sum = vectors.iter().fold((0.0, 0.0, 0.0), |acc, v| {
        (acc.0 + v.accuracy, acc.1 + v.conciseness, acc.2 + v.clarity)
    });
    Ok(MetricVector {
        accuracy: sum.0 / n,
        conciseness: sum.1 / n,
        clarity: sum.2 / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(w: u64, l: u64, s: u64) -> TextStats {
        TextStats::new(w, l, s).unwrap()
    }

    #[test]
    fn clarity_examples() {
        assert!((clarity(&stats(6, 1, 6)) - 116.145).abs() < 1e-9);
        assert!((clarity(&stats(1, 1, 1)) - 121.22).abs() < 1e-9);
        assert!((clarity(&stats(20, 2, 30)) - 69.785).abs() < 1e-9);
    }

    #[test]
    fn clarity_partial_effects() {
        let base = clarity(&stats(10, 2, 15));
        let more_syllables = clarity(&stats(10, 2, 16));
        assert!((base - more_syllables - 84.6 / 10.0).abs() < 1e-9);
        assert!(clarity(&stats(10, 3, 15)) > base);
    }

    #[test]
    fn conciseness_clamps_and_rejects_empty() {
        assert_eq!(conciseness("Zq8#"), Ok(1.0));
        assert!(conciseness(&"a".repeat(400)).unwrap() < 0.1);
        assert_eq!(conciseness(" \n"), Err(MetricError::EmptyText));
    }

    #[test]
    fn accuracy_examples() {
        assert_eq!(accuracy(&[1.0, 2.0], &[1.0, 2.0]), Ok(1.0));
        assert_eq!(accuracy(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]), Ok(0.0));
        let a = accuracy(&[1.0, 2.0, 3.0, 4.0], &[4.0, 3.0, 2.0, 1.0]).unwrap();
        assert!((a - 20.0 / 30.0).abs() < 1e-12);
        assert!(matches!(
            accuracy(&[1.0], &[1.0, 2.0]),
            Err(MetricError::DimensionMismatch { .. })
        ));
        assert_eq!(accuracy(&[0.0, 0.0], &[1.0, 2.0]), Err(MetricError::ZeroVector));
        assert_eq!(accuracy(&[f64::NAN], &[1.0]), Err(MetricError::NonFinite));
    }

    #[test]
    fn bands() {
        let v = |c, k| MetricVector {
            accuracy: 0.0,
            conciseness: c,
            clarity: k,
        };
        assert_eq!(band_verdict(&v(0.734, 60.0)).conciseness, ConcisenessBand::Verbose);
        assert_eq!(band_verdict(&v(0.55, 76.49)).clarity, ClarityBand::TooSimple);
        assert_eq!(
            band_verdict(&v(0.55, 60.0)),
            BandVerdict {
                conciseness: ConcisenessBand::Ideal,
                clarity: ClarityBand::Ideal
            }
        );
        assert_eq!(conciseness_band(0.4999), ConcisenessBand::TooTerse);
        assert_eq!(clarity_band(49.99), ClarityBand::TooComplex);
    }

    #[test]
    fn improvement_truncates() {
        assert_eq!(relative_improvement(0.516, 0.582).unwrap().to_string(), "12.7");
        assert_eq!(relative_improvement(0.425, 0.521).unwrap().to_string(), "22.5");
        assert_eq!(relative_improvement(0.7, 0.7).unwrap().to_string(), "0.0");
        assert_eq!(relative_improvement(0.5, 0.55).unwrap().to_string(), "10.0");
        assert_eq!(relative_improvement(0.582, 0.516).unwrap().to_string(), "-11.3");
        assert_eq!(relative_improvement(2.0, 1.999).unwrap().to_string(), "0.0");
        assert_eq!(relative_improvement(2.0, 1.998).unwrap().to_string(), "-0.1");
        assert!(relative_improvement(0.0, 1.0).is_err());
        assert!(relative_improvement(-1.0, 1.0).is_err());
    }

    #[test]
    fn aggregate_means() {
        let a = MetricVector {
            accuracy: 0.6,
            conciseness: 0.5,
            clarity: 70.0,
        };
        let b = MetricVector {
            accuracy: 0.7,
            conciseness: 0.6,
            clarity: 60.0,
        };
        assert_eq!(aggregate(&[a]), Ok(a));
        let m = aggregate(&[a, b]).unwrap();
        assert!((m.accuracy - 0.65).abs() < 1e-12);
        assert!((m.conciseness - 0.55).abs() < 1e-12);
        assert!((m.clarity - 65.0).abs() < 1e-12);
        assert_eq!(aggregate(&[]), Err(MetricError::EmptyRun));
    }
}

//! Document embeddings for the accuracy metric.
//!
//! Two providers share the [`Embedder`] trait: a deterministic hashed
//! bag-of-words embedder for offline runs, and a client for an external
//! embedding service speaking
//! `POST {"texts": [...]}` → `{"vectors": [[...], ...]}`.
//!
//! Accuracy values are only comparable within one provider.

use std::sync::OnceLock;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::hash::fnv1a_64;
use crate::http::{self, TransportError};
use crate::metrics::words;

pub const DEFAULT_DIMENSION: usize = 256;
pub const MIN_DIMENSION: usize = 8;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error("cannot embed empty text")]
    EmptyText,
    #[error("embedding dimension must be at least {MIN_DIMENSION}, got {0}")]
    InvalidDimension(usize),
    #[error("cannot embed an empty batch")]
    EmptyBatch,
    #[error("remote embedder requires an endpoint URL")]
    MissingEndpoint,
    #[error("embedding transport failed: {0}")]
    Transport(#[from] TransportError),
    #[error("embedding service broke its contract: {0}")]
    ContractViolation(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    pub values: Vec<f64>,
    pub provider_id: String,
}

impl EmbeddingVector {
    pub fn dimension(&self) -> usize {
        self.values.len()
    }
}

pub trait Embedder: Send + Sync {
    fn provider_id(&self) -> &str;

    /// One vector per input text, in input order.
    fn embed(&self, texts: &[&str]) -> Result<Vec<EmbeddingVector>, EmbedError>;
}

/// Term-frequency vector: lowercased words hashed with FNV-1a into
/// `dimension` buckets.
pub fn embed_builtin(text: &str, dimension: usize) -> Result<EmbeddingVector, EmbedError> {
    if dimension < MIN_DIMENSION {
        return Err(EmbedError::InvalidDimension(dimension));
    }
    let mut values = vec![0.0; dimension];
    let mut any = false;
    for word in words(text) {
        let bucket = fnv1a_64(word.to_lowercase().as_bytes()) % dimension as u64;
        values[bucket as usize] += 1.0;
        any = true;
    }
    if !any {
        return Err(EmbedError::EmptyText);
    }
    Ok(EmbeddingVector {
        values,
        provider_id: builtin_id(dimension),
    })
}

fn builtin_id(dimension: usize) -> String {
    format!("builtin-fnv1a-{dimension}")
}

#[derive(Debug, Clone)]
pub struct BuiltinEmbedder {
    dimension: usize,
    id: String,
}

impl BuiltinEmbedder {
    pub fn new(dimension: usize) -> Result<Self, EmbedError> {
        if dimension < MIN_DIMENSION {
            return Err(EmbedError::InvalidDimension(dimension));
        }
        Ok(Self {
            dimension,
            id: builtin_id(dimension),
        })
    }
}

impl Default for BuiltinEmbedder {
    fn default() -> Self {
        Self {
            dimension: DEFAULT_DIMENSION,
            id: builtin_id(DEFAULT_DIMENSION),
        }
    }
}

impl Embedder for BuiltinEmbedder {
    fn provider_id(&self) -> &str {
        &self.id
    }

    fn embed(&self, texts: &[&str]) -> Result<Vec<EmbeddingVector>, EmbedError> {
        if texts.is_empty() {
            return Err(EmbedError::EmptyBatch);
        }
        texts
            .iter()
            .map(|t| embed_builtin(t, self.dimension))
            .collect()
    }
}

#[derive(Serialize)]
struct EmbedRequest<'a> {
    texts: &'a [&'a str],
}

#[derive(Deserialize)]
struct EmbedResponse {
    vectors: Vec<Vec<f64>>,
}

/// Client for an external embedding service. Safe to share across threads;
/// concurrent calls are independent requests.
pub struct RemoteEmbedder {
    client: reqwest::blocking::Client,
    url: String,
    dimension: OnceLock<usize>,
}

impl RemoteEmbedder {
    pub fn new(url: impl Into<String>, timeout: Duration) -> Result<Self, EmbedError> {
        Ok(Self {
            client: http::client(timeout)?,
            url: url.into(),
            dimension: OnceLock::new(),
        })
    }
}

impl Embedder for RemoteEmbedder {
    fn provider_id(&self) -> &str {
        &self.url
    }

    fn embed(&self, texts: &[&str]) -> Result<Vec<EmbeddingVector>, EmbedError> {
        if texts.is_empty() {
            return Err(EmbedError::EmptyBatch);
        }
        let resp: EmbedResponse = http::post_json(&self.client, &self.url, &EmbedRequest { texts })?;
        if resp.vectors.len() != texts.len() {
            return Err(EmbedError::ContractViolation(format!(
                "sent {} texts, received {} vectors",
                texts.len(),
                resp.vectors.len()
            )));
        }
        let dim = resp.vectors[0].len();
        if dim == 0 {
            return Err(EmbedError::ContractViolation("received empty vectors".into()));
        }
        if let Some(bad) = resp.vectors.iter().find(|v| v.len() != dim) {
            return Err(EmbedError::ContractViolation(format!(
                "mixed dimensions in one batch ({dim} and {})",
                bad.len()
            )));
        }
        let expected = *self.dimension.get_or_init(|| dim);
        if expected != dim {
            return Err(EmbedError::ContractViolation(format!(
                "dimension changed from {expected} to {dim}"
            )));
        }
        Ok(resp
            .vectors
            .into_iter()
            .map(|values| EmbeddingVector {
                values,
                provider_id: self.url.clone(),
            })
            .collect())
    }
}

/// Embeds a batch through a one-off remote client.
pub fn embed_remote(texts: &[&str], config: &ProviderConfig) -> Result<Vec<EmbeddingVector>, EmbedError> {
    let url = config
        .endpoint_url
        .as_deref()
        .filter(|_| config.kind == ProviderKind::Remote)
        .ok_or(EmbedError::MissingEndpoint)?;
    RemoteEmbedder::new(url, config.timeout)?.embed(texts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderKind {
    BuiltinHash,
    Remote,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProviderConfig {
    pub kind: ProviderKind,
    pub endpoint_url: Option<String>,
    pub timeout: Duration,
    /// Builtin only.
    pub dimension: usize,
}

impl ProviderConfig {
    pub fn builtin(dimension: usize) -> Self {
        Self {
            kind: ProviderKind::BuiltinHash,
            endpoint_url: None,
            timeout: DEFAULT_TIMEOUT,
            dimension,
        }
    }

    pub fn remote(url: impl Into<String>, timeout: Duration) -> Self {
        Self {
            kind: ProviderKind::Remote,
            endpoint_url: Some(url.into()),
            timeout,
            dimension: DEFAULT_DIMENSION,
        }
    }

    pub fn build(&self) -> Result<Box<dyn Embedder>, EmbedError> {
        match self.kind {
            ProviderKind::BuiltinHash => Ok(Box::new(BuiltinEmbedder::new(self.dimension)?)),
            ProviderKind::Remote => {
                let url = self
                    .endpoint_url
                    .as_deref()
                    .filter(|u| !u.trim().is_empty())
                    .ok_or(EmbedError::MissingEndpoint)?;
                Ok(Box::new(RemoteEmbedder::new(url, self.timeout)?))
            }
        }
    }
}

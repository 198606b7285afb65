//! Blocking JSON-over-HTTP with bounded retries.

use std::thread;
use std::time::Duration;

use reqwest::blocking::Client;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Retries after the first attempt.
pub const MAX_RETRIES: u32 = 2;
const BASE_BACKOFF: Duration = Duration::from_millis(100);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{url}: {message}")]
pub struct TransportError {
    pub url: String,
    pub status: Option<u16>,
    pub message: String,
}

pub(crate) fn client(timeout: Duration) -> Result<Client, TransportError> {
    Client::builder()
        .timeout(timeout)
        .build()
        .map_err(|e| TransportError {
            url: String::new(),
            status: None,
            message: format!("cannot build HTTP client: {e}"),
        })
}

/// POSTs `body` as JSON and decodes the JSON reply. Connection failures,
/// timeouts and 5xx replies are retried with exponential backoff.
pub(crate) fn post_json<B: Serialize, R: DeserializeOwned>(
    client: &Client,
    url: &str,
    body: &B,
) -> Result<R, TransportError> {
    let mut attempt = 0;
    loop {
        let err = match client.post(url).json(body).send() {
            Ok(resp) if resp.status().is_success() => {
                return resp.json::<R>().map_err(|e| TransportError {
                    url: url.to_string(),
                    status: None,
                    message: format!("malformed response body: {e}"),
                });
            }
            Ok(resp) => {
                let status = resp.status();
                let err = TransportError {
                    url: url.to_string(),
                    status: Some(status.as_u16()),
                    message: format!("server answered {status}"),
                };
                if !status.is_server_error() {
                    return Err(err);
                }
                err
            }
            Err(e) => TransportError {
                url: url.to_string(),
                status: e.status().map(|s| s.as_u16()),
                message: if e.is_timeout() {
                    "request timed out".to_string()
                } else {
                    e.to_string()
                },
            },
        };
        if attempt >= MAX_RETRIES {
            return Err(err);
        }
        tracing::debug!(url, attempt, error = %err.message, "retrying request");
        thread::sleep(BASE_BACKOFF * 2u32.pow(attempt));
        attempt += 1;
    }
}

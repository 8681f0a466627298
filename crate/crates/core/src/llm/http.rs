//! Blocking HTTP connector for OpenAI-compatible chat completions.

use std::time::Duration;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};

use super::{validate_messages, ChatMessage, Connector, LlmConfig, MessagePart};

/// Talks to `<base_url>/chat/completions` with bearer authentication,
/// retrying transport errors and HTTP 429/5xx with 1s/2s backoff.
pub struct HttpConnector {
    cfg: LlmConfig,
    agent: ureq::Agent,
}

fn backoff(attempt: u32) -> Duration {
    Duration::from_secs(1 << attempt)
}

impl HttpConnector {
    pub fn new(cfg: LlmConfig) -> Result<Self> {
        if !cfg.base_url.starts_with("http://") && !cfg.base_url.starts_with("https://") {
            return Err(Error::InvalidArgument(format!(
                "base_url must be absolute http(s), got `{}`",
                cfg.base_url
            )));
        }
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(cfg.timeout_seconds)))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(HttpConnector { cfg, agent })
    }

    fn api_key(&self) -> Result<String> {
        std::env::var(&self.cfg.api_key_env)
            .map_err(|_| Error::AuthMissing(self.cfg.api_key_env.clone()))
    }

    /// Request body per the chat-completions wire schema. Text-only messages
    /// collapse `content` to a plain string.
    pub(crate) fn request_body(&self, messages: &[ChatMessage]) -> Json {
        let rendered: Vec<Json> = messages
            .iter()
            .map(|m| {
                let content = if m.has_image() {
                    Json::Array(
                        m.parts
                            .iter()
                            .map(|p| match p {
                                MessagePart::Text(t) => json!({"type": "text", "text": t}),
                                MessagePart::Image {
                                    media_type,
                                    base64_data,
                                } => json!({
                                    "type": "image_url",
                                    "image_url": {
                                        "url": format!("data:{media_type};base64,{base64_data}")
                                    }
                                }),
                            })
                            .collect(),
                    )
                } else {
                    Json::String(m.text())
                };
                json!({"role": m.role.as_str(), "content": content})
            })
            .collect();
        json!({"model": self.cfg.model, "messages": rendered})
    }

    fn post_once(&self, url: &str, key: &str, body: &str) -> std::result::Result<(u16, String), ureq::Error> {
        let mut response = self
            .agent
            .post(url)
            .header("Authorization", &format!("Bearer {key}"))
            .header("Content-Type", "application/json")
            .send(body)?;
        let status = response.status().as_u16();
        let text = response.body_mut().read_to_string()?;
        Ok((status, text))
    }
}

impl Connector for HttpConnector {
    fn chat(&self, messages: &[ChatMessage]) -> Result<String> {
        validate_messages(messages)?;
        let key = self.api_key()?; // resolved before any network activity
        let url = format!("{}/chat/completions", self.cfg.base_url.trim_end_matches('/'));
        let body = self.request_body(messages).to_string();

        let mut last_err: Option<Error> = None;
        for attempt in 0..=self.cfg.max_retries {
            if attempt > 0 {
                std::thread::sleep(backoff(attempt - 1));
            }
            match self.post_once(&url, &key, &body) {
                Ok((status, text)) if (200..300).contains(&status) => {
                    return extract_completion(&text);
                }
                Ok((status, text)) if status == 429 || status >= 500 => {
                    last_err = Some(Error::HttpStatus {
                        code: status,
                        body: excerpt(&text),
                    });
                }
                Ok((status, text)) => {
                    return Err(Error::HttpStatus {
                        code: status,
                        body: excerpt(&text),
                    });
                }
                Err(ureq::Error::Timeout(_)) => {
                    last_err = Some(Error::Timeout);
                }
                Err(e) => {
                    last_err = Some(Error::MalformedResponse(e.to_string()));
                }
            }
        }
        Err(last_err.unwrap_or(Error::Timeout))
    }
}

fn excerpt(text: &str) -> String {
    text.chars().take(200).collect()
}

/// Pulls the assistant text of the first choice; `content` may be a string
/// or a list of text parts.
fn extract_completion(text: &str) -> Result<String> {
    let parsed: Json =
        serde_json::from_str(text).map_err(|e| Error::MalformedResponse(e.to_string()))?;
    let content = parsed
        .get("choices")
        .and_then(Json::as_array)
        .and_then(|c| c.first())
        .and_then(|c| c.get("message"))
        .and_then(|m| m.get("content"))
        .ok_or_else(|| Error::MalformedResponse("missing choices[0].message.content".into()))?;
    match content {
        Json::String(s) => Ok(s.clone()),
        Json::Array(parts) => {
            let texts: Vec<&str> = parts
                .iter()
                .filter_map(|p| p.get("text").and_then(Json::as_str))
                .collect();
            if texts.is_empty() {
                Err(Error::MalformedResponse("no text parts in content".into()))
            } else {
                Ok(texts.join("\n"))
            }
        }
        _ => Err(Error::MalformedResponse(
            "content is neither string nor parts".into(),
        )),
    }
}

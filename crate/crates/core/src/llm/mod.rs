//! Connector to OpenAI-compatible chat/vision endpoints, the
//! explain-visualization flow and the hypothesis loop.
//!
//! Nothing here touches the network unless an HTTP connector with a
//! configured base URL is used; the [`TranscriptConnector`] serves scripted
//! responses offline and implements the same [`Connector`] interface.

mod http;
mod hypothesis;
mod ops;
mod transcript;

pub use http::HttpConnector;
pub use hypothesis::{
    generate_hypotheses, run_hypothesis_loop, Hypothesis, HypothesisRound, Verdict,
};
pub use ops::{direct_insight_query, explain_visualization};
pub use transcript::TranscriptConnector;

use crate::error::{Error, Result};

/// Endpoint configuration for OpenAI-compatible chat completions.
#[derive(Debug, Clone)]
pub struct LlmConfig {
    /// Absolute HTTP(S) base, e.g. `https://api.openai.com/v1`.
    pub base_url: String,
    pub model: String,
    /// Name of the environment variable holding the API key.
    pub api_key_env: String,
    pub timeout_seconds: u64,
    /// Retries on transport errors and HTTP 429/5xx, with 1s/2s backoff.
    pub max_retries: u32,
}

impl LlmConfig {
    pub fn new(base_url: impl Into<String>, model: impl Into<String>) -> Self {
        LlmConfig {
            base_url: base_url.into(),
            model: model.into(),
            api_key_env: "OPENAI_API_KEY".to_string(),
            timeout_seconds: 60,
            max_retries: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    System,
    User,
    Assistant,
}

impl Role {
    pub fn as_str(&self) -> &'static str {
        match self {
            Role::System => "system",
            Role::User => "user",
            Role::Assistant => "assistant",
        }
    }
}

/// One message part: text, or a base64 image (user messages only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MessagePart {
    Text(String),
    Image {
        media_type: String,
        base64_data: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChatMessage {
    pub role: Role,
    pub parts: Vec<MessagePart>,
}

impl ChatMessage {
    pub fn system(text: impl Into<String>) -> Self {
        ChatMessage {
            role: Role::System,
            parts: vec![MessagePart::Text(text.into())],
        }
    }

    pub fn user(text: impl Into<String>) -> Self {
        ChatMessage {
            role: Role::User,
            parts: vec![MessagePart::Text(text.into())],
        }
    }

    pub fn assistant(text: impl Into<String>) -> Self {
        ChatMessage {
            role: Role::Assistant,
            parts: vec![MessagePart::Text(text.into())],
        }
    }

    pub fn user_with_image(
        text: impl Into<String>,
        media_type: impl Into<String>,
        base64_data: impl Into<String>,
    ) -> Self {
        ChatMessage {
            role: Role::User,
            parts: vec![
                MessagePart::Text(text.into()),
                MessagePart::Image {
                    media_type: media_type.into(),
                    base64_data: base64_data.into(),
                },
            ],
        }
    }

    /// Concatenated text parts.
    pub fn text(&self) -> String {
        self.parts
            .iter()
            .filter_map(|p| match p {
                MessagePart::Text(t) => Some(t.as_str()),
                MessagePart::Image { .. } => None,
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn has_image(&self) -> bool {
        self.parts
            .iter()
            .any(|p| matches!(p, MessagePart::Image { .. }))
    }
}

/// Image parts are only valid in user messages.
pub(crate) fn validate_messages(messages: &[ChatMessage]) -> Result<()> {
    if messages.is_empty() {
        return Err(Error::InvalidArgument("messages must not be empty".into()));
    }
    for m in messages {
        if m.has_image() && m.role != Role::User {
            return Err(Error::InvalidArgument(
                "image parts are only allowed in user messages".into(),
            ));
        }
    }
    Ok(())
}

/// A chat endpoint: scripted transcript in tests, HTTP in production.
pub trait Connector {
    /// Sends the messages, returning the assistant text of the first choice.
    fn chat(&self, messages: &[ChatMessage]) -> Result<String>;
}

/// One-shot completion against an OpenAI-compatible endpoint.
pub fn chat_complete(cfg: &LlmConfig, messages: &[ChatMessage]) -> Result<String> {
    HttpConnector::new(cfg.clone())?.chat(messages)
}

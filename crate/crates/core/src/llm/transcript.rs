//! Offline connector that replays a scripted transcript.

use std::path::Path;
use std::sync::Mutex;

use crate::error::{Error, Result};

use super::{validate_messages, ChatMessage, Connector};

/// Serves canned responses in order and records every request, so tests can
/// assert exactly what would have been sent. Transcript files contain
/// response blocks separated by a line `---`.
pub struct TranscriptConnector {
    responses: Vec<String>,
    state: Mutex<State>,
}

#[derive(Default)]
struct State {
    cursor: usize,
    requests: Vec<Vec<ChatMessage>>,
}

impl TranscriptConnector {
    pub fn new(responses: Vec<String>) -> Self {
        TranscriptConnector {
            responses,
            state: Mutex::new(State::default()),
        }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Ok(Self::from_text(&text))
    }

    /// Splits on lines consisting of `---`; surrounding blank lines are
    /// trimmed from each block.
    pub fn from_text(text: &str) -> Self {
        let responses = text
            .split("\n---\n")
            .map(|block| block.trim_matches('\n').to_string())
            .filter(|block| !block.is_empty())
            .collect();
        Self::new(responses)
    }

    /// Messages of every request made so far.
    pub fn requests(&self) -> Vec<Vec<ChatMessage>> {
        self.state.lock().expect("transcript lock").requests.clone()
    }

    pub fn calls_made(&self) -> usize {
        self.state.lock().expect("transcript lock").cursor
    }
}

impl Connector for TranscriptConnector {
    fn chat(&self, messages: &[ChatMessage]) -> Result<String> {
        validate_messages(messages)?;
        let mut state = self.state.lock().expect("transcript lock");
        state.requests.push(messages.to_vec());
        let response = self.responses.get(state.cursor).cloned().ok_or_else(|| {
            Error::MalformedResponse(format!(
                "transcript exhausted after {} responses",
                self.responses.len()
            ))
        })?;
        state.cursor += 1;
        Ok(response)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn responses_are_served_in_order() {
        let c = TranscriptConnector::from_text("first\n---\nsecond");
        assert_eq!(c.chat(&[ChatMessage::user("q1")]).unwrap(), "first");
        assert_eq!(c.chat(&[ChatMessage::user("q2")]).unwrap(), "second");
        assert_eq!(c.calls_made(), 2);
        assert!(matches!(
            c.chat(&[ChatMessage::user("q3")]),
            Err(Error::MalformedResponse(_))
        ));
    }

    #[test]
    fn requests_are_recorded() {
        let c = TranscriptConnector::from_text("ok");
        c.chat(&[ChatMessage::user("the prompt")]).unwrap();
        let reqs = c.requests();
        assert_eq!(reqs.len(), 1);
        assert_eq!(reqs[0][0].text(), "the prompt");
    }

    #[test]
    fn multiline_blocks_survive_splitting() {
        let c = TranscriptConnector::from_text("line1\nline2\n---\nnext");
        assert_eq!(c.chat(&[ChatMessage::user("q")]).unwrap(), "line1\nline2");
    }
}

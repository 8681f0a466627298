//! Direct-insight and explain-visualization flows.

use std::path::Path;

use base64::Engine as _;

use crate::abstraction::{template, Abstraction};
use crate::error::{Error, Result};
use crate::viz;

use super::{ChatMessage, Connector};

/// Sends an abstraction plus a question as one user message. Truncated
/// abstractions carry a fixed notice line between text and question.
pub fn direct_insight_query(
    connector: &dyn Connector,
    abstraction: &Abstraction,
    question: &str,
) -> Result<String> {
    if question.trim().is_empty() {
        return Err(Error::InvalidArgument("question must not be empty".into()));
    }
    let prompt = insight_prompt(abstraction, question);
    connector.chat(&[ChatMessage::user(prompt)])
}

pub(crate) fn insight_prompt(abstraction: &Abstraction, question: &str) -> String {
    let mut prompt = abstraction.text.clone();
    if abstraction.truncated {
        prompt.push('\n');
        prompt.push_str(template("truncation.notice"));
    }
    prompt.push_str("\n\n");
    prompt.push_str(question);
    prompt
}

/// Sends a question about a visualization file. PNG files are attached
/// directly; SVG files are rasterized through the configured renderer first.
pub fn explain_visualization(
    connector: &dyn Connector,
    doc_path: impl AsRef<Path>,
    question: &str,
    renderer: Option<&str>,
) -> Result<String> {
    if question.trim().is_empty() {
        return Err(Error::InvalidArgument("question must not be empty".into()));
    }
    let path = doc_path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    let png_bytes = match ext.as_str() {
        "png" => std::fs::read(path)?,
        "svg" => {
            let Some(program) = renderer else {
                return Err(Error::RendererUnavailable);
            };
            let text = std::fs::read_to_string(path)?;
            viz::rasterize(program, &text)?
        }
        _ => return Err(Error::UnsupportedImage(path.display().to_string())),
    };
    let payload = base64::engine::general_purpose::STANDARD.encode(png_bytes);
    let message = ChatMessage::user_with_image(question, "image/png", payload);
    connector.chat(&[message])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstraction::{abstract_dfg, Budget};
    use crate::discovery::compute_dfg;
    use crate::llm::TranscriptConnector;
    use crate::testutil::log1;

    // 1x1 transparent PNG
    pub(crate) const TINY_PNG: &[u8] = &[
        0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x48, 0x44,
        0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00, 0x00, 0x1F,
        0x15, 0xC4, 0x89, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9C, 0x63, 0x00,
        0x01, 0x00, 0x00, 0x05, 0x00, 0x01, 0x0D, 0x0A, 0x2D, 0xB4, 0x00, 0x00, 0x00, 0x00, 0x49,
        0x45, 0x4E, 0x44, 0xAE, 0x42, 0x60, 0x82,
    ];

    #[test]
    fn insight_prompt_is_abstraction_blank_line_question() {
        let a = abstract_dfg(&compute_dfg(&log1()), &Budget::default());
        let connector = TranscriptConnector::from_text("there is a bottleneck");
        let answer =
            direct_insight_query(&connector, &a, "What are the anomalies in the event data?")
                .unwrap();
        assert_eq!(answer, "there is a bottleneck");
        let sent = connector.requests()[0][0].text();
        assert!(sent.contains("A -> B : 2"));
        assert_eq!(
            sent,
            format!("{}\n\nWhat are the anomalies in the event data?", a.text)
        );
    }

    #[test]
    fn truncated_abstraction_adds_notice_line() {
        let a = abstract_dfg(&compute_dfg(&log1()), &Budget::chars(0).without_header());
        assert!(a.truncated);
        let connector = TranscriptConnector::from_text("ok");
        direct_insight_query(&connector, &a, "q").unwrap();
        let sent = connector.requests()[0][0].text();
        assert!(sent.contains(template("truncation.notice")));
    }

    #[test]
    fn empty_artifact_prompt_is_well_formed() {
        let a = abstract_dfg(&Dfg::default(), &Budget::default());
        let connector = TranscriptConnector::from_text("fine");
        direct_insight_query(&connector, &a, "Can you explain the process?").unwrap();
        let sent = connector.requests()[0][0].text();
        assert!(sent.ends_with("Can you explain the process?"));
    }

    use crate::discovery::Dfg;

    #[test]
    fn png_input_becomes_an_image_part() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.png");
        std::fs::write(&path, TINY_PNG).unwrap();
        let connector = TranscriptConnector::from_text("it is a process");
        let answer =
            explain_visualization(&connector, &path, "Can you explain the process?", None)
                .unwrap();
        assert_eq!(answer, "it is a process");
        let msg = &connector.requests()[0][0];
        assert!(msg.has_image());
        assert_eq!(msg.text(), "Can you explain the process?");
    }

    #[test]
    fn svg_without_renderer_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.svg");
        std::fs::write(&path, "<svg/>").unwrap();
        let connector = TranscriptConnector::from_text("unused");
        assert!(matches!(
            explain_visualization(&connector, &path, "q", None),
            Err(Error::RendererUnavailable)
        ));
    }

    #[test]
    fn unknown_extension_is_unsupported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.txt");
        std::fs::write(&path, "hi").unwrap();
        let connector = TranscriptConnector::from_text("unused");
        assert!(matches!(
            explain_visualization(&connector, &path, "q", None),
            Err(Error::UnsupportedImage(_))
        ));
    }

    #[test]
    fn empty_question_is_rejected() {
        let connector = TranscriptConnector::from_text("unused");
        let a = abstract_dfg(&compute_dfg(&log1()), &Budget::default());
        assert!(matches!(
            direct_insight_query(&connector, &a, ""),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            explain_visualization(&connector, "x.png", " ", None),
            Err(Error::InvalidArgument(_))
        ));
    }
}

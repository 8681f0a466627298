//! Materializing visualization documents, with optional rasterization.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use crate::error::{Error, Result};

use super::{DotGraph, SvgDocument};

/// A document that [`save_visualization`] can write.
pub enum VisualDocument<'a> {
    Dot(&'a DotGraph),
    Svg(&'a SvgDocument),
}

impl<'a> From<&'a DotGraph> for VisualDocument<'a> {
    fn from(d: &'a DotGraph) -> Self {
        VisualDocument::Dot(d)
    }
}

impl<'a> From<&'a SvgDocument> for VisualDocument<'a> {
    fn from(d: &'a SvgDocument) -> Self {
        VisualDocument::Svg(d)
    }
}

/// Writes the document to `path`. When the target extension is `.png` the
/// document is piped through `<renderer> -Tpng` (stdin to stdout); without a
/// configured renderer that is an error. Every other extension receives the
/// document text unchanged.
pub fn save_visualization<'a>(
    doc: impl Into<VisualDocument<'a>>,
    path: impl AsRef<Path>,
    renderer: Option<&str>,
) -> Result<PathBuf> {
    let path = path.as_ref();
    let text = match doc.into() {
        VisualDocument::Dot(d) => &d.text,
        VisualDocument::Svg(s) => &s.text,
    };
    let wants_png = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("png"))
        .unwrap_or(false);
    if wants_png {
        let Some(program) = renderer else {
            return Err(Error::RendererUnavailable);
        };
        let png = rasterize(program, text)?;
        std::fs::write(path, png)?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(path.to_path_buf())
}

/// Pipes a document through `<program> -Tpng`, returning the PNG bytes.
pub fn rasterize(program: &str, text: &str) -> Result<Vec<u8>> {
    let mut child = Command::new(program)
        .arg("-Tpng")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(text.as_bytes())?;
    let output = child.wait_with_output()?;
    if !output.status.success() {
        return Err(Error::ExecutionError(format!(
            "renderer `{program}` failed: {}",
            String::from_utf8_lossy(&output.stderr)
        )));
    }
    Ok(output.stdout)
}

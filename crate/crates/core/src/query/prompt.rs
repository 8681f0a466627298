//! NL-to-SQL prompt construction and SQL extraction from LLM responses.

use crate::abstraction::template;
use crate::error::{Error, Result};

use super::SchemaDescription;

/// Builds the NL-to-SQL prompt: schema block, dialect note, optional domain
/// knowledge, the question, and the fixed fenced-SQL instruction.
pub fn build_nl2sql_prompt(
    schema: &SchemaDescription,
    question: &str,
    domain_knowledge: Option<&str>,
) -> Result<String> {
    if question.trim().is_empty() {
        return Err(Error::InvalidArgument("question must not be empty".into()));
    }
    let mut out = String::new();
    out.push_str(template("nl2sql.header"));
    out.push_str("\n\n");
    out.push_str(&schema.schema_block());
    out.push_str(&format!("\nDialect: {}\n", schema.dialect_note));
    if let Some(dk) = domain_knowledge {
        out.push_str(&format!("\nDomain knowledge:\n{dk}\n"));
    }
    out.push_str(&format!("\nQuestion: {question}\n\n"));
    out.push_str(template("nl2sql.instruction"));
    Ok(out)
}

/// Extracts the SQL statement from an LLM response: the content of the first
/// fenced code block, or, without one, the suffix starting at the first
/// `SELECT` (case-insensitive). A trailing semicolon is stripped.
pub fn parse_sql_from_response(response: &str) -> Result<String> {
    if let Some(content) = first_fenced_block(response) {
        return Ok(strip_sql(&content));
    }
    let lower = response.to_lowercase();
    if let Some(idx) = lower.find("select") {
        return Ok(strip_sql(&response[idx..]));
    }
    Err(Error::NoSqlFound)
}

fn first_fenced_block(text: &str) -> Option<String> {
    let open = text.find("```")?;
    let after_fence = &text[open + 3..];
    // drop the info string (e.g. ```sql) up to end of line
    let content_start = after_fence.find('\n').map(|i| i + 1).unwrap_or(0);
    let content = &after_fence[content_start..];
    let close = content.find("```")?;
    Some(content[..close].to_string())
}

fn strip_sql(raw: &str) -> String {
    let trimmed = raw.trim();
    trimmed.strip_suffix(';').unwrap_or(trimmed).trim().to_string()
}

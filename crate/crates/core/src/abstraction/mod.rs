//! Budget-constrained textual abstractions of process-mining artifacts.
//!
//! Every operation shares one contract: the text is an optional fixed header
//! followed by ranked entries, appended greedily in importance order. Entries
//! are added while the cumulative character count is below the budget; the
//! entry that first crosses the limit is kept and nothing follows it. Output
//! is deterministic: identical artifact and budget give byte-identical text.

mod render;
mod templates;

pub use render::*;

pub(crate) use templates::template;

/// Character budget for one abstraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Maximum prompt length in characters (not bytes, not tokens).
    pub max_chars: usize,
    pub include_header: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_chars: 10_000,
            include_header: true,
        }
    }
}

impl Budget {
    pub fn chars(max_chars: usize) -> Self {
        Budget {
            max_chars,
            ..Budget::default()
        }
    }

    pub fn without_header(mut self) -> Self {
        self.include_header = false;
        self
    }
}

/// Budgeted prompt text plus truncation metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abstraction {
    pub text: String,
    pub entries_included: usize,
    pub entries_total: usize,
    /// True exactly when entries were dropped.
    pub truncated: bool,
}

/// Joins header and entries under the greedy budget rule. Lines are joined
/// with `\n`; the header (when enabled) is always emitted.
pub(crate) fn assemble(header: &str, entries: Vec<String>, budget: &Budget) -> Abstraction {
    let mut text = String::new();
    let mut chars = 0usize;
    if budget.include_header && !header.is_empty() {
        push_line(&mut text, &mut chars, header);
    }
    let entries_total = entries.len();
    let mut entries_included = 0usize;
    for entry in entries {
        if chars >= budget.max_chars {
            break;
        }
        push_line(&mut text, &mut chars, &entry);
        entries_included += 1;
    }
    Abstraction {
        text,
        entries_included,
        entries_total,
        truncated: entries_included < entries_total,
    }
}

fn push_line(text: &mut String, chars: &mut usize, line: &str) {
    if !text.is_empty() {
        text.push('\n');
        *chars += 1;
    }
    text.push_str(line);
    *chars += line.chars().count();
}

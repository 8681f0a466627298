//! Fixed English prompt templates.
//!
//! All headers, glosses and instruction blocks live in one versioned file
//! (`templates.txt`) with `key=multiline-value` blocks: a line matching
//! `key=` starts an entry and the value runs until the next entry start.
//! Values keep embedded newlines; surrounding blank lines are trimmed.

use std::collections::BTreeMap;
use std::sync::OnceLock;

const TEMPLATES_SRC: &str = include_str!("templates.txt");

fn store() -> &'static BTreeMap<String, String> {
    static STORE: OnceLock<BTreeMap<String, String>> = OnceLock::new();
    STORE.get_or_init(|| parse_templates(TEMPLATES_SRC))
}

/// Looks up a template by key; panics on unknown keys, which indicates a
/// packaging defect rather than a runtime condition.
pub fn template(key: &str) -> &'static str {
    store()
        .get(key)
        .unwrap_or_else(|| panic!("missing template `{key}`"))
        .as_str()
}

fn is_entry_start(line: &str) -> bool {
    match line.find('=') {
        None | Some(0) => false,
        Some(idx) => line[..idx]
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '.'),
    }
}

fn parse_templates(src: &str) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut key: Option<String> = None;
    let mut value = String::new();
    let flush = |key: &mut Option<String>, value: &mut String, out: &mut BTreeMap<_, _>| {
        if let Some(k) = key.take() {
            out.insert(k, value.trim_matches('\n').to_string());
        }
        value.clear();
    };
    for line in src.lines() {
        if is_entry_start(line) {
            flush(&mut key, &mut value, &mut out);
            let idx = line.find('=').unwrap();
            key = Some(line[..idx].to_string());
            value.push_str(&line[idx + 1..]);
        } else if key.is_some() {
            value.push('\n');
            value.push_str(line);
        }
    }
    flush(&mut key, &mut value, &mut out);
    out
}

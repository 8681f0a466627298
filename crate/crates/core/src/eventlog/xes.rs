//! XES (IEEE 1849) ingestion and egress.
//!
//! The reader understands the core structure — `log`/`trace`/`event` with
//! `string`/`date`/`int`/`float`/`boolean`/`id` attributes — and ingests all
//! attributes generically. `concept:name` provides case and activity names,
//! `time:timestamp` the event timestamp. Nested attribute children and log
//! metadata (extensions, globals, classifiers) are skipped.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use quick_xml::events::Event as XmlEvent;
use quick_xml::Reader;

use crate::error::{Error, Result};

use super::{
    build_log_from_raw, format_timestamp, format_timestamp_rfc3339, parse_timestamp_lenient,
    Column, ColumnType, EventLog, Value,
};

const CONCEPT_NAME: &str = "concept:name";
const TIME_TIMESTAMP: &str = "time:timestamp";

/// Imports an XES file into the canonical [`EventLog`] shape. Trace-level
/// attributes other than `concept:name` become `case:`-prefixed columns.
pub fn import_xes(path: impl AsRef<Path>) -> Result<EventLog> {
    let text = fs::read_to_string(path.as_ref())?;
    parse_xes(&text)
}

/// Parses XES from a string; see [`import_xes`].
pub fn parse_xes(text: &str) -> Result<EventLog> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);

    let mut cases: Vec<String> = Vec::new();
    let mut activities: Vec<String> = Vec::new();
    let mut timestamps: Vec<i64> = Vec::new();
    let mut row_attrs: Vec<Vec<(String, Value)>> = Vec::new();

    // events of the current trace: (activity, timestamp, attributes)
    type PendingEvent = (String, i64, Vec<(String, Value)>);

    let mut in_trace = false;
    let mut in_event = false;
    let mut trace_attrs: Vec<(String, Value)> = Vec::new();
    let mut event_attrs: Vec<(String, Value)> = Vec::new();
    let mut pending: Vec<PendingEvent> = Vec::new();
    let mut event_index = 0usize;

    let xml_err = |e: quick_xml::Error, pos: u64| Error::XmlParse(format!("{e} at byte {pos}"));

    loop {
        let pos = reader.buffer_position();
        match reader.read_event() {
            Err(e) => return Err(xml_err(e, pos)),
            Ok(XmlEvent::Eof) => break,
            Ok(XmlEvent::Start(e)) | Ok(XmlEvent::Empty(e)) => {
                let name = e.name();
                let local = String::from_utf8_lossy(name.as_ref()).into_owned();
                match local.as_str() {
                    "log" => {}
                    "trace" => {
                        in_trace = true;
                        trace_attrs.clear();
                        pending.clear();
                    }
                    "event" => {
                        in_event = true;
                        event_attrs.clear();
                    }
                    "string" | "date" | "int" | "float" | "boolean" | "id" => {
                        let key = attr_of(&e, "key").map_err(Error::XmlParse)?;
                        let raw = attr_of(&e, "value").map_err(Error::XmlParse)?;
                        let value = decode_value(local.as_str(), &raw, &key)?;
                        if in_event {
                            event_attrs.push((key, value));
                        } else if in_trace {
                            trace_attrs.push((key, value));
                        }
                    }
                    // metadata and unsupported attribute containers
                    _ => {}
                }
            }
            Ok(XmlEvent::End(e)) => match e.name().as_ref() {
                b"event" => {
                    in_event = false;
                    let mut activity = None;
                    let mut ts = None;
                    let mut rest = Vec::new();
                    for (key, value) in event_attrs.drain(..) {
                        if key == CONCEPT_NAME {
                            if let Value::String(s) = value {
                                activity = Some(s);
                            }
                        } else if key == TIME_TIMESTAMP {
                            if let Value::Timestamp(us) = value {
                                ts = Some(us);
                            }
                        } else {
                            rest.push((key, value));
                        }
                    }
                    match (activity, ts) {
                        (Some(a), Some(t)) => pending.push((a, t, rest)),
                        _ => return Err(Error::MissingStandardAttribute(event_index)),
                    }
                    event_index += 1;
                }
                b"trace" => {
                    in_trace = false;
                    if pending.is_empty() {
                        continue;
                    }
                    let case_id = trace_attrs
                        .iter()
                        .find(|(k, _)| k == CONCEPT_NAME)
                        .and_then(|(_, v)| match v {
                            Value::String(s) => Some(s.clone()),
                            _ => None,
                        })
                        .ok_or(Error::MissingStandardAttribute(
                            event_index - pending.len(),
                        ))?;
                    let case_attrs: Vec<(String, Value)> = trace_attrs
                        .iter()
                        .filter(|(k, _)| k != CONCEPT_NAME)
                        .map(|(k, v)| (format!("case:{k}"), v.clone()))
                        .collect();
                    for (activity, ts, mut attrs) in pending.drain(..) {
                        attrs.extend(case_attrs.iter().cloned());
                        cases.push(case_id.clone());
                        activities.push(activity);
                        timestamps.push(ts);
                        row_attrs.push(attrs);
                    }
                }
                _ => {}
            },
            Ok(_) => {}
        }
    }

    if cases.is_empty() {
        return Err(Error::EmptyLog);
    }

    let attrs = unify_attr_columns(&row_attrs, cases.len());
    build_log_from_raw(cases, activities, timestamps, attrs)
}

/// Builds typed attribute columns from per-row attribute lists. A key seen
/// with conflicting types degrades to a string column.
fn unify_attr_columns(
    row_attrs: &[Vec<(String, Value)>],
    len: usize,
) -> BTreeMap<String, (ColumnType, Vec<Value>)> {
    let mut types: BTreeMap<String, Option<ColumnType>> = BTreeMap::new();
    for attrs in row_attrs {
        for (key, value) in attrs {
            let ty = match value {
                Value::Null => continue,
                Value::String(_) => ColumnType::String,
                Value::Int(_) => ColumnType::Integer,
                Value::Float(_) => ColumnType::Float,
                Value::Timestamp(_) => ColumnType::String, // stored as ISO text
                Value::Bool(_) => ColumnType::Boolean,
            };
            types
                .entry(key.clone())
                .and_modify(|t| {
                    if *t != Some(ty) {
                        *t = Some(ColumnType::String);
                    }
                })
                .or_insert(Some(ty));
        }
    }
    let mut out = BTreeMap::new();
    for (key, ty) in types {
        let ty = ty.unwrap_or(ColumnType::String);
        let mut values = Vec::with_capacity(len);
        for attrs in row_attrs {
            let v = attrs.iter().find(|(k, _)| k == &key).map(|(_, v)| v);
            values.push(match v {
                None | Some(Value::Null) => Value::Null,
                Some(v) if ty == ColumnType::String => Value::String(v.render()),
                Some(v) => v.clone(),
            });
        }
        out.insert(key, (ty, values));
    }
    out
}

fn attr_of(
    e: &quick_xml::events::BytesStart<'_>,
    name: &str,
) -> std::result::Result<String, String> {
    match e.try_get_attribute(name) {
        Ok(Some(a)) => a
            .normalized_value(quick_xml::XmlVersion::Implicit1_0)
            .map(|v| v.into_owned())
            .map_err(|err| err.to_string()),
        Ok(None) => Err(format!(
            "element <{}> lacks attribute `{name}`",
            String::from_utf8_lossy(e.name().as_ref())
        )),
        Err(err) => Err(err.to_string()),
    }
}

fn decode_value(kind: &str, raw: &str, key: &str) -> Result<Value> {
    Ok(match kind {
        "string" | "id" => Value::String(raw.to_string()),
        "int" => raw
            .parse::<i64>()
            .map(Value::Int)
            .unwrap_or_else(|_| Value::String(raw.to_string())),
        "float" => raw
            .parse::<f64>()
            .map(Value::Float)
            .unwrap_or_else(|_| Value::String(raw.to_string())),
        "boolean" => match raw {
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => Value::String(raw.to_string()),
        },
        "date" => {
            let us = parse_timestamp_lenient(raw)
                .ok_or_else(|| Error::XmlParse(format!("invalid date `{raw}`")))?;
            if key == TIME_TIMESTAMP {
                Value::Timestamp(us)
            } else {
                Value::String(format_timestamp(us))
            }
        }
        _ => Value::String(raw.to_string()),
    })
}

/// Serializes an event log as XES. `case:`-prefixed columns become trace
/// attributes; the remaining attribute columns become event attributes.
pub fn export_xes(log: &EventLog, path: impl AsRef<Path>) -> Result<()> {
    let text = render_xes(log);
    fs::write(path.as_ref(), text)?;
    Ok(())
}

/// Renders the XES document; see [`export_xes`].
pub fn render_xes(log: &EventLog) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<log xes.version=\"1849-2016\" xes.features=\"\">\n");
    out.push_str("  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n");
    out.push_str("  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n");

    let case_cols: Vec<&Column> = log
        .attribute_columns()
        .filter(|c| c.name.starts_with("case:"))
        .collect();
    let event_cols: Vec<&Column> = log
        .attribute_columns()
        .filter(|c| !c.name.starts_with("case:"))
        .collect();

    for (case_id, range) in log.cases() {
        out.push_str("  <trace>\n");
        push_attr(&mut out, 4, "string", CONCEPT_NAME, case_id);
        let first = range.start;
        for col in &case_cols {
            let key = &col.name["case:".len()..];
            push_value(&mut out, 4, key, &col.values()[first]);
        }
        for row in range {
            out.push_str("    <event>\n");
            push_attr(&mut out, 6, "string", CONCEPT_NAME, log.activity(row));
            push_attr(
                &mut out,
                6,
                "date",
                TIME_TIMESTAMP,
                &format_timestamp_rfc3339(log.timestamp(row)),
            );
            for col in &event_cols {
                push_value(&mut out, 6, &col.name, &col.values()[row]);
            }
            out.push_str("    </event>\n");
        }
        out.push_str("  </trace>\n");
    }
    out.push_str("</log>\n");
    out
}

fn push_value(out: &mut String, indent: usize, key: &str, value: &Value) {
    match value {
        Value::Null => {}
        Value::String(s) => push_attr(out, indent, "string", key, s),
        Value::Int(i) => push_attr(out, indent, "int", key, &i.to_string()),
        Value::Float(f) => push_attr(out, indent, "float", key, &value_float(*f)),
        Value::Timestamp(us) => push_attr(out, indent, "date", key, &format_timestamp_rfc3339(*us)),
        Value::Bool(b) => push_attr(out, indent, "boolean", key, if *b { "true" } else { "false" }),
    }
}

fn value_float(f: f64) -> String {
    if f.fract() == 0.0 && f.is_finite() {
        format!("{f:.1}")
    } else {
        format!("{f}")
    }
}

fn push_attr(out: &mut String, indent: usize, kind: &str, key: &str, value: &str) {
    out.push_str(&" ".repeat(indent));
    out.push_str(&format!(
        "<{kind} key=\"{}\" value=\"{}\"/>\n",
        escape_xml(key),
        escape_xml(value)
    ));
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

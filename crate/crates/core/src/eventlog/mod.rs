//! Event log and object-centric log data model plus file ingestion/egress.
//!
//! An [`EventLog`] is a columnar table of events. Three role columns always
//! exist under canonical names — `case_id`, `activity`, `timestamp` — and
//! rows are canonically sorted by `(case_id, timestamp, original order)`.
//! Timestamps are UTC microseconds; inputs without a zone are treated as UTC.
//! Logs are immutable after construction and never empty.

mod csv_io;
mod ocel;
mod xes;

pub use csv_io::{export_csv, import_csv};
pub use ocel::{import_ocel_json, parse_ocel_json, Ocel, OcelEvent, OcelObject, OcelRelation};
pub use xes::{export_xes, import_xes};

use std::collections::BTreeMap;
use std::ops::Range;

use chrono::{DateTime, NaiveDateTime, Utc};

use crate::error::{Error, Result};

/// Canonical name of the case identifier column.
pub const CASE_COLUMN: &str = "case_id";
/// Canonical name of the activity column.
pub const ACTIVITY_COLUMN: &str = "activity";
/// Canonical name of the timestamp column.
pub const TIMESTAMP_COLUMN: &str = "timestamp";

/// Timestamp format accepted by default: ISO-8601 without zone, optional
/// fractional seconds.
pub const DEFAULT_TIMESTAMP_FORMAT: &str = "%Y-%m-%dT%H:%M:%S%.f";

/// Column data types of an event log.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    String,
    Integer,
    Float,
    /// UTC microseconds since the Unix epoch.
    Timestamp,
    Boolean,
}

impl ColumnType {
    pub fn name(&self) -> &'static str {
        match self {
            ColumnType::String => "string",
            ColumnType::Integer => "integer",
            ColumnType::Float => "float",
            ColumnType::Timestamp => "timestamp",
            ColumnType::Boolean => "boolean",
        }
    }
}

/// A single attribute value. Non-role attributes are nullable.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    String(String),
    Int(i64),
    Float(f64),
    /// UTC microseconds since the Unix epoch.
    Timestamp(i64),
    Bool(bool),
}

impl Value {
    /// Text rendering used by abstractions and exports; null renders empty.
    pub fn render(&self) -> String {
        match self {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            Value::Int(i) => i.to_string(),
            Value::Float(f) => {
                if f.fract() == 0.0 && f.is_finite() {
                    format!("{f:.1}")
                } else {
                    format!("{f}")
                }
            }
            Value::Timestamp(us) => format_timestamp(*us),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn type_of(&self) -> Option<ColumnType> {
        match self {
            Value::Null => None,
            Value::String(_) => Some(ColumnType::String),
            Value::Int(_) => Some(ColumnType::Integer),
            Value::Float(_) => Some(ColumnType::Float),
            Value::Timestamp(_) => Some(ColumnType::Timestamp),
            Value::Bool(_) => Some(ColumnType::Boolean),
        }
    }
}

/// A named, typed column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub ty: ColumnType,
    values: Vec<Value>,
}

impl Column {
    pub fn values(&self) -> &[Value] {
        &self.values
    }
}

/// Immutable columnar event log. Always holds at least one event.
#[derive(Debug, Clone, PartialEq)]
pub struct EventLog {
    columns: Vec<Column>,
    len: usize,
}

/// Maps source column names to the three mandatory roles.
#[derive(Debug, Clone)]
pub struct RoleMap {
    pub case_id: String,
    pub activity: String,
    pub timestamp: String,
}

impl Default for RoleMap {
    fn default() -> Self {
        RoleMap {
            case_id: CASE_COLUMN.to_string(),
            activity: ACTIVITY_COLUMN.to_string(),
            timestamp: TIMESTAMP_COLUMN.to_string(),
        }
    }
}

impl EventLog {
    /// Number of events.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: construction rejects empty logs.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    /// Non-role columns, in canonical (lexicographic) order.
    pub fn attribute_columns(&self) -> impl Iterator<Item = &Column> {
        self.columns.iter().skip(3)
    }

    pub fn case_id(&self, row: usize) -> &str {
        match &self.columns[0].values[row] {
            Value::String(s) => s,
            _ => unreachable!("case_id column is string-typed"),
        }
    }

    pub fn activity(&self, row: usize) -> &str {
        match &self.columns[1].values[row] {
            Value::String(s) => s,
            _ => unreachable!("activity column is string-typed"),
        }
    }

    /// UTC microseconds of the event at `row`.
    pub fn timestamp(&self, row: usize) -> i64 {
        match &self.columns[2].values[row] {
            Value::Timestamp(us) => *us,
            _ => unreachable!("timestamp column is timestamp-typed"),
        }
    }

    /// Distinct case ids in canonical order with their contiguous row ranges.
    pub fn cases(&self) -> Vec<(&str, Range<usize>)> {
        let mut out: Vec<(&str, Range<usize>)> = Vec::new();
        let mut start = 0usize;
        for row in 1..=self.len {
            if row == self.len || self.case_id(row) != self.case_id(start) {
                out.push((self.case_id(start), start..row));
                start = row;
            }
        }
        out
    }

    /// Sorted activity alphabet.
    pub fn activities(&self) -> Vec<&str> {
        let mut set: Vec<&str> = (0..self.len).map(|r| self.activity(r)).collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Activity sequence of each case, with timestamps.
    pub fn case_sequences(&self) -> Vec<(&str, Vec<(&str, i64)>)> {
        self.cases()
            .into_iter()
            .map(|(id, range)| {
                let seq = range
                    .map(|r| (self.activity(r), self.timestamp(r)))
                    .collect();
                (id, seq)
            })
            .collect()
    }
}

/// Time-ordered events of one case.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub case_id: String,
    pub events: Vec<CaseEvent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseEvent {
    pub activity: String,
    /// UTC microseconds.
    pub timestamp: i64,
    /// Non-role attributes in column order; nulls omitted.
    pub attributes: Vec<(String, Value)>,
}

/// The globally latest events of a log, time-ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct EventStreamWindow {
    pub events: Vec<StreamEvent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StreamEvent {
    pub case_id: String,
    pub activity: String,
    pub timestamp: i64,
}

/// Extracts one case; errors with [`Error::UnknownCase`] when absent.
pub fn get_case(log: &EventLog, case_id: &str) -> Result<Case> {
    let range = log
        .cases()
        .into_iter()
        .find(|(id, _)| *id == case_id)
        .map(|(_, r)| r)
        .ok_or_else(|| Error::UnknownCase(case_id.to_string()))?;
    let events = range
        .map(|row| CaseEvent {
            activity: log.activity(row).to_string(),
            timestamp: log.timestamp(row),
            attributes: log
                .attribute_columns()
                .filter_map(|c| match &c.values()[row] {
                    Value::Null => None,
                    v => Some((c.name.clone(), v.clone())),
                })
                .collect(),
        })
        .collect();
    Ok(Case {
        case_id: case_id.to_string(),
        events,
    })
}

/// The `n` globally latest events by timestamp (all events when the log is
/// smaller). Ties keep canonical order.
pub fn last_events_window(log: &EventLog, n: usize) -> EventStreamWindow {
    let mut rows: Vec<usize> = (0..log.len()).collect();
    rows.sort_by_key(|&r| log.timestamp(r));
    let keep = rows.len().saturating_sub(n);
    let events = rows[keep..]
        .iter()
        .map(|&r| StreamEvent {
            case_id: log.case_id(r).to_string(),
            activity: log.activity(r).to_string(),
            timestamp: log.timestamp(r),
        })
        .collect();
    EventStreamWindow { events }
}

/// Row-wise construction of an [`EventLog`].
///
/// Attribute columns are inferred from the supplied values; a name used with
/// two different value types is an error.
#[derive(Debug, Default)]
pub struct EventLogBuilder {
    rows: Vec<RawRow>,
    attr_types: BTreeMap<String, ColumnType>,
}

#[derive(Debug)]
struct RawRow {
    case_id: String,
    activity: String,
    timestamp: i64,
    attrs: Vec<(String, Value)>,
}

impl EventLogBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn event(&mut self, case_id: &str, activity: &str, timestamp_us: i64) -> &mut Self {
        self.event_with_attrs(case_id, activity, timestamp_us, Vec::new())
    }

    pub fn event_with_attrs(
        &mut self,
        case_id: &str,
        activity: &str,
        timestamp_us: i64,
        attrs: Vec<(String, Value)>,
    ) -> &mut Self {
        self.rows.push(RawRow {
            case_id: case_id.to_string(),
            activity: activity.to_string(),
            timestamp: timestamp_us,
            attrs,
        });
        self
    }

    /// Finalizes the log: registers attribute columns, sorts canonically.
    pub fn build(self) -> Result<EventLog> {
        let mut attr_types = self.attr_types;
        for row in &self.rows {
            for (name, value) in &row.attrs {
                if let Some(ty) = value.type_of() {
                    match attr_types.get(name) {
                        None => {
                            attr_types.insert(name.clone(), ty);
                        }
                        Some(prev) if *prev != ty => {
                            return Err(Error::InvalidArgument(format!(
                                "attribute `{name}` used with types {} and {}",
                                prev.name(),
                                ty.name()
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut cases = Vec::with_capacity(self.rows.len());
        let mut activities = Vec::with_capacity(self.rows.len());
        let mut timestamps = Vec::with_capacity(self.rows.len());
        let mut attrs: BTreeMap<String, (ColumnType, Vec<Value>)> = attr_types
            .iter()
            .map(|(k, ty)| (k.clone(), (*ty, Vec::with_capacity(self.rows.len()))))
            .collect();
        for row in self.rows {
            cases.push(row.case_id);
            activities.push(row.activity);
            timestamps.push(row.timestamp);
            for (name, (_, vals)) in attrs.iter_mut() {
                let v = row
                    .attrs
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, v)| v.clone())
                    .unwrap_or(Value::Null);
                vals.push(v);
            }
        }
        build_log_from_raw(cases, activities, timestamps, attrs)
    }
}

/// Assembles an [`EventLog`] from parallel raw columns, applying the
/// canonical `(case_id, timestamp, input order)` sort. Shared by all parsers.
pub(crate) fn build_log_from_raw(
    cases: Vec<String>,
    activities: Vec<String>,
    timestamps: Vec<i64>,
    attrs: BTreeMap<String, (ColumnType, Vec<Value>)>,
) -> Result<EventLog> {
    let len = cases.len();
    if len == 0 {
        return Err(Error::EmptyLog);
    }
    debug_assert!(activities.len() == len && timestamps.len() == len);
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| {
        cases[a]
            .cmp(&cases[b])
            .then(timestamps[a].cmp(&timestamps[b]))
            .then(a.cmp(&b))
    });

    let reorder_strings = |vals: Vec<String>| -> Vec<Value> {
        order.iter().map(|&i| Value::String(vals[i].clone())).collect()
    };
    let mut columns = vec![
        Column {
            name: CASE_COLUMN.to_string(),
            ty: ColumnType::String,
            values: reorder_strings(cases),
        },
        Column {
            name: ACTIVITY_COLUMN.to_string(),
            ty: ColumnType::String,
            values: reorder_strings(activities),
        },
        Column {
            name: TIMESTAMP_COLUMN.to_string(),
            ty: ColumnType::Timestamp,
            values: order.iter().map(|&i| Value::Timestamp(timestamps[i])).collect(),
        },
    ];
    for (name, (ty, vals)) in attrs {
        debug_assert_eq!(vals.len(), len);
        columns.push(Column {
            name,
            ty,
            values: order.iter().map(|&i| vals[i].clone()).collect(),
        });
    }
    Ok(EventLog { columns, len })
}

/// Parses a timestamp with the given chrono format. Zone-aware formats are
/// honored; zoneless inputs are treated as UTC. `None` when the input does
/// not match the format.
pub fn parse_timestamp(s: &str, format: &str) -> Option<i64> {
    if let Ok(dt) = DateTime::parse_from_str(s, format) {
        return Some(dt.with_timezone(&Utc).timestamp_micros());
    }
    if let Ok(naive) = NaiveDateTime::parse_from_str(s, format) {
        return Some(naive.and_utc().timestamp_micros());
    }
    None
}

/// RFC 3339 first, then the default zoneless format. Used by XES and OCEL.
pub(crate) fn parse_timestamp_lenient(s: &str) -> Option<i64> {
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Some(dt.with_timezone(&Utc).timestamp_micros());
    }
    parse_timestamp(s, DEFAULT_TIMESTAMP_FORMAT)
}

/// Canonical rendering: `YYYY-MM-DDTHH:MM:SS`, with `.ffffff` only when the
/// sub-second part is non-zero.
pub fn format_timestamp(us: i64) -> String {
    let dt = DateTime::<Utc>::from_timestamp_micros(us).expect("timestamp in range");
    if us.rem_euclid(1_000_000) == 0 {
        dt.format("%Y-%m-%dT%H:%M:%S").to_string()
    } else {
        dt.format("%Y-%m-%dT%H:%M:%S%.6f").to_string()
    }
}

/// RFC 3339 with microseconds and `Z`, as written into XES.
pub(crate) fn format_timestamp_rfc3339(us: i64) -> String {
    let dt = DateTime::<Utc>::from_timestamp_micros(us).expect("timestamp in range");
    dt.to_rfc3339_opts(chrono::SecondsFormat::Micros, true)
}

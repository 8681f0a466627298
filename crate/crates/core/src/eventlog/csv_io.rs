//! RFC-4180 CSV ingestion and egress for event logs.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

use super::{build_log_from_raw, parse_timestamp, ColumnType, EventLog, RoleMap, Value};

/// Imports a CSV event log. `roles` names the source columns carrying the
/// case id, activity and timestamp; those columns are renamed to the
/// canonical `case_id` / `activity` / `timestamp` on import. Remaining
/// columns become typed attribute columns (integer, float, boolean or
/// string, inferred from the values; empty cells are null).
pub fn import_csv(
    path: impl AsRef<Path>,
    roles: &RoleMap,
    timestamp_format: &str,
) -> Result<EventLog> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path.as_ref())?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?
        .iter()
        .map(|s| s.to_string())
        .collect();

    let col_index = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let case_idx = col_index(&roles.case_id)?;
    let act_idx = col_index(&roles.activity)?;
    let ts_idx = col_index(&roles.timestamp)?;

    let attr_indices: Vec<usize> = (0..headers.len())
        .filter(|i| *i != case_idx && *i != act_idx && *i != ts_idx)
        .collect();

    let mut cases = Vec::new();
    let mut activities = Vec::new();
    let mut timestamps = Vec::new();
    let mut raw_attrs: Vec<Vec<String>> = vec![Vec::new(); attr_indices.len()];

    for (row_no, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        let get = |i: usize| record.get(i).unwrap_or("").to_string();
        let ts_raw = get(ts_idx);
        let ts = parse_timestamp(&ts_raw, timestamp_format).ok_or_else(|| {
            Error::TimestampParse {
                row: row_no + 1,
                value: ts_raw.clone(),
            }
        })?;
        cases.push(get(case_idx));
        activities.push(get(act_idx));
        timestamps.push(ts);
        for (slot, &i) in attr_indices.iter().enumerate() {
            raw_attrs[slot].push(get(i));
        }
    }

    if cases.is_empty() {
        return Err(Error::EmptyLog);
    }

    let mut attrs: BTreeMap<String, (ColumnType, Vec<Value>)> = BTreeMap::new();
    for (slot, &i) in attr_indices.iter().enumerate() {
        let (ty, values) = infer_column(&raw_attrs[slot]);
        attrs.insert(headers[i].clone(), (ty, values));
    }

    build_log_from_raw(cases, activities, timestamps, attrs)
}

/// Writes the canonical CSV form: header `case_id,activity,timestamp`
/// followed by attribute columns; timestamps in the default format; nulls as
/// empty cells. `import_csv` with default roles round-trips the output.
pub fn export_csv(log: &EventLog, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    let names: Vec<&str> = log.columns().iter().map(|c| c.name.as_str()).collect();
    writer.write_record(&names)?;
    for row in 0..log.len() {
        let record: Vec<String> = log
            .columns()
            .iter()
            .map(|c| c.values()[row].render())
            .collect();
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Type inference over raw cells: all-integer, then all-float, then
/// all-boolean, else string. Empty cells are null and excluded from
/// inference; an all-empty column is a string column.
fn infer_column(raw: &[String]) -> (ColumnType, Vec<Value>) {
    let present: Vec<&String> = raw.iter().filter(|s| !s.is_empty()).collect();
    let ty = if present.is_empty() {
        ColumnType::String
    } else if present.iter().all(|s| s.parse::<i64>().is_ok()) {
        ColumnType::Integer
    } else if present.iter().all(|s| s.parse::<f64>().is_ok()) {
        ColumnType::Float
    } else if present.iter().all(|s| *s == "true" || *s == "false") {
        ColumnType::Boolean
    } else {
        ColumnType::String
    };
    let values = raw
        .iter()
        .map(|s| {
            if s.is_empty() {
                return Value::Null;
            }
            match ty {
                ColumnType::Integer => Value::Int(s.parse().unwrap()),
                ColumnType::Float => Value::Float(s.parse().unwrap()),
                ColumnType::Boolean => Value::Bool(s == "true"),
                _ => Value::String(s.clone()),
            }
        })
        .collect();
    (ty, values)
}

/// CSV rendering of LOG1 used across tests and docs.
#[cfg(test)]
pub(crate) const LOG1_CSV: &str = "\
case_id,activity,timestamp
c1,A,2024-01-01T00:00:00
c1,B,2024-01-01T01:00:00
c1,C,2024-01-01T02:00:00
c2,A,2024-01-02T00:00:00
c2,B,2024-01-02T02:00:00
c2,C,2024-01-02T04:00:00
c3,A,2024-01-03T00:00:00
c3,C,2024-01-03T01:00:00
";

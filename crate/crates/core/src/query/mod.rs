//! NL-to-SQL prompting and in-memory SQL execution over event data.
//!
//! The engine behind [`execute_sql`] is an embedded SQLite instance built
//! per call: source tables are registered, the connection is switched to
//! query-only mode, and the statement runs under a timeout. Before any of
//! that, the statement must pass the SELECT-only gate — LLM output is
//! untrusted, so anything that does not parse to exactly one `SELECT` is
//! rejected without touching the engine.

mod engine;
mod prompt;

pub use engine::{execute_sql, execute_sql_with_timeout, DEFAULT_QUERY_TIMEOUT};
pub use prompt::{build_nl2sql_prompt, parse_sql_from_response};

use crate::abstraction::template;
use crate::eventlog::{ColumnType, EventLog, Ocel, Value};

/// A queryable source: a traditional event log or an OCEL.
#[derive(Clone, Copy)]
pub enum QuerySource<'a> {
    Log(&'a EventLog),
    Ocel(&'a Ocel),
}

impl<'a> From<&'a EventLog> for QuerySource<'a> {
    fn from(log: &'a EventLog) -> Self {
        QuerySource::Log(log)
    }
}

impl<'a> From<&'a Ocel> for QuerySource<'a> {
    fn from(ocel: &'a Ocel) -> Self {
        QuerySource::Ocel(ocel)
    }
}

/// LLM-facing description of the registered tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaDescription {
    pub tables: Vec<TableSchema>,
    /// Names the SQL dialect, its timestamp-difference idiom and, for
    /// OCELs, the join keys.
    pub dialect_note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSchema {
    pub name: String,
    /// `(column name, type name, role annotation)`; the annotation is empty
    /// for plain attributes.
    pub columns: Vec<(String, String, String)>,
}

impl SchemaDescription {
    /// Fixed rendering used inside prompts.
    pub fn schema_block(&self) -> String {
        let mut out = String::new();
        for table in &self.tables {
            out.push_str(&format!("Table {}:\n", table.name));
            for (name, ty, role) in &table.columns {
                if role.is_empty() {
                    out.push_str(&format!("  - {name} ({ty})\n"));
                } else {
                    out.push_str(&format!("  - {name} ({ty}): {role}\n"));
                }
            }
        }
        out
    }
}

/// Describes the tables a source registers, with role annotations and the
/// dialect note.
pub fn describe_schema<'a>(source: impl Into<QuerySource<'a>>) -> SchemaDescription {
    match source.into() {
        QuerySource::Log(log) => {
            let mut columns = vec![
                (
                    "case_id".to_string(),
                    "string".to_string(),
                    "case identifier".to_string(),
                ),
                (
                    "activity".to_string(),
                    "string".to_string(),
                    "activity name".to_string(),
                ),
                (
                    "timestamp".to_string(),
                    "timestamp".to_string(),
                    "event timestamp, UTC".to_string(),
                ),
            ];
            for col in log.attribute_columns() {
                columns.push((col.name.clone(), col.ty.name().to_string(), String::new()));
            }
            SchemaDescription {
                tables: vec![TableSchema {
                    name: "event_log".to_string(),
                    columns,
                }],
                dialect_note: template("sql.dialect_note").to_string(),
            }
        }
        QuerySource::Ocel(ocel) => {
            let event_attrs = attr_union(ocel.events.iter().map(|e| &e.attributes));
            let object_attrs = attr_union(ocel.objects.iter().map(|o| &o.attributes));
            let mut events_cols = vec![
                (
                    "id".to_string(),
                    "string".to_string(),
                    "event identifier".to_string(),
                ),
                (
                    "activity".to_string(),
                    "string".to_string(),
                    "activity name".to_string(),
                ),
                (
                    "timestamp".to_string(),
                    "timestamp".to_string(),
                    "event timestamp, UTC".to_string(),
                ),
            ];
            events_cols.extend(
                event_attrs
                    .iter()
                    .map(|(n, t)| (n.clone(), t.name().to_string(), String::new())),
            );
            let mut objects_cols = vec![
                (
                    "id".to_string(),
                    "string".to_string(),
                    "object identifier".to_string(),
                ),
                (
                    "object_type".to_string(),
                    "string".to_string(),
                    "object type".to_string(),
                ),
            ];
            objects_cols.extend(
                object_attrs
                    .iter()
                    .map(|(n, t)| (n.clone(), t.name().to_string(), String::new())),
            );
            SchemaDescription {
                tables: vec![
                    TableSchema {
                        name: "events".to_string(),
                        columns: events_cols,
                    },
                    TableSchema {
                        name: "objects".to_string(),
                        columns: objects_cols,
                    },
                    TableSchema {
                        name: "e2o".to_string(),
                        columns: vec![
                            (
                                "event_id".to_string(),
                                "string".to_string(),
                                "references events.id".to_string(),
                            ),
                            (
                                "object_id".to_string(),
                                "string".to_string(),
                                "references objects.id".to_string(),
                            ),
                            ("qualifier".to_string(), "string".to_string(), String::new()),
                        ],
                    },
                ],
                dialect_note: format!(
                    "{} {}",
                    template("sql.dialect_note"),
                    template("sql.ocel_joins")
                ),
            }
        }
    }
}

/// Union of attribute names with a unified column type; conflicting types
/// degrade to string.
pub(crate) fn attr_union<'a>(
    rows: impl Iterator<Item = &'a Vec<(String, Value)>>,
) -> Vec<(String, ColumnType)> {
    use std::collections::BTreeMap;
    let mut types: BTreeMap<String, ColumnType> = BTreeMap::new();
    for attrs in rows {
        for (name, value) in attrs {
            let ty = match value {
                Value::Null => continue,
                Value::String(_) => ColumnType::String,
                Value::Int(_) => ColumnType::Integer,
                Value::Float(_) => ColumnType::Float,
                Value::Timestamp(_) => ColumnType::String,
                Value::Bool(_) => ColumnType::Boolean,
            };
            types
                .entry(name.clone())
                .and_modify(|t| {
                    if *t != ty {
                        *t = ColumnType::String;
                    }
                })
                .or_insert(ty);
        }
    }
    types.into_iter().collect()
}

/// One cell of a query result.
#[derive(Debug, Clone, PartialEq)]
pub enum SqlValue {
    Null,
    Int(i64),
    Float(f64),
    Text(String),
    Blob(Vec<u8>),
}

impl SqlValue {
    pub fn render(&self) -> String {
        match self {
            SqlValue::Null => String::new(),
            SqlValue::Int(i) => i.to_string(),
            SqlValue::Float(f) => format!("{f}"),
            SqlValue::Text(s) => s.clone(),
            SqlValue::Blob(b) => format!("<blob {} bytes>", b.len()),
        }
    }

    fn type_name(&self) -> &'static str {
        match self {
            SqlValue::Null => "null",
            SqlValue::Int(_) => "integer",
            SqlValue::Float(_) => "real",
            SqlValue::Text(_) => "text",
            SqlValue::Blob(_) => "blob",
        }
    }
}

/// Result table of one SELECT.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    /// `(name, type)` pairs; the type is taken from the first non-null cell.
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<SqlValue>>,
    pub row_count: usize,
    pub elapsed_ms: u64,
}

impl QueryResult {
    pub(crate) fn from_rows(names: Vec<String>, rows: Vec<Vec<SqlValue>>, elapsed_ms: u64) -> Self {
        let columns = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| {
                let ty = rows
                    .iter()
                    .map(|r| &r[i])
                    .find(|v| !matches!(v, SqlValue::Null))
                    .map(|v| v.type_name())
                    .unwrap_or("null");
                (name, ty.to_string())
            })
            .collect();
        QueryResult {
            row_count: rows.len(),
            rows,
            columns,
            elapsed_ms,
        }
    }

    /// RFC-4180 CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
        let header: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        writer.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let record: Vec<String> = row.iter().map(SqlValue::render).collect();
            writer.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8 csv")
    }

    /// Fixed-width text table for prompt re-injection.
    pub fn to_text_table(&self) -> String {
        let headers: Vec<String> = self.columns.iter().map(|(n, _)| n.clone()).collect();
        let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(SqlValue::render).collect())
            .collect();
        for row in &rendered {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let push_row = |cells: &[String], out: &mut String| {
            let line: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:<width$}", width = widths[i]))
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
        };
        push_row(&headers, &mut out);
        out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-|-"));
        out.push('\n');
        for row in &rendered {
            push_row(row, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{log1, ocel1};

    #[test]
    fn log_schema_exposes_event_log_table() {
        let schema = describe_schema(&log1());
        assert_eq!(schema.tables.len(), 1);
        assert_eq!(schema.tables[0].name, "event_log");
        let case = &schema.tables[0].columns[0];
        assert_eq!(case.0, "case_id");
        assert_eq!(case.2, "case identifier");
        assert!(schema.dialect_note.contains("SQLite"));
        assert!(schema.dialect_note.contains("unixepoch"));
    }

    #[test]
    fn ocel_schema_exposes_three_tables_with_join_note() {
        let schema = describe_schema(&ocel1());
        let names: Vec<&str> = schema.tables.iter().map(|t| t.name.as_str()).collect();
        assert_eq!(names, vec!["events", "objects", "e2o"]);
        assert!(schema.dialect_note.contains("e2o.event_id=events.id"));
        assert!(schema.dialect_note.contains("e2o.object_id=objects.id"));
    }

    #[test]
    fn extra_columns_are_listed_with_their_type() {
        let mut b = crate::eventlog::EventLogBuilder::new();
        b.event_with_attrs("c", "A", 0, vec![("amount".into(), Value::Float(1.0))]);
        let schema = describe_schema(&b.build().unwrap());
        let amount = schema.tables[0]
            .columns
            .iter()
            .find(|(n, _, _)| n == "amount")
            .unwrap();
        assert_eq!(amount.1, "float");
    }

    #[test]
    fn text_table_is_fixed_width() {
        let result = QueryResult::from_rows(
            vec!["name".into(), "n".into()],
            vec![
                vec![SqlValue::Text("alpha".into()), SqlValue::Int(1)],
                vec![SqlValue::Text("b".into()), SqlValue::Int(22)],
            ],
            0,
        );
        let table = result.to_text_table();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines[0], "name  | n");
        assert_eq!(lines[2], "alpha | 1");
        assert_eq!(lines[3], "b     | 22");
    }

    #[test]
    fn csv_round_trips_through_reader() {
        let result = QueryResult::from_rows(
            vec!["v".into()],
            vec![vec![SqlValue::Text("x, y".into())]],
            0,
        );
        let csv_text = result.to_csv();
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        let record = reader.records().next().unwrap().unwrap();
        assert_eq!(&record[0], "x, y");
    }
}

//! SQLite-backed execution with the SELECT-only gate.

use std::sync::mpsc;
use std::time::{Duration, Instant};

use rusqlite::types::ValueRef;
use rusqlite::Connection;
use sqlparser::ast::Statement;
use sqlparser::dialect::SQLiteDialect;
use sqlparser::parser::Parser;

use crate::error::{Error, Result};
use crate::eventlog::{format_timestamp, ColumnType, EventLog, Ocel, Value};

use super::{attr_union, QueryResult, QuerySource, SqlValue};

/// Queries exceeding this run time are interrupted.
pub const DEFAULT_QUERY_TIMEOUT: Duration = Duration::from_secs(30);

/// Rejects anything that is not exactly one SELECT statement, by statement
/// type inspection, before the engine sees it.
fn ensure_single_select(sql: &str) -> Result<()> {
    let statements = Parser::parse_sql(&SQLiteDialect {}, sql)
        .map_err(|e| Error::SqlParse(e.to_string()))?;
    match statements.as_slice() {
        [Statement::Query(_)] => Ok(()),
        _ => Err(Error::NonSelectStatement),
    }
}

/// Runs a single read-only SELECT against the source's tables with the
/// default timeout. The source is never modified; each call evaluates
/// against a fresh in-memory registration.
pub fn execute_sql<'a>(source: impl Into<QuerySource<'a>>, sql: &str) -> Result<QueryResult> {
    execute_sql_with_timeout(source, sql, DEFAULT_QUERY_TIMEOUT)
}

/// [`execute_sql`] with an explicit timeout.
pub fn execute_sql_with_timeout<'a>(
    source: impl Into<QuerySource<'a>>,
    sql: &str,
    timeout: Duration,
) -> Result<QueryResult> {
    ensure_single_select(sql)?;

    let conn = Connection::open_in_memory()
        .map_err(|e| Error::ExecutionError(e.to_string()))?;
    match source.into() {
        QuerySource::Log(log) => register_log(&conn, log)?,
        QuerySource::Ocel(ocel) => register_ocel(&conn, ocel)?,
    }
    conn.pragma_update(None, "query_only", true)
        .map_err(|e| Error::ExecutionError(e.to_string()))?;

    // watchdog: interrupt the connection when the timeout passes
    let handle = conn.get_interrupt_handle();
    let (done_tx, done_rx) = mpsc::channel::<()>();
    let watchdog = std::thread::spawn(move || {
        if done_rx.recv_timeout(timeout).is_err() {
            handle.interrupt();
        }
    });

    let started = Instant::now();
    let outcome = run_query(&conn, sql);
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let _ = done_tx.send(());
    let _ = watchdog.join();

    let (names, rows) = outcome?;
    Ok(QueryResult::from_rows(names, rows, elapsed_ms))
}

fn run_query(conn: &Connection, sql: &str) -> Result<(Vec<String>, Vec<Vec<SqlValue>>)> {
    let mut stmt = conn.prepare(sql).map_err(classify)?;
    let names: Vec<String> = stmt.column_names().iter().map(|s| s.to_string()).collect();
    let ncols = names.len();
    let mut rows = Vec::new();
    let mut raw = stmt.query([]).map_err(classify)?;
    loop {
        match raw.next() {
            Err(e) => return Err(classify(e)),
            Ok(None) => break,
            Ok(Some(row)) => {
                let mut out = Vec::with_capacity(ncols);
                for i in 0..ncols {
                    let value = match row.get_ref(i).map_err(classify)? {
                        ValueRef::Null => SqlValue::Null,
                        ValueRef::Integer(v) => SqlValue::Int(v),
                        ValueRef::Real(v) => SqlValue::Float(v),
                        ValueRef::Text(t) => {
                            SqlValue::Text(String::from_utf8_lossy(t).into_owned())
                        }
                        ValueRef::Blob(b) => SqlValue::Blob(b.to_vec()),
                    };
                    out.push(value);
                }
                rows.push(out);
            }
        }
    }
    Ok((names, rows))
}

fn classify(e: rusqlite::Error) -> Error {
    let message = e.to_string();
    if message.contains("no such table") || message.contains("no such column") {
        Error::UnknownTableOrColumn(message)
    } else if message.contains("interrupted") {
        Error::ExecutionError("timeout".to_string())
    } else if message.contains("syntax error") {
        Error::SqlParse(message)
    } else {
        Error::ExecutionError(message)
    }
}

fn quote_ident(name: &str) -> String {
    format!("\"{}\"", name.replace('"', "\"\""))
}

fn sqlite_type(ty: ColumnType) -> &'static str {
    match ty {
        ColumnType::Integer | ColumnType::Boolean => "INTEGER",
        ColumnType::Float => "REAL",
        ColumnType::String | ColumnType::Timestamp => "TEXT",
    }
}

fn bind_value(value: &Value) -> rusqlite::types::Value {
    use rusqlite::types::Value as Sq;
    match value {
        Value::Null => Sq::Null,
        Value::String(s) => Sq::Text(s.clone()),
        Value::Int(i) => Sq::Integer(*i),
        Value::Float(f) => Sq::Real(*f),
        Value::Timestamp(us) => Sq::Text(format_timestamp(*us)),
        Value::Bool(b) => Sq::Integer(i64::from(*b)),
    }
}

fn create_and_fill(
    conn: &Connection,
    table: &str,
    columns: &[(String, &'static str)],
    rows: impl Iterator<Item = Vec<rusqlite::types::Value>>,
) -> Result<()> {
    let decl: Vec<String> = columns
        .iter()
        .map(|(name, ty)| format!("{} {ty}", quote_ident(name)))
        .collect();
    conn.execute(
        &format!("CREATE TABLE {} ({})", quote_ident(table), decl.join(", ")),
        [],
    )
    .map_err(|e| Error::ExecutionError(e.to_string()))?;

    let placeholders: Vec<&str> = columns.iter().map(|_| "?").collect();
    let mut stmt = conn
        .prepare(&format!(
            "INSERT INTO {} VALUES ({})",
            quote_ident(table),
            placeholders.join(", ")
        ))
        .map_err(|e| Error::ExecutionError(e.to_string()))?;
    for row in rows {
        stmt.execute(rusqlite::params_from_iter(row))
            .map_err(|e| Error::ExecutionError(e.to_string()))?;
    }
    Ok(())
}

fn register_log(conn: &Connection, log: &EventLog) -> Result<()> {
    let columns: Vec<(String, &'static str)> = log
        .columns()
        .iter()
        .map(|c| (c.name.clone(), sqlite_type(c.ty)))
        .collect();
    let rows = (0..log.len()).map(|row| {
        log.columns()
            .iter()
            .map(|c| bind_value(&c.values()[row]))
            .collect()
    });
    create_and_fill(conn, "event_log", &columns, rows)
}

fn register_ocel(conn: &Connection, ocel: &Ocel) -> Result<()> {
    let event_attrs = attr_union(ocel.events.iter().map(|e| &e.attributes));
    let mut event_cols: Vec<(String, &'static str)> = vec![
        ("id".into(), "TEXT"),
        ("activity".into(), "TEXT"),
        ("timestamp".into(), "TEXT"),
    ];
    event_cols.extend(event_attrs.iter().map(|(n, t)| (n.clone(), sqlite_type(*t))));
    let event_rows = ocel.events.iter().map(|e| {
        let mut row = vec![
            rusqlite::types::Value::Text(e.id.clone()),
            rusqlite::types::Value::Text(e.activity.clone()),
            rusqlite::types::Value::Text(format_timestamp(e.timestamp)),
        ];
        row.extend(event_attrs.iter().map(|(name, ty)| {
            lookup_attr(&e.attributes, name, *ty)
        }));
        row
    });
    create_and_fill(conn, "events", &event_cols, event_rows)?;

    let object_attrs = attr_union(ocel.objects.iter().map(|o| &o.attributes));
    let mut object_cols: Vec<(String, &'static str)> =
        vec![("id".into(), "TEXT"), ("object_type".into(), "TEXT")];
    object_cols.extend(object_attrs.iter().map(|(n, t)| (n.clone(), sqlite_type(*t))));
    let object_rows = ocel.objects.iter().map(|o| {
        let mut row = vec![
            rusqlite::types::Value::Text(o.id.clone()),
            rusqlite::types::Value::Text(o.object_type.clone()),
        ];
        row.extend(object_attrs.iter().map(|(name, ty)| {
            lookup_attr(&o.attributes, name, *ty)
        }));
        row
    });
    create_and_fill(conn, "objects", &object_cols, object_rows)?;

    let e2o_cols: Vec<(String, &'static str)> = vec![
        ("event_id".into(), "TEXT"),
        ("object_id".into(), "TEXT"),
        ("qualifier".into(), "TEXT"),
    ];
    let e2o_rows = ocel.relations.iter().map(|r| {
        vec![
            rusqlite::types::Value::Text(r.event_id.clone()),
            rusqlite::types::Value::Text(r.object_id.clone()),
            match &r.qualifier {
                Some(q) => rusqlite::types::Value::Text(q.clone()),
                None => rusqlite::types::Value::Null,
            },
        ]
    });
    create_and_fill(conn, "e2o", &e2o_cols, e2o_rows)
}

fn lookup_attr(
    attrs: &[(String, Value)],
    name: &str,
    ty: ColumnType,
) -> rusqlite::types::Value {
    match attrs.iter().find(|(n, _)| n == name) {
        None => rusqlite::types::Value::Null,
        Some((_, v)) if ty == ColumnType::String => {
            rusqlite::types::Value::Text(v.render())
        }
        Some((_, v)) => bind_value(v),
    }
}

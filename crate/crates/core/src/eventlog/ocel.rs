//! Object-centric event log (OCEL) data model and JSON ingestion.
//!
//! The wire format is the OCEL 2.0 JSON subset: a top-level `events` list of
//! `{id, type, time, attributes: [{name, value}], relationships: [{objectId,
//! qualifier}]}` and an `objects` list of `{id, type, attributes}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde_json::Value as Json;

use crate::error::{Error, Result};

use super::{parse_timestamp_lenient, Value};

/// Object-centric event log: events, objects and event-to-object relations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ocel {
    pub events: Vec<OcelEvent>,
    pub objects: Vec<OcelObject>,
    /// Flattened event-to-object rows, in document order.
    pub relations: Vec<OcelRelation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelEvent {
    pub id: String,
    pub activity: String,
    /// UTC microseconds.
    pub timestamp: i64,
    pub attributes: Vec<(String, Value)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelObject {
    pub id: String,
    pub object_type: String,
    pub attributes: Vec<(String, Value)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelRelation {
    pub event_id: String,
    pub object_id: String,
    pub qualifier: Option<String>,
}

impl Ocel {
    pub fn object(&self, id: &str) -> Option<&OcelObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    /// Sorted object type alphabet.
    pub fn object_types(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.objects.iter().map(|o| o.object_type.as_str()).collect();
        set.into_iter().collect()
    }

    /// Events related to `object_id`, ordered by `(timestamp, document
    /// order)`.
    pub fn events_of_object(&self, object_id: &str) -> Vec<&OcelEvent> {
        let index: BTreeMap<&str, usize> = self
            .events
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        let mut rows: Vec<usize> = self
            .relations
            .iter()
            .filter(|r| r.object_id == object_id)
            .filter_map(|r| index.get(r.event_id.as_str()).copied())
            .collect();
        rows.sort_by_key(|&i| (self.events[i].timestamp, i));
        rows.dedup();
        rows.into_iter().map(|i| &self.events[i]).collect()
    }
}

/// Imports an OCEL 2.0 JSON document.
pub fn import_ocel_json(path: impl AsRef<Path>) -> Result<Ocel> {
    let text = fs::read_to_string(path.as_ref())?;
    parse_ocel_json(&text)
}

/// Parses OCEL JSON from a string; see [`import_ocel_json`].
pub fn parse_ocel_json(text: &str) -> Result<Ocel> {
    let root: Json = serde_json::from_str(text)
        .map_err(|e| Error::SchemaViolation(format!("$ ({e})")))?;
    let root = root
        .as_object()
        .ok_or_else(|| Error::SchemaViolation("$ (expected object)".into()))?;

    let mut ocel = Ocel::default();

    let objects = root
        .get("objects")
        .ok_or_else(|| Error::SchemaViolation("$.objects".into()))?
        .as_array()
        .ok_or_else(|| Error::SchemaViolation("$.objects (expected array)".into()))?;
    let mut object_ids = BTreeSet::new();
    for (i, obj) in objects.iter().enumerate() {
        let path = format!("$.objects[{i}]");
        let obj = obj
            .as_object()
            .ok_or_else(|| Error::SchemaViolation(format!("{path} (expected object)")))?;
        let id = str_field(obj, "id", &path)?;
        if !object_ids.insert(id.clone()) {
            return Err(Error::SchemaViolation(format!("{path}.id (duplicate `{id}`)")));
        }
        ocel.objects.push(OcelObject {
            object_type: str_field(obj, "type", &path)?,
            attributes: attributes_field(obj, &path)?,
            id,
        });
    }

    let events = root
        .get("events")
        .ok_or_else(|| Error::SchemaViolation("$.events".into()))?
        .as_array()
        .ok_or_else(|| Error::SchemaViolation("$.events (expected array)".into()))?;
    let mut event_ids = BTreeSet::new();
    for (i, ev) in events.iter().enumerate() {
        let path = format!("$.events[{i}]");
        let ev = ev
            .as_object()
            .ok_or_else(|| Error::SchemaViolation(format!("{path} (expected object)")))?;
        let id = str_field(ev, "id", &path)?;
        if !event_ids.insert(id.clone()) {
            return Err(Error::SchemaViolation(format!("{path}.id (duplicate `{id}`)")));
        }
        let time_raw = str_field(ev, "time", &path)?;
        let timestamp = parse_timestamp_lenient(&time_raw)
            .ok_or_else(|| Error::SchemaViolation(format!("{path}.time (`{time_raw}`)")))?;

        if let Some(rels) = ev.get("relationships") {
            let rels = rels.as_array().ok_or_else(|| {
                Error::SchemaViolation(format!("{path}.relationships (expected array)"))
            })?;
            for (j, rel) in rels.iter().enumerate() {
                let rpath = format!("{path}.relationships[{j}]");
                let rel = rel
                    .as_object()
                    .ok_or_else(|| Error::SchemaViolation(format!("{rpath} (expected object)")))?;
                let object_id = str_field(rel, "objectId", &rpath)?;
                if !object_ids.contains(&object_id) {
                    return Err(Error::DanglingReference(object_id));
                }
                let qualifier = match rel.get("qualifier") {
                    None | Some(Json::Null) => None,
                    Some(Json::String(s)) => Some(s.clone()),
                    Some(_) => {
                        return Err(Error::SchemaViolation(format!("{rpath}.qualifier")));
                    }
                };
                ocel.relations.push(OcelRelation {
                    event_id: id.clone(),
                    object_id,
                    qualifier,
                });
            }
        }

        ocel.events.push(OcelEvent {
            activity: str_field(ev, "type", &path)?,
            timestamp,
            attributes: attributes_field(ev, &path)?,
            id,
        });
    }

    Ok(ocel)
}

fn str_field(
    obj: &serde_json::Map<String, Json>,
    key: &str,
    path: &str,
) -> Result<String> {
    obj.get(key)
        .and_then(Json::as_str)
        .map(str::to_string)
        .ok_or_else(|| Error::SchemaViolation(format!("{path}.{key}")))
}

fn attributes_field(
    obj: &serde_json::Map<String, Json>,
    path: &str,
) -> Result<Vec<(String, Value)>> {
    let Some(attrs) = obj.get("attributes") else {
        return Ok(Vec::new());
    };
    let attrs = attrs
        .as_array()
        .ok_or_else(|| Error::SchemaViolation(format!("{path}.attributes (expected array)")))?;
    let mut out = Vec::with_capacity(attrs.len());
    for (i, attr) in attrs.iter().enumerate() {
        let apath = format!("{path}.attributes[{i}]");
        let attr = attr
            .as_object()
            .ok_or_else(|| Error::SchemaViolation(format!("{apath} (expected object)")))?;
        let name = str_field(attr, "name", &apath)?;
        let value = match attr.get("value") {
            Some(Json::String(s)) => Value::String(s.clone()),
            Some(Json::Bool(b)) => Value::Bool(*b),
            Some(Json::Number(n)) => {
                if let Some(i) = n.as_i64() {
                    Value::Int(i)
                } else {
                    Value::Float(n.as_f64().unwrap_or(f64::NAN))
                }
            }
            Some(Json::Null) | None => Value::Null,
            Some(_) => return Err(Error::SchemaViolation(format!("{apath}.value"))),
        };
        out.push((name, value));
    }
    Ok(out)
}

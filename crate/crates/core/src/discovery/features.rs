//! Per-case and per-object numeric feature extraction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::eventlog::{EventLog, Ocel};
use crate::num::{micros_to_seconds, Scalar};

/// Numeric feature table: one row per case (or per object for OCELs).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureTable<F: Scalar = f64> {
    pub feature_names: Vec<String>,
    pub rows: Vec<FeatureRow<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow<F> {
    /// Case id or object id.
    pub id: String,
    /// Parallel to `feature_names`.
    pub values: Vec<F>,
}

impl<F: Scalar> FeatureTable<F> {
    /// Column values of one feature, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<F>> {
        let idx = self.feature_names.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|r| r.values[idx]).collect())
    }
}

/// Per-case features: `events_count`, `case_duration_seconds` and one
/// `count_<activity>` column per alphabet activity.
pub fn extract_features<F: Scalar>(log: &EventLog) -> FeatureTable<F> {
    let alphabet: Vec<&str> = log.activities();
    let mut feature_names = vec![
        "events_count".to_string(),
        "case_duration_seconds".to_string(),
    ];
    feature_names.extend(alphabet.iter().map(|a| format!("count_{a}")));

    let rows = log
        .case_sequences()
        .into_iter()
        .map(|(case_id, seq)| {
            let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
            for (act, _) in &seq {
                *counts.entry(act).or_insert(0) += 1;
            }
            let duration = seq.last().unwrap().1 - seq.first().unwrap().1;
            let mut values = vec![
                F::from_usize(seq.len()).unwrap(),
                micros_to_seconds(duration),
            ];
            values.extend(
                alphabet
                    .iter()
                    .map(|a| F::from_u64(counts.get(a).copied().unwrap_or(0)).unwrap()),
            );
            FeatureRow {
                id: case_id.to_string(),
                values,
            }
        })
        .collect();

    FeatureTable {
        feature_names,
        rows,
    }
}

/// Per-object features over an OCEL: `events_count`,
/// `lifecycle_duration_seconds` and per-activity counts. Objects without
/// related events carry no lifecycle and are skipped.
pub fn extract_ocel_features<F: Scalar>(ocel: &Ocel) -> Result<FeatureTable<F>> {
    if ocel.events.is_empty() {
        return Err(Error::EmptyOcel);
    }
    let mut alphabet: Vec<&str> = ocel.events.iter().map(|e| e.activity.as_str()).collect();
    alphabet.sort_unstable();
    alphabet.dedup();

    let mut feature_names = vec![
        "events_count".to_string(),
        "lifecycle_duration_seconds".to_string(),
    ];
    feature_names.extend(alphabet.iter().map(|a| format!("count_{a}")));

    let mut object_ids: Vec<&str> = ocel.objects.iter().map(|o| o.id.as_str()).collect();
    object_ids.sort_unstable();

    let mut rows = Vec::new();
    for id in object_ids {
        let events = ocel.events_of_object(id);
        if events.is_empty() {
            continue;
        }
        let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
        for e in &events {
            *counts.entry(e.activity.as_str()).or_insert(0) += 1;
        }
        let duration = events.last().unwrap().timestamp - events.first().unwrap().timestamp;
        let mut values = vec![
            F::from_usize(events.len()).unwrap(),
            micros_to_seconds(duration),
        ];
        values.extend(
            alphabet
                .iter()
                .map(|a| F::from_u64(counts.get(a).copied().unwrap_or(0)).unwrap()),
        );
        rows.push(FeatureRow {
            id: id.to_string(),
            values,
        });
    }

    Ok(FeatureTable {
        feature_names,
        rows,
    })
}

//! Process variants: cases aggregated by their exact activity sequence.

use std::collections::BTreeMap;

use crate::eventlog::EventLog;

/// Variant table keyed by activity sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VariantTable {
    pub variants: BTreeMap<Vec<String>, VariantInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VariantInfo {
    pub count: u64,
    /// Case ids following this variant, in canonical order.
    pub case_ids: Vec<String>,
}

impl VariantTable {
    pub fn total_cases(&self) -> u64 {
        self.variants.values().map(|v| v.count).sum()
    }
}

/// Groups cases by exact activity sequence.
pub fn compute_variants(log: &EventLog) -> VariantTable {
    let mut table = VariantTable::default();
    for (case_id, seq) in log.case_sequences() {
        let key: Vec<String> = seq.iter().map(|(a, _)| a.to_string()).collect();
        let info = table.variants.entry(key).or_default();
        info.count += 1;
        info.case_ids.push(case_id.to_string());
    }
    table
}

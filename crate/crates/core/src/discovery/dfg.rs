//! Directly-follows graphs, plain and performance-annotated.

use std::collections::BTreeMap;

use crate::eventlog::EventLog;
use crate::num::{mean, median_sorted, micros_to_seconds, Scalar};

/// Directly-follows graph: edge frequencies plus start/end activity counts.
///
/// The sum of start counts and the sum of end counts both equal the number
/// of cases; every recorded edge has frequency >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dfg {
    pub edges: BTreeMap<(String, String), u64>,
    pub start_activities: BTreeMap<String, u64>,
    pub end_activities: BTreeMap<String, u64>,
}

impl Dfg {
    /// Total edge frequency, `sum over cases of (case length - 1)`.
    pub fn total_edge_frequency(&self) -> u64 {
        self.edges.values().sum()
    }
}

/// Per-edge timing statistics over the seconds elapsed between consecutive
/// events.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePerformance<F> {
    pub mean_seconds: F,
    pub median_seconds: F,
    pub min_seconds: F,
    pub max_seconds: F,
    pub count: u64,
}

/// Directly-follows graph annotated with performance statistics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PerformanceDfg<F: Scalar = f64> {
    pub edges: BTreeMap<(String, String), EdgePerformance<F>>,
}

/// Counts each consecutive activity pair once per occurrence within a case.
pub fn compute_dfg(log: &EventLog) -> Dfg {
    let mut dfg = Dfg::default();
    for (_, seq) in log.case_sequences() {
        let first = seq.first().expect("cases are non-empty");
        let last = seq.last().expect("cases are non-empty");
        *dfg.start_activities.entry(first.0.to_string()).or_insert(0) += 1;
        *dfg.end_activities.entry(last.0.to_string()).or_insert(0) += 1;
        for pair in seq.windows(2) {
            let key = (pair[0].0.to_string(), pair[1].0.to_string());
            *dfg.edges.entry(key).or_insert(0) += 1;
        }
    }
    dfg
}

/// Per-edge elapsed-seconds statistics; the edge count always matches the
/// plain DFG frequency.
pub fn compute_performance_dfg<F: Scalar>(log: &EventLog) -> PerformanceDfg<F> {
    let mut deltas: BTreeMap<(String, String), Vec<i64>> = BTreeMap::new();
    for (_, seq) in log.case_sequences() {
        for pair in seq.windows(2) {
            let key = (pair[0].0.to_string(), pair[1].0.to_string());
            deltas.entry(key).or_default().push(pair[1].1 - pair[0].1);
        }
    }
    let edges = deltas
        .into_iter()
        .map(|(key, mut us)| {
            us.sort_unstable();
            let secs: Vec<F> = us.iter().map(|&d| micros_to_seconds(d)).collect();
            let perf = EdgePerformance {
                mean_seconds: mean(&secs),
                median_seconds: median_sorted(&secs),
                min_seconds: secs[0],
                max_seconds: secs[secs.len() - 1],
                count: secs.len() as u64,
            };
            (key, perf)
        })
        .collect();
    PerformanceDfg { edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eventlog::EventLogBuilder;
    use crate::testutil::{log1, HOUR_US};

    #[test]
    fn log1_dfg_matches_pair_enumeration() {
        let dfg = compute_dfg(&log1());
        let edge = |a: &str, b: &str| dfg.edges.get(&(a.into(), b.into())).copied();
        assert_eq!(edge("A", "B"), Some(2));
        assert_eq!(edge("B", "C"), Some(2));
        assert_eq!(edge("A", "C"), Some(1));
        assert_eq!(dfg.edges.len(), 3);
        assert_eq!(dfg.start_activities.get("A"), Some(&3));
        assert_eq!(dfg.end_activities.get("C"), Some(&3));
        assert_eq!(dfg.total_edge_frequency(), 5); // sum of (len-1) = 2+2+1
    }

    #[test]
    fn single_event_cases_have_no_edges() {
        let mut b = EventLogBuilder::new();
        b.event("c1", "A", 0);
        let dfg = compute_dfg(&b.build().unwrap());
        assert!(dfg.edges.is_empty());
        assert_eq!(dfg.start_activities, dfg.end_activities);
    }

    #[test]
    fn duplicated_case_increments_edges() {
        let log = log1();
        let mut b = EventLogBuilder::new();
        for row in 0..log.len() {
            b.event(log.case_id(row), log.activity(row), log.timestamp(row));
        }
        // replay c1 under a fresh case id
        b.event("c9", "A", 0);
        b.event("c9", "B", HOUR_US);
        b.event("c9", "C", 2 * HOUR_US);
        let dfg = compute_dfg(&b.build().unwrap());
        assert_eq!(dfg.edges.get(&("A".into(), "B".into())), Some(&3));
    }

    #[test]
    fn performance_edge_stats_match_hand_enumeration() {
        let perf: PerformanceDfg = compute_performance_dfg(&log1());
        let ab = &perf.edges[&("A".into(), "B".into())];
        assert_eq!(ab.mean_seconds, 5400.0);
        assert_eq!(ab.min_seconds, 3600.0);
        assert_eq!(ab.max_seconds, 7200.0);
        assert_eq!(ab.median_seconds, 5400.0);
        assert_eq!(ab.count, 2);

        let ac = &perf.edges[&("A".into(), "C".into())];
        assert_eq!(ac.mean_seconds, 3600.0);
        assert_eq!(ac.min_seconds, 3600.0);
        assert_eq!(ac.max_seconds, 3600.0);
        assert_eq!(ac.count, 1);
    }

    #[test]
    fn performance_counts_match_dfg_frequencies() {
        let log = log1();
        let dfg = compute_dfg(&log);
        let perf: PerformanceDfg = compute_performance_dfg(&log);
        assert_eq!(dfg.edges.len(), perf.edges.len());
        for (key, freq) in &dfg.edges {
            assert_eq!(perf.edges[key].count, *freq);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let perf: PerformanceDfg<f32> = compute_performance_dfg(&log1());
        assert_eq!(perf.edges[&("A".into(), "B".into())].mean_seconds, 5400.0f32);
    }
}

//! Temporal profile: elapsed-time statistics over eventually-follows pairs.

use std::collections::BTreeMap;

use crate::eventlog::EventLog;
use crate::num::{mean, micros_to_seconds, population_stdev, Scalar};

/// Statistics for one eventually-follows activity pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairProfile<F> {
    pub mean_seconds: F,
    /// Population standard deviation; zero for a single observation.
    pub stdev_seconds: F,
    pub observation_count: u64,
}

/// Temporal profile over all eventually-follows occurrences within cases.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TemporalProfile<F: Scalar = f64> {
    pub pairs: BTreeMap<(String, String), PairProfile<F>>,
}

/// For each ordered pair `(a, b)` with `b` occurring after `a` in the same
/// case (any gap, all occurrence pairs), the mean and population standard
/// deviation of the elapsed seconds.
pub fn compute_temporal_profile<F: Scalar>(log: &EventLog) -> TemporalProfile<F> {
    let mut observations: BTreeMap<(String, String), Vec<F>> = BTreeMap::new();
    for (_, seq) in log.case_sequences() {
        for i in 0..seq.len() {
            for j in (i + 1)..seq.len() {
                let key = (seq[i].0.to_string(), seq[j].0.to_string());
                observations
                    .entry(key)
                    .or_default()
                    .push(micros_to_seconds(seq[j].1 - seq[i].1));
            }
        }
    }
    let pairs = observations
        .into_iter()
        .map(|(key, secs)| {
            let profile = PairProfile {
                mean_seconds: mean(&secs),
                stdev_seconds: population_stdev(&secs),
                observation_count: secs.len() as u64,
            };
            (key, profile)
        })
        .collect();
    TemporalProfile { pairs }
}

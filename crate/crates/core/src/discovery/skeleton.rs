//! Log skeleton: six exact relation families over the activity alphabet.

use std::collections::{BTreeMap, BTreeSet};

use crate::eventlog::EventLog;

use super::compute_dfg;

/// Per-case occurrence bounds of one activity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActivityFrequency {
    pub min: u64,
    pub max: u64,
}

/// The six relation families of a log skeleton, computed exactly (no noise
/// threshold).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogSkeleton {
    /// Unordered pairs `(a, b)` with `a < b` whose per-case frequencies are
    /// identical in every case.
    pub equivalence: BTreeSet<(String, String)>,
    /// Ordered pairs `(b, a)`: whenever `b` occurs, `a` occurred earlier in
    /// the case.
    pub always_before: BTreeSet<(String, String)>,
    /// Ordered pairs `(a, b)`: whenever `a` occurs, `b` occurs later in the
    /// case.
    pub always_after: BTreeSet<(String, String)>,
    /// Unordered pairs `(a, b)` with `a < b` that never co-occur in a case.
    pub never_together: BTreeSet<(String, String)>,
    /// Edge set of the directly-follows graph.
    pub directly_follows: BTreeSet<(String, String)>,
    pub activity_frequencies: BTreeMap<String, ActivityFrequency>,
}

/// Discovers all six relation families.
pub fn discover_log_skeleton(log: &EventLog) -> LogSkeleton {
    let alphabet: Vec<String> = log.activities().iter().map(|s| s.to_string()).collect();
    let sequences = log.case_sequences();

    // per-case counts and first/last occurrence positions
    let mut case_counts: Vec<BTreeMap<&str, u64>> = Vec::with_capacity(sequences.len());
    let mut case_first: Vec<BTreeMap<&str, usize>> = Vec::with_capacity(sequences.len());
    let mut case_last: Vec<BTreeMap<&str, usize>> = Vec::with_capacity(sequences.len());
    for (_, seq) in &sequences {
        let mut counts = BTreeMap::new();
        let mut first = BTreeMap::new();
        let mut last = BTreeMap::new();
        for (pos, (act, _)) in seq.iter().enumerate() {
            *counts.entry(*act).or_insert(0u64) += 1;
            first.entry(*act).or_insert(pos);
            last.insert(*act, pos);
        }
        case_counts.push(counts);
        case_first.push(first);
        case_last.push(last);
    }

    let count_of = |case: usize, act: &str| case_counts[case].get(act).copied().unwrap_or(0);

    let mut skeleton = LogSkeleton::default();

    for (i, a) in alphabet.iter().enumerate() {
        // frequency bounds over all cases, absent = 0
        let mut min = u64::MAX;
        let mut max = 0u64;
        for case in 0..sequences.len() {
            let n = count_of(case, a);
            min = min.min(n);
            max = max.max(n);
        }
        skeleton
            .activity_frequencies
            .insert(a.clone(), ActivityFrequency { min, max });

        for b in &alphabet[i + 1..] {
            let equivalent = (0..sequences.len()).all(|c| count_of(c, a) == count_of(c, b));
            if equivalent {
                skeleton.equivalence.insert((a.clone(), b.clone()));
            }
            let together = (0..sequences.len())
                .any(|c| count_of(c, a) > 0 && count_of(c, b) > 0);
            if !together {
                skeleton.never_together.insert((a.clone(), b.clone()));
            }
        }

        for b in &alphabet {
            if a == b {
                continue;
            }
            // whenever b occurs, a occurred earlier: a's first occurrence
            // precedes b's first occurrence in every case containing b
            let before = (0..sequences.len()).all(|c| match case_first[c].get(b.as_str()) {
                None => true,
                Some(&fb) => case_first[c]
                    .get(a.as_str())
                    .is_some_and(|&fa| fa < fb),
            });
            if before {
                skeleton.always_before.insert((b.clone(), a.clone()));
            }
            // whenever a occurs, b occurs later: b's last occurrence follows
            // a's last occurrence in every case containing a
            let after = (0..sequences.len()).all(|c| match case_last[c].get(a.as_str()) {
                None => true,
                Some(&la) => case_last[c]
                    .get(b.as_str())
                    .is_some_and(|&lb| lb > la),
            });
            if after {
                skeleton.always_after.insert((a.clone(), b.clone()));
            }
        }
    }

    skeleton.directly_follows = compute_dfg(log).edges.into_keys().collect();
    skeleton
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eventlog::EventLogBuilder;
    use crate::testutil::{log1, HOUR_US};

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn log1_equivalence_is_exactly_a_c() {
        let s = discover_log_skeleton(&log1());
        assert!(s.equivalence.contains(&pair("A", "C")));
        assert!(!s.equivalence.contains(&pair("A", "B")));
        assert!(!s.equivalence.contains(&pair("B", "C")));
        assert_eq!(s.equivalence.len(), 1);
    }

    #[test]
    fn log1_before_after_relations() {
        let s = discover_log_skeleton(&log1());
        // (b, a): b requires an earlier a
        assert!(s.always_before.contains(&pair("B", "A")));
        assert!(s.always_before.contains(&pair("C", "A")));
        assert!(!s.always_before.contains(&pair("C", "B")));
        assert!(s.always_after.contains(&pair("A", "C")));
        assert!(s.always_after.contains(&pair("B", "C")));
        assert!(!s.always_after.contains(&pair("A", "B")));
    }

    #[test]
    fn log1_never_together_and_frequencies() {
        let s = discover_log_skeleton(&log1());
        assert!(s.never_together.is_empty());
        assert_eq!(
            s.activity_frequencies["B"],
            ActivityFrequency { min: 0, max: 1 }
        );
        assert_eq!(
            s.activity_frequencies["A"],
            ActivityFrequency { min: 1, max: 1 }
        );
    }

    #[test]
    fn directly_follows_matches_dfg_edges() {
        let s = discover_log_skeleton(&log1());
        let expected: BTreeSet<(String, String)> =
            [pair("A", "B"), pair("B", "C"), pair("A", "C")].into();
        assert_eq!(s.directly_follows, expected);
    }

    #[test]
    fn disjoint_cases_are_never_together() {
        let mut b = EventLogBuilder::new();
        b.event("c1", "A", 0);
        b.event("c1", "B", HOUR_US);
        b.event("c2", "X", 0);
        let s = discover_log_skeleton(&b.build().unwrap());
        assert!(s.never_together.contains(&pair("A", "X")));
        assert!(s.never_together.contains(&pair("B", "X")));
        assert!(!s.never_together.contains(&pair("A", "B")));
    }
}

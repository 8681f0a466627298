//! Brute-force evaluators, independent of the discovery implementations.
//!
//! Each oracle recomputes an artifact from the raw case sequences with the
//! most literal algorithm available (per-case scans, double loops, direct
//! formulas) so that agreement with the library is meaningful.

use std::collections::{BTreeMap, BTreeSet};

use pmllm::discovery::{ActivityFrequency, DeclareTemplate};
use pmllm::EventLog;

type Seq = Vec<(String, i64)>;

fn sequences(log: &EventLog) -> Vec<Seq> {
    log.case_sequences()
        .into_iter()
        .map(|(_, seq)| {
            seq.into_iter()
                .map(|(a, t)| (a.to_string(), t))
                .collect()
        })
        .collect()
}

fn alphabet(log: &EventLog) -> Vec<String> {
    log.activities().iter().map(|s| s.to_string()).collect()
}

// --- DFG ---

pub struct DfgOracle {
    pub edges: BTreeMap<(String, String), u64>,
    pub starts: BTreeMap<String, u64>,
    pub ends: BTreeMap<String, u64>,
}

pub fn dfg(log: &EventLog) -> DfgOracle {
    let mut edges = BTreeMap::new();
    let mut starts = BTreeMap::new();
    let mut ends = BTreeMap::new();
    for seq in sequences(log) {
        *starts.entry(seq[0].0.clone()).or_insert(0u64) += 1;
        *ends.entry(seq[seq.len() - 1].0.clone()).or_insert(0u64) += 1;
        for i in 1..seq.len() {
            *edges
                .entry((seq[i - 1].0.clone(), seq[i].0.clone()))
                .or_insert(0u64) += 1;
        }
    }
    DfgOracle { edges, starts, ends }
}

// --- variants ---

pub fn variants(log: &EventLog) -> BTreeMap<Vec<String>, u64> {
    let mut out = BTreeMap::new();
    for seq in sequences(log) {
        let key: Vec<String> = seq.iter().map(|(a, _)| a.clone()).collect();
        *out.entry(key).or_insert(0u64) += 1;
    }
    out
}

// --- temporal profile ---

pub struct PairStats {
    pub mean: f64,
    pub stdev: f64,
    pub count: u64,
}

/// Double loop over in-case event pairs; mean and population stdev via the
/// sum / sum-of-squares route (the library uses a two-pass computation).
pub fn temporal_profile(log: &EventLog) -> BTreeMap<(String, String), PairStats> {
    let mut observations: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for seq in sequences(log) {
        for i in 0..seq.len() {
            for j in (i + 1)..seq.len() {
                let secs = (seq[j].1 - seq[i].1) as f64 / 1e6;
                observations
                    .entry((seq[i].0.clone(), seq[j].0.clone()))
                    .or_default()
                    .push(secs);
            }
        }
    }
    observations
        .into_iter()
        .map(|(key, xs)| {
            let n = xs.len() as f64;
            let sum: f64 = xs.iter().sum();
            let sumsq: f64 = xs.iter().map(|x| x * x).sum();
            let mean = sum / n;
            let variance = (sumsq / n - mean * mean).max(0.0);
            (
                key,
                PairStats {
                    mean,
                    stdev: variance.sqrt(),
                    count: xs.len() as u64,
                },
            )
        })
        .collect()
}

// --- log skeleton ---

pub struct SkeletonOracle {
    pub equivalence: BTreeSet<(String, String)>,
    pub always_before: BTreeSet<(String, String)>,
    pub always_after: BTreeSet<(String, String)>,
    pub never_together: BTreeSet<(String, String)>,
    pub directly_follows: BTreeSet<(String, String)>,
    pub frequencies: BTreeMap<String, ActivityFrequency>,
}

pub fn log_skeleton(log: &EventLog) -> SkeletonOracle {
    let seqs = sequences(log);
    let alpha = alphabet(log);
    let count_in = |seq: &Seq, a: &str| seq.iter().filter(|(x, _)| x == a).count() as u64;

    let mut equivalence = BTreeSet::new();
    let mut never_together = BTreeSet::new();
    for (i, a) in alpha.iter().enumerate() {
        for b in &alpha[i + 1..] {
            if seqs.iter().all(|s| count_in(s, a) == count_in(s, b)) {
                equivalence.insert((a.clone(), b.clone()));
            }
            if !seqs
                .iter()
                .any(|s| count_in(s, a) > 0 && count_in(s, b) > 0)
            {
                never_together.insert((a.clone(), b.clone()));
            }
        }
    }

    let mut always_before = BTreeSet::new();
    let mut always_after = BTreeSet::new();
    for b in &alpha {
        for a in &alpha {
            if a == b {
                continue;
            }
            // literal per-occurrence scan
            let before_holds = seqs.iter().all(|seq| {
                seq.iter().enumerate().all(|(p, (act, _))| {
                    act != b || seq[..p].iter().any(|(x, _)| x == a)
                })
            });
            if before_holds {
                always_before.insert((b.clone(), a.clone()));
            }
            let after_holds = seqs.iter().all(|seq| {
                seq.iter().enumerate().all(|(p, (act, _))| {
                    act != a || seq[p + 1..].iter().any(|(x, _)| x == b)
                })
            });
            if after_holds {
                always_after.insert((a.clone(), b.clone()));
            }
        }
    }

    let mut directly_follows = BTreeSet::new();
    for seq in &seqs {
        for i in 1..seq.len() {
            directly_follows.insert((seq[i - 1].0.clone(), seq[i].0.clone()));
        }
    }

    let mut frequencies = BTreeMap::new();
    for a in &alpha {
        let counts: Vec<u64> = seqs.iter().map(|s| count_in(s, a)).collect();
        frequencies.insert(
            a.clone(),
            ActivityFrequency {
                min: counts.iter().copied().min().unwrap_or(0),
                max: counts.iter().copied().max().unwrap_or(0),
            },
        );
    }

    SkeletonOracle {
        equivalence,
        always_before,
        always_after,
        never_together,
        directly_follows,
        frequencies,
    }
}

// --- DECLARE ---

/// Literal per-case check of one template instantiation.
pub fn declare_holds_in_case(template: DeclareTemplate, seq: &Seq, a: &str, b: &str) -> bool {
    let acts: Vec<&str> = seq.iter().map(|(x, _)| x.as_str()).collect();
    let count = |x: &str| acts.iter().filter(|y| **y == x).count();
    match template {
        DeclareTemplate::Existence => count(a) >= 1,
        DeclareTemplate::ExactlyOne => count(a) == 1,
        DeclareTemplate::Init => acts[0] == a,
        DeclareTemplate::End => acts[acts.len() - 1] == a,
        DeclareTemplate::RespondedExistence => count(a) == 0 || count(b) >= 1,
        DeclareTemplate::Response => (0..acts.len())
            .filter(|&i| acts[i] == a)
            .all(|i| acts[i + 1..].contains(&b)),
        DeclareTemplate::Precedence => (0..acts.len())
            .filter(|&i| acts[i] == b)
            .all(|i| acts[..i].contains(&a)),
        DeclareTemplate::Succession => {
            declare_holds_in_case(DeclareTemplate::Response, seq, a, b)
                && declare_holds_in_case(DeclareTemplate::Precedence, seq, a, b)
        }
        DeclareTemplate::ChainResponse => (0..acts.len())
            .filter(|&i| acts[i] == a)
            .all(|i| i + 1 < acts.len() && acts[i + 1] == b),
        DeclareTemplate::ChainPrecedence => (0..acts.len())
            .filter(|&i| acts[i] == b)
            .all(|i| i > 0 && acts[i - 1] == a),
        DeclareTemplate::Coexistence => (count(a) >= 1) == (count(b) >= 1),
        DeclareTemplate::Noncoexistence => !(count(a) >= 1 && count(b) >= 1),
    }
}

/// Full model over the same instantiation grid as discovery: unary over the
/// alphabet, binary over ordered pairs of distinct activities, symmetric
/// templates over unordered pairs.
pub fn declare(log: &EventLog) -> BTreeMap<DeclareTemplate, Vec<Vec<String>>> {
    let seqs = sequences(log);
    let alpha = alphabet(log);
    let mut out: BTreeMap<DeclareTemplate, Vec<Vec<String>>> = BTreeMap::new();
    for template in DeclareTemplate::ALL {
        let symmetric = matches!(
            template,
            DeclareTemplate::Coexistence | DeclareTemplate::Noncoexistence
        );
        let mut found = Vec::new();
        if template.is_unary() {
            for a in &alpha {
                if seqs
                    .iter()
                    .all(|s| declare_holds_in_case(template, s, a, ""))
                {
                    found.push(vec![a.clone()]);
                }
            }
        } else {
            for (i, a) in alpha.iter().enumerate() {
                for (j, b) in alpha.iter().enumerate() {
                    if i == j || (symmetric && i > j) {
                        continue;
                    }
                    if seqs
                        .iter()
                        .all(|s| declare_holds_in_case(template, s, a, b))
                    {
                        found.push(vec![a.clone(), b.clone()]);
                    }
                }
            }
        }
        if !found.is_empty() {
            out.insert(template, found);
        }
    }
    out
}

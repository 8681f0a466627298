//! DECLARE constraint discovery over a fixed set of twelve templates.
//!
//! Discovery reports every instantiation that holds in 100% of cases
//! (support 1.0); no transitive pruning is applied. Binary templates are
//! instantiated over ordered pairs of distinct activities; the symmetric
//! templates (coexistence, noncoexistence) over unordered pairs.

use std::collections::BTreeMap;

use crate::eventlog::EventLog;

/// The implemented DECLARE templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DeclareTemplate {
    Existence,
    ExactlyOne,
    Init,
    End,
    RespondedExistence,
    Response,
    Precedence,
    Succession,
    ChainResponse,
    ChainPrecedence,
    Coexistence,
    Noncoexistence,
}

impl DeclareTemplate {
    pub const ALL: [DeclareTemplate; 12] = [
        DeclareTemplate::Existence,
        DeclareTemplate::ExactlyOne,
        DeclareTemplate::Init,
        DeclareTemplate::End,
        DeclareTemplate::RespondedExistence,
        DeclareTemplate::Response,
        DeclareTemplate::Precedence,
        DeclareTemplate::Succession,
        DeclareTemplate::ChainResponse,
        DeclareTemplate::ChainPrecedence,
        DeclareTemplate::Coexistence,
        DeclareTemplate::Noncoexistence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DeclareTemplate::Existence => "existence",
            DeclareTemplate::ExactlyOne => "exactly_one",
            DeclareTemplate::Init => "init",
            DeclareTemplate::End => "end",
            DeclareTemplate::RespondedExistence => "responded_existence",
            DeclareTemplate::Response => "response",
            DeclareTemplate::Precedence => "precedence",
            DeclareTemplate::Succession => "succession",
            DeclareTemplate::ChainResponse => "chain_response",
            DeclareTemplate::ChainPrecedence => "chain_precedence",
            DeclareTemplate::Coexistence => "coexistence",
            DeclareTemplate::Noncoexistence => "noncoexistence",
        }
    }

    pub fn is_unary(&self) -> bool {
        matches!(
            self,
            DeclareTemplate::Existence
                | DeclareTemplate::ExactlyOne
                | DeclareTemplate::Init
                | DeclareTemplate::End
        )
    }

    /// Symmetric binary templates are instantiated with `a < b` only.
    fn is_symmetric(&self) -> bool {
        matches!(
            self,
            DeclareTemplate::Coexistence | DeclareTemplate::Noncoexistence
        )
    }
}

/// Discovered constraints per template: activity parameters plus support.
/// Discovery only emits support 1.0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DeclareModel {
    pub constraints: BTreeMap<DeclareTemplate, Vec<(Vec<String>, f64)>>,
}

impl DeclareModel {
    /// Templates with at least one constraint, in declaration order.
    pub fn templates_present(&self) -> Vec<DeclareTemplate> {
        DeclareTemplate::ALL
            .iter()
            .filter(|t| self.constraints.get(t).is_some_and(|v| !v.is_empty()))
            .copied()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.constraints.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Aggregated per-case statistics sufficient to evaluate all templates.
struct CaseStats<'a> {
    counts: BTreeMap<&'a str, u64>,
    first: BTreeMap<&'a str, usize>,
    last: BTreeMap<&'a str, usize>,
    /// `(a, b) ->` number of positions where `b` immediately follows `a`.
    adjacent: BTreeMap<(&'a str, &'a str), u64>,
    initial: &'a str,
    terminal: &'a str,
}

/// Discovers every instantiation of the twelve templates holding in all
/// cases.
pub fn discover_declare(log: &EventLog) -> DeclareModel {
    let alphabet: Vec<&str> = log.activities();
    let sequences = log.case_sequences();
    let stats: Vec<CaseStats> = sequences
        .iter()
        .map(|(_, seq)| {
            let mut counts = BTreeMap::new();
            let mut first = BTreeMap::new();
            let mut last = BTreeMap::new();
            let mut adjacent = BTreeMap::new();
            for (pos, (act, _)) in seq.iter().enumerate() {
                *counts.entry(*act).or_insert(0u64) += 1;
                first.entry(*act).or_insert(pos);
                last.insert(*act, pos);
                if pos + 1 < seq.len() {
                    *adjacent.entry((*act, seq[pos + 1].0)).or_insert(0u64) += 1;
                }
            }
            CaseStats {
                counts,
                first,
                last,
                adjacent,
                initial: seq.first().expect("non-empty case").0,
                terminal: seq.last().expect("non-empty case").0,
            }
        })
        .collect();

    let mut model = DeclareModel::default();
    for template in DeclareTemplate::ALL {
        let mut found: Vec<(Vec<String>, f64)> = Vec::new();
        if template.is_unary() {
            for a in &alphabet {
                if stats.iter().all(|s| holds_unary(template, s, a)) {
                    found.push((vec![a.to_string()], 1.0));
                }
            }
        } else {
            for (i, a) in alphabet.iter().enumerate() {
                for (j, b) in alphabet.iter().enumerate() {
                    if i == j || (template.is_symmetric() && i > j) {
                        continue;
                    }
                    if stats.iter().all(|s| holds_binary(template, s, a, b)) {
                        found.push((vec![a.to_string(), b.to_string()], 1.0));
                    }
                }
            }
        }
        if !found.is_empty() {
            model.constraints.insert(template, found);
        }
    }
    model
}

fn holds_unary(template: DeclareTemplate, s: &CaseStats, a: &str) -> bool {
    let count = s.counts.get(a).copied().unwrap_or(0);
    match template {
        DeclareTemplate::Existence => count >= 1,
        DeclareTemplate::ExactlyOne => count == 1,
        DeclareTemplate::Init => s.initial == a,
        DeclareTemplate::End => s.terminal == a,
        _ => unreachable!("binary template in unary check"),
    }
}

fn holds_binary(template: DeclareTemplate, s: &CaseStats, a: &str, b: &str) -> bool {
    let count_a = s.counts.get(a).copied().unwrap_or(0);
    let count_b = s.counts.get(b).copied().unwrap_or(0);
    match template {
        DeclareTemplate::RespondedExistence => count_a == 0 || count_b >= 1,
        DeclareTemplate::Response => {
            // after the last a there is still a b
            count_a == 0 || matches!((s.last.get(a), s.last.get(b)), (Some(la), Some(lb)) if lb > la)
        }
        DeclareTemplate::Precedence => {
            // before the first b there is already an a
            count_b == 0
                || matches!((s.first.get(a), s.first.get(b)), (Some(fa), Some(fb)) if fa < fb)
        }
        DeclareTemplate::Succession => {
            holds_binary(DeclareTemplate::Response, s, a, b)
                && holds_binary(DeclareTemplate::Precedence, s, a, b)
        }
        DeclareTemplate::ChainResponse => {
            count_a == s.adjacent.get(&(a, b)).copied().unwrap_or(0)
        }
        DeclareTemplate::ChainPrecedence => {
            count_b == s.adjacent.get(&(a, b)).copied().unwrap_or(0)
        }
        DeclareTemplate::Coexistence => (count_a >= 1) == (count_b >= 1),
        DeclareTemplate::Noncoexistence => !(count_a >= 1 && count_b >= 1),
        _ => unreachable!("unary template in binary check"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eventlog::EventLogBuilder;
    use crate::testutil::log1;

    fn has(model: &DeclareModel, template: DeclareTemplate, params: &[&str]) -> bool {
        model.constraints.get(&template).is_some_and(|list| {
            list.iter()
                .any(|(p, _)| p.iter().map(String::as_str).eq(params.iter().copied()))
        })
    }

    #[test]
    fn log1_discovers_expected_constraints() {
        let m = discover_declare(&log1());
        assert!(has(&m, DeclareTemplate::Response, &["A", "C"]));
        assert!(has(&m, DeclareTemplate::Precedence, &["A", "C"]));
        assert!(has(&m, DeclareTemplate::Existence, &["A"]));
        assert!(has(&m, DeclareTemplate::Existence, &["C"]));
        // violated by c3 = <A, C>
        assert!(!has(&m, DeclareTemplate::Response, &["A", "B"]));
    }

    #[test]
    fn log1_support_is_always_one() {
        let m = discover_declare(&log1());
        for list in m.constraints.values() {
            for (_, support) in list {
                assert_eq!(*support, 1.0);
            }
        }
    }

    #[test]
    fn single_activity_case_forces_unary_constraints() {
        let mut b = EventLogBuilder::new();
        b.event("c", "A", 0);
        let m = discover_declare(&b.build().unwrap());
        assert!(has(&m, DeclareTemplate::Init, &["A"]));
        assert!(has(&m, DeclareTemplate::End, &["A"]));
        assert!(has(&m, DeclareTemplate::Existence, &["A"]));
        assert!(has(&m, DeclareTemplate::ExactlyOne, &["A"]));
    }

    #[test]
    fn chain_templates_require_adjacency() {
        // c1: A B A B, c2: A B
        let mut b = EventLogBuilder::new();
        b.event("c1", "A", 0);
        b.event("c1", "B", 1_000_000);
        b.event("c1", "A", 2_000_000);
        b.event("c1", "B", 3_000_000);
        b.event("c2", "A", 0);
        b.event("c2", "B", 1_000_000);
        let m = discover_declare(&b.build().unwrap());
        assert!(has(&m, DeclareTemplate::ChainResponse, &["A", "B"]));
        assert!(has(&m, DeclareTemplate::ChainPrecedence, &["A", "B"]));
        assert!(has(&m, DeclareTemplate::Coexistence, &["A", "B"]));
        assert!(!has(&m, DeclareTemplate::ExactlyOne, &["A"]));
    }

    #[test]
    fn noncoexistence_requires_disjoint_cases() {
        let mut b = EventLogBuilder::new();
        b.event("c1", "A", 0);
        b.event("c2", "B", 0);
        let m = discover_declare(&b.build().unwrap());
        assert!(has(&m, DeclareTemplate::Noncoexistence, &["A", "B"]));
        assert!(!has(&m, DeclareTemplate::Coexistence, &["A", "B"]));
    }
}

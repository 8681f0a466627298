//! Automatic hypothesis generation and validation.
//!
//! Each round asks the connector for hypotheses as a fenced JSON array of
//! `{"description", "sql"}` objects, executes every statement through the
//! gated query engine, reports the result tables back and parses one verdict
//! line per hypothesis (`H<i>: VALID|INVALID — <reason>`). The loop stops at
//! the first valid hypothesis or after `max_rounds` rounds. SQL failures
//! mark the hypothesis `error` and are surfaced in the next refinement
//! prompt instead of aborting the loop.

use serde::Deserialize;

use crate::abstraction::{abstract_dfg, abstract_log_attributes, abstract_ocel, abstract_ocel_ocdfg, template, Abstraction, Budget};
use crate::discovery::{compute_dfg, compute_ocdfg};
use crate::error::{Error, Result};
use crate::query::{describe_schema, execute_sql, QueryResult, QuerySource, SchemaDescription};

use super::{ChatMessage, Connector};

/// Maximum result rows rendered back to the model per hypothesis.
const MAX_RESULT_ROWS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pending,
    Valid,
    Invalid,
    Error,
}

/// A natural-language claim paired with the SQL statement checking it.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub description: String,
    pub sql: String,
    pub result: Option<QueryResult>,
    pub verdict: Verdict,
    pub verdict_reason: String,
}

/// One generation/validation round.
#[derive(Debug, Clone)]
pub struct HypothesisRound {
    /// 1-based; increments across refinements.
    pub round_index: usize,
    pub hypotheses: Vec<Hypothesis>,
    /// Round this one refines, when any.
    pub refined_from: Option<usize>,
}

impl HypothesisRound {
    pub fn has_valid(&self) -> bool {
        self.hypotheses.iter().any(|h| h.verdict == Verdict::Valid)
    }
}

#[derive(Deserialize)]
struct HypothesisJson {
    description: String,
    sql: String,
}

/// Asks the connector for hypotheses over the given abstractions and schema.
/// The response must contain a fenced JSON array of `{description, sql}`
/// objects; anything else is [`Error::MalformedHypotheses`].
pub fn generate_hypotheses(
    connector: &dyn Connector,
    abstractions: &[Abstraction],
    schema: &SchemaDescription,
    focus: Option<&str>,
) -> Result<HypothesisRound> {
    if abstractions.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one abstraction is required".into(),
        ));
    }
    let prompt = generation_prompt(abstractions, schema, focus, None);
    let response = connector.chat(&[ChatMessage::user(prompt)])?;
    Ok(HypothesisRound {
        round_index: 1,
        hypotheses: parse_hypotheses(&response)?,
        refined_from: None,
    })
}

fn generation_prompt(
    abstractions: &[Abstraction],
    schema: &SchemaDescription,
    focus: Option<&str>,
    previous: Option<&HypothesisRound>,
) -> String {
    let mut out = String::new();
    out.push_str(template("hypotheses.header"));
    out.push_str("\n\n");
    for a in abstractions {
        out.push_str(&a.text);
        if a.truncated {
            out.push('\n');
            out.push_str(template("truncation.notice"));
        }
        out.push_str("\n\n");
    }
    out.push_str(&schema.schema_block());
    out.push_str(&format!("\nDialect: {}\n", schema.dialect_note));
    if let Some(focus) = focus {
        out.push_str(&format!("\nFocus: {focus}\n"));
    }
    if let Some(round) = previous {
        out.push_str("\nEarlier hypotheses and their outcomes:\n");
        for (i, h) in round.hypotheses.iter().enumerate() {
            let outcome = match h.verdict {
                Verdict::Valid => format!("VALID — {}", h.verdict_reason),
                Verdict::Invalid => format!("INVALID — {}", h.verdict_reason),
                Verdict::Error => format!("SQL error — {}", h.verdict_reason),
                Verdict::Pending => "no verdict".to_string(),
            };
            out.push_str(&format!(
                "H{}: {}\nSQL: {}\nOutcome: {}\n",
                i + 1,
                h.description,
                h.sql,
                outcome
            ));
        }
        out.push('\n');
        out.push_str(template("hypotheses.refine"));
        out.push_str("\n\n");
    }
    out.push_str(template("hypotheses.instruction"));
    out
}

/// Parses the fenced JSON array into pending hypotheses.
fn parse_hypotheses(response: &str) -> Result<Vec<Hypothesis>> {
    let block = first_fenced_block(response)
        .ok_or_else(|| Error::MalformedHypotheses("no fenced code block in response".into()))?;
    let parsed: Vec<HypothesisJson> = serde_json::from_str(&block)
        .map_err(|e| Error::MalformedHypotheses(format!("invalid JSON array: {e}")))?;
    Ok(parsed
        .into_iter()
        .map(|h| Hypothesis {
            description: h.description,
            sql: h.sql,
            result: None,
            verdict: Verdict::Pending,
            verdict_reason: String::new(),
        })
        .collect())
}

fn first_fenced_block(text: &str) -> Option<String> {
    let open = text.find("```")?;
    let after = &text[open + 3..];
    let start = after.find('\n').map(|i| i + 1).unwrap_or(0);
    let content = &after[start..];
    let close = content.find("```")?;
    Some(content[..close].to_string())
}

/// Runs the full loop against a log or OCEL. Per round: execute each
/// hypothesis' SQL, ask for verdicts, stop on the first valid hypothesis or
/// at `max_rounds`.
pub fn run_hypothesis_loop(
    source: QuerySource<'_>,
    connector: &dyn Connector,
    max_rounds: usize,
    focus: Option<&str>,
) -> Result<Vec<HypothesisRound>> {
    if max_rounds < 1 {
        return Err(Error::InvalidArgument("max_rounds must be >= 1".into()));
    }
    let budget = Budget::default();
    let abstractions: Vec<Abstraction> = match source {
        QuerySource::Log(log) => vec![
            abstract_dfg(&compute_dfg(log), &budget),
            abstract_log_attributes(log, &budget),
        ],
        QuerySource::Ocel(ocel) => {
            let mut list = Vec::new();
            if let Ok(g) = compute_ocdfg(ocel) {
                list.push(abstract_ocel_ocdfg(&g, &budget));
            }
            list.push(abstract_ocel(ocel, &budget));
            list
        }
    };
    let schema = describe_schema(source);

    let mut rounds: Vec<HypothesisRound> = Vec::new();
    for round_index in 1..=max_rounds {
        let prompt = generation_prompt(
            &abstractions,
            &schema,
            focus,
            rounds.last(),
        );
        let response = connector.chat(&[ChatMessage::user(prompt)])?;
        let mut round = HypothesisRound {
            round_index,
            hypotheses: parse_hypotheses(&response)?,
            refined_from: rounds.last().map(|r| r.round_index),
        };

        for h in &mut round.hypotheses {
            match execute_sql(source, &h.sql) {
                Ok(result) => h.result = Some(result),
                Err(e) => {
                    h.verdict = Verdict::Error;
                    h.verdict_reason = e.to_string();
                }
            }
        }

        if round.hypotheses.iter().any(|h| h.result.is_some()) {
            let verdict_prompt = validation_prompt(&round);
            let verdict_response = connector.chat(&[ChatMessage::user(verdict_prompt)])?;
            apply_verdicts(&mut round, &verdict_response);
        }

        let stop = round.has_valid();
        rounds.push(round);
        if stop {
            break;
        }
    }
    Ok(rounds)
}

fn validation_prompt(round: &HypothesisRound) -> String {
    let mut out = String::new();
    for (i, h) in round.hypotheses.iter().enumerate() {
        let Some(result) = &h.result else { continue };
        out.push_str(&format!("H{}: {}\nSQL: {}\n", i + 1, h.description, h.sql));
        let table = result.to_text_table();
        let mut lines: Vec<&str> = table.lines().collect();
        if lines.len() > MAX_RESULT_ROWS + 2 {
            lines.truncate(MAX_RESULT_ROWS + 2);
            lines.push("... (rows omitted)");
        }
        out.push_str(&format!(
            "Result ({} rows):\n{}\n\n",
            result.row_count,
            lines.join("\n")
        ));
    }
    out.push_str(template("verdict.instruction"));
    out
}

/// Applies `H<i>: VALID|INVALID — <reason>` lines. Hypotheses without a
/// parseable verdict stay pending.
fn apply_verdicts(round: &mut HypothesisRound, response: &str) {
    for line in response.lines() {
        let Some((index, verdict, reason)) = parse_verdict_line(line) else {
            continue;
        };
        if index == 0 || index > round.hypotheses.len() {
            continue;
        }
        let h = &mut round.hypotheses[index - 1];
        if h.verdict == Verdict::Error {
            continue; // execution failures keep their error verdict
        }
        h.verdict = verdict;
        h.verdict_reason = reason;
    }
}

fn parse_verdict_line(line: &str) -> Option<(usize, Verdict, String)> {
    let rest = line.trim().strip_prefix(['H', 'h'])?;
    let colon = rest.find(':')?;
    let index: usize = rest[..colon].trim().parse().ok()?;
    let after = rest[colon + 1..].trim();
    let upper = after.to_uppercase();
    let (verdict, token_len) = if upper.starts_with("VALID") {
        (Verdict::Valid, "VALID".len())
    } else if upper.starts_with("INVALID") {
        (Verdict::Invalid, "INVALID".len())
    } else {
        return None;
    };
    let reason = after[token_len..]
        .trim_start_matches([' ', '—', '-', ':', '–'])
        .trim()
        .to_string();
    Some((index, verdict, reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llm::TranscriptConnector;
    use crate::testutil::log1;

    const GEN_TWO: &str = r#"Here are my hypotheses:
```json
[
  {"description": "every case has three events", "sql": "SELECT COUNT(*) FROM event_log GROUP BY case_id"},
  {"description": "there are three cases", "sql": "SELECT COUNT(DISTINCT case_id) FROM event_log"}
]
```"#;

    #[test]
    fn generation_parses_fenced_json() {
        let connector = TranscriptConnector::from_text(GEN_TWO);
        let log = log1();
        let schema = describe_schema(&log);
        let budget = Budget::default();
        let abstractions = vec![abstract_dfg(&compute_dfg(&log), &budget)];
        let round = generate_hypotheses(&connector, &abstractions, &schema, None).unwrap();
        assert_eq!(round.hypotheses.len(), 2);
        assert!(round
            .hypotheses
            .iter()
            .all(|h| h.verdict == Verdict::Pending));
    }

    #[test]
    fn prose_only_response_is_malformed() {
        let connector = TranscriptConnector::from_text("I have no idea.");
        let log = log1();
        let schema = describe_schema(&log);
        let abstractions = vec![abstract_dfg(&compute_dfg(&log), &Budget::default())];
        assert!(matches!(
            generate_hypotheses(&connector, &abstractions, &schema, None),
            Err(Error::MalformedHypotheses(_))
        ));
    }

    #[test]
    fn focus_appears_in_prompt() {
        let connector = TranscriptConnector::from_text(GEN_TWO);
        let log = log1();
        let schema = describe_schema(&log);
        let abstractions = vec![abstract_dfg(&compute_dfg(&log), &Budget::default())];
        generate_hypotheses(&connector, &abstractions, &schema, Some("throughput times"))
            .unwrap();
        let sent = connector.requests()[0][0].text();
        assert!(sent.contains("Focus: throughput times"));
    }

    #[test]
    fn verdict_lines_parse_with_dash_variants() {
        assert_eq!(
            parse_verdict_line("H1: VALID — matches the data"),
            Some((1, Verdict::Valid, "matches the data".to_string()))
        );
        assert_eq!(
            parse_verdict_line("H2: INVALID - counts differ"),
            Some((2, Verdict::Invalid, "counts differ".to_string()))
        );
        assert_eq!(parse_verdict_line("h3: valid"), Some((3, Verdict::Valid, String::new())));
        assert_eq!(parse_verdict_line("no verdict here"), None);
    }

    #[test]
    fn loop_stops_at_first_valid_round() {
        let transcript = format!(
            "{GEN_TWO}\n---\nH1: INVALID — wrong\nH2: INVALID — also wrong\n---\n{GEN_TWO}\n---\nH1: INVALID — still wrong\nH2: VALID — matches"
        );
        let connector = TranscriptConnector::from_text(&transcript);
        let log = log1();
        let rounds =
            run_hypothesis_loop(QuerySource::Log(&log), &connector, 5, None).unwrap();
        assert_eq!(rounds.len(), 2);
        assert!(!rounds[0].has_valid());
        assert!(rounds[1].has_valid());
        assert_eq!(rounds[1].refined_from, Some(1));
        assert_eq!(connector.calls_made(), 4);
    }

    #[test]
    fn loop_is_bounded_by_max_rounds() {
        let invalid = "H1: INVALID — no\nH2: INVALID — no";
        let transcript = format!(
            "{GEN_TWO}\n---\n{invalid}\n---\n{GEN_TWO}\n---\n{invalid}\n---\n{GEN_TWO}\n---\n{invalid}"
        );
        let connector = TranscriptConnector::from_text(&transcript);
        let log = log1();
        let rounds =
            run_hypothesis_loop(QuerySource::Log(&log), &connector, 3, None).unwrap();
        assert_eq!(rounds.len(), 3);
        assert!(rounds.iter().all(|r| !r.has_valid()));
    }

    #[test]
    fn bad_sql_is_recorded_as_error_and_loop_continues() {
        let gen_bad = r#"```json
[
  {"description": "broken", "sql": "DROP TABLE event_log"},
  {"description": "fine", "sql": "SELECT COUNT(*) FROM event_log"}
]
```"#;
        let transcript = format!("{gen_bad}\n---\nH2: VALID — count confirmed");
        let connector = TranscriptConnector::from_text(&transcript);
        let log = log1();
        let rounds =
            run_hypothesis_loop(QuerySource::Log(&log), &connector, 3, None).unwrap();
        assert_eq!(rounds.len(), 1);
        let round = &rounds[0];
        assert_eq!(round.hypotheses[0].verdict, Verdict::Error);
        assert!(round.hypotheses[0].verdict_reason.contains("SELECT"));
        assert_eq!(round.hypotheses[1].verdict, Verdict::Valid);
    }

    #[test]
    fn zero_max_rounds_is_rejected() {
        let connector = TranscriptConnector::from_text("unused");
        let log = log1();
        assert!(matches!(
            run_hypothesis_loop(QuerySource::Log(&log), &connector, 0, None),
            Err(Error::InvalidArgument(_))
        ));
    }
}

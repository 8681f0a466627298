//! Hand-rolled SVG 1.1 chart emission: dotted chart, case duration graph,
//! events per time graph. One mark element per plotted datum; data-*
//! attributes carry the datum for testability.

use std::collections::BTreeMap;

use crate::discovery::FeatureTable;
use crate::error::{Error, Result};
use crate::eventlog::{format_timestamp, EventLog};
use crate::num::Scalar;

use super::{palette_color, SvgDocument, SvgKind};

const WIDTH: u32 = 800;
const HEIGHT: u32 = 600;
const MARGIN: f64 = 60.0;

fn escape_attr(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn svg_open(out: &mut String) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    // x axis, then y axis
    out.push_str(&format!(
        "  <line x1=\"{MARGIN}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"black\"/>\n",
        y = HEIGHT as f64 - MARGIN,
        x2 = WIDTH as f64 - MARGIN
    ));
    out.push_str(&format!(
        "  <line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{y2}\" stroke=\"black\"/>\n",
        y2 = HEIGHT as f64 - MARGIN
    ));
}

fn svg_close(out: &mut String) {
    out.push_str("</svg>\n");
}

fn scale(value: f64, min: f64, max: f64, lo: f64, hi: f64) -> f64 {
    if max <= min {
        (lo + hi) / 2.0
    } else {
        lo + (value - min) / (max - min) * (hi - lo)
    }
}

/// Dotted chart: x = timestamp, y = case (ordered by first event), one dot
/// per event colored by activity (palette in first-appearance order).
pub fn dotted_chart_svg(log: &EventLog) -> Result<SvgDocument> {
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }
    // case rows ordered by first event timestamp, ties by case id
    let mut case_first: Vec<(&str, i64)> = log
        .cases()
        .into_iter()
        .map(|(id, range)| (id, log.timestamp(range.start)))
        .collect();
    case_first.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(b.0)));
    let case_row: BTreeMap<&str, usize> = case_first
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (*id, i))
        .collect();

    let mut colors: BTreeMap<&str, &'static str> = BTreeMap::new();
    let mut next_color = 0usize;
    for row in 0..log.len() {
        colors.entry(log.activity(row)).or_insert_with(|| {
            let c = palette_color(next_color);
            next_color += 1;
            c
        });
    }

    let min_ts = (0..log.len()).map(|r| log.timestamp(r)).min().unwrap();
    let max_ts = (0..log.len()).map(|r| log.timestamp(r)).max().unwrap();
    let rows = case_row.len() as f64;

    let mut out = String::new();
    svg_open(&mut out);
    for row in 0..log.len() {
        let x = scale(
            log.timestamp(row) as f64,
            min_ts as f64,
            max_ts as f64,
            MARGIN,
            WIDTH as f64 - MARGIN,
        );
        let case_idx = case_row[log.case_id(row)];
        let band = (HEIGHT as f64 - 2.0 * MARGIN) / rows;
        let y = MARGIN + (case_idx as f64 + 0.5) * band;
        out.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"{}\" data-case=\"{}\" data-activity=\"{}\" data-time=\"{}\"/>\n",
            colors[log.activity(row)],
            escape_attr(log.case_id(row)),
            escape_attr(log.activity(row)),
            format_timestamp(log.timestamp(row)),
        ));
    }
    svg_close(&mut out);
    Ok(SvgDocument {
        text: out,
        kind: SvgKind::DottedChart,
        width: WIDTH,
        height: HEIGHT,
    })
}

/// Sorted case durations as an ascending scatter; one mark per case. The
/// duration column is `case_duration_seconds` (or
/// `lifecycle_duration_seconds` for object feature tables).
pub fn case_duration_graph_svg<F: Scalar>(table: &FeatureTable<F>) -> Result<SvgDocument> {
    let column = ["case_duration_seconds", "lifecycle_duration_seconds"]
        .iter()
        .find_map(|name| table.column(name))
        .ok_or_else(|| Error::MissingColumn("case_duration_seconds".into()))?;
    let mut durations: Vec<f64> = column.iter().map(|v| v.to_f64().unwrap_or(0.0)).collect();
    durations.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));

    let max = durations.last().copied().unwrap_or(0.0);
    let n = durations.len().max(1) as f64;

    let mut out = String::new();
    svg_open(&mut out);
    for (i, d) in durations.iter().enumerate() {
        let x = scale(i as f64, 0.0, n - 1.0, MARGIN, WIDTH as f64 - MARGIN);
        let y = scale(*d, 0.0, max, HEIGHT as f64 - MARGIN, MARGIN);
        out.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"{}\" data-duration=\"{d:.1}\"/>\n",
            palette_color(0)
        ));
    }
    svg_close(&mut out);
    Ok(SvgDocument {
        text: out,
        kind: SvgKind::CaseDurationGraph,
        width: WIDTH,
        height: HEIGHT,
    })
}

/// Histogram of event timestamps in 20 equal-width bins (single bin when the
/// log spans no time). One rect per bin; `data-count` carries the bin count.
pub fn events_per_time_graph_svg(log: &EventLog) -> SvgDocument {
    let min_ts = (0..log.len()).map(|r| log.timestamp(r)).min().unwrap_or(0);
    let max_ts = (0..log.len()).map(|r| log.timestamp(r)).max().unwrap_or(0);
    let bins = if max_ts == min_ts { 1 } else { 20 };
    let mut counts = vec![0u64; bins];
    let span = (max_ts - min_ts) as f64;
    for row in 0..log.len() {
        let idx = if bins == 1 {
            0
        } else {
            (((log.timestamp(row) - min_ts) as f64 / span) * bins as f64).floor() as usize
        };
        counts[idx.min(bins - 1)] += 1;
    }
    let max_count = counts.iter().copied().max().unwrap_or(0).max(1) as f64;

    let mut out = String::new();
    svg_open(&mut out);
    let plot_w = WIDTH as f64 - 2.0 * MARGIN;
    let bar_w = plot_w / bins as f64;
    for (i, count) in counts.iter().enumerate() {
        let h = (*count as f64 / max_count) * (HEIGHT as f64 - 2.0 * MARGIN);
        let x = MARGIN + i as f64 * bar_w;
        let y = HEIGHT as f64 - MARGIN - h;
        out.push_str(&format!(
            "  <rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{}\" data-bin=\"{i}\" data-count=\"{count}\"/>\n",
            palette_color(0),
            w = bar_w.max(1.0) - 1.0,
        ));
    }
    svg_close(&mut out);
    SvgDocument {
        text: out,
        kind: SvgKind::EventsPerTimeGraph,
        width: WIDTH,
        height: HEIGHT,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discovery::{extract_features, extract_ocel_features};
    use crate::eventlog::EventLogBuilder;
    use crate::testutil::{log1, ocel1};

    fn count_marks(text: &str, mark: &str) -> usize {
        text.matches(&format!("<{mark} ")).count()
    }

    #[test]
    fn dotted_chart_has_one_dot_per_event() {
        let svg = dotted_chart_svg(&log1()).unwrap();
        assert_eq!(count_marks(&svg.text, "circle"), 8);
    }

    #[test]
    fn dotted_chart_has_one_row_per_case() {
        let svg = dotted_chart_svg(&log1()).unwrap();
        let mut ys: Vec<&str> = svg
            .text
            .lines()
            .filter(|l| l.contains("<circle"))
            .map(|l| {
                let start = l.find("cy=\"").unwrap() + 4;
                let end = l[start..].find('"').unwrap() + start;
                &l[start..end]
            })
            .collect();
        ys.sort_unstable();
        ys.dedup();
        assert_eq!(ys.len(), 3);
    }

    #[test]
    fn case_duration_marks_are_sorted_ascending() {
        let t: FeatureTable = extract_features(&log1());
        let svg = case_duration_graph_svg(&t).unwrap();
        let durations: Vec<&str> = svg
            .text
            .lines()
            .filter(|l| l.contains("data-duration"))
            .map(|l| {
                let start = l.find("data-duration=\"").unwrap() + 15;
                let end = l[start..].find('"').unwrap() + start;
                &l[start..end]
            })
            .collect();
        assert_eq!(durations, vec!["3600.0", "7200.0", "14400.0"]);
    }

    #[test]
    fn case_duration_works_for_object_lifecycles() {
        let t: FeatureTable = extract_ocel_features(&ocel1()).unwrap();
        let svg = case_duration_graph_svg(&t).unwrap();
        assert_eq!(count_marks(&svg.text, "circle"), 2);
    }

    #[test]
    fn single_case_yields_single_mark() {
        let mut b = EventLogBuilder::new();
        b.event("c", "A", 0);
        let t: FeatureTable = extract_features(&b.build().unwrap());
        let svg = case_duration_graph_svg(&t).unwrap();
        assert_eq!(count_marks(&svg.text, "circle"), 1);
    }

    #[test]
    fn histogram_bins_sum_to_event_count() {
        let svg = events_per_time_graph_svg(&log1());
        let total: u64 = svg
            .text
            .lines()
            .filter(|l| l.contains("data-count"))
            .map(|l| {
                let start = l.find("data-count=\"").unwrap() + 12;
                let end = l[start..].find('"').unwrap() + start;
                l[start..end].parse::<u64>().unwrap()
            })
            .sum();
        assert_eq!(total, 8);
        assert_eq!(count_marks(&svg.text, "rect") - 1, 20); // background rect + bins
    }

    #[test]
    fn zero_span_log_uses_single_bin() {
        let mut b = EventLogBuilder::new();
        b.event("c1", "A", 42);
        b.event("c2", "B", 42);
        let svg = events_per_time_graph_svg(&b.build().unwrap());
        let bins = count_marks(&svg.text, "rect") - 1;
        assert_eq!(bins, 1);
        assert!(svg.text.contains("data-count=\"2\""));
    }
}

//! The thirteen artifact renderers.

use std::collections::BTreeMap;

use crate::discovery::{
    DeclareModel, Dfg, FeatureTable, LogSkeleton, Ocdfg, PetriNet, TemporalProfile, VariantTable,
};
use crate::eventlog::{Case, ColumnType, EventLog, EventStreamWindow, Ocel, Value};
use crate::num::{quantile_lower, Scalar};

use super::{assemble, template, Abstraction, Budget};

fn fmt_secs<F: Scalar>(v: F) -> String {
    format!("{v:.1}")
}

/// Edge lines `a -> b : n`, ranked by descending frequency, ties
/// lexicographic.
pub fn abstract_dfg(dfg: &Dfg, budget: &Budget) -> Abstraction {
    let mut ranked: Vec<(&(String, String), &u64)> = dfg.edges.iter().collect();
    ranked.sort_by(|(ka, va), (kb, vb)| vb.cmp(va).then(ka.cmp(kb)));
    let entries = ranked
        .into_iter()
        .map(|((a, b), n)| format!("{a} -> {b} : {n}"))
        .collect();
    assemble(template("dfg.header"), entries, budget)
}

/// Variant lines `a,b,c : n cases`, ranked by descending count, ties
/// lexicographic.
pub fn abstract_variants(table: &VariantTable, budget: &Budget) -> Abstraction {
    let mut ranked: Vec<(&Vec<String>, u64)> = table
        .variants
        .iter()
        .map(|(seq, info)| (seq, info.count))
        .collect();
    ranked.sort_by(|(ka, va), (kb, vb)| vb.cmp(va).then(ka.cmp(kb)));
    let entries = ranked
        .into_iter()
        .map(|(seq, n)| format!("{} : {n} cases", seq.join(",")))
        .collect();
    assemble(template("variants.header"), entries, budget)
}

/// One entry per column: role columns first, then attribute columns
/// lexicographically. Numeric and timestamp columns report min/max; other
/// columns report up to the ten most frequent values.
pub fn abstract_log_attributes(log: &EventLog, budget: &Budget) -> Abstraction {
    let entries = log.columns().iter().map(|col| {
        let values = col.values();
        let present: Vec<&Value> = values.iter().filter(|v| !matches!(v, Value::Null)).collect();
        let mut rendered: Vec<String> = present.iter().map(|v| v.render()).collect();
        rendered.sort_unstable();
        rendered.dedup();
        let distinct = rendered.len();
        let detail = match col.ty {
            ColumnType::Integer | ColumnType::Float | ColumnType::Timestamp => {
                let min = present
                    .iter()
                    .map(|v| v.render())
                    .min_by(|a, b| numeric_cmp(col.ty, a, b))
                    .unwrap_or_default();
                let max = present
                    .iter()
                    .map(|v| v.render())
                    .max_by(|a, b| numeric_cmp(col.ty, a, b))
                    .unwrap_or_default();
                format!("min={min}, max={max}")
            }
            ColumnType::String | ColumnType::Boolean => {
                let mut freq: BTreeMap<String, u64> = BTreeMap::new();
                for v in &present {
                    *freq.entry(v.render()).or_insert(0) += 1;
                }
                let mut ranked: Vec<(String, u64)> = freq.into_iter().collect();
                ranked.sort_by(|(ka, va), (kb, vb)| vb.cmp(va).then(ka.cmp(kb)));
                let top: Vec<String> = ranked
                    .into_iter()
                    .take(10)
                    .map(|(v, n)| format!("{v} ({n})"))
                    .collect();
                format!("top values: {}", top.join(", "))
            }
        };
        format!(
            "{} : type={}, distinct={distinct}, {detail}",
            col.name,
            col.ty.name()
        )
    });
    assemble(template("log_attributes.header"), entries.collect(), budget)
}

fn numeric_cmp(ty: ColumnType, a: &str, b: &str) -> std::cmp::Ordering {
    match ty {
        ColumnType::Integer => {
            let (a, b) = (a.parse::<i64>().ok(), b.parse::<i64>().ok());
            a.cmp(&b)
        }
        ColumnType::Float => {
            let (a, b) = (a.parse::<f64>().ok(), b.parse::<f64>().ok());
            a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
        }
        // canonical timestamp rendering sorts chronologically
        _ => a.cmp(b),
    }
}

/// Quantile lines per feature, lexicographic by feature name.
pub fn abstract_log_features<F: Scalar>(table: &FeatureTable<F>, budget: &Budget) -> Abstraction {
    assemble(
        template("log_features.header"),
        feature_entries(table),
        budget,
    )
}

/// Same quantile rendering as [`abstract_log_features`], for per-object
/// OCEL features.
pub fn abstract_ocel_features<F: Scalar>(table: &FeatureTable<F>, budget: &Budget) -> Abstraction {
    assemble(
        template("ocel_features.header"),
        feature_entries(table),
        budget,
    )
}

fn feature_entries<F: Scalar>(table: &FeatureTable<F>) -> Vec<String> {
    let mut names: Vec<&String> = table.feature_names.iter().collect();
    names.sort_unstable();
    names
        .into_iter()
        .map(|name| {
            let mut values = table.column(name).unwrap_or_default();
            values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
            let fmt = |v: F| {
                if name.ends_with("_seconds") {
                    fmt_secs(v)
                } else {
                    format!("{v:.0}")
                }
            };
            if values.is_empty() {
                return format!("{name} : no rows");
            }
            let qs = [0.0, 0.25, 0.5, 0.75, 1.0]
                .iter()
                .zip(["q0", "q25", "q50", "q75", "q100"])
                .map(|(&q, label)| format!("{label}={}", fmt(quantile_lower(&values, q))))
                .collect::<Vec<_>>()
                .join(", ");
            format!("{name} : {qs}")
        })
        .collect()
}

/// Chronological event lines of one case with seconds since case start.
pub fn abstract_case(case: &Case, budget: &Budget) -> Abstraction {
    let start = case.events.first().map(|e| e.timestamp).unwrap_or(0);
    let entries = case
        .events
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let offset = crate::num::micros_to_seconds::<f64>(e.timestamp - start);
            let mut line = format!(
                "{}. {} @ {} (+{}s)",
                i + 1,
                e.activity,
                crate::eventlog::format_timestamp(e.timestamp),
                fmt_secs(offset)
            );
            if !e.attributes.is_empty() {
                let attrs: Vec<String> = e
                    .attributes
                    .iter()
                    .map(|(k, v)| format!("{k}={}", v.render()))
                    .collect();
                line.push_str(&format!(" | {}", attrs.join(", ")));
            }
            line
        })
        .collect();
    assemble(template("case.header"), entries, budget)
}

/// All objects (by id), then all events (chronological) with their related
/// objects.
pub fn abstract_ocel(ocel: &Ocel, budget: &Budget) -> Abstraction {
    let mut entries: Vec<String> = Vec::new();
    let mut objects: Vec<&crate::eventlog::OcelObject> = ocel.objects.iter().collect();
    objects.sort_by(|a, b| a.id.cmp(&b.id));
    for o in objects {
        entries.push(format!("{}({})", o.id, o.object_type));
    }

    let mut events: Vec<(usize, &crate::eventlog::OcelEvent)> =
        ocel.events.iter().enumerate().collect();
    events.sort_by_key(|(i, e)| (e.timestamp, *i));
    for (_, e) in events {
        let related: Vec<String> = ocel
            .relations
            .iter()
            .filter(|r| r.event_id == e.id)
            .map(|r| {
                let ty = ocel
                    .object(&r.object_id)
                    .map(|o| o.object_type.as_str())
                    .unwrap_or("?");
                format!("{}({ty})", r.object_id)
            })
            .collect();
        entries.push(format!(
            "{} {} {} objects: {}",
            e.id,
            e.activity,
            crate::eventlog::format_timestamp(e.timestamp),
            related.join(", ")
        ));
    }
    assemble(template("ocel.header"), entries, budget)
}

/// Typed edge lines grouped per object type; types ranked by total edge
/// frequency descending, edges by frequency within each type.
pub fn abstract_ocel_ocdfg(ocdfg: &Ocdfg, budget: &Budget) -> Abstraction {
    let mut types: Vec<(&String, u64)> = ocdfg
        .graphs
        .iter()
        .map(|(ty, g)| (ty, g.total_edge_frequency()))
        .collect();
    types.sort_by(|(ka, va), (kb, vb)| vb.cmp(va).then(ka.cmp(kb)));
    let mut entries = Vec::new();
    for (ty, _) in types {
        let graph = &ocdfg.graphs[ty];
        let mut ranked: Vec<(&(String, String), &u64)> = graph.edges.iter().collect();
        ranked.sort_by(|(ka, va), (kb, vb)| vb.cmp(va).then(ka.cmp(kb)));
        for ((a, b), n) in ranked {
            entries.push(format!("{ty}: {a} -> {b} : {n}"));
        }
    }
    assemble(template("ocdfg.header"), entries, budget)
}

/// Chronological stream lines `case <id> : activity @ timestamp`.
pub fn abstract_event_stream(window: &EventStreamWindow, budget: &Budget) -> Abstraction {
    let entries = window
        .events
        .iter()
        .map(|e| {
            format!(
                "case {} : {} @ {}",
                e.case_id,
                e.activity,
                crate::eventlog::format_timestamp(e.timestamp)
            )
        })
        .collect();
    assemble(template("event_stream.header"), entries, budget)
}

/// Pair lines `a -> b : mean Xs, stdev Ys (N obs)`, ranked by descending
/// observation count.
pub fn abstract_temporal_profile<F: Scalar>(
    profile: &TemporalProfile<F>,
    budget: &Budget,
) -> Abstraction {
    let mut ranked: Vec<(&(String, String), &crate::discovery::PairProfile<F>)> =
        profile.pairs.iter().collect();
    ranked.sort_by(|(ka, va), (kb, vb)| {
        vb.observation_count
            .cmp(&va.observation_count)
            .then(ka.cmp(kb))
    });
    let entries = ranked
        .into_iter()
        .map(|((a, b), p)| {
            format!(
                "{a} -> {b} : mean {}s, stdev {}s ({} obs)",
                fmt_secs(p.mean_seconds),
                fmt_secs(p.stdev_seconds),
                p.observation_count
            )
        })
        .collect();
    assemble(template("temporal_profile.header"), entries, budget)
}

/// Sections: places, transitions (label or `tau[id]`), arcs, markings. The
/// header explains token semantics; entries are lexicographic per section.
pub fn abstract_petri_net(net: &PetriNet, budget: &Budget) -> Abstraction {
    let mut entries: Vec<String> = Vec::new();
    for p in &net.places {
        entries.push(format!("place {p}"));
    }
    let mut transitions: Vec<String> = net
        .transitions
        .keys()
        .map(|id| format!("transition {}", net.transition_display(id)))
        .collect();
    transitions.sort_unstable();
    entries.extend(transitions);

    let endpoint = |id: &str| -> String {
        if net.places.contains(id) {
            id.to_string()
        } else {
            net.transition_display(id)
        }
    };
    let mut arcs: Vec<String> = net
        .arcs
        .iter()
        .map(|(s, t)| format!("arc {} -> {}", endpoint(s), endpoint(t)))
        .collect();
    arcs.sort_unstable();
    entries.extend(arcs);

    for (label, marking) in [("initial", &net.initial_marking), ("final", &net.final_marking)] {
        if !marking.is_empty() {
            let parts: Vec<String> = marking.iter().map(|(p, n)| format!("{p}:{n}")).collect();
            entries.push(format!("{label}: {}", parts.join(", ")));
        }
    }
    assemble(template("petri_net.header"), entries, budget)
}

/// Constraint lines `template(a[,b])` ranked by template name then
/// parameters; the header glosses each template present in the model.
pub fn abstract_declare(model: &DeclareModel, budget: &Budget) -> Abstraction {
    if model.is_empty() {
        return assemble(template("declare.empty"), Vec::new(), budget);
    }
    let mut present: Vec<&'static str> = model
        .templates_present()
        .iter()
        .map(|t| t.name())
        .collect();
    present.sort_unstable();
    let mut header = template("declare.header").to_string();
    for name in &present {
        header.push('\n');
        header.push_str(template(&format!("declare.gloss.{name}")));
    }

    let mut constraints: Vec<(&'static str, &Vec<String>)> = Vec::new();
    for (t, list) in &model.constraints {
        for (params, _) in list {
            constraints.push((t.name(), params));
        }
    }
    constraints.sort();
    let entries = constraints
        .into_iter()
        .map(|(name, params)| format!("{name}({})", params.join(",")))
        .collect();
    assemble(&header, entries, budget)
}

/// Relation lines prefixed per family; the fixed header glosses all six
/// families.
pub fn abstract_log_skeleton(skeleton: &LogSkeleton, budget: &Budget) -> Abstraction {
    let mut entries: Vec<String> = Vec::new();
    for (a, b) in &skeleton.equivalence {
        entries.push(format!("equivalence: {a} = {b}"));
    }
    for (b, a) in &skeleton.always_before {
        entries.push(format!("always_before: {b} <- {a}"));
    }
    for (a, b) in &skeleton.always_after {
        entries.push(format!("always_after: {a} -> {b}"));
    }
    for (a, b) in &skeleton.never_together {
        entries.push(format!("never_together: {a} # {b}"));
    }
    for (a, b) in &skeleton.directly_follows {
        entries.push(format!("directly_follows: {a} -> {b}"));
    }
    for (a, f) in &skeleton.activity_frequencies {
        entries.push(format!("frequency: {a} : min {}, max {}", f.min, f.max));
    }
    assemble(template("skeleton.header"), entries, budget)
}

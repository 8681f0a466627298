//! DOT emission for DFGs, Petri nets and OC-DFGs.

use std::collections::BTreeSet;

use crate::discovery::{Dfg, Ocdfg, PerformanceDfg, PetriNet};
use crate::num::Scalar;

use super::{palette_color, DotGraph, DotKind};

const START_NODE: &str = "__start__";
const END_NODE: &str = "__end__";

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per activity plus artificial start/end nodes; edge labels carry
/// frequencies.
pub fn dfg_to_dot(dfg: &Dfg) -> DotGraph {
    let mut out = String::from("digraph dfg {\n  rankdir=LR;\n");
    out.push_str(&format!(
        "  {} [shape=circle, label=\"start\"];\n",
        quoted(START_NODE)
    ));
    out.push_str(&format!(
        "  {} [shape=doublecircle, label=\"end\"];\n",
        quoted(END_NODE)
    ));
    let mut activities: BTreeSet<&str> = BTreeSet::new();
    for (a, b) in dfg.edges.keys() {
        activities.insert(a);
        activities.insert(b);
    }
    activities.extend(dfg.start_activities.keys().map(String::as_str));
    activities.extend(dfg.end_activities.keys().map(String::as_str));
    for act in &activities {
        out.push_str(&format!("  {} [shape=box];\n", quoted(act)));
    }
    for ((a, b), n) in &dfg.edges {
        out.push_str(&format!(
            "  {} -> {} [label=\"{n}\"];\n",
            quoted(a),
            quoted(b)
        ));
    }
    for (a, n) in &dfg.start_activities {
        out.push_str(&format!(
            "  {} -> {} [label=\"{n}\"];\n",
            quoted(START_NODE),
            quoted(a)
        ));
    }
    for (a, n) in &dfg.end_activities {
        out.push_str(&format!(
            "  {} -> {} [label=\"{n}\"];\n",
            quoted(a),
            quoted(END_NODE)
        ));
    }
    out.push_str("}\n");
    DotGraph {
        text: out,
        kind: DotKind::DfgFrequency,
    }
}

/// Like [`dfg_to_dot`] with mean seconds (one decimal) as edge labels.
pub fn performance_dfg_to_dot<F: Scalar>(perf: &PerformanceDfg<F>) -> DotGraph {
    let mut out = String::from("digraph performance_dfg {\n  rankdir=LR;\n");
    let mut activities: BTreeSet<&str> = BTreeSet::new();
    for (a, b) in perf.edges.keys() {
        activities.insert(a);
        activities.insert(b);
    }
    for act in &activities {
        out.push_str(&format!("  {} [shape=box];\n", quoted(act)));
    }
    for ((a, b), stats) in &perf.edges {
        out.push_str(&format!(
            "  {} -> {} [label=\"{:.1}s\"];\n",
            quoted(a),
            quoted(b),
            stats.mean_seconds
        ));
    }
    out.push_str("}\n");
    DotGraph {
        text: out,
        kind: DotKind::DfgPerformance,
    }
}

/// Places as circles, transitions as boxes (silent ones filled black),
/// markings as token counts inside the place label.
pub fn petri_net_to_dot(net: &PetriNet) -> DotGraph {
    let mut out = String::from("digraph petri_net {\n  rankdir=LR;\n");
    for place in &net.places {
        let mut label = place.clone();
        if let Some(n) = net.initial_marking.get(place) {
            label.push_str(&format!(" [init:{n}]"));
        }
        if let Some(n) = net.final_marking.get(place) {
            label.push_str(&format!(" [final:{n}]"));
        }
        out.push_str(&format!(
            "  {} [shape=circle, label={}];\n",
            quoted(place),
            quoted(&label)
        ));
    }
    for (id, label) in &net.transitions {
        match label {
            Some(l) => out.push_str(&format!(
                "  {} [shape=box, label={}];\n",
                quoted(id),
                quoted(l)
            )),
            None => out.push_str(&format!(
                "  {} [shape=box, style=filled, fillcolor=black, label=\"\"];\n",
                quoted(id)
            )),
        }
    }
    for (source, target) in &net.arcs {
        out.push_str(&format!("  {} -> {};\n", quoted(source), quoted(target)));
    }
    out.push_str("}\n");
    DotGraph {
        text: out,
        kind: DotKind::PetriNet,
    }
}

/// One edge color per object type, assigned from the fixed palette in type
/// order; edge labels carry `type: frequency`.
pub fn ocdfg_to_dot(ocdfg: &Ocdfg) -> DotGraph {
    let mut out = String::from("digraph ocdfg {\n  rankdir=LR;\n");
    let mut activities: BTreeSet<&str> = BTreeSet::new();
    for graph in ocdfg.graphs.values() {
        for (a, b) in graph.edges.keys() {
            activities.insert(a);
            activities.insert(b);
        }
        activities.extend(graph.start_activities.keys().map(String::as_str));
    }
    for act in &activities {
        out.push_str(&format!("  {} [shape=box];\n", quoted(act)));
    }
    for (idx, (ty, graph)) in ocdfg.graphs.iter().enumerate() {
        let color = palette_color(idx);
        for ((a, b), n) in &graph.edges {
            out.push_str(&format!(
                "  {} -> {} [label=\"{ty}: {n}\", color=\"{color}\"];\n",
                quoted(a),
                quoted(b)
            ));
        }
    }
    out.push_str("}\n");
    DotGraph {
        text: out,
        kind: DotKind::Ocdfg,
    }
}

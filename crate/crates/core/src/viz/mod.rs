//! Visual abstractions: DOT documents for graph-shaped artifacts and SVG
//! documents for charts, plus optional rasterization through an external
//! renderer.

mod dot;
mod save;
mod svg;

pub use dot::{dfg_to_dot, ocdfg_to_dot, performance_dfg_to_dot, petri_net_to_dot};
pub use save::{rasterize, save_visualization, VisualDocument};
pub use svg::{case_duration_graph_svg, dotted_chart_svg, events_per_time_graph_svg};

/// A DOT-language document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub text: String,
    pub kind: DotKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotKind {
    DfgFrequency,
    DfgPerformance,
    PetriNet,
    Ocdfg,
}

/// An SVG 1.1 document with fixed pixel dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument {
    pub text: String,
    pub kind: SvgKind,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvgKind {
    DottedChart,
    CaseDurationGraph,
    EventsPerTimeGraph,
}

/// Fixed 10-color palette; indexes wrap around. Colors are assigned to
/// activities and object types in first-appearance order.
pub(crate) const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

pub(crate) fn palette_color(index: usize) -> &'static str {
    PALETTE[index % PALETTE.len()]
}

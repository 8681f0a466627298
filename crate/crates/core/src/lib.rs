//! Process-mining toolkit for LLM-assisted event data analysis.
//!
//! The crate covers four workflows over event logs and object-centric event
//! logs:
//!
//! 1. **Artifact discovery** — directly-follows graphs, variants, temporal
//!    profiles, log skeletons, DECLARE constraints, per-case features,
//!    object-centric DFGs and Petri net ingestion ([`discovery`]).
//! 2. **Prompt abstractions** — every artifact serializes to deterministic,
//!    length-budgeted text suitable for an LLM prompt ([`abstraction`]), or to
//!    DOT/SVG documents for vision models ([`viz`]).
//! 3. **SQL querying** — logs register as in-memory tables; natural-language
//!    questions become prompts whose SQL answers run behind a strict
//!    SELECT-only gate ([`query`]).
//! 4. **LLM bridging** — an OpenAI-compatible chat connector with image
//!    support, plus an automatic hypothesis generation/validation loop
//!    ([`llm`]).
//!
//! Statistics-bearing artifacts are generic over the scalar type through
//! [`num::Scalar`]; the crate-root names default to `f64`, with `*32` aliases
//! for single precision.

pub mod abstraction;
pub mod discovery;
pub mod error;
pub mod eventlog;
pub mod llm;
pub mod manual;
pub mod num;
pub mod query;
pub mod viz;

pub use error::{Error, Result};

pub use eventlog::{
    export_csv, export_xes, get_case, import_csv, import_ocel_json, import_xes,
    last_events_window, Case, CaseEvent, Column, ColumnType, EventLog, EventLogBuilder,
    EventStreamWindow, Ocel, OcelEvent, OcelObject, OcelRelation, RoleMap, Value,
};

pub use discovery::{
    compute_dfg, compute_ocdfg, compute_performance_dfg, compute_temporal_profile,
    compute_variants, discover_declare, discover_log_skeleton, extract_features,
    extract_ocel_features, import_pnml, DeclareModel, DeclareTemplate, Dfg, EdgePerformance,
    FeatureTable, LogSkeleton, Ocdfg, PairProfile, PerformanceDfg, PetriNet, VariantTable,
};

pub use abstraction::{
    abstract_case, abstract_declare, abstract_dfg, abstract_event_stream, abstract_log_attributes,
    abstract_log_features, abstract_log_skeleton, abstract_ocel, abstract_ocel_features,
    abstract_ocel_ocdfg, abstract_petri_net, abstract_temporal_profile, abstract_variants,
    Abstraction, Budget,
};

pub use viz::{
    case_duration_graph_svg, dfg_to_dot, dotted_chart_svg, events_per_time_graph_svg,
    ocdfg_to_dot, performance_dfg_to_dot, petri_net_to_dot, save_visualization, DotGraph,
    DotKind, SvgDocument, SvgKind,
};

pub use query::{
    build_nl2sql_prompt, describe_schema, execute_sql, parse_sql_from_response, QueryResult,
    QuerySource, SchemaDescription, SqlValue,
};

pub use llm::{
    chat_complete, direct_insight_query, explain_visualization, generate_hypotheses,
    run_hypothesis_loop, ChatMessage, Connector, HttpConnector, Hypothesis, HypothesisRound,
    LlmConfig, MessagePart, Role, TranscriptConnector, Verdict,
};

pub use manual::export_api_manual;

/// Single-precision alias of [`PerformanceDfg`].
pub type PerformanceDfg32 = discovery::PerformanceDfg<f32>;
/// Single-precision alias of [`TemporalProfile`].
pub type TemporalProfile32 = discovery::TemporalProfile<f32>;
/// Single-precision alias of [`FeatureTable`].
pub type FeatureTable32 = discovery::FeatureTable<f32>;

/// Double-precision temporal profile, the crate default.
pub type TemporalProfile = discovery::TemporalProfile<f64>;

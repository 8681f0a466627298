//! Discovery of process-mining artifacts from event logs and OCELs.
//!
//! Every operation here is an exact, pure function of its input: no noise
//! thresholds, no sampling. Filtering for prompt budgets happens later, in
//! the abstraction module.

mod declare;
mod dfg;
mod features;
mod ocdfg;
mod petri;
mod skeleton;
mod temporal;
mod variants;

pub use declare::{discover_declare, DeclareModel, DeclareTemplate};
pub use dfg::{compute_dfg, compute_performance_dfg, Dfg, EdgePerformance, PerformanceDfg};
pub use features::{extract_features, extract_ocel_features, FeatureRow, FeatureTable};
pub use ocdfg::{compute_ocdfg, Ocdfg};
pub use petri::{import_pnml, parse_pnml, PetriNet};
pub use skeleton::{discover_log_skeleton, ActivityFrequency, LogSkeleton};
pub use temporal::{compute_temporal_profile, PairProfile, TemporalProfile};
pub use variants::{compute_variants, VariantInfo, VariantTable};

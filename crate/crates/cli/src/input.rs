//! Input loading by file extension.

use std::path::Path;

use pmllm::{
    import_csv, import_ocel_json, import_pnml, import_xes, EventLog, Ocel, PetriNet, RoleMap,
};

pub enum Input {
    Log(EventLog),
    Ocel(Ocel),
    Net(PetriNet),
}

pub struct LogOptions {
    pub roles: RoleMap,
    pub timestamp_format: String,
}

impl Default for LogOptions {
    fn default() -> Self {
        LogOptions {
            roles: RoleMap::default(),
            timestamp_format: pmllm::eventlog::DEFAULT_TIMESTAMP_FORMAT.to_string(),
        }
    }
}

/// `.csv`/`.xes` load as event logs, `.json`/`.jsonocel`/`.ocel` as OCELs,
/// `.pnml` as Petri nets.
pub fn load(path: &Path, opts: &LogOptions) -> Result<Input, pmllm::Error> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    match ext.as_str() {
        "csv" => Ok(Input::Log(import_csv(
            path,
            &opts.roles,
            &opts.timestamp_format,
        )?)),
        "xes" => Ok(Input::Log(import_xes(path)?)),
        "json" | "jsonocel" | "ocel" => Ok(Input::Ocel(import_ocel_json(path)?)),
        "pnml" => Ok(Input::Net(import_pnml(path)?)),
        other => Err(pmllm::Error::InvalidArgument(format!(
            "unsupported input extension `{other}` (expected csv, xes, json, jsonocel, ocel or pnml)"
        ))),
    }
}

impl Input {
    pub fn expect_log(self) -> Result<EventLog, pmllm::Error> {
        match self {
            Input::Log(log) => Ok(log),
            _ => Err(pmllm::Error::InvalidArgument(
                "this operation needs an event log input (.csv or .xes)".into(),
            )),
        }
    }

    pub fn expect_ocel(self) -> Result<Ocel, pmllm::Error> {
        match self {
            Input::Ocel(ocel) => Ok(ocel),
            _ => Err(pmllm::Error::InvalidArgument(
                "this operation needs an OCEL input (.json/.jsonocel/.ocel)".into(),
            )),
        }
    }

    pub fn expect_net(self) -> Result<PetriNet, pmllm::Error> {
        match self {
            Input::Net(net) => Ok(net),
            _ => Err(pmllm::Error::InvalidArgument(
                "this operation needs a Petri net input (.pnml)".into(),
            )),
        }
    }
}

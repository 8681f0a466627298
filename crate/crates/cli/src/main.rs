//! `pmllm` — process-mining abstractions, SQL and LLM flows from the shell.
//!
//! Exit codes: 0 success; 1 generic failure or no valid hypothesis;
//! 2 input/parse errors; 3 unknown kind; 4 SQL gate rejection; 5 malformed
//! transcript or hypotheses; 6 renderer unavailable. Stdout carries
//! payloads only; diagnostics go to stderr.

mod config;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CliConfig, ConfigOverrides};
use input::{load, Input, LogOptions};
use pmllm::{
    abstraction::{self, Budget},
    discovery, eventlog, llm, query, viz, Connector, Error, QuerySource, RoleMap,
    TranscriptConnector, Verdict,
};

#[derive(Parser)]
#[command(name = "pmllm", version, about = "Process mining abstractions, SQL and LLM flows")]
struct Cli {
    /// Flat key=value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    base_url: Option<String>,
    #[arg(long, global = true)]
    model: Option<String>,
    /// Environment variable holding the API key.
    #[arg(long, global = true)]
    api_key_env: Option<String>,
    /// Program used to rasterize DOT/SVG to PNG (invoked as `<program> -Tpng`).
    #[arg(long, global = true)]
    renderer: Option<String>,
    #[arg(long, global = true)]
    timeout_seconds: Option<u64>,
    #[arg(long, global = true)]
    max_retries: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a textual abstraction of a log, OCEL or Petri net.
    Abstract {
        input: PathBuf,
        /// One of: dfg, variants, log_attributes, log_features, case, ocel,
        /// ocel_ocdfg, ocel_features, event_stream, temporal_profile,
        /// petri_net, declare, log_skeleton.
        kind: String,
        #[arg(long)]
        max_chars: Option<usize>,
        /// Omit the fixed header.
        #[arg(long)]
        no_header: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Case id for `kind = case`.
        #[arg(long)]
        case_id: Option<String>,
        /// Window size for `kind = event_stream`.
        #[arg(long, default_value_t = 10)]
        last: usize,
        #[arg(long)]
        case_col: Option<String>,
        #[arg(long)]
        activity_col: Option<String>,
        #[arg(long)]
        timestamp_col: Option<String>,
        #[arg(long)]
        timestamp_format: Option<String>,
    },
    /// Run SQL over the event tables, or build/execute an NL-to-SQL prompt.
    Query {
        input: PathBuf,
        #[arg(long, conflicts_with = "question")]
        sql: Option<String>,
        #[arg(long)]
        question: Option<String>,
        /// Send the question to the LLM, parse and run the returned SQL.
        #[arg(long, conflicts_with = "dry_run")]
        execute: bool,
        /// Print the NL-to-SQL prompt without any network activity (default).
        #[arg(long)]
        dry_run: bool,
        #[arg(long, value_parser = ["text", "csv"], default_value = "text")]
        format: String,
        #[arg(long)]
        domain_knowledge: Option<String>,
        /// Scripted responses instead of a live endpoint.
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long)]
        case_col: Option<String>,
        #[arg(long)]
        activity_col: Option<String>,
        #[arg(long)]
        timestamp_col: Option<String>,
        #[arg(long)]
        timestamp_format: Option<String>,
    },
    /// Generate, execute and validate hypotheses over the event data.
    Hypothesize {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_rounds: usize,
        #[arg(long)]
        focus: Option<String>,
        /// Scripted responses instead of a live endpoint.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Render a visualization, rasterize it and ask the vision model.
    #[command(name = "explain-viz")]
    ExplainViz {
        input: PathBuf,
        /// One of: dfg, performance_dfg, petri_net, ocdfg, dotted_chart,
        /// case_duration, events_per_time.
        kind: String,
        #[arg(long)]
        question: String,
        /// Also write the rendered PNG here.
        #[arg(long)]
        out_image: Option<PathBuf>,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Write the API manual.
    Manual {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between CSV and XES event logs.
    Convert { input: PathBuf, output: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = ConfigOverrides {
        base_url: cli.base_url.clone(),
        model: cli.model.clone(),
        api_key_env: cli.api_key_env.clone(),
        timeout_seconds: cli.timeout_seconds,
        max_retries: cli.max_retries,
        renderer: cli.renderer.clone(),
        max_chars: None,
    };
    let cfg = match CliConfig::resolve(cli.config.as_deref(), &overrides) {
        Ok(cfg) => cfg,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    match dispatch(cli.command, &cfg) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NonSelectStatement => 4,
        Error::MalformedHypotheses(_) | Error::MalformedResponse(_) | Error::NoSqlFound => 5,
        Error::RendererUnavailable => 6,
        Error::MissingColumn(_)
        | Error::TimestampParse { .. }
        | Error::EmptyLog
        | Error::XmlParse(_)
        | Error::MissingStandardAttribute(_)
        | Error::Io(_)
        | Error::SchemaViolation(_)
        | Error::DanglingReference(_)
        | Error::UnknownCase(_)
        | Error::EmptyOcel
        | Error::NonBipartiteArc(..)
        | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

fn log_options(
    case_col: Option<String>,
    activity_col: Option<String>,
    timestamp_col: Option<String>,
    timestamp_format: Option<String>,
) -> LogOptions {
    let defaults = LogOptions::default();
    let mut roles = RoleMap::default();
    if let Some(c) = case_col {
        roles.case_id = c;
    }
    if let Some(a) = activity_col {
        roles.activity = a;
    }
    if let Some(t) = timestamp_col {
        roles.timestamp = t;
    }
    LogOptions {
        roles,
        timestamp_format: timestamp_format.unwrap_or(defaults.timestamp_format),
    }
}

fn connector_for(
    transcript: Option<&Path>,
    cfg: &CliConfig,
) -> Result<Box<dyn Connector>, Error> {
    match transcript {
        Some(path) => Ok(Box::new(TranscriptConnector::from_file(path)?)),
        None => {
            let llm_cfg = cfg
                .llm_config()
                .map_err(Error::InvalidArgument)?;
            Ok(Box::new(llm::HttpConnector::new(llm_cfg)?))
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    let normalized = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match out {
        Some(path) => std::fs::write(path, normalized)?,
        None => print!("{normalized}"),
    }
    Ok(())
}

fn dispatch(command: Command, cfg: &CliConfig) -> Result<u8, Error> {
    match command {
        Command::Abstract {
            input,
            kind,
            max_chars,
            no_header,
            out,
            case_id,
            last,
            case_col,
            activity_col,
            timestamp_col,
            timestamp_format,
        } => {
            let budget = Budget {
                max_chars: max_chars.unwrap_or(cfg.max_chars),
                include_header: !no_header,
            };
            let opts = log_options(case_col, activity_col, timestamp_col, timestamp_format);
            cmd_abstract(&input, &kind, &budget, case_id.as_deref(), last, &opts, out.as_deref())
        }
        Command::Query {
            input,
            sql,
            question,
            execute,
            dry_run: _,
            format,
            domain_knowledge,
            transcript,
            case_col,
            activity_col,
            timestamp_col,
            timestamp_format,
        } => {
            let opts = log_options(case_col, activity_col, timestamp_col, timestamp_format);
            cmd_query(
                &input,
                sql.as_deref(),
                question.as_deref(),
                execute,
                &format,
                domain_knowledge.as_deref(),
                transcript.as_deref(),
                &opts,
                cfg,
            )
        }
        Command::Hypothesize {
            input,
            max_rounds,
            focus,
            transcript,
        } => cmd_hypothesize(&input, max_rounds, focus.as_deref(), transcript.as_deref(), cfg),
        Command::ExplainViz {
            input,
            kind,
            question,
            out_image,
            transcript,
        } => cmd_explain_viz(
            &input,
            &kind,
            &question,
            out_image.as_deref(),
            transcript.as_deref(),
            cfg,
        ),
        Command::Manual { out } => {
            emit(&pmllm::export_api_manual(), out.as_deref())?;
            Ok(0)
        }
        Command::Convert { input, output } => cmd_convert(&input, &output),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_abstract(
    input: &Path,
    kind: &str,
    budget: &Budget,
    case_id: Option<&str>,
    last: usize,
    opts: &LogOptions,
    out: Option<&Path>,
) -> Result<u8, Error> {
    const KINDS: [&str; 13] = [
        "dfg",
        "variants",
        "log_attributes",
        "log_features",
        "case",
        "ocel",
        "ocel_ocdfg",
        "ocel_features",
        "event_stream",
        "temporal_profile",
        "petri_net",
        "declare",
        "log_skeleton",
    ];
    if !KINDS.contains(&kind) {
        eprintln!("error: unknown abstraction kind `{kind}` (expected one of {KINDS:?})");
        return Ok(3);
    }

    let loaded = load(input, opts)?;
    let abstraction = match kind {
        "dfg" => {
            let log = loaded.expect_log()?;
            abstraction::abstract_dfg(&discovery::compute_dfg(&log), budget)
        }
        "variants" => {
            let log = loaded.expect_log()?;
            abstraction::abstract_variants(&discovery::compute_variants(&log), budget)
        }
        "log_attributes" => {
            let log = loaded.expect_log()?;
            abstraction::abstract_log_attributes(&log, budget)
        }
        "log_features" => {
            let log = loaded.expect_log()?;
            let table: discovery::FeatureTable = discovery::extract_features(&log);
            abstraction::abstract_log_features(&table, budget)
        }
        "case" => {
            let log = loaded.expect_log()?;
            let id = case_id.ok_or_else(|| {
                Error::InvalidArgument("kind `case` requires --case-id".into())
            })?;
            abstraction::abstract_case(&eventlog::get_case(&log, id)?, budget)
        }
        "ocel" => abstraction::abstract_ocel(&loaded.expect_ocel()?, budget),
        "ocel_ocdfg" => {
            let ocel = loaded.expect_ocel()?;
            abstraction::abstract_ocel_ocdfg(&discovery::compute_ocdfg(&ocel)?, budget)
        }
        "ocel_features" => {
            let ocel = loaded.expect_ocel()?;
            let table: discovery::FeatureTable = discovery::extract_ocel_features(&ocel)?;
            abstraction::abstract_ocel_features(&table, budget)
        }
        "event_stream" => {
            let log = loaded.expect_log()?;
            abstraction::abstract_event_stream(&eventlog::last_events_window(&log, last), budget)
        }
        "temporal_profile" => {
            let log = loaded.expect_log()?;
            let tp: discovery::TemporalProfile = discovery::compute_temporal_profile(&log);
            abstraction::abstract_temporal_profile(&tp, budget)
        }
        "petri_net" => abstraction::abstract_petri_net(&loaded.expect_net()?, budget),
        "declare" => {
            let log = loaded.expect_log()?;
            abstraction::abstract_declare(&discovery::discover_declare(&log), budget)
        }
        "log_skeleton" => {
            let log = loaded.expect_log()?;
            abstraction::abstract_log_skeleton(&discovery::discover_log_skeleton(&log), budget)
        }
        _ => unreachable!("kind validated above"),
    };

    if abstraction.truncated {
        eprintln!(
            "note: truncated to {} of {} entries",
            abstraction.entries_included, abstraction.entries_total
        );
    }
    emit(&abstraction.text, out)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_query(
    input: &Path,
    sql: Option<&str>,
    question: Option<&str>,
    execute: bool,
    format: &str,
    domain_knowledge: Option<&str>,
    transcript: Option<&Path>,
    opts: &LogOptions,
    cfg: &CliConfig,
) -> Result<u8, Error> {
    let loaded = load(input, opts)?;
    let print_result = |result: &query::QueryResult| {
        if format == "csv" {
            print!("{}", result.to_csv());
        } else {
            print!("{}", result.to_text_table());
        }
        eprintln!("({} rows in {} ms)", result.row_count, result.elapsed_ms);
    };

    let run = |sql: &str| -> Result<query::QueryResult, Error> {
        match &loaded {
            Input::Log(log) => query::execute_sql(log, sql),
            Input::Ocel(ocel) => query::execute_sql(ocel, sql),
            Input::Net(_) => Err(Error::InvalidArgument(
                "query needs an event log or OCEL input".into(),
            )),
        }
    };

    match (sql, question) {
        (Some(sql), None) => {
            let result = run(sql)?;
            print_result(&result);
            Ok(0)
        }
        (None, Some(question)) => {
            let schema = match &loaded {
                Input::Log(log) => query::describe_schema(log),
                Input::Ocel(ocel) => query::describe_schema(ocel),
                Input::Net(_) => {
                    return Err(Error::InvalidArgument(
                        "query needs an event log or OCEL input".into(),
                    ))
                }
            };
            let prompt = query::build_nl2sql_prompt(&schema, question, domain_knowledge)?;
            if !execute {
                println!("{prompt}");
                return Ok(0);
            }
            let connector = connector_for(transcript, cfg)?;
            let response = connector.chat(&[llm::ChatMessage::user(prompt)])?;
            let sql = query::parse_sql_from_response(&response)?;
            eprintln!("sql: {sql}");
            let result = run(&sql)?;
            print_result(&result);
            Ok(0)
        }
        _ => Err(Error::InvalidArgument(
            "provide exactly one of --sql or --question".into(),
        )),
    }
}

fn cmd_hypothesize(
    input: &Path,
    max_rounds: usize,
    focus: Option<&str>,
    transcript: Option<&Path>,
    cfg: &CliConfig,
) -> Result<u8, Error> {
    let loaded = load(input, &LogOptions::default())?;
    let connector = connector_for(transcript, cfg)?;
    let rounds = match &loaded {
        Input::Log(log) => {
            llm::run_hypothesis_loop(QuerySource::Log(log), connector.as_ref(), max_rounds, focus)?
        }
        Input::Ocel(ocel) => llm::run_hypothesis_loop(
            QuerySource::Ocel(ocel),
            connector.as_ref(),
            max_rounds,
            focus,
        )?,
        Input::Net(_) => {
            return Err(Error::InvalidArgument(
                "hypothesize needs an event log or OCEL input".into(),
            ))
        }
    };

    let mut any_valid = false;
    for round in &rounds {
        println!("round {}:", round.round_index);
        for (i, h) in round.hypotheses.iter().enumerate() {
            let verdict = match h.verdict {
                Verdict::Valid => "valid",
                Verdict::Invalid => "invalid",
                Verdict::Error => "error",
                Verdict::Pending => "pending",
            };
            println!("  H{} [{verdict}] {}", i + 1, h.description);
            println!("     SQL: {}", h.sql);
            if !h.verdict_reason.is_empty() {
                println!("     reason: {}", h.verdict_reason);
            }
        }
        any_valid |= round.has_valid();
    }
    if any_valid {
        println!("result: valid hypothesis found in round {}", rounds.len());
        Ok(0)
    } else {
        println!("result: no valid hypothesis in {} rounds", rounds.len());
        Ok(1)
    }
}

fn cmd_explain_viz(
    input: &Path,
    kind: &str,
    question: &str,
    out_image: Option<&Path>,
    transcript: Option<&Path>,
    cfg: &CliConfig,
) -> Result<u8, Error> {
    const KINDS: [&str; 7] = [
        "dfg",
        "performance_dfg",
        "petri_net",
        "ocdfg",
        "dotted_chart",
        "case_duration",
        "events_per_time",
    ];
    if !KINDS.contains(&kind) {
        eprintln!("error: unknown visualization kind `{kind}` (expected one of {KINDS:?})");
        return Ok(3);
    }
    let loaded = load(input, &LogOptions::default())?;
    let text = match kind {
        "dfg" => viz::dfg_to_dot(&discovery::compute_dfg(&loaded.expect_log()?)).text,
        "performance_dfg" => {
            let log = loaded.expect_log()?;
            let perf: discovery::PerformanceDfg = discovery::compute_performance_dfg(&log);
            viz::performance_dfg_to_dot(&perf).text
        }
        "petri_net" => viz::petri_net_to_dot(&loaded.expect_net()?).text,
        "ocdfg" => viz::ocdfg_to_dot(&discovery::compute_ocdfg(&loaded.expect_ocel()?)?).text,
        "dotted_chart" => viz::dotted_chart_svg(&loaded.expect_log()?)?.text,
        "case_duration" => {
            let log = loaded.expect_log()?;
            let table: discovery::FeatureTable = discovery::extract_features(&log);
            viz::case_duration_graph_svg(&table)?.text
        }
        "events_per_time" => viz::events_per_time_graph_svg(&loaded.expect_log()?).text,
        _ => unreachable!("kind validated above"),
    };

    let Some(renderer) = cfg.renderer.as_deref() else {
        return Err(Error::RendererUnavailable);
    };
    let png = viz::rasterize(renderer, &text)?;
    let png_path: PathBuf = match out_image {
        Some(path) => {
            std::fs::write(path, &png)?;
            path.to_path_buf()
        }
        None => {
            let path = std::env::temp_dir().join(format!(
                "pmllm-viz-{}-{}.png",
                std::process::id(),
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_nanos())
                    .unwrap_or(0)
            ));
            std::fs::write(&path, &png)?;
            path
        }
    };

    let connector = connector_for(transcript, cfg)?;
    let answer = llm::explain_visualization(connector.as_ref(), &png_path, question, Some(renderer))?;
    if out_image.is_none() {
        let _ = std::fs::remove_file(&png_path);
    }
    println!("{answer}");
    Ok(0)
}

fn cmd_convert(input: &Path, output: &Path) -> Result<u8, Error> {
    let log = load(input, &LogOptions::default())?.expect_log()?;
    let ext = output
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    match ext.as_str() {
        "csv" => eventlog::export_csv(&log, output)?,
        "xes" => eventlog::export_xes(&log, output)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unsupported output extension `{other}` (expected csv or xes)"
            )))
        }
    }
    eprintln!("wrote {}", output.display());
    Ok(0)
}

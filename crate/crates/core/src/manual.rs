//! Plain-text API manual, exported for retrieval-augmented prompting.
//!
//! The manual enumerates every public operation with its signature, a
//! one-line description and one usage example, ordered by module then name.
//! Output is deterministic so the file can be versioned and diffed.

struct ManualEntry {
    module: &'static str,
    name: &'static str,
    signature: &'static str,
    description: &'static str,
    example: &'static str,
}

const ENTRIES: &[ManualEntry] = &[
    // module: abstraction
    ManualEntry {
        module: "abstraction",
        name: "abstract_case",
        signature: "abstract_case(case: &Case, budget: &Budget) -> Abstraction",
        description: "Chronological event lines of one case with seconds since case start.",
        example: "abstract_case(&get_case(&log, \"c1\")?, &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_declare",
        signature: "abstract_declare(model: &DeclareModel, budget: &Budget) -> Abstraction",
        description: "DECLARE constraints with a semantic gloss per template in the header.",
        example: "abstract_declare(&discover_declare(&log), &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_dfg",
        signature: "abstract_dfg(dfg: &Dfg, budget: &Budget) -> Abstraction",
        description: "Directly-follows edges as `a -> b : n`, most frequent first.",
        example: "abstract_dfg(&compute_dfg(&log), &Budget::chars(2000))",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_event_stream",
        signature: "abstract_event_stream(window: &EventStreamWindow, budget: &Budget) -> Abstraction",
        description: "The last events of the stream, one line per event.",
        example: "abstract_event_stream(&last_events_window(&log, 10), &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_log_attributes",
        signature: "abstract_log_attributes(log: &EventLog, budget: &Budget) -> Abstraction",
        description: "Column profile per attribute: type, distinct count, range or top values.",
        example: "abstract_log_attributes(&log, &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_log_features",
        signature: "abstract_log_features(table: &FeatureTable, budget: &Budget) -> Abstraction",
        description: "Per-feature quantiles (0/25/50/75/100%) of the case feature table.",
        example: "abstract_log_features(&extract_features(&log), &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_log_skeleton",
        signature: "abstract_log_skeleton(skeleton: &LogSkeleton, budget: &Budget) -> Abstraction",
        description: "Log skeleton relations, one prefixed line per relation.",
        example: "abstract_log_skeleton(&discover_log_skeleton(&log), &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_ocel",
        signature: "abstract_ocel(ocel: &Ocel, budget: &Budget) -> Abstraction",
        description: "Objects then events of an object-centric log, with related objects.",
        example: "abstract_ocel(&ocel, &Budget::chars(5000))",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_ocel_features",
        signature: "abstract_ocel_features(table: &FeatureTable, budget: &Budget) -> Abstraction",
        description: "Per-feature quantiles of the object feature table.",
        example: "abstract_ocel_features(&extract_ocel_features(&ocel)?, &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_ocel_ocdfg",
        signature: "abstract_ocel_ocdfg(ocdfg: &Ocdfg, budget: &Budget) -> Abstraction",
        description: "Typed DFG edges `type: a -> b : n`, grouped per object type.",
        example: "abstract_ocel_ocdfg(&compute_ocdfg(&ocel)?, &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_petri_net",
        signature: "abstract_petri_net(net: &PetriNet, budget: &Budget) -> Abstraction",
        description: "Places, transitions, arcs and markings of a Petri net.",
        example: "abstract_petri_net(&import_pnml(\"model.pnml\")?, &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_temporal_profile",
        signature: "abstract_temporal_profile(profile: &TemporalProfile, budget: &Budget) -> Abstraction",
        description: "Eventually-follows timing lines `a -> b : mean Xs, stdev Ys (N obs)`.",
        example: "abstract_temporal_profile(&compute_temporal_profile(&log), &Budget::default())",
    },
    ManualEntry {
        module: "abstraction",
        name: "abstract_variants",
        signature: "abstract_variants(table: &VariantTable, budget: &Budget) -> Abstraction",
        description: "Variant lines `a,b,c : n cases`, most common first.",
        example: "abstract_variants(&compute_variants(&log), &Budget::default())",
    },
    // module: cli
    ManualEntry {
        module: "cli",
        name: "abstract",
        signature: "pmllm abstract <INPUT> <KIND> [--max-chars N] [--no-header] [--out FILE]",
        description: "Prints one of the 13 textual abstractions of a log, OCEL or PNML input.",
        example: "pmllm abstract log.csv dfg --max-chars 2000",
    },
    ManualEntry {
        module: "cli",
        name: "convert",
        signature: "pmllm convert <INPUT> <OUTPUT>",
        description: "Converts between CSV and XES event log formats.",
        example: "pmllm convert log.csv log.xes",
    },
    ManualEntry {
        module: "cli",
        name: "explain-viz",
        signature: "pmllm explain-viz <INPUT> <KIND> --question Q [--out-image FILE]",
        description: "Renders a visualization, rasterizes it and asks the vision model about it.",
        example: "pmllm explain-viz log.csv dfg --question \"Can you explain the process?\"",
    },
    ManualEntry {
        module: "cli",
        name: "hypothesize",
        signature: "pmllm hypothesize <INPUT> [--max-rounds N] [--focus TEXT] [--transcript FILE]",
        description: "Runs the hypothesis generation/validation loop over a log or OCEL.",
        example: "pmllm hypothesize log.csv --max-rounds 3",
    },
    ManualEntry {
        module: "cli",
        name: "manual",
        signature: "pmllm manual [--out FILE]",
        description: "Writes this API manual.",
        example: "pmllm manual --out api.txt",
    },
    ManualEntry {
        module: "cli",
        name: "query",
        signature: "pmllm query <INPUT> (--sql SQL | --question Q) [--execute|--dry-run]",
        description: "Runs SQL against the event tables, or builds/executes an NL-to-SQL prompt.",
        example: "pmllm query log.csv --sql \"SELECT COUNT(DISTINCT case_id) FROM event_log\"",
    },
    // module: discovery
    ManualEntry {
        module: "discovery",
        name: "compute_dfg",
        signature: "compute_dfg(log: &EventLog) -> Dfg",
        description: "Directly-follows graph with edge frequencies and start/end activities.",
        example: "let dfg = compute_dfg(&log);",
    },
    ManualEntry {
        module: "discovery",
        name: "compute_ocdfg",
        signature: "compute_ocdfg(ocel: &Ocel) -> Result<Ocdfg>",
        description: "Per-object-type DFG over object lifecycles of an OCEL.",
        example: "let ocdfg = compute_ocdfg(&ocel)?;",
    },
    ManualEntry {
        module: "discovery",
        name: "compute_performance_dfg",
        signature: "compute_performance_dfg(log: &EventLog) -> PerformanceDfg",
        description: "Per-edge elapsed-seconds statistics (mean/median/min/max/count).",
        example: "let perf: PerformanceDfg = compute_performance_dfg(&log);",
    },
    ManualEntry {
        module: "discovery",
        name: "compute_temporal_profile",
        signature: "compute_temporal_profile(log: &EventLog) -> TemporalProfile",
        description: "Mean and population stdev of elapsed seconds per eventually-follows pair.",
        example: "let tp: TemporalProfile = compute_temporal_profile(&log);",
    },
    ManualEntry {
        module: "discovery",
        name: "compute_variants",
        signature: "compute_variants(log: &EventLog) -> VariantTable",
        description: "Cases grouped by exact activity sequence.",
        example: "let variants = compute_variants(&log);",
    },
    ManualEntry {
        module: "discovery",
        name: "discover_declare",
        signature: "discover_declare(log: &EventLog) -> DeclareModel",
        description: "All DECLARE constraints (12 templates) holding in every case.",
        example: "let model = discover_declare(&log);",
    },
    ManualEntry {
        module: "discovery",
        name: "discover_log_skeleton",
        signature: "discover_log_skeleton(log: &EventLog) -> LogSkeleton",
        description: "The six exact log skeleton relation families.",
        example: "let skeleton = discover_log_skeleton(&log);",
    },
    ManualEntry {
        module: "discovery",
        name: "extract_features",
        signature: "extract_features(log: &EventLog) -> FeatureTable",
        description: "Per-case features: event count, duration seconds, per-activity counts.",
        example: "let features: FeatureTable = extract_features(&log);",
    },
    ManualEntry {
        module: "discovery",
        name: "extract_ocel_features",
        signature: "extract_ocel_features(ocel: &Ocel) -> Result<FeatureTable>",
        description: "Per-object features: event count, lifecycle seconds, activity counts.",
        example: "let features: FeatureTable = extract_ocel_features(&ocel)?;",
    },
    ManualEntry {
        module: "discovery",
        name: "import_pnml",
        signature: "import_pnml(path) -> Result<PetriNet>",
        description: "Reads a PNML Petri net with markings; unnamed transitions become silent.",
        example: "let net = import_pnml(\"model.pnml\")?;",
    },
    // module: eventlog
    ManualEntry {
        module: "eventlog",
        name: "export_csv",
        signature: "export_csv(log: &EventLog, path) -> Result<()>",
        description: "Writes the canonical CSV form; import_csv round-trips it.",
        example: "export_csv(&log, \"out.csv\")?;",
    },
    ManualEntry {
        module: "eventlog",
        name: "export_xes",
        signature: "export_xes(log: &EventLog, path) -> Result<()>",
        description: "Writes the log as XES with concept:name and time:timestamp attributes.",
        example: "export_xes(&log, \"out.xes\")?;",
    },
    ManualEntry {
        module: "eventlog",
        name: "get_case",
        signature: "get_case(log: &EventLog, case_id: &str) -> Result<Case>",
        description: "The time-ordered events of one case.",
        example: "let case = get_case(&log, \"c1\")?;",
    },
    ManualEntry {
        module: "eventlog",
        name: "import_csv",
        signature: "import_csv(path, roles: &RoleMap, timestamp_format: &str) -> Result<EventLog>",
        description: "Reads a CSV event log; role columns are renamed to canonical names.",
        example: "let log = import_csv(\"log.csv\", &RoleMap::default(), DEFAULT_TIMESTAMP_FORMAT)?;",
    },
    ManualEntry {
        module: "eventlog",
        name: "import_ocel_json",
        signature: "import_ocel_json(path) -> Result<Ocel>",
        description: "Reads an OCEL 2.0 JSON document into events/objects/relations tables.",
        example: "let ocel = import_ocel_json(\"log.jsonocel\")?;",
    },
    ManualEntry {
        module: "eventlog",
        name: "import_xes",
        signature: "import_xes(path) -> Result<EventLog>",
        description: "Reads an XES file into the same canonical shape as import_csv.",
        example: "let log = import_xes(\"log.xes\")?;",
    },
    ManualEntry {
        module: "eventlog",
        name: "last_events_window",
        signature: "last_events_window(log: &EventLog, n: usize) -> EventStreamWindow",
        description: "The n globally latest events across all cases.",
        example: "let window = last_events_window(&log, 10);",
    },
    // module: llm
    ManualEntry {
        module: "llm",
        name: "chat_complete",
        signature: "chat_complete(cfg: &LlmConfig, messages: &[ChatMessage]) -> Result<String>",
        description: "One-shot chat completion with bearer auth, retries and backoff.",
        example: "let answer = chat_complete(&cfg, &[ChatMessage::user(\"hello\")])?;",
    },
    ManualEntry {
        module: "llm",
        name: "direct_insight_query",
        signature: "direct_insight_query(connector, abstraction: &Abstraction, question: &str) -> Result<String>",
        description: "Sends an abstraction plus a question as one prompt.",
        example: "direct_insight_query(&connector, &abstraction, \"What are the anomalies in the event data?\")?",
    },
    ManualEntry {
        module: "llm",
        name: "explain_visualization",
        signature: "explain_visualization(connector, doc_path, question, renderer) -> Result<String>",
        description: "Attaches a PNG (or renderer-rasterized SVG) and asks the vision model.",
        example: "explain_visualization(&connector, \"dfg.png\", \"Can you explain the process?\", None)?",
    },
    ManualEntry {
        module: "llm",
        name: "export_api_manual",
        signature: "export_api_manual() -> String",
        description: "This manual, deterministically ordered by module then name.",
        example: "std::fs::write(\"api.txt\", export_api_manual())?;",
    },
    ManualEntry {
        module: "llm",
        name: "generate_hypotheses",
        signature: "generate_hypotheses(connector, abstractions, schema, focus) -> Result<HypothesisRound>",
        description: "Asks for hypotheses as fenced JSON `{description, sql}` objects.",
        example: "let round = generate_hypotheses(&connector, &abstractions, &schema, None)?;",
    },
    ManualEntry {
        module: "llm",
        name: "run_hypothesis_loop",
        signature: "run_hypothesis_loop(source, connector, max_rounds, focus) -> Result<Vec<HypothesisRound>>",
        description: "Generates, executes and validates hypotheses until one is valid.",
        example: "let rounds = run_hypothesis_loop(QuerySource::Log(&log), &connector, 3, None)?;",
    },
    // module: query
    ManualEntry {
        module: "query",
        name: "build_nl2sql_prompt",
        signature: "build_nl2sql_prompt(schema, question, domain_knowledge) -> Result<String>",
        description: "Schema block, dialect note, optional domain knowledge and the question.",
        example: "let prompt = build_nl2sql_prompt(&schema, \"How many cases are contained in this event log?\", None)?;",
    },
    ManualEntry {
        module: "query",
        name: "describe_schema",
        signature: "describe_schema(source) -> SchemaDescription",
        description: "Tables, columns and role annotations a source registers for SQL.",
        example: "let schema = describe_schema(&log);",
    },
    ManualEntry {
        module: "query",
        name: "execute_sql",
        signature: "execute_sql(source, sql: &str) -> Result<QueryResult>",
        description: "Runs one gated read-only SELECT against in-memory event tables.",
        example: "let result = execute_sql(&log, \"SELECT COUNT(*) FROM event_log\")?;",
    },
    ManualEntry {
        module: "query",
        name: "parse_sql_from_response",
        signature: "parse_sql_from_response(response: &str) -> Result<String>",
        description: "First fenced code block, or the suffix from the first SELECT.",
        example: "let sql = parse_sql_from_response(&llm_answer)?;",
    },
    // module: viz
    ManualEntry {
        module: "viz",
        name: "case_duration_graph_svg",
        signature: "case_duration_graph_svg(table: &FeatureTable) -> Result<SvgDocument>",
        description: "Sorted case durations as an ascending scatter.",
        example: "let svg = case_duration_graph_svg(&extract_features(&log))?;",
    },
    ManualEntry {
        module: "viz",
        name: "dfg_to_dot",
        signature: "dfg_to_dot(dfg: &Dfg) -> DotGraph",
        description: "Frequency-annotated DOT digraph with artificial start/end nodes.",
        example: "let dot = dfg_to_dot(&compute_dfg(&log));",
    },
    ManualEntry {
        module: "viz",
        name: "dotted_chart_svg",
        signature: "dotted_chart_svg(log: &EventLog) -> Result<SvgDocument>",
        description: "One dot per event: x = time, y = case, color = activity.",
        example: "let svg = dotted_chart_svg(&log)?;",
    },
    ManualEntry {
        module: "viz",
        name: "events_per_time_graph_svg",
        signature: "events_per_time_graph_svg(log: &EventLog) -> SvgDocument",
        description: "Histogram of event timestamps in 20 equal-width bins.",
        example: "let svg = events_per_time_graph_svg(&log);",
    },
    ManualEntry {
        module: "viz",
        name: "ocdfg_to_dot",
        signature: "ocdfg_to_dot(ocdfg: &Ocdfg) -> DotGraph",
        description: "Typed DFG edges with one palette color per object type.",
        example: "let dot = ocdfg_to_dot(&compute_ocdfg(&ocel)?);",
    },
    ManualEntry {
        module: "viz",
        name: "performance_dfg_to_dot",
        signature: "performance_dfg_to_dot(perf: &PerformanceDfg) -> DotGraph",
        description: "DOT digraph with mean seconds as edge labels.",
        example: "let dot = performance_dfg_to_dot(&compute_performance_dfg(&log));",
    },
    ManualEntry {
        module: "viz",
        name: "petri_net_to_dot",
        signature: "petri_net_to_dot(net: &PetriNet) -> DotGraph",
        description: "Places as circles, transitions as boxes, silent ones filled black.",
        example: "let dot = petri_net_to_dot(&net);",
    },
    ManualEntry {
        module: "viz",
        name: "save_visualization",
        signature: "save_visualization(doc, path, renderer) -> Result<PathBuf>",
        description: "Writes a DOT/SVG document; .png targets pipe through `<renderer> -Tpng`.",
        example: "save_visualization(&dot, \"dfg.png\", Some(\"dot\"))?;",
    },
];

/// Renders the complete manual.
pub fn export_api_manual() -> String {
    let mut out = String::new();
    out.push_str("pmllm API manual\n");
    out.push_str("================\n\n");
    out.push_str(
        "Operations are listed by module. Signatures use the crate's default\n\
         f64 scalar type; statistics-bearing functions are also generic over\n\
         f32. CLI entries describe the `pmllm` binary.\n\n",
    );
    let mut current_module = "";
    for entry in ENTRIES {
        if entry.module != current_module {
            current_module = entry.module;
            out.push_str(&format!("## {current_module}\n\n"));
        }
        out.push_str(&format!(
            "{}\n  {}\n  {}\n  Example: {}\n\n",
            entry.name, entry.signature, entry.description, entry.example
        ));
    }
    out
}

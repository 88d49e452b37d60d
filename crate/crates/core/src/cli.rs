//! Command-line frontend. `run` is the whole program minus process exit, so
//! tests can drive it with in-memory writers.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::conditions::{factor_pairs, proof_trace, star_theorem_decision, StarDecision};
use crate::graph::{make_complete_bipartite, make_cycle, make_path, make_star, read_graph, write_graph, Graph};
use crate::labeling::{edge_labels, read_labeling, validate, write_labeling, Labeling, ValidationReport};
use crate::labels::{format_label, LabelStyle, LabelVec, MAX_GROUND_SIZE};
use crate::search::{search, SearchConfig, SearchMode, SearchOutcome};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Limit = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(name = "set-graceful", version, about = "Set-graceful labelings of finite simple graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenType {
    CompleteBipartite,
    Star,
    Path,
    Cycle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    First,
    Count,
    All,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::First => SearchMode::First,
            ModeArg::Count => SearchMode::Count,
            ModeArg::All => SearchMode::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StyleArg {
    Int,
    Binary,
    Set,
}

impl From<StyleArg> for LabelStyle {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Int => LabelStyle::Int,
            StyleArg::Binary => LabelStyle::Binary,
            StyleArg::Set => LabelStyle::Set,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated graph in edge-list format.
    Gen {
        #[arg(long = "type", value_enum)]
        kind: GenType,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a labeling is set-graceful.
    Check {
        graph: PathBuf,
        labeling: PathBuf,
        #[arg(long, value_enum, default_value = "int")]
        style: StyleArg,
        #[arg(long)]
        json: bool,
    },
    /// Search for set-graceful labelings.
    Search {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "first")]
        mode: ModeArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        node_limit: Option<u64>,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        /// Write witnesses in labeling-file format (PATH, or PATH.<i> when several).
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check the complete bipartite decision for every K_{p,q} with pq = 2^m - 1.
    Theorem {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_GROUND_SIZE as i64))]
        m: u32,
        /// Largest m for which the decisions are confirmed by exhaustive search.
        #[arg(long, default_value_t = 4)]
        exhaustive_up_to: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

/// Failure that maps onto exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<ExitCode, InputError>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage } else { ExitCode::Success };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code.code();
        }
    };
    let result = match cli.command {
        Command::Gen { kind, p, q, n, out: path } => cmd_gen(kind, p, q, n, path.as_deref(), out),
        Command::Check { graph, labeling, style, json } => {
            cmd_check(&graph, &labeling, style.into(), json, out)
        }
        Command::Search { graph, mode, node_limit, no_symmetry, threads, emit, json } => {
            let mut cfg = SearchConfig::new(mode.into()).symmetry(!no_symmetry);
            if let Some(limit) = node_limit {
                cfg = cfg.node_limit(limit);
            }
            if let Some(t) = threads {
                cfg = cfg.threads(t as usize);
            }
            cmd_search(&graph, &cfg, emit.as_deref(), json, out)
        }
        Command::Theorem { m, exhaustive_up_to, threads, json } => {
            cmd_theorem(m, exhaustive_up_to, threads.map(|t| t as usize), json, out)
        }
    };
    match result {
        Ok(code) => code.code(),
        Err(InputError(message)) => {
            let _ = writeln!(err, "error: {message}");
            ExitCode::Usage.code()
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, InputError> {
    let file = File::open(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    read_graph(BufReader::new(file)).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_labeling(path: &Path, n: usize) -> Result<Labeling, InputError> {
    let file = File::open(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    read_labeling(BufReader::new(file), n).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn cmd_gen(
    kind: GenType,
    p: Option<usize>,
    q: Option<usize>,
    n: Option<usize>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| InputError(format!("--{flag} is required")));
    let g = match kind {
        GenType::CompleteBipartite => make_complete_bipartite(need(p, "p")?, need(q, "q")?)?,
        GenType::Star => make_star(need(q, "q")?)?,
        GenType::Path => make_path(need(n, "n")?)?,
        GenType::Cycle => make_cycle(need(n, "n")?)?,
    };
    match path {
        Some(path) => {
            let file = File::create(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let mut w = io::BufWriter::new(file);
            write_graph(&g, &mut w)?;
            w.flush()?;
        }
        None => write_graph(&g, out)?,
    }
    Ok(ExitCode::Success)
}

fn edge_text(e: (usize, usize)) -> String {
    format!("{}-{}", e.0, e.1)
}

fn render_report(
    g: &Graph,
    f: &Labeling,
    r: &ValidationReport,
    style: LabelStyle,
    out: &mut dyn Write,
) -> io::Result<()> {
    let m = f.m();
    let show = |l: LabelVec| format_label(l, m, style);
    writeln!(out, "graph: n={}, |E|={}; ground size m={} ({} nonempty labels)", g.n(), g.edge_count(), m, m.nonempty())?;
    match r.duplicate_vertices {
        None => writeln!(out, "vertex labels injective: yes")?,
        Some((u, v)) => writeln!(
            out,
            "vertex labels not injective: v={u} and v={v} share label {}",
            show(f.get(u))
        )?,
    }
    match r.duplicate_edges {
        None => writeln!(out, "edge labels injective: yes")?,
        Some((a, b)) => writeln!(
            out,
            "edge labels not injective: edges {} and {} share label {}",
            edge_text(a),
            edge_text(b),
            show(f.get(a.0) ^ f.get(a.1))
        )?,
    }
    match r.empty_edge {
        None => writeln!(out, "empty edge label: none")?,
        Some(e) => writeln!(out, "empty edge label: edge {} has label {}", edge_text(e), show(LabelVec::EMPTY))?,
    }
    if r.covers_all_nonempty {
        writeln!(out, "edge labels cover all nonempty labels: yes")?;
    } else {
        let mut why = Vec::new();
        if g.edge_count() != m.nonempty() {
            why.push(format!("|E|={} but 2^{m}-1={}", g.edge_count(), m.nonempty()));
        }
        if let Some(l) = r.missing_label {
            why.push(format!("label {} is not used", show(l)));
        }
        writeln!(out, "edge labels cover all nonempty labels: no ({})", why.join("; "))?;
    }
    writeln!(out, "labels in range: {}", if r.range_ok { "yes" } else { "no" })?;
    writeln!(out, "{}", if r.valid { "VALID" } else { "INVALID" })
}

fn cmd_check(
    graph: &Path,
    labeling: &Path,
    style: LabelStyle,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let g = load_graph(graph)?;
    let f = load_labeling(labeling, g.n())?;
    let report = validate(&g, &f)?;
    if json {
        let edges = edge_labels(&g, &f)?;
        let doc = json!({
            "graph": { "n": g.n(), "edges": g.edges() },
            "labeling": f,
            "edge_labels": edges,
            "report": report,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        render_report(&g, &f, &report, style, out)?;
    }
    Ok(if report.valid { ExitCode::Success } else { ExitCode::Negative })
}

fn search_exit(outcome: &SearchOutcome) -> ExitCode {
    if !outcome.exhausted && !(outcome.mode == SearchMode::First && outcome.found()) {
        ExitCode::Limit
    } else if outcome.found() {
        ExitCode::Success
    } else {
        ExitCode::Negative
    }
}

fn render_outcome(g: &Graph, cfg: &SearchConfig, o: &SearchOutcome, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "graph: n={}, |E|={}", g.n(), g.edge_count())?;
    let Some(m) = o.m else {
        writeln!(out, "skipped: |E|={} is not of the form 2^m - 1", g.edge_count())?;
        return writeln!(out, "result: none (exhausted)");
    };
    let mode = match o.mode {
        SearchMode::First => "first",
        SearchMode::Count => "count",
        SearchMode::All => "all",
    };
    writeln!(out, "m={m}")?;
    writeln!(
        out,
        "mode={mode} symmetry={} anchor={}",
        if cfg.use_translation_symmetry { "on" } else { "off" },
        o.anchor.map_or("-".to_string(), |a| a.to_string())
    )?;
    writeln!(out, "count_raw={}", o.count_raw)?;
    writeln!(out, "count_anchored={}", o.count_anchored)?;
    writeln!(out, "nodes_explored={}", o.nodes_explored)?;
    writeln!(out, "exhausted={}", o.exhausted)?;
    for (i, w) in o.witnesses.iter().enumerate() {
        let labels: Vec<String> = w.values().iter().map(|l| l.bits().to_string()).collect();
        writeln!(out, "witness {i}: {}", labels.join(" "))?;
    }
    let result = match search_exit(o) {
        ExitCode::Limit => "node limit reached".to_string(),
        ExitCode::Negative => "none (exhausted)".to_string(),
        _ if o.mode == SearchMode::First => "found".to_string(),
        _ => format!("found {}", o.count_raw),
    };
    writeln!(out, "result: {result}")
}

fn emit_witnesses(path: &Path, witnesses: &[Labeling]) -> Result<(), InputError> {
    for (i, w) in witnesses.iter().enumerate() {
        let target = if witnesses.len() == 1 {
            path.to_path_buf()
        } else {
            let mut name = path.as_os_str().to_owned();
            name.push(format!(".{i}"));
            PathBuf::from(name)
        };
        let file = File::create(&target).map_err(|e| InputError(format!("{}: {e}", target.display())))?;
        let mut file = io::BufWriter::new(file);
        write_labeling(w, &mut file, LabelStyle::Int)?;
        file.flush()?;
    }
    Ok(())
}

fn cmd_search(
    graph: &Path,
    cfg: &SearchConfig,
    emit: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let g = load_graph(graph)?;
    let outcome = search(&g, cfg);
    if let Some(path) = emit {
        emit_witnesses(path, &outcome.witnesses)?;
    }
    if json {
        let doc = json!({
            "graph": { "n": g.n(), "edges": g.edges() },
            "symmetry": cfg.use_translation_symmetry,
            "node_limit": cfg.node_limit.map(|l| l.get()),
            "outcome": outcome,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        render_outcome(&g, cfg, &outcome, out)?;
    }
    Ok(search_exit(&outcome))
}

fn cmd_theorem(
    m: u32,
    exhaustive_up_to: u32,
    threads: Option<usize>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let pairs = factor_pairs(m)?;
    let edges = (1u64 << m) - 1;
    let mut all_agree = true;
    let mut text = Vec::<String>::new();
    let mut rows = Vec::new();
    let listed: Vec<String> = pairs.iter().map(|(p, q)| format!("({p},{q})")).collect();
    text.push(format!("m={m}: |X|={}, |E|={edges}; factor pairs {}", 1u64 << m, listed.join(" ")));

    for &(p, q) in &pairs {
        let decision = star_theorem_decision(p, q)?;
        text.push(format!("K_{{{p},{q}}}: {decision}"));
        let trace = match decision {
            StarDecision::NonStarImpossible(_) => Some(proof_trace(p, q)?),
            _ => None,
        };
        if let Some(t) = &trace {
            text.extend(t.to_string().lines().map(|l| format!("  {l}")));
        }

        let mut confirmation = serde_json::Value::Null;
        if m <= exhaustive_up_to {
            let g = make_complete_bipartite(p as usize, q as usize)?;
            let is_star = matches!(decision, StarDecision::StarAdmits(_));
            // Counting all labelings of K_{1,15} and up is out of reach; a witness suffices.
            let mode = if is_star && m > 3 { SearchMode::First } else { SearchMode::Count };
            let mut cfg = SearchConfig::new(mode);
            if let Some(t) = threads {
                cfg = cfg.threads(t);
            }
            let o = search(&g, &cfg);
            let agrees = o.exhausted && (o.found() == is_star);
            all_agree &= agrees;
            let summary = match mode {
                SearchMode::First if o.found() => "witness found".to_string(),
                SearchMode::First => "no witness".to_string(),
                _ => format!("count_raw={}", o.count_raw),
            };
            text.push(format!(
                "  search ({}): {summary}, nodes_explored={}, exhausted={} -> {}",
                if mode == SearchMode::First { "first" } else { "count" },
                o.nodes_explored,
                o.exhausted,
                if agrees { "confirmed" } else { "DISAGREES" }
            ));
            confirmation = json!({
                "mode": mode,
                "count_raw": o.count_raw,
                "found": o.found(),
                "nodes_explored": o.nodes_explored,
                "exhausted": o.exhausted,
                "agrees": agrees,
            });
        } else {
            text.push(format!("  search: skipped (m={m} > exhaustive cutoff {exhaustive_up_to})"));
        }
        rows.push(json!({
            "p": p,
            "q": q,
            "decision": decision,
            "trace": trace,
            "search": confirmation,
        }));
    }
    text.push(format!(
        "summary: {}",
        if all_agree { "all searched decisions confirmed" } else { "search disagrees with a decision" }
    ));

    if json {
        let doc = json!({ "m": m, "pairs": rows, "all_agree": all_agree });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        for line in text {
            writeln!(out, "{line}")?;
        }
    }
    Ok(if all_agree { ExitCode::Success } else { ExitCode::Negative })
}

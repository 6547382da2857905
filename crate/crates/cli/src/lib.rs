//! Front end for `mnl-core`: argument parsing, file input, output
//! formatting and the extremal-value cache.

pub mod cache;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use mnl_core::extremal::{
    ex_branch_bound_with, ex_exhaustive, growth_report_with, ExRecord, GrowthReport, Kind,
    SearchConfig, DEFAULT_NODE_BUDGET,
};
use mnl_core::graph::{
    go_family, og_bipartite_reduce, og_contains, og_ex_exact_with, og_ex_exhaustive,
    og_insert_isolated, og_insert_split_vertex, og_reduce_smallest, Bipartition, OrderedGraph,
};
use mnl_core::mnl::{
    enumerate_candidates, enumerate_og_candidates, known_mnl_2row, matrix_count_bound,
    og_count_bound, seq_count_bound, BigCount, CandidateReport,
};
use mnl_core::pattern::{
    contains, insert_split_column, insert_zero_line, reduce_leftmost, scan_letters,
    scan_reduction, Axis, Pattern01,
};
use mnl_core::sequence::{insert_repeat, mnl_seq_candidates, seq_contains, seq_ex_exact, Sequence};

pub use cache::CacheStore;

/// Largest `k` accepted by `enum` without `--allow-large-k`.
pub const DEFAULT_MAX_K: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "mnl", version, about = "Forbidden-pattern extremal functions and candidate enumeration")]
pub struct Cli {
    /// Extremal-value cache (JSON lines).
    #[arg(long, env = "MNL_CACHE", default_value = "mnl-cache.jsonl", global = true)]
    cache: PathBuf,
    /// Do not read or write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    /// Search node budget per extremal computation.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, global = true)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Exit with status 2 if any reported value is not exact.
    #[arg(long, global = true)]
    require_exact: bool,
    /// Report where each value came from.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Matrix,
    Seq,
    Og,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether HOST contains PATTERN.
    Contains {
        #[arg(value_enum)]
        mode: Mode,
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Maximum ones in an n x n matrix avoiding a pattern.
    Ex(ExArgs),
    /// Maximum length of a sequence on n symbols avoiding a sequence.
    SeqEx {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: u32,
    },
    /// Maximum edges of an ordered graph on n vertices avoiding a graph.
    OgEx(ExArgs),
    #[command(subcommand)]
    Reduce(ReduceCommand),
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Enumerate structural candidates.
    #[command(subcommand)]
    Enum(EnumCommand),
    /// Upper bounds on the number of minimally non-linear objects.
    Bounds {
        #[arg(value_enum)]
        mode: Mode,
        #[arg(long)]
        k: usize,
        /// Segment cap for sequences (default: Ex(ababa, k), computed for k <= 4).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Growth report for a matrix pattern.
    Classify {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },
    /// Ordered-graph realizations of a matrix.
    GoFamily {
        #[arg(long)]
        pattern: String,
    },
    /// The seven known two-row minimally non-linear matrices.
    Known,
    /// Rewrite the cache keeping one best record per key.
    Compact,
}

#[derive(Args, Debug)]
struct ExArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n: u32,
    /// Use the exhaustive oracle instead of branch and bound.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// Delete the leftmost one of every row.
    Leftmost {
        #[arg(long)]
        pattern: String,
    },
    /// Read column by column, top to bottom, writing row indices.
    Scan {
        #[arg(long)]
        pattern: String,
    },
    /// Delete the edge to the smallest neighbour of every vertex.
    OgSmallest {
        #[arg(long)]
        graph: String,
    },
    /// Delete, for every vertex of the first part, the edge to its
    /// smallest neighbour.
    OgBipartite {
        #[arg(long)]
        graph: String,
        #[arg(long, value_delimiter = ',', required = true)]
        part_u: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum TransformCommand {
    /// Insert a column between two adjacent ones of a row, with a single
    /// one in that row.
    SplitColumn {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
    },
    /// Insert an all-zero row or column.
    ZeroLine {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        axis: String,
        #[arg(long)]
        index: usize,
    },
    /// Insert another copy of a symbol between two of its occurrences.
    InsertRepeat {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        gap: usize,
    },
    /// Insert a vertex after LEFT adjacent only to NEIGHBOR.
    SplitVertex {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        left: usize,
        #[arg(long)]
        neighbor: usize,
    },
    /// Insert an isolated vertex after POSITION vertices.
    Isolated {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        position: usize,
    },
}

#[derive(Args, Debug)]
struct EnumRange {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    col_min: Option<usize>,
    #[arg(long)]
    col_max: Option<usize>,
    /// Permit k above the default cap.
    #[arg(long)]
    allow_large_k: bool,
}

#[derive(Subcommand, Debug)]
enum EnumCommand {
    Matrix {
        #[command(flatten)]
        range: EnumRange,
        /// Attach a growth report up to this n to every survivor.
        #[arg(long)]
        growth: Option<u32>,
    },
    Seq {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        allow_large_k: bool,
    },
    Og {
        #[command(flatten)]
        range: EnumRange,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Cache,
    Computed,
}

impl Source {
    fn as_str(self) -> &'static str {
        match self {
            Source::Cache => "cache",
            Source::Computed => "computed",
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
    cache: Option<CacheStore>,
    inexact: bool,
}

type CmdResult = Result<(), String>;

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut ctx = Ctx {
        cli: &cli,
        out,
        err,
        cache: None,
        inexact: false,
    };
    let result = pool.install(|| dispatch(&mut ctx));
    let _ = ctx.out.flush();
    match result {
        Err(msg) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            1
        }
        Ok(()) if cli.require_exact && ctx.inexact => {
            let _ = writeln!(ctx.err, "error: result is not exact (search budget exhausted)");
            2
        }
        Ok(()) => 0,
    }
}

fn dispatch(ctx: &mut Ctx) -> CmdResult {
    let cli = ctx.cli;
    match &cli.command {
        Command::Contains { mode, host, pattern } => {
            let found = match mode {
                Mode::Matrix => contains(&load_pattern(host)?, &load_pattern(pattern)?),
                Mode::Seq => seq_contains(&load_seq(host)?, &load_seq(pattern)?),
                Mode::Og => og_contains(&load_graph(host)?, &load_graph(pattern)?),
            };
            match cli.format {
                Format::Json => ctx.line(&serde_json::json!({ "contains": found }).to_string()),
                Format::Tsv => ctx.line(&found.to_string()),
            }
        }
        Command::Ex(args) => {
            let p = load_pattern(&args.pattern)?;
            let config = ctx.config();
            let key = mnl_core::pattern::canonical_key(&p);
            let (rec, src) = ctx.cached(&key, Kind::Matrix, args.n, || {
                if args.exhaustive {
                    exhaustive_record(&key, Kind::Matrix, args.n, || ex_exhaustive(args.n, &p))
                } else {
                    ex_branch_bound_with(args.n, &p, &config).map_err(|e| e.to_string())
                }
            })?;
            ctx.emit_record(&rec, src)
        }
        Command::SeqEx { pattern, n } => {
            let u = load_seq(pattern)?;
            let budget = cli.budget;
            let (rec, src) = ctx.cached(&u.canonical_key(), Kind::Sequence, *n, || {
                seq_ex_exact(&u, *n, budget).map_err(|e| e.to_string())
            })?;
            ctx.emit_record(&rec, src)
        }
        Command::OgEx(args) => {
            let g = load_graph(&args.pattern)?;
            let config = ctx.config();
            let key = g.canonical_key();
            let (rec, src) = ctx.cached(&key, Kind::OrderedGraph, args.n, || {
                if args.exhaustive {
                    exhaustive_record(&key, Kind::OrderedGraph, args.n, || og_ex_exhaustive(args.n, &g))
                } else {
                    og_ex_exact_with(args.n, &g, &config).map_err(|e| e.to_string())
                }
            })?;
            ctx.emit_record(&rec, src)
        }
        Command::Reduce(cmd) => match cmd {
            ReduceCommand::Leftmost { pattern } => {
                let p = reduce_leftmost(&load_pattern(pattern)?).map_err(|e| e.to_string())?;
                ctx.emit_pattern(&p)
            }
            ReduceCommand::Scan { pattern } => {
                let p = load_pattern(pattern)?;
                let letters = scan_letters(&p).map_err(|e| e.to_string())?;
                let seq = scan_reduction(&p).map_err(|e| e.to_string())?;
                match cli.format {
                    Format::Json => ctx.line(
                        &serde_json::json!({ "sequence": seq.to_string(), "rows": letters }).to_string(),
                    ),
                    Format::Tsv => {
                        let rows: Vec<String> = letters.iter().map(usize::to_string).collect();
                        ctx.line(&format!("{seq}\t{}", rows.join(",")))
                    }
                }
            }
            ReduceCommand::OgSmallest { graph } => {
                let g = og_reduce_smallest(&load_graph(graph)?);
                ctx.emit_graph(&g)
            }
            ReduceCommand::OgBipartite { graph, part_u } => {
                let g = load_graph(graph)?;
                let parts = Bipartition::from_part_u(&g, part_u.iter().copied());
                let r = og_bipartite_reduce(&g, &parts).map_err(|e| e.to_string())?;
                ctx.emit_graph(&r)
            }
        },
        Command::Transform(cmd) => match cmd {
            TransformCommand::SplitColumn { pattern, row, col } => {
                let p = insert_split_column(&load_pattern(pattern)?, *row, *col)
                    .map_err(|e| e.to_string())?;
                ctx.emit_pattern(&p)
            }
            TransformCommand::ZeroLine { pattern, axis, index } => {
                let axis: Axis = axis.parse().map_err(|e: mnl_core::Error| e.to_string())?;
                let p = insert_zero_line(&load_pattern(pattern)?, axis, *index)
                    .map_err(|e| e.to_string())?;
                ctx.emit_pattern(&p)
            }
            TransformCommand::InsertRepeat { pattern, symbol, gap } => {
                let u = load_seq(pattern)?;
                let s = insert_repeat(&u, parse_symbol(symbol)?, *gap).map_err(|e| e.to_string())?;
                ctx.emit_seq(&s)
            }
            TransformCommand::SplitVertex { graph, left, neighbor } => {
                let g = og_insert_split_vertex(&load_graph(graph)?, *left, *neighbor)
                    .map_err(|e| e.to_string())?;
                ctx.emit_graph(&g)
            }
            TransformCommand::Isolated { graph, position } => {
                let g = og_insert_isolated(&load_graph(graph)?, *position).map_err(|e| e.to_string())?;
                ctx.emit_graph(&g)
            }
        },
        Command::Enum(cmd) => run_enum(ctx, cmd),
        Command::Bounds { mode, k, cap } => {
            let (bound, cap) = match mode {
                Mode::Matrix => (matrix_count_bound(*k).map_err(|e| e.to_string())?, None),
                Mode::Og => (og_count_bound(*k).map_err(|e| e.to_string())?, None),
                Mode::Seq => {
                    let cap = ctx.segment_cap(*k, *cap)?;
                    (seq_count_bound(*k, cap).map_err(|e| e.to_string())?, Some(cap))
                }
            };
            ctx.emit_bound(*mode, *k, cap, &bound)
        }
        Command::Classify { pattern, n_max } => {
            let p = load_pattern(pattern)?;
            let report = ctx.growth(&p, *n_max)?;
            ctx.emit_growth(&report)
        }
        Command::GoFamily { pattern } => {
            let family = go_family(&load_pattern(pattern)?).map_err(|e| e.to_string())?;
            for g in &family {
                ctx.emit_graph(g)?;
            }
            Ok(())
        }
        Command::Known => {
            for p in known_mnl_2row() {
                ctx.emit_pattern(&p)?;
            }
            Ok(())
        }
        Command::Compact => {
            let store = ctx.cache_store()?;
            let kept = store.compact().map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => ctx.line(&serde_json::json!({ "records": kept }).to_string()),
                Format::Tsv => ctx.line(&kept.to_string()),
            }
        }
    }
}

fn run_enum(ctx: &mut Ctx, cmd: &EnumCommand) -> CmdResult {
    match cmd {
        EnumCommand::Matrix { range, growth } => {
            let (k, lo, hi) = enum_range(range)?;
            let reports: Vec<_> = enumerate_candidates(k, lo, hi)
                .map_err(|e| e.to_string())?
                .collect();
            for mut report in reports {
                if let Some(n_max) = growth {
                    report.growth = Some(ctx.growth(&report.pattern, *n_max)?);
                }
                ctx.emit_report(&report, |p| p.compact())?;
            }
            Ok(())
        }
        EnumCommand::Seq { k, cap, allow_large_k } => {
            check_k(*k, *allow_large_k)?;
            let cap = ctx.segment_cap(*k, *cap)?;
            for s in mnl_seq_candidates(*k, cap).map_err(|e| e.to_string())? {
                ctx.emit_seq(&s)?;
            }
            Ok(())
        }
        EnumCommand::Og { range } => {
            let (k, lo, hi) = enum_range(range)?;
            for report in enumerate_og_candidates(k, lo, hi).map_err(|e| e.to_string())? {
                ctx.emit_report(&report, |bg| {
                    let u: Vec<String> = bg.parts.part_u.iter().map(usize::to_string).collect();
                    format!("{}\t{}", bg.graph.compact(), u.join(","))
                })?;
            }
            Ok(())
        }
    }
}

fn check_k(k: usize, allow_large: bool) -> CmdResult {
    if k > DEFAULT_MAX_K && !allow_large {
        return Err(format!(
            "k = {k} exceeds the default cap of {DEFAULT_MAX_K}; pass --allow-large-k to proceed"
        ));
    }
    Ok(())
}

fn enum_range(r: &EnumRange) -> Result<(usize, usize, usize), String> {
    check_k(r.k, r.allow_large_k)?;
    let lo = r.col_min.unwrap_or((r.k + 2).div_ceil(4));
    let hi = r.col_max.unwrap_or((4 * r.k).saturating_sub(2));
    Ok((r.k, lo, hi))
}

fn exhaustive_record(
    key: &str,
    kind: Kind,
    n: u32,
    f: impl FnOnce() -> mnl_core::Result<u64>,
) -> Result<ExRecord, String> {
    let start = std::time::Instant::now();
    let value = f().map_err(|e| e.to_string())?;
    Ok(ExRecord {
        pattern_key: key.to_string(),
        kind,
        n,
        value,
        exact: true,
        nodes_explored: 0,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

impl Ctx<'_> {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            node_budget: self.cli.budget,
            threads: self.cli.threads.max(1),
        }
    }

    fn line(&mut self, s: &str) -> CmdResult {
        writeln!(self.out, "{s}").map_err(|e| e.to_string())
    }

    fn warn(&mut self, s: &str) {
        let _ = writeln!(self.err, "{s}");
    }

    fn cache_store(&mut self) -> Result<&mut CacheStore, String> {
        if self.cache.is_none() {
            let (store, warnings) =
                CacheStore::open(self.cli.cache.clone()).map_err(|e| e.to_string())?;
            for w in warnings {
                self.warn(&w);
            }
            self.cache = Some(store);
        }
        Ok(self.cache.as_mut().expect("just opened"))
    }

    /// Looks the value up in the cache, computing and storing it if no
    /// exact record exists.
    fn cached(
        &mut self,
        key: &str,
        kind: Kind,
        n: u32,
        compute: impl FnOnce() -> Result<ExRecord, String>,
    ) -> Result<(ExRecord, Source), String> {
        if self.cli.no_cache {
            let rec = compute()?;
            self.inexact |= !rec.exact;
            return Ok((rec, Source::Computed));
        }
        if let Some(rec) = self.cache_store()?.get(key, kind, n) {
            if rec.exact {
                let rec = rec.clone();
                if self.cli.verbose {
                    self.warn(&format!("source=cache key={key} kind={} n={n}", kind.as_str()));
                }
                return Ok((rec, Source::Cache));
            }
        }
        let rec = compute()?;
        let stored = match self.cache_store()?.put(rec.clone()) {
            Ok(best) => best,
            Err(e) => {
                self.warn(&format!("warning: result not cached: {e}"));
                rec
            }
        };
        if self.cli.verbose {
            self.warn(&format!("source=computed key={key} kind={} n={n}", kind.as_str()));
        }
        self.inexact |= !stored.exact;
        Ok((stored, Source::Computed))
    }

    fn growth(&mut self, p: &Pattern01, n_max: u32) -> Result<GrowthReport, String> {
        let config = self.config();
        let key = mnl_core::pattern::canonical_key(p);
        let mut failure = None;
        let report = growth_report_with(p, n_max, |n| {
            match self.cached(&key, Kind::Matrix, n, || {
                ex_branch_bound_with(n, p, &config).map_err(|e| e.to_string())
            }) {
                Ok((rec, _)) => Ok(rec),
                Err(msg) => {
                    failure = Some(msg.clone());
                    Err(mnl_core::Error::InvalidInput(msg))
                }
            }
        });
        match (report, failure) {
            (Ok(r), _) => {
                self.inexact |= !r.exact;
                Ok(r)
            }
            (Err(_), Some(msg)) => Err(msg),
            (Err(e), None) => Err(e.to_string()),
        }
    }

    /// Segment cap for sequence enumeration: explicit, or `Ex(ababa, k)`
    /// computed exactly for small `k`.
    fn segment_cap(&mut self, k: usize, cap: Option<usize>) -> Result<usize, String> {
        if let Some(c) = cap {
            return Ok(c);
        }
        if k > DEFAULT_MAX_K {
            return Err(format!("k = {k} > {DEFAULT_MAX_K} requires an explicit --cap"));
        }
        if k < 2 {
            return Err("k must be at least 2".into());
        }
        let ababa = Sequence::new([1, 2, 1, 2, 1]).expect("literal");
        let budget = self.cli.budget;
        let (rec, _) = self.cached(&ababa.canonical_key(), Kind::Sequence, k as u32, || {
            seq_ex_exact(&ababa, k as u32, budget).map_err(|e| e.to_string())
        })?;
        if !rec.exact {
            return Err(format!(
                "Ex(ababa, {k}) not settled within the budget; pass --cap explicitly"
            ));
        }
        Ok(rec.value as usize)
    }

    fn emit_record(&mut self, rec: &ExRecord, src: Source) -> CmdResult {
        match self.cli.format {
            Format::Json => {
                let mut text = serde_json::to_string(rec).expect("records serialize");
                if self.cli.verbose {
                    text.pop();
                    text.push_str(&format!(",\"source\":\"{}\"}}", src.as_str()));
                }
                self.line(&text)
            }
            Format::Tsv => {
                let mut cols = vec![
                    rec.pattern_key.clone(),
                    rec.kind.as_str().to_string(),
                    rec.n.to_string(),
                    rec.value.to_string(),
                    rec.exact.to_string(),
                    rec.nodes_explored.to_string(),
                    rec.elapsed_ms.to_string(),
                ];
                if self.cli.verbose {
                    cols.push(src.as_str().to_string());
                }
                self.line(&cols.join("\t"))
            }
        }
    }

    fn emit_pattern(&mut self, p: &Pattern01) -> CmdResult {
        match self.cli.format {
            Format::Json => self.line(&serde_json::to_string(p).expect("patterns serialize")),
            Format::Tsv => self.line(&p.compact()),
        }
    }

    fn emit_seq(&mut self, s: &Sequence) -> CmdResult {
        match self.cli.format {
            Format::Json => self.line(&Value::from(s.to_string()).to_string()),
            Format::Tsv => self.line(&s.to_string()),
        }
    }

    fn emit_graph(&mut self, g: &OrderedGraph) -> CmdResult {
        match self.cli.format {
            Format::Json => self.line(&serde_json::to_string(g).expect("graphs serialize")),
            Format::Tsv => self.line(&g.compact()),
        }
    }

    fn emit_bound(&mut self, mode: Mode, k: usize, cap: Option<usize>, bound: &BigCount) -> CmdResult {
        let kind = match mode {
            Mode::Matrix => "matrix",
            Mode::Seq => "seq",
            Mode::Og => "og",
        };
        match self.cli.format {
            // The bound is written as a bare JSON number of arbitrary length.
            Format::Json => {
                let cap = cap.map(|c| format!(",\"cap\":{c}")).unwrap_or_default();
                self.line(&format!("{{\"kind\":\"{kind}\",\"k\":{k}{cap},\"bound\":{bound}}}"))
            }
            Format::Tsv => self.line(&bound.to_string()),
        }
    }

    fn emit_growth(&mut self, r: &GrowthReport) -> CmdResult {
        match self.cli.format {
            Format::Json => self.line(&serde_json::to_string(r).expect("reports serialize")),
            Format::Tsv => {
                let values: Vec<String> = r.values.iter().map(|(_, v)| v.to_string()).collect();
                let inc: Vec<String> = r.increments.iter().map(i64::to_string).collect();
                self.line(&format!(
                    "{}\t{}\t{}\t{}\t{}",
                    r.pattern_key,
                    r.classification.as_str(),
                    values.join(","),
                    inc.join(","),
                    r.exact
                ))
            }
        }
    }

    fn emit_report<T: Serialize>(
        &mut self,
        r: &CandidateReport<T>,
        tsv_subject: impl Fn(&T) -> String,
    ) -> CmdResult {
        match self.cli.format {
            Format::Json => self.line(&serde_json::to_string(r).expect("reports serialize")),
            Format::Tsv => {
                let mut cols = vec![tsv_subject(&r.pattern), r.verdict.as_str().to_string()];
                if let Some(g) = &r.growth {
                    cols.push(g.classification.as_str().to_string());
                }
                self.line(&cols.join("\t"))
            }
        }
    }
}

/// File contents if `arg` names a file, otherwise `None`.
fn read_file(arg: &str) -> Result<Option<String>, String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| format!("{arg}: {e}"))
    } else {
        Ok(None)
    }
}

/// A matrix from a file of `0`/`1` rows, or inline as `101;011`.
pub fn load_pattern(arg: &str) -> Result<Pattern01, String> {
    match read_file(arg)? {
        Some(text) => Pattern01::parse(&text).map_err(|e| format!("{arg}: {e}")),
        None => arg.parse().map_err(|e: mnl_core::Error| format!("{arg}: {e}")),
    }
}

/// A sequence from a file or inline (`abab` or `1,2,1,2`).
pub fn load_seq(arg: &str) -> Result<Sequence, String> {
    let text = read_file(arg)?.unwrap_or_else(|| arg.to_string());
    Sequence::parse(text.trim()).map_err(|e| format!("{arg}: {e}"))
}

/// An ordered graph from a file or inline (`4:1-3,2-4`).
pub fn load_graph(arg: &str) -> Result<OrderedGraph, String> {
    match read_file(arg)? {
        Some(text) => OrderedGraph::parse(&text).map_err(|e| format!("{arg}: {e}")),
        None => arg.parse().map_err(|e: mnl_core::Error| format!("{arg}: {e}")),
    }
}

fn parse_symbol(s: &str) -> Result<u32, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii_lowercase() => Ok(c as u32 - 'a' as u32 + 1),
        _ => s
            .parse::<u32>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| format!("invalid symbol {s:?}: expected a letter or a positive integer")),
    }
}

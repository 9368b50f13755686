//! Command-line front end over the construction library.
//!
//! Every subcommand is deterministic: identical inputs give byte-identical
//! output. In `--json` mode all maps are emitted with sorted keys and all
//! rationals as lowest-terms "p/q" strings; the only floats appear in
//! fields named `*_approx`. Exit codes: 0 success, 2 validation failure
//! (structured `{"error": ...}` in json mode), 1 internal invariant
//! failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use metric_genesis::cantor::{
    cantor_measure_with_limit, cantor_stage_with_limit, property_report_with_limit, CantorError,
    DEFAULT_DEPTH_LIMIT,
};
use metric_genesis::dimension::{exponent_sequence, population, total_points, Population};
use metric_genesis::interval::RationalInterval;
use metric_genesis::metric::{MetricVerdict, PseudoMetricTable};
use metric_genesis::rational::{approx_f64, format_rational, parse_rational};
use metric_genesis::topology::{
    enumerate_topologies, FiniteSpace, NormalityReport, SpaceDoc, TopologyError,
};
use metric_genesis::tree::{Address, RefinementTree, SplitStrategy, TreeDoc, TreeError};
use metric_genesis::urysohn::{build_dyadic_family, induced_pseudometric, UrysohnError};
use metric_genesis::BigRational;

const MAX_EXPONENT_INDEX: usize = 1024;
const DEPTH_LIMIT_ENV: &str = "METRIC_GENESIS_MAX_DEPTH";

#[derive(Parser)]
#[command(
    name = "metric-genesis",
    version,
    about = "Exact finite-topology, refinement-tree, and dimension-counting toolkit"
)]
struct Cli {
    /// Emit machine-readable JSON (sorted keys, rationals as "p/q").
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite spaces: validation, enumeration, nested chains.
    #[command(subcommand)]
    Topology(TopologyCmd),
    /// Separating function for two closed sets and its pseudometric.
    Urysohn(UrysohnArgs),
    /// Refinement trees: midpoint metric, truncation, distance brackets.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Middle-thirds construction stages with exact endpoints.
    Cantor(CantorArgs),
    /// Doubling-exponent cascade and cumulative point counts.
    Dims(DimsArgs),
}

#[derive(Subcommand)]
enum TopologyCmd {
    /// Validate a space document and report normality.
    Check(CheckArgs),
    /// List every topology on n labeled points (n <= 4).
    Enumerate(EnumerateArgs),
    /// Greedy nested chain of opens around a point.
    Chain(ChainArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Space JSON: {"points": [...], "opens": [[...]...]}.
    input: PathBuf,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ChainArgs {
    /// Space JSON file.
    input: PathBuf,
    /// Point the chain closes in on.
    #[arg(long = "A")]
    a: String,
    /// Point excluded from the first step.
    #[arg(long = "B")]
    b: String,
    /// Maximum number of steps.
    #[arg(long, default_value_t = 64)]
    m: usize,
}

#[derive(Args)]
struct UrysohnArgs {
    /// Space JSON, optionally carrying "A", "B", and "depth" keys.
    input: PathBuf,
    /// Comma-separated zero-side points (overrides the file's "A").
    #[arg(long = "A")]
    a: Option<String>,
    /// Comma-separated one-side points (overrides the file's "B").
    #[arg(long = "B")]
    b: Option<String>,
    /// Dyadic refinement depth (defaults to the file's "depth", then 8).
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Embed elements at canonical-interval midpoints and report the
    /// induced distance table.
    Metrize(MetrizeArgs),
    /// Cut the tree at depth m and emit the truncated document.
    Truncate(TruncateArgs),
    /// Pairwise [d_min, d_max] brackets at truncation depth m.
    Distances(DistancesArgs),
}

#[derive(Args)]
struct MetrizeArgs {
    /// Tree JSON: {"universe": [...], "root": {...}}.
    input: PathBuf,
    /// Base interval endpoints as "a/b,c/d" with a/b < c/d.
    #[arg(long, default_value = "0/1,1/1")]
    base: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Contiguous)]
    strategy: StrategyArg,
}

#[derive(Args)]
struct TruncateArgs {
    /// Tree JSON file.
    input: PathBuf,
    /// Truncation depth (>= 1).
    #[arg(long)]
    m: usize,
}

#[derive(Args)]
struct DistancesArgs {
    /// Tree JSON file.
    input: PathBuf,
    /// Truncation depth (>= 1).
    #[arg(long)]
    m: usize,
    /// Lower bound the depth must exceed; recorded in the output.
    #[arg(long = "R")]
    r: Option<usize>,
    /// Base interval endpoints as "a/b,c/d" with a/b < c/d.
    #[arg(long, default_value = "0/1,1/1")]
    base: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Contiguous)]
    strategy: StrategyArg,
}

#[derive(Args)]
struct CantorArgs {
    /// Construction depth m (the stage holds 2^m intervals).
    #[arg(long)]
    depth: usize,
}

#[derive(Args)]
struct DimsArgs {
    /// Base scale n >= 1.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Last exponent index k in e_0..e_k.
    #[arg(long, default_value_t = 2)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// k equal touching pieces per node.
    Contiguous,
    /// 2k-1 equal pieces with gaps between siblings.
    Gapped,
}

impl From<StrategyArg> for SplitStrategy {
    fn from(s: StrategyArg) -> SplitStrategy {
        match s {
            StrategyArg::Contiguous => SplitStrategy::Contiguous,
            StrategyArg::Gapped => SplitStrategy::Gapped,
        }
    }
}

enum CliError {
    Validation(String),
    Internal(String),
}

impl CliError {
    fn emit(self, json: bool) -> ExitCode {
        let (message, code) = match self {
            CliError::Validation(m) => (m, 2),
            CliError::Internal(m) => (m, 1),
        };
        if json {
            println!("{}", json!({ "error": message }));
        } else {
            eprintln!("error: {message}");
        }
        ExitCode::from(code)
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<CantorError> for CliError {
    fn from(e: CantorError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<UrysohnError> for CliError {
    fn from(e: UrysohnError) -> Self {
        match e {
            // These cannot arise from any validated input; if they do, the
            // library's own invariants are broken.
            UrysohnError::NoInterpolatingOpen { .. } | UrysohnError::PointMissing(_) => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => err.emit(cli.json),
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Topology(TopologyCmd::Check(args)) => topology_check(args, cli.json),
        Command::Topology(TopologyCmd::Enumerate(args)) => topology_enumerate(args, cli.json),
        Command::Topology(TopologyCmd::Chain(args)) => topology_chain(args, cli.json),
        Command::Urysohn(args) => urysohn(args, cli.json),
        Command::Tree(TreeCmd::Metrize(args)) => tree_metrize(args, cli.json),
        Command::Tree(TreeCmd::Truncate(args)) => tree_truncate(args, cli.json),
        Command::Tree(TreeCmd::Distances(args)) => tree_distances(args, cli.json),
        Command::Cantor(args) => cantor(args, cli.json),
        Command::Dims(args) => dims(args, cli.json),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid JSON in {}: {e}", path.display())))
}

fn load_space(path: &Path) -> Result<(FiniteSpace, Vec<String>), CliError> {
    let doc: SpaceDoc = read_json(path)?;
    Ok(doc.into_space()?)
}

fn load_tree(path: &Path) -> Result<RefinementTree, CliError> {
    let doc: TreeDoc = read_json(path)?;
    Ok(RefinementTree::from_doc(&doc)?)
}

fn parse_base(text: &str) -> Result<RationalInterval, CliError> {
    let bad = || {
        CliError::Validation(format!(
            "base must be two rationals \"a/b,c/d\" with a/b < c/d, got {text:?}"
        ))
    };
    let (lo_text, hi_text) = text.split_once(',').ok_or_else(bad)?;
    let lo = parse_rational(lo_text).map_err(|_| bad())?;
    let hi = parse_rational(hi_text).map_err(|_| bad())?;
    if lo >= hi {
        return Err(bad());
    }
    Ok(RationalInterval::new(lo, hi))
}

fn depth_limit() -> Result<usize, CliError> {
    match std::env::var(DEPTH_LIMIT_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::Validation(format!(
                "{DEPTH_LIMIT_ENV} must be a nonnegative integer, got {text:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_DEPTH_LIMIT),
        Err(std::env::VarError::NotUnicode(_)) => Err(CliError::Validation(format!(
            "{DEPTH_LIMIT_ENV} must be valid UTF-8"
        ))),
    }
}

fn set_text(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn names_value(names: Vec<String>) -> Value {
    Value::Array(names.into_iter().map(Value::String).collect())
}

fn opens_value(space: &FiniteSpace) -> Value {
    Value::Array(
        space
            .opens()
            .iter()
            .map(|&o| names_value(space.names(o)))
            .collect(),
    )
}

fn rational_value(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn table_value(table: &PseudoMetricTable) -> Value {
    Value::Array(
        table
            .d
            .iter()
            .map(|row| Value::Array(row.iter().map(rational_value).collect()))
            .collect(),
    )
}

fn table_text(table: &PseudoMetricTable, out: &mut String) {
    for (point, row) in table.points.iter().zip(&table.d) {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&format!("{point}: {}\n", cells.join(" ")));
    }
}

fn verdict_parts(verdict: &MetricVerdict) -> (&'static str, Value) {
    match verdict {
        MetricVerdict::Metric => ("metric", Value::Array(Vec::new())),
        MetricVerdict::Pseudometric { classes } => (
            "pseudometric",
            Value::Array(classes.iter().map(|c| names_value(c.clone())).collect()),
        ),
    }
}

fn classes_text(verdict: &MetricVerdict) -> String {
    match verdict {
        MetricVerdict::Metric => String::new(),
        MetricVerdict::Pseudometric { classes } => classes
            .iter()
            .map(|c| set_text(c))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn address_value(address: &Address) -> Value {
    Value::Array(
        address
            .indices()
            .iter()
            .map(|&i| Value::Number(i.into()))
            .collect(),
    )
}

fn interval_value(interval: &RationalInterval) -> Value {
    Value::Array(vec![rational_value(interval.lo()), rational_value(interval.hi())])
}

fn to_line(value: &Value) -> String {
    value.to_string()
}

fn topology_check(args: &CheckArgs, json: bool) -> Result<String, CliError> {
    let (space, notes) = load_space(&args.input)?;
    let report = space.is_normal();
    if json {
        let mut out = Map::new();
        out.insert("valid".into(), Value::Bool(true));
        out.insert("points".into(), names_value(space.points().to_vec()));
        out.insert("opens".into(), opens_value(&space));
        out.insert("notes".into(), names_value(notes));
        out.insert("normal".into(), Value::Bool(report.is_normal()));
        match &report {
            NormalityReport::Normal { separations } => {
                let list: Vec<Value> = separations
                    .iter()
                    .map(|sep| {
                        json!({
                            "closed_a": names_value(space.names(sep.closed_a)),
                            "closed_b": names_value(space.names(sep.closed_b)),
                            "open_u": names_value(space.names(sep.open_u)),
                            "open_v": names_value(space.names(sep.open_v)),
                        })
                    })
                    .collect();
                out.insert("separations".into(), Value::Array(list));
            }
            NormalityReport::NotNormal { closed_a, closed_b } => {
                out.insert(
                    "witness".into(),
                    json!({
                        "closed_a": names_value(space.names(*closed_a)),
                        "closed_b": names_value(space.names(*closed_b)),
                    }),
                );
            }
        }
        return Ok(to_line(&Value::Object(out)));
    }
    let mut text = format!(
        "valid space: {} points, {} open sets\n",
        space.point_count(),
        space.opens().len()
    );
    for note in &notes {
        text.push_str(&format!("note: {note}\n"));
    }
    match &report {
        NormalityReport::Normal { separations } => {
            text.push_str(&format!(
                "normal: yes ({} separated closed pairs)",
                separations.len()
            ));
        }
        NormalityReport::NotNormal { closed_a, closed_b } => {
            text.push_str(&format!(
                "normal: no (closed sets {} and {} admit no disjoint open covers)",
                set_text(&space.names(*closed_a)),
                set_text(&space.names(*closed_b))
            ));
        }
    }
    Ok(text)
}

fn topology_enumerate(args: &EnumerateArgs, json: bool) -> Result<String, CliError> {
    let spaces: Vec<FiniteSpace> = enumerate_topologies(args.n)?.collect();
    if json {
        let topologies: Vec<Value> = spaces.iter().map(opens_value).collect();
        let value = json!({
            "n": args.n,
            "count": spaces.len(),
            "topologies": topologies,
        });
        return Ok(to_line(&value));
    }
    let mut text = format!("{} topologies on {} points\n", spaces.len(), args.n);
    for space in &spaces {
        let opens: Vec<String> = space
            .opens()
            .iter()
            .map(|&o| set_text(&space.names(o)))
            .collect();
        text.push_str(&format!("{}\n", opens.join(" ")));
    }
    text.pop();
    Ok(text)
}

fn topology_chain(args: &ChainArgs, json: bool) -> Result<String, CliError> {
    let (space, _) = load_space(&args.input)?;
    let chain = space.closeness_chain(&args.a, &args.b, args.m)?;
    if json {
        let steps: Vec<Value> = chain
            .steps
            .iter()
            .map(|&s| names_value(space.names(s)))
            .collect();
        let value = json!({
            "point": args.a,
            "excluded": args.b,
            "steps": steps,
            "depth": chain.depth(),
            "terminated": chain.terminated,
        });
        return Ok(to_line(&value));
    }
    let rendered: Vec<String> = chain
        .steps
        .iter()
        .map(|&s| set_text(&space.names(s)))
        .collect();
    Ok(format!(
        "chain for {} excluding {}: {}\ndepth: {}, terminated: {}",
        args.a,
        args.b,
        if rendered.is_empty() { "(empty)".to_string() } else { rendered.join(" > ") },
        chain.depth(),
        chain.terminated
    ))
}

/// Pulls a side's point names from a `--A`/`--B` flag value or from a
/// string array stored under `key` in the input document.
fn side_names(
    flag: &Option<String>,
    raw: &Value,
    key: &str,
) -> Result<Option<Vec<String>>, CliError> {
    if let Some(text) = flag {
        return Ok(Some(
            text.split(',')
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect(),
        ));
    }
    match raw.get(key) {
        None => Ok(None),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str().map(str::to_string).ok_or_else(|| {
                    CliError::Validation(format!("\"{key}\" entries must be strings"))
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
        Some(_) => Err(CliError::Validation(format!(
            "\"{key}\" must be an array of point names"
        ))),
    }
}

fn urysohn(args: &UrysohnArgs, json: bool) -> Result<String, CliError> {
    let raw: Value = read_json(&args.input)?;
    let doc: SpaceDoc = serde_json::from_value(raw.clone())
        .map_err(|e| CliError::Validation(format!("invalid space document: {e}")))?;
    let (space, mut notes) = doc.into_space()?;

    let a_names = side_names(&args.a, &raw, "A")?
        .ok_or_else(|| CliError::Validation("side A missing: add \"A\" to the input or pass --A".into()))?;
    let b_names = side_names(&args.b, &raw, "B")?
        .ok_or_else(|| CliError::Validation("side B missing: add \"B\" to the input or pass --B".into()))?;
    let depth = match args.depth {
        Some(d) => d,
        None => match raw.get("depth") {
            None => 8,
            Some(v) => v.as_u64().and_then(|d| u32::try_from(d).ok()).ok_or_else(|| {
                CliError::Validation("\"depth\" must be a nonnegative integer".into())
            })?,
        },
    };

    let a = space.subset_from_names(a_names.iter().map(String::as_str))?;
    let b = space.subset_from_names(b_names.iter().map(String::as_str))?;
    let family = build_dyadic_family(&space, a, b, depth)?;
    if family.replaced_a() {
        notes.push(format!(
            "A replaced by its closure {}",
            set_text(&space.names(family.side_a()))
        ));
    }
    if family.replaced_b() {
        notes.push(format!(
            "B replaced by its closure {}",
            set_text(&space.names(family.side_b()))
        ));
    }
    if family.stabilized() && family.depth() < family.requested_depth() {
        notes.push(format!(
            "family stabilized at depth {} of {}",
            family.depth(),
            family.requested_depth()
        ));
    }
    let f = family.function();
    let induced = induced_pseudometric(&f, space.points())?;
    let (verdict, classes) = verdict_parts(&induced.verdict);

    if json {
        let f_map: Map<String, Value> = f
            .values()
            .iter()
            .map(|(point, value)| (point.clone(), rational_value(value)))
            .collect();
        let value = json!({
            "points": names_value(space.points().to_vec()),
            "f": Value::Object(f_map),
            "d": table_value(&induced.table),
            "verdict": verdict,
            "classes": classes,
            "depth": family.depth(),
            "stabilized": family.stabilized(),
            "notes": names_value(notes),
        });
        return Ok(to_line(&value));
    }
    let mut text = String::new();
    for note in &notes {
        text.push_str(&format!("note: {note}\n"));
    }
    for (point, value) in f.values() {
        text.push_str(&format!("f({point}) = {}\n", format_rational(value)));
    }
    text.push_str(&format!(
        "depth: {}, stabilized: {}\nverdict: {verdict}",
        family.depth(),
        family.stabilized()
    ));
    let classes = classes_text(&induced.verdict);
    if !classes.is_empty() {
        text.push_str(&format!("\nclasses: {classes}"));
    }
    text.push('\n');
    table_text(&induced.table, &mut text);
    text.pop();
    Ok(text)
}

fn tree_metrize(args: &MetrizeArgs, json: bool) -> Result<String, CliError> {
    let tree = load_tree(&args.input)?;
    let base = parse_base(&args.base)?;
    let strategy: SplitStrategy = args.strategy.into();
    let metric = tree.midpoint_metric(&base, strategy)?;
    let (verdict, classes) = verdict_parts(&metric.verdict);
    if json {
        let positions: Map<String, Value> = metric
            .positions
            .iter()
            .map(|(e, phi)| (e.clone(), rational_value(phi)))
            .collect();
        let offending: Vec<Value> =
            metric.offending_leaves.iter().map(address_value).collect();
        let value = json!({
            "points": names_value(tree.universe().to_vec()),
            "base": interval_value(&base),
            "strategy": strategy.name(),
            "positions": Value::Object(positions),
            "d": table_value(&metric.table),
            "verdict": verdict,
            "classes": classes,
            "offending_leaves": offending,
        });
        return Ok(to_line(&value));
    }
    let mut text = String::new();
    for (e, phi) in &metric.positions {
        text.push_str(&format!("phi({e}) = {}\n", format_rational(phi)));
    }
    text.push_str(&format!("verdict: {verdict}"));
    let classes = classes_text(&metric.verdict);
    if !classes.is_empty() {
        text.push_str(&format!("\nclasses: {classes}"));
    }
    if !metric.offending_leaves.is_empty() {
        let rendered: Vec<String> = metric
            .offending_leaves
            .iter()
            .map(|a| format!("{:?}", a.indices()))
            .collect();
        text.push_str(&format!("\nnon-singleton leaves: {}", rendered.join(" ")));
    }
    text.push('\n');
    table_text(&metric.table, &mut text);
    text.pop();
    Ok(text)
}

fn tree_truncate(args: &TruncateArgs, json: bool) -> Result<String, CliError> {
    let tree = load_tree(&args.input)?;
    let truncated = tree.truncate(args.m)?;
    let value = serde_json::to_value(truncated.to_doc())
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    if json {
        Ok(to_line(&value))
    } else {
        serde_json::to_string_pretty(&value)
            .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))
    }
}

fn tree_distances(args: &DistancesArgs, json: bool) -> Result<String, CliError> {
    if let Some(r) = args.r {
        if args.m <= r {
            return Err(CliError::Validation(format!(
                "truncation depth m = {} must exceed R = {r}",
                args.m
            )));
        }
    }
    let tree = load_tree(&args.input)?;
    let base = parse_base(&args.base)?;
    let strategy: SplitStrategy = args.strategy.into();
    let table = tree.truncated_distances(args.m, &base, strategy)?;
    if json {
        let entries: Vec<Value> = table
            .entries
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|bracket| {
                            json!({
                                "d_min": rational_value(&bracket.d_min),
                                "d_max": rational_value(&bracket.d_max),
                                // Derived scalar, not part of the bracket.
                                "d_mid": rational_value(&bracket.bracket_midpoint()),
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        let mut out = Map::new();
        out.insert("elements".into(), names_value(table.elements.clone()));
        out.insert("m".into(), Value::Number(table.m.into()));
        out.insert("strategy".into(), Value::String(strategy.name().into()));
        out.insert("base".into(), interval_value(&base));
        out.insert("d".into(), Value::Array(entries));
        if let Some(r) = args.r {
            out.insert("R".into(), Value::Number(r.into()));
        }
        return Ok(to_line(&Value::Object(out)));
    }
    let mut text = format!("brackets at depth {} ({})", table.m, strategy.name());
    if let Some(r) = args.r {
        text.push_str(&format!(", R = {r}"));
    }
    text.push('\n');
    for (i, x) in table.elements.iter().enumerate() {
        for (j, y) in table.elements.iter().enumerate() {
            if j <= i {
                continue;
            }
            let bracket = &table.entries[i][j];
            text.push_str(&format!(
                "{x} ~ {y}: [{}, {}]\n",
                format_rational(&bracket.d_min),
                format_rational(&bracket.d_max)
            ));
        }
    }
    text.pop();
    Ok(text)
}

fn cantor(args: &CantorArgs, json: bool) -> Result<String, CliError> {
    let limit = depth_limit()?;
    let stage = cantor_stage_with_limit(args.depth, limit)?;
    let measure = cantor_measure_with_limit(args.depth, limit)?;
    let report = property_report_with_limit(args.depth, limit)?;
    if json {
        let intervals: Vec<Value> = stage.intervals.iter().map(interval_value).collect();
        let value = json!({
            "depth": stage.depth,
            "intervals": intervals,
            "measure": rational_value(&measure),
            "report": {
                "closed": report.closed,
                "largest_contained_width": rational_value(&report.largest_contained_width),
                "max_endpoint_gap": rational_value(&report.max_endpoint_gap),
                "width_bound": rational_value(&report.width_bound),
                "disconnected_holds": report.disconnected_holds,
                "perfect_holds": report.perfect_holds,
                "notes": names_value(report.notes.clone()),
            },
        });
        return Ok(to_line(&value));
    }
    let mut text = format!(
        "depth {}: {} intervals, measure {}\n",
        stage.depth,
        stage.intervals.len(),
        format_rational(&measure)
    );
    for interval in &stage.intervals {
        text.push_str(&format!(
            "[{}, {}]\n",
            format_rational(interval.lo()),
            format_rational(interval.hi())
        ));
    }
    text.push_str(&format!(
        "closed: {}, disconnected proxy: {}, perfect proxy: {}\n",
        report.closed, report.disconnected_holds, report.perfect_holds
    ));
    text.push_str(&format!(
        "largest contained width: {}, max endpoint gap: {} (bound {})",
        format_rational(&report.largest_contained_width),
        format_rational(&report.max_endpoint_gap),
        format_rational(&report.width_bound)
    ));
    for note in &report.notes {
        text.push_str(&format!("\nnote: {note}"));
    }
    Ok(text)
}

fn dims(args: &DimsArgs, json: bool) -> Result<String, CliError> {
    if args.k > MAX_EXPONENT_INDEX {
        return Err(CliError::Validation(format!(
            "k = {} exceeds the supported maximum {MAX_EXPONENT_INDEX}",
            args.k
        )));
    }
    let sequence = exponent_sequence(args.k);
    let populations: Vec<Population> = (0..=args.k).map(|j| population(args.n, j)).collect();
    let report = total_points(args.n);
    if json {
        let exponents: Vec<Value> = sequence.terms.iter().map(rational_value).collect();
        let pops: Vec<Value> = populations
            .iter()
            .map(|p| match p {
                Population::Exact(v) => json!({ "exact": v.to_string() }),
                Population::Approximate { base, exponent, approx } => json!({
                    "base": base,
                    "exponent": format_rational(exponent),
                    "value_approx": approx,
                }),
            })
            .collect();
        let dim = match &report.dim_estimate {
            None => Value::Null,
            Some(enclosure) => json!({
                "enclosure": interval_value(enclosure),
                "value_approx": approx_f64(&enclosure.midpoint()),
            }),
        };
        let value = json!({
            "n": args.n,
            "k": args.k,
            "exponents": exponents,
            "limit": rational_value(&sequence.limit),
            "population": pops,
            "total": report.total.to_string(),
            "ratio": rational_value(&report.ratio),
            "dim_estimate": dim,
        });
        return Ok(to_line(&value));
    }
    let exponents: Vec<String> = sequence.terms.iter().map(format_rational).collect();
    let mut text = format!("exponents: {} (limit 2)\n", exponents.join(", "));
    for (j, p) in populations.iter().enumerate() {
        match p {
            Population::Exact(v) => {
                text.push_str(&format!("population at e_{j}: {v}\n"));
            }
            Population::Approximate { base, exponent, approx } => {
                text.push_str(&format!(
                    "population at e_{j}: {base}^({}) ~ {approx}\n",
                    format_rational(exponent)
                ));
            }
        }
    }
    text.push_str(&format!(
        "total: {}\nratio: {}",
        report.total,
        format_rational(&report.ratio)
    ));
    match &report.dim_estimate {
        None => text.push_str("\ndimension estimate: undefined at n = 1"),
        Some(enclosure) => text.push_str(&format!(
            "\ndimension estimate: [{}, {}] ~ {}",
            format_rational(enclosure.lo()),
            format_rational(enclosure.hi()),
            approx_f64(&enclosure.midpoint())
        )),
    }
    Ok(text)
}

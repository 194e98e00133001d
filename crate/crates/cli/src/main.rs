mod range;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qbecc::burst::{no_cloning_check, qrb, quantum_burst_capability};
use qbecc::channel::{sweep, sweep_to_csv, DecoderMode, Strategy, SweepCode, MAX_TRANSFER_BITS};
use qbecc::classical::{classical_burst_capability, cyclic_from_poly, rs_mds};
use qbecc::qtpc::{dispersal_report, qtpc_construct, InterleaverMap, TensorReport};
use qbecc::registry::{parse_registry, table1, Construction, RegistryEntry};
use qbecc::search::{
    build_code, build_entry, parse_genpoly, records_to_csv, reproduce_table1, search, SearchPlan,
};
use qbecc::stabilizer::{min_distance_with, DistanceConvention, DEFAULT_DISTANCE_LIMIT};
use qbecc::{ExtField, Gf4};

#[derive(Parser, Debug)]
#[command(name = "qbecc", version, about = "Quantum burst-error-correcting code workbench")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Burst capability, bounds and distance of one cyclic construction.
    Analyze(AnalyzeArgs),
    /// Search cyclic constructions, or re-check the shipped registry.
    Search(SearchArgs),
    /// Build a quantum tensor product code with a Reed-Solomon outer code.
    Tensor(TensorArgs),
    /// Entanglement fidelity sweeps over the correlated memory channel.
    Simulate(SimulateArgs),
    /// Check (n, k, l) against the burst bounds.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionArg {
    Hermitian,
    Css,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Hermitian => Construction::Hermitian,
            ConstructionArg::Css => Construction::Css,
        }
    }
}

#[derive(clap::Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    n: usize,
    /// Generator polynomial, e.g. "1^6 2^3 1^0".
    #[arg(long)]
    poly: String,
    /// Second generator (CSS only).
    #[arg(long)]
    poly2: Option<String>,
    /// Defaults to css when --poly2 is given, hermitian otherwise.
    #[arg(long, value_enum)]
    construction: Option<ConstructionArg>,
    /// Largest normalizer size enumerated for the distance.
    #[arg(long, default_value_t = DEFAULT_DISTANCE_LIMIT)]
    distance_limit: u64,
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 13)]
    min_n: usize,
    #[arg(long, default_value_t = 17)]
    max_n: usize,
    /// Only odd lengths (the default; even lengths are rejected).
    #[arg(long)]
    odd_only: bool,
    /// Restrict to one construction.
    #[arg(long, value_enum)]
    construction: Option<ConstructionArg>,
    #[arg(long)]
    max_candidates: Option<usize>,
    /// Seconds after which no new candidate is started.
    #[arg(long)]
    time_budget: Option<u64>,
    /// Rebuild and re-analyze every registry entry instead of searching.
    #[arg(long)]
    reproduce_table1: bool,
    /// Registry JSON to use instead of the embedded one.
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct TensorArgs {
    #[arg(long)]
    c1_poly: String,
    #[arg(long)]
    c1_n: usize,
    /// Outer Reed-Solomon code as `n2,l2`.
    #[arg(long)]
    rs: String,
    /// Interleaver depth; defaults to the burst capability of C1.
    #[arg(long)]
    l1: Option<usize>,
    /// Stream burst length for the dispersal report.
    #[arg(long)]
    dispersal: Option<usize>,
    /// Measure every stream offset, not only multiples of l1.
    #[arg(long)]
    unaligned: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderArg {
    Random,
    Burst,
    Combined,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    /// exact for n <= 13, transfer otherwise.
    Auto,
    Exact,
    Truncated,
    Transfer,
}

#[derive(clap::Args, Debug)]
struct SimulateArgs {
    /// Registry id, e.g. 13_1; may be repeated.
    #[arg(long, required = true)]
    code: Vec<String>,
    /// Decoder; may be repeated.
    #[arg(long, value_enum)]
    decoder: Vec<DecoderArg>,
    /// Random-error radius; defaults to (d - 1) / 2.
    #[arg(long)]
    t: Option<usize>,
    /// Burst length; defaults to the code's burst capability.
    #[arg(long)]
    l: Option<usize>,
    /// Depolarizing probability: value, a:step:b or a:log:b.
    #[arg(long)]
    p: String,
    /// Correlation degree: value, a:step:b or a:log:b.
    #[arg(long)]
    mu: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Weight cutoff of the truncated strategy.
    #[arg(long, default_value_t = 4)]
    w_max: usize,
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
}

/// Some registry row did not reproduce.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

#[derive(Serialize)]
struct AnalyzeRecord {
    n: usize,
    k: usize,
    l: usize,
    qrb: usize,
    saturates: bool,
    degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<usize>,
}

#[derive(Serialize)]
struct BoundsRecord {
    qrb: usize,
    qrb_ok: bool,
    no_cloning_ok: bool,
}

fn load_registry(path: &Option<PathBuf>) -> Result<Vec<RegistryEntry>> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(parse_registry(&text)?)
        }
        None => Ok(table1()),
    }
}

fn json_line<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string(v)? + "\n")
}

fn analyze(a: &AnalyzeArgs) -> Result<String> {
    let construction = a
        .construction
        .map(Construction::from)
        .unwrap_or(if a.poly2.is_some() { Construction::Css } else { Construction::Hermitian });
    let mut specs = vec![parse_genpoly(&a.poly, a.n)?];
    if let Some(p2) = &a.poly2 {
        specs.push(parse_genpoly(p2, a.n)?);
    }
    let code = build_code(construction, &specs)?;
    let r = quantum_burst_capability(&code)?;
    let bound = qrb(r.n, r.k);
    let distance = if r.k > 0 {
        min_distance_with(&code, DistanceConvention::Logical, a.distance_limit).ok()
    } else {
        None
    };
    json_line(&AnalyzeRecord {
        n: r.n,
        k: r.k,
        l: r.l,
        qrb: bound,
        saturates: r.l == bound,
        degenerate: r.degenerate,
        distance,
    })
}

fn run_search(a: &SearchArgs) -> Result<String> {
    if a.reproduce_table1 {
        let entries = load_registry(&a.registry)?;
        let reports = reproduce_table1(&entries)?;
        let mut out = String::new();
        for r in &reports {
            out.push_str(&json_line(r)?);
        }
        let matched = reports.iter().filter(|r| r.matches).count();
        let summary = format!("{matched}/{} rows match", reports.len());
        if matched != reports.len() {
            print!("{out}");
            return Err(Mismatch(summary).into());
        }
        eprintln!("{summary}");
        return Ok(out);
    }
    if a.min_n > a.max_n {
        bail!("--min-n {} exceeds --max-n {}", a.min_n, a.max_n);
    }
    let lengths: Vec<usize> = (a.min_n..=a.max_n).filter(|n| n % 2 == 1 && *n >= 3).collect();
    if lengths.is_empty() {
        return Err(qbecc::Error::OutOfRange(format!("no odd length in {}..={}", a.min_n, a.max_n)).into());
    }
    let mut plan = SearchPlan::new(lengths);
    if let Some(c) = a.construction {
        plan = plan.with_constructions(vec![c.into()]);
    }
    plan.max_candidates = a.max_candidates;
    plan.time_budget = a.time_budget.map(Duration::from_secs);
    let outcome = search(&plan)?;
    if !outcome.complete {
        eprintln!("search stopped early by a budget; results are incomplete");
    }
    Ok(records_to_csv(&outcome.records))
}

fn tensor(a: &TensorArgs) -> Result<String> {
    let (n2, l2) = a
        .rs
        .split_once(',')
        .and_then(|(x, y)| Some((x.trim().parse::<usize>().ok()?, y.trim().parse::<usize>().ok()?)))
        .ok_or_else(|| qbecc::Error::Parse(format!("--rs expects `n2,l2`, got `{}`", a.rs)))?;
    let g = parse_genpoly(&a.c1_poly, a.c1_n)?;
    let c1 = cyclic_from_poly(&g.to_poly(), a.c1_n, Gf4)?.base;
    let ext = ExtField::build(a.c1_n - c1.k())?;
    let c2 = rs_mds(n2, l2, &ext)?;
    let l1 = match a.l1 {
        Some(l1) => l1,
        None => classical_burst_capability(&c1, true).l,
    };
    let map = InterleaverMap::new(a.c1_n, n2, l1)?;
    let (code, spec) = qtpc_construct(&c1, &c2)?;
    let dispersal = a.dispersal.map(|len| dispersal_report(&map, len, !a.unaligned)).transpose()?;
    json_line(&TensorReport::new(&code, &spec, dispersal))
}

fn decoder_mode(d: DecoderArg, t: usize, l: usize) -> DecoderMode {
    match d {
        DecoderArg::Random => DecoderMode::Random { t },
        DecoderArg::Burst => DecoderMode::Burst { l },
        DecoderArg::Combined => DecoderMode::Combined { t, l },
    }
}

fn simulate(a: &SimulateArgs) -> Result<String> {
    let entries = load_registry(&a.registry)?;
    let ps = range::parse_grid(&a.p)?;
    let mus = range::parse_grid(&a.mu)?;
    let decoders = if a.decoder.is_empty() { vec![DecoderArg::Combined] } else { a.decoder.clone() };
    let mut codes = Vec::new();
    for id in &a.code {
        let entry = entries
            .iter()
            .find(|e| &e.id == id)
            .ok_or_else(|| qbecc::Error::Registry(format!("no registry entry `{id}`")))?;
        let code = build_entry(entry)?;
        let t = match a.t {
            Some(t) => t,
            None => (qbecc::min_distance(&code)? - 1) / 2,
        };
        let l = a.l.unwrap_or(entry.l);
        let strategy = match a.strategy {
            StrategyArg::Exact => Strategy::Exact,
            StrategyArg::Truncated => Strategy::Truncated { w_max: a.w_max },
            StrategyArg::Transfer => Strategy::Transfer,
            StrategyArg::Auto if code.n() <= qbecc::channel::DEFAULT_EXACT_MAX_N => Strategy::Exact,
            StrategyArg::Auto if code.n() + code.k() <= MAX_TRANSFER_BITS => Strategy::Transfer,
            StrategyArg::Auto => Strategy::Truncated { w_max: a.w_max },
        };
        codes.push(SweepCode {
            id: id.clone(),
            code,
            decoders: decoders.iter().map(|&d| decoder_mode(d, t, l)).collect(),
            strategy,
        });
    }
    Ok(sweep_to_csv(&sweep(&codes, &ps, &mus)?))
}

fn bounds(a: &BoundsArgs) -> Result<String> {
    if a.k > a.n {
        return Err(qbecc::Error::OutOfRange(format!("k = {} exceeds n = {}", a.k, a.n)).into());
    }
    let q = qrb(a.n, a.k);
    json_line(&BoundsRecord { qrb: q, qrb_ok: a.l <= q, no_cloning_ok: no_cloning_check(a.n, a.l) })
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| anyhow!("cannot start {w} workers: {e}"))?;
    }
    let out = match &cli.command {
        Command::Analyze(a) => analyze(a)?,
        Command::Search(a) => run_search(a)?,
        Command::Tensor(a) => tensor(a)?,
        Command::Simulate(a) => simulate(a)?,
        Command::Bounds(a) => bounds(a)?,
    };
    match &cli.output {
        Some(path) => fs::write(path, out).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(out.as_bytes())?,
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> (u8, &'static str) {
    if err.downcast_ref::<Mismatch>().is_some() {
        return (1, "mismatch");
    }
    match err.downcast_ref::<qbecc::Error>() {
        Some(e @ qbecc::Error::LimitExceeded(_)) => (3, e.kind()),
        Some(e) => (2, e.kind()),
        None => (2, "usage"),
    }
}

fn report(kind: &str, message: &str, code: u8) -> ExitCode {
    let body = serde_json::json!({ "error": kind, "message": message, "exit_code": code });
    eprintln!("{body}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report("usage", e.to_string().trim(), 2),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, kind) = exit_code(&e);
            report(kind, &format!("{e:#}"), code)
        }
    }
}

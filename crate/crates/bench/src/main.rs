use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use gcol_bench::load_inputs;
use gcol_bench::pool::default_threads;
use gcol_bench::stats::{compute_stats, graph_measures, write_stats};
use gcol_bench::uqw_bench::{
    parse_uqw_text, run_uqw_bench, uqw_totals, write_uqw_results, write_uqw_timing, write_uqw_totals, StartMode,
    UqwAlgorithm, UqwBenchConfig,
};
use gcol_bench::wcol_bench::{
    all_flat_algorithms, flat_variant_table, ratio_table, read_baseline, read_results, run_wcol_bench, summarize,
    write_flat_table, write_ratio_table, write_results, write_summary, write_timing, WcolBenchConfig,
};
use gcol_core::graph::read_edge_list;
use gcol_core::lb::{check_lb_properties, generate_lb};
use gcol_core::reach::{col_of_order, wcol_of_order};
use gcol_core::uqw::{score, verify_uqw};
use gcol_core::wcol::Algorithm;
use gcol_core::Order;

#[derive(Parser)]
#[command(name = "gcol", version, about = "Weak coloring number orders and uniform quasi-wideness benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute orders, evaluate wcol_r and write result, ratio and summary tables.
    Wcol(WcolArgs),
    /// Run the uniform quasi-wideness algorithms.
    Uqw(UqwArgs),
    /// Generate a lower-bound instance.
    GenLb(GenLbArgs),
    /// Check an order or an (S, B) solution against a graph.
    Verify(VerifyArgs),
    /// Log-log correlations between graph measures and wcol values.
    Stats(StatsArgs),
}

#[derive(Args)]
struct Common {
    /// Edge-list file or directory of edge lists.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated radii.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
    radius: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Main CSV; sidecar tables are written next to it.
    #[arg(long)]
    output: PathBuf,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct WcolArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated algorithm ids, `all`, or `flat-all` for the 18 flat variants.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    algorithms: Vec<String>,
    /// Per-order wall-clock limit in seconds.
    #[arg(long, default_value_t = 300.0)]
    timeout: f64,
    /// Also run local search on every order.
    #[arg(long)]
    local_search: bool,
    /// Local-search wall-clock limit in seconds.
    #[arg(long, default_value_t = 60.0)]
    ls_timeout: f64,
    /// CSV `graph,radius,wcol` of prior best values.
    #[arg(long)]
    baseline: Option<PathBuf>,
}

#[derive(Args)]
struct UqwArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated algorithm names or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    algorithms: Vec<String>,
    #[arg(long, default_value_t = 600.0)]
    timeout: f64,
    /// Comma-separated start modes: full, sample20.
    #[arg(long, value_delimiter = ',', default_value = "full")]
    start_mode: Vec<StartMode>,
    /// Ordering algorithm for mfcs and the new* variants.
    #[arg(long, default_value = "sreach_greedy")]
    order: Algorithm,
    /// Use that order without local search.
    #[arg(long)]
    no_order_local_search: bool,
}

#[derive(Args)]
struct GenLbArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    mprime: usize,
    /// Keep only this many tree levels.
    #[arg(long)]
    truncate_depth: Option<usize>,
    /// Edge list; the `child parent` sidecar goes to `<stem>.parent.txt`.
    #[arg(long)]
    output: PathBuf,
    /// Check the instance properties and print a report.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge-list file.
    #[arg(long)]
    input: PathBuf,
    /// Order file, one vertex label per line.
    #[arg(long, conflicts_with = "solution")]
    order: Option<PathBuf>,
    /// Solution file with `S:` and `B:` lines.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Start set for `--solution`, one label per line; all vertices if absent.
    #[arg(long, requires = "solution")]
    start: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
    radius: Vec<usize>,
}

#[derive(Args)]
struct StatsArgs {
    /// Edge-list file or directory, as passed to `wcol`.
    #[arg(long)]
    input: PathBuf,
    /// Result CSV written by `wcol`.
    #[arg(long)]
    results: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

/// `dir/stem.csv` becomes `dir/stem.<tag>.csv`.
fn sidecar(path: &Path, tag: &str, ext: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).with_context(|| format!("invalid timeout {s}"))
}

fn parse_wcol_algorithms(ids: &[String]) -> Result<Vec<Algorithm>> {
    let mut out = Vec::new();
    for id in ids {
        match id.as_str() {
            "all" => out.extend(Algorithm::all()),
            "flat-all" => out.extend(all_flat_algorithms()),
            _ => out.push(id.parse()?),
        }
    }
    out.dedup();
    Ok(out)
}

fn wcol(args: WcolArgs) -> Result<()> {
    let c = &args.common;
    let datasets = load_inputs(&c.input)?;
    let cfg = WcolBenchConfig {
        algorithms: parse_wcol_algorithms(&args.algorithms)?,
        radii: c.radius.clone(),
        timeout: seconds(args.timeout)?,
        ls_timeout: seconds(args.ls_timeout)?,
        local_search: args.local_search,
        seed: c.seed,
        threads: c.threads.unwrap_or_else(default_threads),
    };
    let baseline = match &args.baseline {
        Some(p) => Some(read_baseline(File::open(p).with_context(|| format!("opening {}", p.display()))?)?),
        None => None,
    };
    let records = run_wcol_bench(&datasets, &cfg);
    write_results(&records, create(&c.output)?)?;
    write_timing(&records, create(&sidecar(&c.output, "timing", "csv"))?)?;
    let table = ratio_table(&records, baseline.as_ref());
    write_ratio_table(&table, create(&sidecar(&c.output, "ratios", "csv"))?)?;
    write_summary(&summarize(&table), create(&sidecar(&c.output, "summary", "csv"))?)?;
    if let Some(flat) = flat_variant_table(&table) {
        write_flat_table(&flat, create(&sidecar(&c.output, "flat", "csv"))?)?;
    }
    let timeouts = records.iter().filter(|r| r.timed_out()).count();
    eprintln!("{} runs on {} graphs, {timeouts} timeouts", records.len(), datasets.len());
    Ok(())
}

fn uqw(args: UqwArgs) -> Result<()> {
    let c = &args.common;
    let datasets = load_inputs(&c.input)?;
    let mut algorithms = Vec::new();
    for a in &args.algorithms {
        if a == "all" {
            algorithms.extend(UqwAlgorithm::all());
        } else {
            algorithms.push(a.parse()?);
        }
    }
    let cfg = UqwBenchConfig {
        algorithms,
        radii: c.radius.clone(),
        start_modes: args.start_mode.clone(),
        timeout: seconds(args.timeout)?,
        seed: c.seed,
        threads: c.threads.unwrap_or_else(default_threads),
        order: args.order,
        order_local_search: !args.no_order_local_search,
        ..Default::default()
    };
    let records = run_uqw_bench(&datasets, &cfg)?;
    write_uqw_results(&records, create(&c.output)?)?;
    write_uqw_timing(&records, create(&sidecar(&c.output, "timing", "csv"))?)?;
    write_uqw_totals(&uqw_totals(&records), create(&sidecar(&c.output, "totals", "csv"))?)?;
    eprintln!("{} runs on {} graphs", records.len(), datasets.len());
    Ok(())
}

fn gen_lb(args: GenLbArgs) -> Result<bool> {
    let inst = generate_lb(args.k, args.r, args.mprime, args.truncate_depth)?;
    create(&args.output)?.write_all(inst.graph.to_edge_list().as_bytes())?;
    create(&sidecar(&args.output, "parent", "txt"))?.write_all(inst.parent_sidecar().as_bytes())?;
    eprintln!("c = {}, d = {}, {} vertices, {} edges", inst.c, inst.d, inst.graph.n(), inst.graph.m());
    if !args.check {
        return Ok(true);
    }
    let rep = check_lb_properties(&inst, 60);
    println!("edges ancestral: {}", rep.edges_ancestral);
    println!("tree shape: {}", rep.tree_shape);
    match rep.vertex_bound {
        Some(b) => println!("vertex bound |V| >= (m'-1)^c: {b} (|V| = {})", rep.vertex_count),
        None => println!("vertex bound: skipped (truncated)"),
    }
    println!("claim: {}", rep.claim);
    println!("subtree diameter: {} ({} subtrees)", rep.subtree_diameter, rep.subtrees_checked);
    if let Some((best, ok)) = &rep.separation {
        println!("separation: {ok} (largest |B| per |Z|: {best:?})");
    }
    if let Some((w, ok)) = rep.wcol {
        println!("wcol_r = {w}, equals c: {ok}");
    }
    Ok(rep.all_hold())
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let g = read_edge_list(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    if let Some(p) = &args.order {
        let order = Order::parse_labels(&g, BufReader::new(File::open(p)?))?;
        for &r in &args.radius {
            println!("r = {r}: wcol = {}, col = {}", wcol_of_order(&g, &order, r), col_of_order(&g, &order, r));
        }
        return Ok(true);
    }
    let Some(p) = &args.solution else { bail!("pass --order or --solution") };
    let text = std::fs::read_to_string(p)?;
    let a = match &args.start {
        Some(s) => {
            let text = std::fs::read_to_string(s)?;
            text.split_whitespace()
                .map(|t| {
                    let l: u64 = t.parse().with_context(|| format!("invalid label {t:?}"))?;
                    g.vertex_of(l).with_context(|| format!("unknown label {l}"))
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => g.vertices().collect(),
    };
    let mut ok = true;
    for &r in &args.radius {
        let res = parse_uqw_text(&g, &text, r)?;
        if verify_uqw(&g, &a, &res) {
            println!(
                "r = {r}: valid, |S| = {}, |B| = {}, score = {}",
                res.deleted.len(),
                res.independent.len(),
                score(&g, &res)?
            );
        } else {
            println!("r = {r}: INVALID");
            ok = false;
        }
    }
    Ok(ok)
}

fn stats(args: StatsArgs) -> Result<()> {
    let datasets = load_inputs(&args.input)?;
    let records =
        read_results(File::open(&args.results).with_context(|| format!("opening {}", args.results.display()))?)?;
    let m = graph_measures(&datasets, &records);
    let matrix = compute_stats(&m)?;
    write_stats(&m, &matrix, create(&args.output)?)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Wcol(a) => wcol(a).map(|_| true),
        Command::Uqw(a) => uqw(a).map(|_| true),
        Command::GenLb(a) => gen_lb(a),
        Command::Verify(a) => verify(a),
        Command::Stats(a) => stats(a).map(|_| true),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

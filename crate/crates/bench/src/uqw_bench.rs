use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{anyhow, bail, Result};
use gcol_core::uqw::{
    score, uqw_ld, uqw_mfcs, uqw_tgv, uqw_tree, verify_uqw, TgvVariant, TreeVariant, UqwResult, DEFAULT_LD_DELETIONS,
};
use gcol_core::wcol::{local_search, Algorithm, LsBudget};
use gcol_core::{Deadline, Graph, Order, Vertex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{Dataset, GroupLabel};
use crate::pool::{run_pool, run_with_timeout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UqwAlgorithm {
    Ld,
    Tree(TreeVariant),
    Mfcs,
    Tgv(TgvVariant),
}

impl UqwAlgorithm {
    pub fn all() -> Vec<UqwAlgorithm> {
        vec![
            UqwAlgorithm::Ld,
            UqwAlgorithm::Tree(TreeVariant::Tree1),
            UqwAlgorithm::Tree(TreeVariant::Tree2),
            UqwAlgorithm::Tree(TreeVariant::LdIt),
            UqwAlgorithm::Mfcs,
            UqwAlgorithm::Tgv(TgvVariant::New1),
            UqwAlgorithm::Tgv(TgvVariant::New2),
            UqwAlgorithm::Tgv(TgvVariant::NewLd),
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            UqwAlgorithm::Ld => "ld",
            UqwAlgorithm::Tree(v) => v.name(),
            UqwAlgorithm::Mfcs => "mfcs",
            UqwAlgorithm::Tgv(v) => v.name(),
        }
    }

    /// Whether the algorithm needs a vertex order.
    pub fn uses_order(self) -> bool {
        matches!(self, UqwAlgorithm::Mfcs | UqwAlgorithm::Tgv(_))
    }
}

impl fmt::Display for UqwAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UqwAlgorithm {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        UqwAlgorithm::all().into_iter().find(|a| a.name() == s).ok_or_else(|| anyhow!("unknown uqw algorithm {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StartMode {
    Full,
    /// A seeded random fifth of the vertices.
    Sample20,
}

impl StartMode {
    pub fn name(self) -> &'static str {
        match self {
            StartMode::Full => "full",
            StartMode::Sample20 => "sample20",
        }
    }
}

impl fmt::Display for StartMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StartMode {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(StartMode::Full),
            "sample20" => Ok(StartMode::Sample20),
            _ => bail!("unknown start mode {s:?}"),
        }
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The start set `A`. The sample depends only on the seed and the graph
/// name, so every algorithm sees the same set.
pub fn start_set(g: &Graph, name: &str, mode: StartMode, seed: u64) -> Vec<Vertex> {
    match mode {
        StartMode::Full => g.vertices().collect(),
        StartMode::Sample20 => {
            let n = g.n();
            let k = n.div_ceil(5);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(name));
            let mut a = rand::seq::index::sample(&mut rng, n, k).into_vec();
            a.sort_unstable();
            a
        }
    }
}

#[derive(Clone, Debug)]
pub struct UqwBenchConfig {
    pub algorithms: Vec<UqwAlgorithm>,
    pub radii: Vec<usize>,
    pub start_modes: Vec<StartMode>,
    pub timeout: Duration,
    pub seed: u64,
    pub threads: usize,
    pub ld_deletions: usize,
    pub tgv_thresholds: usize,
    /// Order for mfcs and the TGV variants.
    pub order: Algorithm,
    /// Improve that order with local search first.
    pub order_local_search: bool,
}

impl Default for UqwBenchConfig {
    fn default() -> Self {
        UqwBenchConfig {
            algorithms: UqwAlgorithm::all(),
            radii: (1..=5).collect(),
            start_modes: vec![StartMode::Full],
            timeout: Duration::from_secs(600),
            seed: 0,
            threads: 1,
            ld_deletions: DEFAULT_LD_DELETIONS,
            tgv_thresholds: gcol_core::uqw::wcol_based::DEFAULT_THRESHOLDS,
            order: Algorithm::SreachGreedy,
            order_local_search: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UqwMetric {
    pub deleted: usize,
    pub independent: usize,
    pub score: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UqwRecord {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub group: GroupLabel,
    pub algorithm: UqwAlgorithm,
    pub radius: usize,
    pub start_mode: StartMode,
    pub start_size: usize,
    /// `None` iff the run timed out.
    pub metric: Option<UqwMetric>,
    pub elapsed: Duration,
    pub seed: u64,
}

/// Runs one algorithm; used by the harness and the `verify` tests.
pub fn run_uqw_algorithm(
    g: &Graph,
    a: &[Vertex],
    r: usize,
    alg: UqwAlgorithm,
    order: Option<&Order>,
    cfg: &UqwBenchConfig,
) -> UqwResult {
    let order = || order.expect("order-based algorithm needs an order");
    match alg {
        UqwAlgorithm::Ld => uqw_ld(g, a, r, cfg.ld_deletions),
        UqwAlgorithm::Tree(v) => uqw_tree(g, a, r, v),
        UqwAlgorithm::Mfcs => uqw_mfcs(g, a, r, order()),
        UqwAlgorithm::Tgv(v) => uqw_tgv(g, a, r, order(), v, cfg.tgv_thresholds),
    }
}

/// The order used by mfcs and TGV at radius `r`.
pub fn uqw_order(g: &Graph, r: usize, cfg: &UqwBenchConfig, deadline: Deadline) -> Order {
    let o = cfg.order.order(g, r, cfg.seed);
    if !cfg.order_local_search {
        return o;
    }
    let mut budget = LsBudget::for_graph(g, cfg.seed);
    budget.deadline = deadline;
    local_search(g, &o, r, &budget)
}

/// Runs every (graph, radius, start mode, algorithm) job. Every result is
/// checked with `verify_uqw`; an invalid one is an error. Rows come sorted
/// by graph, radius, start mode and the order of `cfg.algorithms`.
pub fn run_uqw_bench(datasets: &[Dataset], cfg: &UqwBenchConfig) -> Result<Vec<UqwRecord>> {
    let mut order_jobs = Vec::new();
    if cfg.algorithms.iter().any(|a| a.uses_order()) {
        for gi in 0..datasets.len() {
            for &r in &cfg.radii {
                order_jobs.push((gi, r));
            }
        }
    }
    let orders: Vec<Option<Arc<Order>>> = run_pool(&order_jobs, cfg.threads, |&(gi, r)| {
        let g = datasets[gi].graph.clone();
        let c = cfg.clone();
        let timeout = cfg.timeout;
        run_with_timeout(timeout, move || Arc::new(uqw_order(&g, r, &c, Deadline::after(timeout / 2)))).0
    });
    let orders: BTreeMap<(usize, usize), Option<Arc<Order>>> = order_jobs.into_iter().zip(orders).collect();

    let mut jobs = Vec::new();
    for gi in 0..datasets.len() {
        for &r in &cfg.radii {
            for &mode in &cfg.start_modes {
                for (ai, &alg) in cfg.algorithms.iter().enumerate() {
                    jobs.push((gi, r, mode, ai, alg));
                }
            }
        }
    }
    let rows = run_pool(&jobs, cfg.threads, |&(gi, r, mode, _, alg)| -> Result<UqwRecord> {
        let ds = &datasets[gi];
        let a = Arc::new(start_set(&ds.graph, &ds.name, mode, cfg.seed));
        log::info!("{} r={r} {mode} {alg}", ds.name);
        let order = if alg.uses_order() { orders[&(gi, r)].clone() } else { None };
        let (res, elapsed) = if alg.uses_order() && order.is_none() {
            (None, Duration::ZERO)
        } else {
            let (g, a2, c) = (ds.graph.clone(), a.clone(), cfg.clone());
            run_with_timeout(cfg.timeout, move || run_uqw_algorithm(&g, &a2, r, alg, order.as_deref(), &c))
        };
        let metric = match res {
            None => None,
            Some(res) => {
                if !verify_uqw(&ds.graph, &a, &res) {
                    bail!("{alg} produced an invalid result on {} at r={r}", ds.name);
                }
                Some(UqwMetric {
                    deleted: res.deleted.len(),
                    independent: res.independent.len(),
                    score: score(&ds.graph, &res)?,
                })
            }
        };
        Ok(UqwRecord {
            graph: ds.name.clone(),
            n: ds.graph.n(),
            m: ds.graph.m(),
            group: ds.group(),
            algorithm: alg,
            radius: r,
            start_mode: mode,
            start_size: a.len(),
            metric,
            elapsed,
            seed: cfg.seed,
        })
    });
    let mut keyed: Vec<_> = jobs.iter().zip(rows).collect();
    keyed.sort_by(|((ga, ra, ma, aa, _), _), ((gb, rb, mb, ab, _), _)| {
        (&datasets[*ga].name, ra, ma, aa).cmp(&(&datasets[*gb].name, rb, mb, ab))
    });
    keyed.into_iter().map(|(_, r)| r).collect()
}

/// Reads the two-line `S: ...` / `B: ...` format of `UqwResult::to_text`.
pub fn parse_uqw_text(g: &Graph, text: &str, r: usize) -> Result<UqwResult> {
    let mut sets: [Option<Vec<Vertex>>; 2] = [None, None];
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, rest) = line.split_once(':').ok_or_else(|| anyhow!("expected `S:` or `B:` in {line:?}"))?;
        let slot = match key.trim() {
            "S" => 0,
            "B" => 1,
            k => bail!("unknown set {k:?}"),
        };
        let vs = rest
            .split_whitespace()
            .map(|t| {
                let label: u64 = t.parse().map_err(|_| anyhow!("invalid vertex label {t:?}"))?;
                g.vertex_of(label).ok_or_else(|| anyhow!("unknown vertex label {label}"))
            })
            .collect::<Result<Vec<_>>>()?;
        sets[slot] = Some(vs);
    }
    let [Some(s), Some(b)] = sets else { bail!("both `S:` and `B:` lines are required") };
    Ok(UqwResult::new(s, b, r))
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_uqw_results<W: Write>(records: &[UqwRecord], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "graph",
        "n",
        "m",
        "group",
        "algorithm",
        "radius",
        "start_mode",
        "start_size",
        "deleted",
        "independent",
        "score",
        "seed",
        "timeout",
    ])?;
    for r in records {
        let m = r.metric.as_ref();
        w.write_record([
            r.graph.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.group.to_string(),
            r.algorithm.to_string(),
            r.radius.to_string(),
            r.start_mode.to_string(),
            r.start_size.to_string(),
            opt(m.map(|m| m.deleted)),
            opt(m.map(|m| m.independent)),
            opt(m.map(|m| m.score)),
            r.seed.to_string(),
            m.is_none().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_uqw_timing<W: Write>(records: &[UqwRecord], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["graph", "algorithm", "radius", "start_mode", "elapsed_ms"])?;
    for r in records {
        w.write_record([
            r.graph.clone(),
            r.algorithm.to_string(),
            r.radius.to_string(),
            r.start_mode.to_string(),
            r.elapsed.as_millis().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Column sums per (radius, start mode, algorithm) over all graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UqwTotal {
    pub algorithm: UqwAlgorithm,
    pub radius: usize,
    pub start_mode: StartMode,
    pub graphs: usize,
    pub deleted: usize,
    pub independent: usize,
    pub score: usize,
    pub timeouts: usize,
}

pub fn uqw_totals(records: &[UqwRecord]) -> Vec<UqwTotal> {
    let mut algs: Vec<UqwAlgorithm> = Vec::new();
    for r in records {
        if !algs.contains(&r.algorithm) {
            algs.push(r.algorithm);
        }
    }
    let mut sums: BTreeMap<(usize, StartMode, usize), UqwTotal> = BTreeMap::new();
    for r in records {
        let ai = algs.iter().position(|&a| a == r.algorithm).unwrap();
        let t = sums.entry((r.radius, r.start_mode, ai)).or_insert(UqwTotal {
            algorithm: r.algorithm,
            radius: r.radius,
            start_mode: r.start_mode,
            graphs: 0,
            deleted: 0,
            independent: 0,
            score: 0,
            timeouts: 0,
        });
        t.graphs += 1;
        match &r.metric {
            Some(m) => {
                t.deleted += m.deleted;
                t.independent += m.independent;
                t.score += m.score;
            }
            None => t.timeouts += 1,
        }
    }
    sums.into_values().collect()
}

pub fn write_uqw_totals<W: Write>(totals: &[UqwTotal], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["radius", "start_mode", "algorithm", "graphs", "deleted", "independent", "score", "timeouts"])?;
    for t in totals {
        w.write_record([
            t.radius.to_string(),
            t.start_mode.to_string(),
            t.algorithm.to_string(),
            t.graphs.to_string(),
            t.deleted.to_string(),
            t.independent.to_string(),
            t.score.to_string(),
            t.timeouts.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::time::Duration;

use anyhow::{Context, Result};
use gcol_core::reach::wcol_of_order;
use gcol_core::wcol::{local_search, Algorithm, FlatConfig, InnerOrder, LsBudget, RootChoice};
use gcol_core::Deadline;

use crate::dataset::{Dataset, GroupLabel};
use crate::pool::{run_pool, run_with_timeout};

/// Suffix of the algorithm id for rows that went through local search.
pub const LS_SUFFIX: &str = "+ls";

/// Extra wall time granted past the cooperative local-search deadline
/// before the watchdog gives up.
const LS_GRACE: Duration = Duration::from_secs(5);

#[derive(Clone, Debug)]
pub struct WcolBenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub radii: Vec<usize>,
    pub timeout: Duration,
    pub ls_timeout: Duration,
    pub local_search: bool,
    pub seed: u64,
    pub threads: usize,
}

impl Default for WcolBenchConfig {
    fn default() -> Self {
        WcolBenchConfig {
            algorithms: Algorithm::all(),
            radii: (1..=5).collect(),
            timeout: Duration::from_secs(300),
            ls_timeout: Duration::from_secs(60),
            local_search: false,
            seed: 0,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WcolRecord {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub group: GroupLabel,
    pub algorithm: String,
    pub radius: usize,
    /// `None` iff the run timed out.
    pub wcol: Option<usize>,
    pub elapsed: Duration,
    pub seed: u64,
}

impl WcolRecord {
    pub fn timed_out(&self) -> bool {
        self.wcol.is_none()
    }
}

/// Runs every (graph, algorithm, radius) job. With local search enabled each
/// job yields a second row for the improved order. Rows are sorted by graph
/// name, then radius, then algorithm id.
pub fn run_wcol_bench(datasets: &[Dataset], cfg: &WcolBenchConfig) -> Vec<WcolRecord> {
    let mut jobs = Vec::new();
    for (gi, _) in datasets.iter().enumerate() {
        for &r in &cfg.radii {
            for &a in &cfg.algorithms {
                jobs.push((gi, a, r));
            }
        }
    }
    let rows = run_pool(&jobs, cfg.threads, |&(gi, alg, r)| {
        let ds = &datasets[gi];
        let g = ds.graph.clone();
        let seed = cfg.seed;
        log::info!("{} r={r} {alg}", ds.name);
        let (out, elapsed) = run_with_timeout(cfg.timeout, move || {
            let o = alg.order(&g, r, seed);
            let w = wcol_of_order(&g, &o, r);
            (o, w)
        });
        let record = |algorithm: String, wcol, elapsed| WcolRecord {
            graph: ds.name.clone(),
            n: ds.graph.n(),
            m: ds.graph.m(),
            group: ds.group(),
            algorithm,
            radius: r,
            wcol,
            elapsed,
            seed,
        };
        let mut rows = vec![record(alg.to_string(), out.as_ref().map(|(_, w)| *w), elapsed)];
        if cfg.local_search {
            let improved = out.map(|(order, _)| {
                let g = ds.graph.clone();
                let ls_timeout = cfg.ls_timeout;
                run_with_timeout(ls_timeout + LS_GRACE, move || {
                    let mut budget = LsBudget::for_graph(&g, seed);
                    budget.deadline = Deadline::after(ls_timeout);
                    let o = local_search(&g, &order, r, &budget);
                    wcol_of_order(&g, &o, r)
                })
            });
            let (w, ls_elapsed) = improved.unwrap_or((None, Duration::ZERO));
            rows.push(record(format!("{alg}{LS_SUFFIX}"), w, elapsed + ls_elapsed));
        }
        rows
    });
    let mut rows: Vec<WcolRecord> = rows.into_iter().flatten().collect();
    rows.sort_by(|a, b| (&a.graph, a.radius, &a.algorithm).cmp(&(&b.graph, b.radius, &b.algorithm)));
    rows
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn fmt_ratio(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), |v| format!("{v:.4}"))
}

/// Main result CSV. Contains no timings so reruns are byte-identical.
pub fn write_results<W: Write>(records: &[WcolRecord], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["graph", "n", "m", "group", "algorithm", "radius", "wcol", "seed", "timeout"])?;
    for r in records {
        w.write_record([
            r.graph.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.group.to_string(),
            r.algorithm.clone(),
            r.radius.to_string(),
            r.wcol.map(|v| v.to_string()).unwrap_or_default(),
            r.seed.to_string(),
            r.timed_out().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_timing<W: Write>(records: &[WcolRecord], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["graph", "algorithm", "radius", "elapsed_ms"])?;
    for r in records {
        w.write_record([
            r.graph.clone(),
            r.algorithm.clone(),
            r.radius.to_string(),
            r.elapsed.as_millis().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a result CSV written by [`write_results`]. Elapsed times are not
/// stored there and come back as zero.
pub fn read_results<R: Read>(input: R) -> Result<Vec<WcolRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |k: usize| rec.get(k).with_context(|| format!("row {}: missing column {k}", i + 1));
        let m: usize = field(2)?.parse()?;
        let wcol = field(6)?;
        out.push(WcolRecord {
            graph: field(0)?.to_string(),
            n: field(1)?.parse()?,
            m,
            group: GroupLabel::of_edges(m),
            algorithm: field(4)?.to_string(),
            radius: field(5)?.parse()?,
            wcol: if wcol.is_empty() { None } else { Some(wcol.parse()?) },
            elapsed: Duration::ZERO,
            seed: field(7)?.parse()?,
        });
    }
    Ok(out)
}

/// Prior best values keyed by (graph, radius), from a `graph,radius,wcol`
/// CSV.
pub type Baseline = BTreeMap<(String, usize), usize>;

pub fn read_baseline<R: Read>(input: R) -> Result<Baseline> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Baseline::new();
    for rec in rdr.records() {
        let rec = rec?;
        let (Some(g), Some(r), Some(w)) = (rec.get(0), rec.get(1), rec.get(2)) else {
            anyhow::bail!("baseline rows need graph,radius,wcol");
        };
        let key = (g.to_string(), r.parse()?);
        let w: usize = w.parse()?;
        let e = out.entry(key).or_insert(w);
        *e = (*e).min(w);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub graph: String,
    pub group: GroupLabel,
    pub radius: usize,
    pub best: Option<usize>,
    /// One entry per column of [`RatioTable::algorithms`]; `None` for a
    /// timeout or a missing run.
    pub ratios: Vec<Option<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioTable {
    pub algorithms: Vec<String>,
    pub rows: Vec<RatioRow>,
}

/// Divides every value by the best one for its (graph, radius) over all
/// algorithms of the run and the optional baseline.
pub fn ratio_table(records: &[WcolRecord], baseline: Option<&Baseline>) -> RatioTable {
    let mut algorithms: Vec<String> = records.iter().map(|r| r.algorithm.clone()).collect();
    algorithms.sort();
    algorithms.dedup();
    let col: BTreeMap<&str, usize> = algorithms.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    type Cells = BTreeMap<(String, usize), (GroupLabel, Vec<Option<usize>>)>;
    let mut cells = Cells::new();
    for r in records {
        let e = cells.entry((r.graph.clone(), r.radius)).or_insert_with(|| (r.group, vec![None; algorithms.len()]));
        e.1[col[r.algorithm.as_str()]] = r.wcol;
    }
    let rows = cells
        .into_iter()
        .map(|((graph, radius), (group, values))| {
            let prior = baseline.and_then(|b| b.get(&(graph.clone(), radius)).copied());
            let best = values.iter().flatten().copied().chain(prior).min();
            let ratios = values.iter().map(|v| Some((*v)? as f64 / best? as f64)).collect();
            RatioRow { graph, group, radius, best, ratios }
        })
        .collect();
    RatioTable { algorithms, rows }
}

pub fn write_ratio_table<W: Write>(table: &RatioTable, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    let mut header = vec!["graph".to_string(), "group".into(), "radius".into(), "best".into()];
    header.extend(table.algorithms.iter().cloned());
    w.write_record(&header)?;
    for row in &table.rows {
        let mut rec = vec![
            row.graph.clone(),
            row.group.to_string(),
            row.radius.to_string(),
            row.best.map(|b| b.to_string()).unwrap_or_else(|| "NA".into()),
        ];
        rec.extend(row.ratios.iter().map(|&x| fmt_ratio(x)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    /// A group name, or `all`.
    pub group: String,
    pub algorithm: String,
    pub radius: usize,
    pub instances: usize,
    pub mean_ratio: Option<f64>,
    /// Instances on which the algorithm attained the best value.
    pub best_count: usize,
    pub timeouts: usize,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (s, k) = xs.fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    (k > 0).then(|| s / k as f64)
}

/// Mean ratio, number of wins and timeouts per (group, algorithm, radius).
pub fn summarize(table: &RatioTable) -> Vec<SummaryRow> {
    let mut groups: Vec<String> = table.rows.iter().map(|r| r.group.to_string()).collect();
    groups.sort_by_key(|g| ["small", "medium", "big", "huge"].iter().position(|x| x == g));
    groups.dedup();
    groups.push("all".into());
    let mut radii: Vec<usize> = table.rows.iter().map(|r| r.radius).collect();
    radii.sort_unstable();
    radii.dedup();
    let mut out = Vec::new();
    for group in &groups {
        for (c, alg) in table.algorithms.iter().enumerate() {
            for &radius in &radii {
                let rows: Vec<&RatioRow> = table
                    .rows
                    .iter()
                    .filter(|r| r.radius == radius && (group == "all" || r.group.name() == group))
                    .collect();
                let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratios[c]).collect();
                out.push(SummaryRow {
                    group: group.clone(),
                    algorithm: alg.clone(),
                    radius,
                    instances: rows.len(),
                    mean_ratio: mean(ratios.iter().copied()),
                    best_count: ratios.iter().filter(|&&x| x == 1.0).count(),
                    timeouts: rows.len() - ratios.len(),
                });
            }
        }
    }
    out
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["group", "algorithm", "radius", "instances", "mean_ratio", "best_count", "timeouts"])?;
    for r in rows {
        w.write_record([
            r.group.clone(),
            r.algorithm.clone(),
            r.radius.to_string(),
            r.instances.to_string(),
            fmt_ratio(r.mean_ratio),
            r.best_count.to_string(),
            r.timeouts.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One (root rule, inner order) pair of the flat comparison with its mean
/// ratio in both directions.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatVariantRow {
    pub root: RootChoice,
    pub inner: InnerOrder,
    pub mean_ratio: Option<f64>,
    pub mean_ratio_reversed: Option<f64>,
}

impl FlatVariantRow {
    /// Whether the reversed variant is no better than the unreversed one.
    pub fn reversed_not_better(&self) -> Option<bool> {
        Some(self.mean_ratio_reversed? >= self.mean_ratio?)
    }
}

/// The 18-variant flat table: mean ratio over every (graph, radius) row.
/// Returns `None` unless all 18 variants are columns of `table`.
pub fn flat_variant_table(table: &RatioTable) -> Option<Vec<FlatVariantRow>> {
    let column = |cfg: FlatConfig| table.algorithms.iter().position(|a| *a == cfg.to_string());
    let mean_of = |c: usize| mean(table.rows.iter().filter_map(|r| r.ratios[c]));
    let mut out = Vec::new();
    for cfg in FlatConfig::all().into_iter().filter(|c| !c.reversed) {
        let rev = FlatConfig { reversed: true, ..cfg };
        out.push(FlatVariantRow {
            root: cfg.root,
            inner: cfg.inner,
            mean_ratio: mean_of(column(cfg)?),
            mean_ratio_reversed: mean_of(column(rev)?),
        });
    }
    Some(out)
}

pub fn write_flat_table<W: Write>(rows: &[FlatVariantRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["variant", "mean_ratio", "mean_ratio_reversed", "reversed_not_better"])?;
    for r in rows {
        let cfg = FlatConfig { root: r.root, inner: r.inner, reversed: false };
        let name = cfg.to_string();
        w.write_record([
            name.trim_end_matches(":0").to_string(),
            fmt_ratio(r.mean_ratio),
            fmt_ratio(r.mean_ratio_reversed),
            r.reversed_not_better().map_or_else(|| "NA".to_string(), |b| b.to_string()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Every flat variant, for `--algorithms flat-all`.
pub fn all_flat_algorithms() -> Vec<Algorithm> {
    FlatConfig::all().into_iter().map(Algorithm::Flat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gcol_core::generators::{path, star};

    fn cfg(algorithms: Vec<Algorithm>, radii: Vec<usize>) -> WcolBenchConfig {
        WcolBenchConfig { algorithms, radii, threads: 2, ..Default::default() }
    }

    #[test]
    fn star_ratios_are_one() {
        let ds = vec![Dataset::new("star", star(9))];
        let algs: Vec<_> =
            Algorithm::all().into_iter().filter(|a| !matches!(a, Algorithm::Random | Algorithm::MinDegree)).collect();
        let recs = run_wcol_bench(&ds, &cfg(algs, vec![2]));
        assert!(recs.iter().all(|r| r.wcol == Some(2)), "{recs:?}");
        let t = ratio_table(&recs, None);
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].ratios.iter().all(|&x| x == Some(1.0)));

        // With id ties min-degree eliminates the center just before the
        // last leaf, which then precedes it.
        let recs = run_wcol_bench(&ds, &cfg(vec![Algorithm::MinDegree], vec![2]));
        assert_eq!(recs[0].wcol, Some(3));
    }

    #[test]
    fn single_algorithm_is_self_relative() {
        let ds = vec![Dataset::new("p", path(12)), Dataset::new("s", star(4))];
        let recs = run_wcol_bench(&ds, &cfg(vec![Algorithm::Random], vec![1, 2, 3]));
        let t = ratio_table(&recs, None);
        assert_eq!(t.rows.len(), 6);
        assert!(t.rows.iter().all(|r| r.ratios == vec![Some(1.0)]));
    }

    #[test]
    fn local_search_rows_and_sorting() {
        let ds = vec![Dataset::new("b", path(9)), Dataset::new("a", star(3))];
        let mut c = cfg(vec![Algorithm::Degree, Algorithm::Random], vec![2, 1]);
        c.local_search = true;
        let recs = run_wcol_bench(&ds, &c);
        assert_eq!(recs.len(), 2 * 2 * 2 * 2);
        assert_eq!(recs[0].graph, "a");
        assert_eq!(recs[0].radius, 1);
        assert_eq!(recs[0].algorithm, "degree");
        assert_eq!(recs[1].algorithm, "degree+ls");
        for pair in recs.chunks(2) {
            assert!(pair[1].wcol.unwrap() <= pair[0].wcol.unwrap());
        }
    }

    #[test]
    fn baseline_lowers_best() {
        let ds = vec![Dataset::new("p", path(7))];
        let recs = run_wcol_bench(&ds, &cfg(vec![Algorithm::Degree], vec![1]));
        let base = read_baseline("graph,radius,wcol\np,1,1\n".as_bytes()).unwrap();
        let t = ratio_table(&recs, Some(&base));
        assert_eq!(t.rows[0].best, Some(1));
        assert_eq!(t.rows[0].ratios[0], Some(recs[0].wcol.unwrap() as f64));
    }

    #[test]
    fn timeout_rows_have_no_metric() {
        let ds = vec![Dataset::new("big", gcol_core::generators::gnp(3000, 0.01, 1))];
        let mut c = cfg(vec![Algorithm::WreachGreedy], vec![5]);
        c.timeout = Duration::from_millis(1);
        let recs = run_wcol_bench(&ds, &c);
        assert!(recs[0].timed_out());
        let t = ratio_table(&recs, None);
        assert_eq!(t.rows[0].best, None);
        let mut buf = Vec::new();
        write_results(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.ends_with(",,0,true\n"), "{text}");
    }

    #[test]
    fn results_round_trip() {
        let ds = vec![Dataset::new("p", path(6))];
        let recs = run_wcol_bench(&ds, &cfg(vec![Algorithm::Degeneracy, Algorithm::Dtf], vec![1, 2]));
        let mut buf = Vec::new();
        write_results(&recs, &mut buf).unwrap();
        let back = read_results(buf.as_slice()).unwrap();
        assert_eq!(back.len(), recs.len());
        assert!(back.iter().zip(&recs).all(|(a, b)| a.wcol == b.wcol && a.algorithm == b.algorithm));
    }

    #[test]
    fn flat_table_needs_all_variants() {
        let ds = vec![Dataset::new("p", path(10)), Dataset::new("s", star(5))];
        let partial = ratio_table(&run_wcol_bench(&ds, &cfg(Algorithm::all(), vec![1])), None);
        assert!(flat_variant_table(&partial).is_none());
        let full = ratio_table(&run_wcol_bench(&ds, &cfg(all_flat_algorithms(), vec![1, 2])), None);
        let rows = flat_variant_table(&full).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.mean_ratio.unwrap() >= 1.0));
        let mut buf = Vec::new();
        write_flat_table(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 10);
    }

    #[test]
    fn summary_counts() {
        let ds = vec![Dataset::new("p", path(10))];
        let t = ratio_table(&run_wcol_bench(&ds, &cfg(vec![Algorithm::Degree, Algorithm::Degeneracy], vec![1])), None);
        let s = summarize(&t);
        assert_eq!(s.len(), 2 * 2);
        let all: Vec<_> = s.iter().filter(|r| r.group == "all").collect();
        assert!(all.iter().any(|r| r.best_count == 1));
        assert!(all.iter().all(|r| r.instances == 1 && r.timeouts == 0));
    }
}

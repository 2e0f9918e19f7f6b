//! Acceptance criteria 1 to 10. Every test writes one `PASS`/`FAIL` line to
//! stdout directly, so the line shows even when the harness captures output.

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use gcol_bench::uqw_bench::{run_uqw_algorithm, uqw_order, StartMode, UqwAlgorithm, UqwBenchConfig};
use gcol_bench::{load_inputs, Dataset};
use gcol_core::degeneracy::degeneracy_order;
use gcol_core::generators::{double_star, gnp, grid, random_connected, random_tree, star};
use gcol_core::lb::{check_lb_properties, generate_lb};
use gcol_core::reach::{exact_wcol, sreach_sets, wcol_of_order, wreach_sets};
use gcol_core::uqw::{
    exhaustive_best_scores, score, uqw_ld, verify_uqw, ProfileDistance, TgvMachine, TgvVariant, DEFAULT_LD_DELETIONS,
};
use gcol_core::wcol::{
    dtf_augment, dtf_wreach_bound, local_search, objective_of_order, order_from_dtf, Algorithm, FlatConfig, LsBudget,
};
use gcol_core::{Deadline, Graph, Order};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: &str, name: &str, ok: bool, detail: &str) {
    let line = format!("criterion {id} {name}: {} ({detail})\n", if ok { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(ok, "{}", line.trim_end());
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus() -> Vec<Dataset> {
    let ds = load_inputs(&corpus_dir()).unwrap();
    assert_eq!(ds.len(), 20);
    ds
}

/// Every ordering algorithm, with all flat variants.
fn every_algorithm() -> Vec<Algorithm> {
    let mut algs: Vec<Algorithm> = Algorithm::all().into_iter().filter(|a| !matches!(a, Algorithm::Flat(_))).collect();
    algs.extend(FlatConfig::all().into_iter().map(Algorithm::Flat));
    algs
}

fn small_connected(seed: u64) -> Graph {
    let n = 3 + (seed % 5) as usize;
    let p = 0.2 + 0.1 * (seed % 6) as f64;
    random_connected(n, p, seed)
}

#[test]
fn criterion_01_wcol_oracle() {
    let start = Instant::now();
    let mut violations = Vec::new();
    let (mut instances, mut attained) = (0, 0);
    for seed in 0..200 {
        let g = small_connected(seed);
        for r in 1..=3 {
            let (exact, _) = exact_wcol(&g, r).unwrap();
            let mut hit = false;
            for alg in every_algorithm() {
                let o = alg.order(&g, r, seed);
                if wcol_of_order(&g, &o, r) < exact {
                    violations.push(format!("seed {seed} r {r} {alg}"));
                }
                let improved = local_search(&g, &o, r, &LsBudget::for_graph(&g, seed));
                hit |= wcol_of_order(&g, &improved, r) == exact;
            }
            instances += 1;
            attained += hit as usize;
        }
    }
    let elapsed = start.elapsed();
    let rate = attained as f64 / instances as f64;
    let ok = violations.is_empty() && rate >= 0.6 && elapsed < Duration::from_secs(300);
    report(
        "01",
        "wcol oracle equivalence",
        ok,
        &format!(
            "{instances} instances on 200 graphs, {} below exact, exact attained with local search on {:.1}%, {:.1}s",
            violations.len(),
            100.0 * rate,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_02_degeneracy_identity() {
    let mut graphs: Vec<Graph> = corpus().into_iter().map(|d| (*d.graph).clone()).collect();
    for seed in 0..200u64 {
        let n = 1 + (seed % 60) as usize;
        graphs.push(gnp(n, 0.02 + 0.03 * (seed % 7) as f64, seed));
    }
    graphs.extend((1..10).map(star));
    graphs.extend((1..8).map(|k| grid(k, k + 2)));
    graphs.extend((1..20).map(|s| random_tree(5 * s as usize, s)));
    let bad = graphs
        .iter()
        .filter(|g| {
            let (o, d) = degeneracy_order(g);
            wcol_of_order(g, &o, 1) != d + 1
        })
        .count();
    report("02", "degeneracy identity", bad == 0, &format!("{} graphs, {bad} mismatches", graphs.len()));
}

#[test]
fn criterion_03_dtf_certificate() {
    let mut bad = Vec::new();
    let mut runs = 0;
    for ds in corpus() {
        for r in 1..=5 {
            let aug = dtf_augment(&ds.graph, r);
            let o = order_from_dtf(&ds.graph, r);
            let w = wcol_of_order(&ds.graph, &o, r);
            let bound = dtf_wreach_bound(&aug, &o);
            runs += 1;
            if w > bound {
                bad.push(format!("{} r={r}: {w} > {bound}", ds.name));
            }
        }
    }
    report("03", "dtf certificate", bad.is_empty(), &format!("{runs} runs, violations {bad:?}"));
}

#[test]
fn criterion_04_monotonicity() {
    let mut bad = Vec::new();
    let mut orders = 0;
    for ds in corpus() {
        let g = &ds.graph;
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for alg in every_algorithm() {
            for producer_r in 1..=5 {
                let o = alg.order(g, producer_r, 0);
                if !seen.insert(o.as_slice().to_vec()) {
                    continue;
                }
                orders += 1;
                let mut prev = 0;
                for r in 1..=5 {
                    let w = wreach_sets(g, &o, r).max_size();
                    let s = sreach_sets(g, &o, r).max_size();
                    if w < prev || s > w {
                        bad.push(format!("{} {alg}@{producer_r} r={r}", ds.name));
                    }
                    prev = w;
                }
            }
        }
    }
    report(
        "04",
        "monotonicity in r and SReach <= WReach",
        bad.is_empty(),
        &format!("{orders} distinct orders, r = 1..5, violations {bad:?}"),
    );
}

#[test]
fn criterion_05_local_search_never_worsens() {
    let mut worse = 0;
    for trial in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        let n = rng.gen_range(4..=24);
        let g = random_connected(n, rng.gen_range(0.08..0.4), trial);
        let mut at: Vec<usize> = (0..n).collect();
        at.shuffle(&mut rng);
        let o = Order::from_sequence(at).unwrap();
        let r = rng.gen_range(1..=4);
        let out = local_search(&g, &o, r, &LsBudget::for_graph(&g, trial));
        if objective_of_order(&g, &out, r) > objective_of_order(&g, &o, r) {
            worse += 1;
        }
    }
    report("05", "local search never worsens", worse == 0, &format!("1000 trials, {worse} worse"));
}

#[test]
fn criterion_06_uqw_validity() {
    let mut graphs: Vec<(String, Graph)> = corpus().into_iter().map(|d| (d.name.clone(), (*d.graph).clone())).collect();
    graphs.extend((0..20u64).map(|s| (format!("random{s}"), random_connected(25 + s as usize, 0.1, s))));
    let cfg = UqwBenchConfig::default();
    let (mut runs, mut invalid, mut mfcs_bad, mut tgv_bad, mut tgv_runs) = (0, 0, 0, 0, 0);
    for (name, g) in &graphs {
        for r in 1..=5 {
            let order = uqw_order(g, r, &cfg, Deadline::never());
            let c = wcol_of_order(g, &order, r);
            for mode in [StartMode::Full, StartMode::Sample20] {
                let a = gcol_bench::uqw_bench::start_set(g, name, mode, 0);
                for alg in UqwAlgorithm::all() {
                    let res = run_uqw_algorithm(g, &a, r, alg, Some(&order), &cfg);
                    runs += 1;
                    invalid += !verify_uqw(g, &a, &res) as usize;
                    if alg == UqwAlgorithm::Mfcs && res.deleted.len() > c * (c - 1) {
                        mfcs_bad += 1;
                    }
                }
                for variant in [TgvVariant::New1, TgvVariant::New2, TgvVariant::NewLd] {
                    for j in 1..=9 {
                        let mut m = TgvMachine::new(g, &a, r, &order, variant, j as f64 / 10.0);
                        while m.step().is_some() {}
                        let (res, pre) = m.finish();
                        tgv_runs += 1;
                        invalid += !verify_uqw(g, &a, &res) as usize;
                        tgv_bad += (pre > c) as usize;
                    }
                }
            }
        }
    }
    let ok = invalid == 0 && mfcs_bad == 0 && tgv_bad == 0;
    report(
        "06",
        "uqw validity and deletion bounds",
        ok,
        &format!(
            "{runs} algorithm runs + {tgv_runs} single-threshold runs, {invalid} invalid, \
             {mfcs_bad} mfcs over c(c-1), {tgv_bad} tgv over c"
        ),
    );
}

#[test]
fn criterion_07_uqw_small_oracle() {
    let start = Instant::now();
    let cfg = UqwBenchConfig::default();
    let mut graphs: Vec<Graph> = (0..60u64).map(|s| random_connected(5 + (s % 6) as usize, 0.25, 100 + s)).collect();
    graphs.extend((1..=9).map(star));
    for a in 1..=4 {
        for b in a..=4 {
            graphs.push(double_star(a, b));
        }
    }
    let (mut compared, mut beaten) = (0, Vec::new());
    for (gi, g) in graphs.iter().enumerate() {
        let all: Vec<usize> = g.vertices().collect();
        for r in 1..=3 {
            let oracle = exhaustive_best_scores(g, &all, r, 2, ProfileDistance::InGraph, 10).unwrap();
            let order = uqw_order(g, r, &cfg, Deadline::never());
            for alg in UqwAlgorithm::all() {
                let res = run_uqw_algorithm(g, &all, r, alg, Some(&order), &cfg);
                let k = res.deleted.len();
                if k > 2 {
                    continue;
                }
                compared += 1;
                let s = score(g, &res).unwrap();
                if s > oracle[k] {
                    beaten.push(format!("graph {gi} r={r} {alg}: {s} > {}", oracle[k]));
                }
            }
        }
    }
    let mut ld_mismatch = Vec::new();
    let mut family = 0;
    let shapes: Vec<(String, Graph)> = (1..=9)
        .map(|k| (format!("star({k})"), star(k)))
        .chain((1..=4).flat_map(|a| (1..=4).map(move |b| (format!("double_star({a},{b})"), double_star(a, b)))))
        .collect();
    for (name, g) in &shapes {
        let all: Vec<usize> = g.vertices().collect();
        for r in 1..=3 {
            let best =
                *exhaustive_best_scores(g, &all, r, 2, ProfileDistance::InGraph, 10).unwrap().iter().max().unwrap();
            let ld = score(g, &uqw_ld(g, &all, r, DEFAULT_LD_DELETIONS)).unwrap();
            family += 1;
            if ld != best {
                ld_mismatch.push(format!("{name} r={r}: ld {ld}, oracle {best}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = beaten.is_empty() && ld_mismatch.is_empty() && elapsed < Duration::from_secs(600);
    report(
        "07",
        "uqw small-instance oracle",
        ok,
        &format!(
            "{compared} heuristic results, beaten {beaten:?}; ld vs oracle on {family} star/double-star cases, \
             mismatches {ld_mismatch:?}; {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

const LB_GRID: [(usize, usize); 4] = [(1, 3), (1, 4), (2, 3), (2, 4)];

#[test]
fn criterion_08_lb_generator() {
    let mut lines = Vec::new();
    let mut ok = true;
    for (r, mp) in LB_GRID {
        match generate_lb(1, r, mp, None) {
            Err(e) => lines.push(format!("r={r} m'={mp}: rejected ({e})")),
            Ok(inst) => {
                let rep = check_lb_properties(&inst, 60);
                let sep = rep.separation.as_ref().is_some_and(|s| s.1);
                let this = rep.edges_ancestral
                    && rep.tree_shape
                    && rep.claim
                    && rep.subtree_diameter
                    && sep
                    && rep.wcol.is_none_or(|w| w.1);
                ok &= this;
                lines.push(format!(
                    "r={r} m'={mp}: |V|={} ancestral={} shape={} claim={} diameter={} separation={:?} wcol={:?}",
                    rep.vertex_count,
                    rep.edges_ancestral,
                    rep.tree_shape,
                    rep.claim,
                    rep.subtree_diameter,
                    rep.separation,
                    rep.wcol
                ));
            }
        }
    }
    report("08", "lb generator structure, claim and separation", ok, &lines.join("; "));
}

#[test]
fn criterion_08_lb_vertex_bound() {
    let mut lines = Vec::new();
    let mut ok = true;
    for (r, mp) in LB_GRID {
        let Ok(inst) = generate_lb(1, r, mp, None) else { continue };
        let rep = check_lb_properties(&inst, 60);
        let bound = (mp - 1).pow(inst.c as u32);
        ok &= rep.vertex_bound == Some(true);
        lines.push(format!("r={r} m'={mp}: |V|={} vs (m'-1)^c={bound}", rep.vertex_count));
    }
    report("08", "lb vertex bound |V| >= (m'-1)^c", ok, &lines.join("; "));
}

fn gcol(args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_gcol")).args(args).output().unwrap();
    assert!(out.status.success(), "gcol {args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn read(p: &Path) -> Vec<u8> {
    std::fs::read(p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn criterion_09_determinism() {
    let corpus = corpus_dir();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let w = d.path().join("wcol.csv");
        gcol(&["wcol", "--input", corpus.to_str().unwrap(), "--output", w.to_str().unwrap(), "--seed", "11"]);
        let u = d.path().join("uqw.csv");
        gcol(&[
            "uqw",
            "--input",
            corpus.to_str().unwrap(),
            "--output",
            u.to_str().unwrap(),
            "--seed",
            "11",
            "--radius",
            "1,2,3",
            "--start-mode",
            "full,sample20",
        ]);
    }
    let files = ["wcol.csv", "wcol.ratios.csv", "wcol.summary.csv", "uqw.csv", "uqw.totals.csv"];
    let differing: Vec<&str> =
        files.iter().copied().filter(|f| read(&dirs[0].path().join(f)) != read(&dirs[1].path().join(f))).collect();
    let ratios = String::from_utf8(read(&dirs[0].path().join("wcol.ratios.csv"))).unwrap();
    let rows: Vec<&str> = ratios.lines().skip(1).collect();
    let rows_without_one = rows.iter().filter(|l| !l.split(',').skip(4).any(|x| x == "1.0000")).count();
    let below_one =
        rows.iter().flat_map(|l| l.split(',').skip(4)).filter(|x| x.parse::<f64>().is_ok_and(|v| v < 1.0)).count();
    let ok = differing.is_empty() && rows_without_one == 0 && below_one == 0 && rows.len() == 100;
    report(
        "09",
        "harness determinism",
        ok,
        &format!(
            "{} files compared, differing {differing:?}; {} ratio rows, {rows_without_one} without a 1.0, \
             {below_one} ratios below 1.0",
            files.len(),
            rows.len()
        ),
    );
}

#[test]
fn criterion_10_flat_variant_table() {
    let corpus = corpus_dir();
    let d = tempfile::tempdir().unwrap();
    let out = d.path().join("flat.csv");
    gcol(&["wcol", "--input", corpus.to_str().unwrap(), "--output", out.to_str().unwrap(), "--algorithms", "flat-all"]);
    let ratios = String::from_utf8(read(&d.path().join("flat.ratios.csv"))).unwrap();
    let columns = ratios.lines().next().unwrap().split(',').skip(4).count();
    let table = String::from_utf8(read(&d.path().join("flat.flat.csv"))).unwrap();
    let rows: Vec<Vec<&str>> = table.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let reversed_not_better = rows.iter().filter(|r| r[3] == "true").count();
    let ok = columns == 18 && rows.len() == 9 && rows.iter().all(|r| r[1] != "NA" && r[2] != "NA");
    let mut detail = format!(
        "{columns} variants in the ratio table, {} table rows; reversed mean ratio >= unreversed for \
         {reversed_not_better}/9 pairs (reported only)",
        rows.len()
    );
    for r in &rows {
        detail.push_str(&format!("; {} {} / {}", r[0], r[1], r[2]));
    }
    report("10", "flat variant table", ok, &detail);
}

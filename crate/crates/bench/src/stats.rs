use std::collections::BTreeMap;
use std::io::Write;

use anyhow::{bail, Result};

use crate::dataset::Dataset;
use crate::wcol_bench::WcolRecord;

/// Marker written for an undefined correlation.
pub const UNDEFINED: &str = "NA";

/// Pearson correlation; `None` with fewer than two points or zero variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let k = xs.len().min(ys.len());
    if k < 2 {
        return None;
    }
    let (mx, my) = (xs[..k].iter().sum::<f64>() / k as f64, ys[..k].iter().sum::<f64>() / k as f64);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys).take(k) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx <= f64::EPSILON * k as f64 || syy <= f64::EPSILON * k as f64 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson correlation of `(ln x, ln y)` over the points where both values
/// are positive.
pub fn log_pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let (lx, ly): (Vec<f64>, Vec<f64>) =
        xs.iter().zip(ys).filter(|(x, y)| **x > 0.0 && **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).unzip();
    pearson(&lx, &ly)
}

/// Named columns of per-graph measures, one value per graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Measures {
    pub graphs: Vec<String>,
    pub columns: Vec<(String, Vec<f64>)>,
}

/// n, m, average and maximum degree of every dataset, plus `wcol_<r>`: the
/// best value over all algorithms in `records` for that graph and radius.
/// Graphs missing a value for some radius are left out.
pub fn graph_measures(datasets: &[Dataset], records: &[WcolRecord]) -> Measures {
    let mut best: BTreeMap<(&str, usize), usize> = BTreeMap::new();
    for r in records {
        if let Some(w) = r.wcol {
            let e = best.entry((r.graph.as_str(), r.radius)).or_insert(w);
            *e = (*e).min(w);
        }
    }
    let mut radii: Vec<usize> = best.keys().map(|k| k.1).collect();
    radii.sort_unstable();
    radii.dedup();
    let mut names = vec!["n".to_string(), "m".into(), "avg_degree".into(), "max_degree".into()];
    names.extend(radii.iter().map(|r| format!("wcol_{r}")));
    let mut columns: Vec<(String, Vec<f64>)> = names.into_iter().map(|n| (n, Vec::new())).collect();
    let mut graphs = Vec::new();
    for ds in datasets {
        let Some(w): Option<Vec<usize>> = radii.iter().map(|&r| best.get(&(ds.name.as_str(), r)).copied()).collect()
        else {
            continue;
        };
        let g = &ds.graph;
        let row = [g.n() as f64, g.m() as f64, g.average_degree(), g.max_degree() as f64]
            .into_iter()
            .chain(w.into_iter().map(|x| x as f64));
        for (c, v) in columns.iter_mut().zip(row) {
            c.1.push(v);
        }
        graphs.push(ds.name.clone());
    }
    Measures { graphs, columns }
}

/// Log-log correlation matrix of all measure columns.
pub fn compute_stats(m: &Measures) -> Result<Vec<Vec<Option<f64>>>> {
    if m.graphs.len() < 3 {
        bail!("correlation needs at least 3 graphs, got {}", m.graphs.len());
    }
    Ok(m.columns.iter().map(|(_, a)| m.columns.iter().map(|(_, b)| log_pearson(a, b)).collect()).collect())
}

pub fn write_stats<W: Write>(m: &Measures, matrix: &[Vec<Option<f64>>], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let mut header = vec![String::new()];
    header.extend(m.columns.iter().map(|c| c.0.clone()));
    w.write_record(&header)?;
    for ((name, _), row) in m.columns.iter().zip(matrix) {
        let mut rec = vec![name.clone()];
        rec.extend(row.iter().map(|x| x.map_or_else(|| UNDEFINED.to_string(), |v| format!("{v:.6}"))));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

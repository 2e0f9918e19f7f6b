use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use gcol_core::graph::read_edge_list;
use gcol_core::Graph;

/// Size class of a graph by edge count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupLabel {
    Small,
    Medium,
    Big,
    Huge,
}

impl GroupLabel {
    pub fn of_edges(m: usize) -> Self {
        match m {
            0..=1_000 => GroupLabel::Small,
            1_001..=10_000 => GroupLabel::Medium,
            10_001..=48_000 => GroupLabel::Big,
            _ => GroupLabel::Huge,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupLabel::Small => "small",
            GroupLabel::Medium => "medium",
            GroupLabel::Big => "big",
            GroupLabel::Huge => "huge",
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Dataset {
    /// File stem, used as the key in every output.
    pub name: String,
    pub graph: Arc<Graph>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        Dataset { name: name.into(), graph: Arc::new(graph) }
    }

    pub fn group(&self) -> GroupLabel {
        GroupLabel::of_edges(self.graph.m())
    }
}

/// Loads a single edge-list file, or every regular file in a directory
/// sorted by name. Unreadable files in a directory are skipped with a
/// warning.
pub fn load_inputs(path: &Path) -> Result<Vec<Dataset>> {
    if path.is_file() {
        let g = read_edge_list(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(vec![Dataset::new(stem(path), g)]);
    }
    if !path.is_dir() {
        bail!("input {} does not exist", path.display());
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .with_context(|| format!("listing {}", path.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        match read_edge_list(&f) {
            Ok(g) => out.push(Dataset::new(stem(&f), g)),
            Err(e) => log::warn!("skipping {}: {e}", f.display()),
        }
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_thresholds() {
        assert_eq!(GroupLabel::of_edges(0), GroupLabel::Small);
        assert_eq!(GroupLabel::of_edges(1_000), GroupLabel::Small);
        assert_eq!(GroupLabel::of_edges(1_001), GroupLabel::Medium);
        assert_eq!(GroupLabel::of_edges(10_000), GroupLabel::Medium);
        assert_eq!(GroupLabel::of_edges(10_001), GroupLabel::Big);
        assert_eq!(GroupLabel::of_edges(48_000), GroupLabel::Big);
        assert_eq!(GroupLabel::of_edges(48_001), GroupLabel::Huge);
    }

    #[test]
    fn directory_loading_skips_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("b.txt"), "0 1\n1 2\n").unwrap();
        std::fs::write(dir.path().join("a.txt"), "0 1\n").unwrap();
        std::fs::write(dir.path().join("c.txt"), "0 x\n").unwrap();
        let ds = load_inputs(dir.path()).unwrap();
        let names: Vec<_> = ds.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["a", "b"]);
        assert_eq!(ds[1].graph.m(), 2);
    }
}

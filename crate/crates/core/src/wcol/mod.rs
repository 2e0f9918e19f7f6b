//! Ordering heuristics for the weak coloring numbers.

pub mod dtf;
pub mod elimination;
pub mod flat;
pub mod greedy;
pub mod local_search;
pub mod simple;
pub mod treedepth;

pub use dtf::{dtf_augment, dtf_wreach_bound, order_from_dtf, DtfGraph};
pub use elimination::{min_degree_elimination, order_min_degree_elimination};
pub use flat::{flat_decompose, order_flat, FlatConfig, FlatDecomposition, InnerOrder, RootChoice};
pub use greedy::{order_greedy_sreach, order_greedy_wreach};
pub use local_search::{local_search, objective_of_order, LsBudget};
pub use simple::{order_simple, SimpleVariant};
pub use treedepth::{order_treedepth_heuristic, treedepth_decomposition};

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::Graph;
use crate::order::Order;

/// Every ordering algorithm, addressable by a short id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Degree,
    Degeneracy,
    Random,
    PowerDegree,
    PowerDegeneracy,
    MinDegree,
    Treedepth,
    WreachGreedy,
    SreachGreedy,
    Dtf,
    Flat(FlatConfig),
}

impl Algorithm {
    /// The default set: every algorithm once, flat with its best variant.
    pub fn all() -> Vec<Algorithm> {
        vec![
            Algorithm::Degree,
            Algorithm::Degeneracy,
            Algorithm::Random,
            Algorithm::PowerDegree,
            Algorithm::PowerDegeneracy,
            Algorithm::MinDegree,
            Algorithm::Treedepth,
            Algorithm::WreachGreedy,
            Algorithm::SreachGreedy,
            Algorithm::Dtf,
            Algorithm::Flat(FlatConfig::BEST),
        ]
    }

    /// Computes the order for radius `r`; `seed` is used by `random` only.
    pub fn order(self, g: &Graph, r: usize, seed: u64) -> Order {
        match self {
            Algorithm::Degree => order_simple(g, SimpleVariant::DegreeDesc),
            Algorithm::Degeneracy => order_simple(g, SimpleVariant::Degeneracy),
            Algorithm::Random => order_simple(g, SimpleVariant::Random { seed }),
            Algorithm::PowerDegree => order_simple(g, SimpleVariant::PowerDegreeDesc { radius: r }),
            Algorithm::PowerDegeneracy => order_simple(g, SimpleVariant::PowerDegeneracy { radius: r }),
            Algorithm::MinDegree => order_min_degree_elimination(g),
            Algorithm::Treedepth => order_treedepth_heuristic(g),
            Algorithm::WreachGreedy => order_greedy_wreach(g, r),
            Algorithm::SreachGreedy => order_greedy_sreach(g, r),
            Algorithm::Dtf => order_from_dtf(g, r),
            Algorithm::Flat(cfg) => order_flat(g, cfg),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::Degree => "degree",
            Algorithm::Degeneracy => "degeneracy",
            Algorithm::Random => "random",
            Algorithm::PowerDegree => "power_degree",
            Algorithm::PowerDegeneracy => "power_degeneracy",
            Algorithm::MinDegree => "mindeg",
            Algorithm::Treedepth => "treedepth",
            Algorithm::WreachGreedy => "wreach_greedy",
            Algorithm::SreachGreedy => "sreach_greedy",
            Algorithm::Dtf => "dtf",
            Algorithm::Flat(cfg) => return write!(f, "{cfg}"),
        };
        f.write_str(s)
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "degree" => Algorithm::Degree,
            "degeneracy" => Algorithm::Degeneracy,
            "random" => Algorithm::Random,
            "power_degree" => Algorithm::PowerDegree,
            "power_degeneracy" => Algorithm::PowerDegeneracy,
            "mindeg" => Algorithm::MinDegree,
            "treedepth" => Algorithm::Treedepth,
            "wreach_greedy" => Algorithm::WreachGreedy,
            "sreach_greedy" => Algorithm::SreachGreedy,
            "dtf" => Algorithm::Dtf,
            "flat" => Algorithm::Flat(FlatConfig::BEST),
            _ if s.starts_with("flat:") => Algorithm::Flat(s.parse()?),
            _ => return Err(Error::InvalidParameter(format!("unknown ordering algorithm {s:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_connected;

    #[test]
    fn ids_round_trip() {
        for a in Algorithm::all() {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("flat".parse::<Algorithm>().unwrap().to_string(), "flat:2:sort:0");
        assert!("bogus".parse::<Algorithm>().is_err());
    }

    #[test]
    fn every_algorithm_gives_a_permutation() {
        let g = random_connected(50, 0.07, 9);
        for a in Algorithm::all() {
            for r in 1..4 {
                let o = a.order(&g, r, 1);
                let mut seen: Vec<_> = o.iter().collect();
                seen.sort_unstable();
                assert_eq!(seen, (0..g.n()).collect::<Vec<_>>(), "{a}");
            }
        }
    }
}

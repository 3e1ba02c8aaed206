//! Exact solvers for efficient domination on arbitrary graphs.
//!
//! [`solve_exact`] treats the closed neighborhoods as an exact-cover family
//! and backtracks over it; [`solve_naive`] checks every subset. Neither
//! shares code with the reduction procedure, so they can serve as ground
//! truth for it.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::eds::{eds_size_bound, verify_eds};
use crate::error::{EdsError, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default vertex limit of the exact solver.
pub const DEFAULT_MAX_N: usize = 128;
/// Vertex limit of the subset enumerator.
pub const NAIVE_MAX_N: usize = 20;
/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "EDS_AUDIT_MAX_N";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub has_eds: bool,
    /// All solutions when enumeration was requested, else at most one;
    /// sorted lexicographically.
    pub solutions: Vec<VertexSet>,
    pub nodes_explored: u64,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)? / 1e3))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_n: usize,
    /// Cut branches once the n/(r+1) size of a regular graph's EDS is reached.
    pub size_bound_pruning: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_n: DEFAULT_MAX_N, size_bound_pruning: true }
    }
}

impl OracleOptions {
    /// Defaults, with `max_n` taken from `EDS_AUDIT_MAX_N` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = Self::default();
        if let Ok(raw) = std::env::var(MAX_N_ENV) {
            opts.max_n =
                raw.trim().parse().map_err(|_| EdsError::usage(format!("{MAX_N_ENV} must be an integer, got {raw:?}")))?;
        }
        Ok(opts)
    }
}

/// Exact-cover search for one or all efficient dominating sets.
pub fn solve_exact(g: &Graph, enumerate_all: bool) -> Result<OracleReport> {
    solve_exact_with(g, enumerate_all, OracleOptions::from_env()?)
}

pub fn solve_exact_with(g: &Graph, enumerate_all: bool, opts: OracleOptions) -> Result<OracleReport> {
    let start = Instant::now();
    if g.n() == 0 {
        return Err(EdsError::usage("oracle requires a nonempty graph"));
    }
    if g.n() > opts.max_n {
        return Err(EdsError::capacity(format!("graph has {} vertices, oracle limit is {}", g.n(), opts.max_n)));
    }
    let target = if opts.size_bound_pruning && g.is_regular()?.is_some() {
        match eds_size_bound(g)? {
            Some(k) => Some(k),
            None => {
                return Ok(OracleReport { has_eds: false, solutions: vec![], nodes_explored: 0, elapsed: start.elapsed() })
            }
        }
    } else {
        None
    };

    let balls: Vec<VertexSet> = (0..g.n())
        .map(|v| {
            let mut b = g.adj_set(v).clone();
            b.insert(v);
            b
        })
        .collect();
    let mut search = CoverSearch { balls: &balls, target, enumerate_all, chosen: vec![], solutions: vec![], nodes: 0 };
    search.run(&VertexSet::full(g.n()));

    let mut solutions: Vec<Vec<usize>> = search.solutions;
    solutions.sort();
    let solutions: Vec<VertexSet> = solutions.into_iter().map(|s| VertexSet::from_ids(g.n(), s)).collect();
    debug_assert!(solutions.iter().all(|s| verify_eds(g, s).unwrap_or(false)));
    Ok(OracleReport { has_eds: !solutions.is_empty(), solutions, nodes_explored: search.nodes, elapsed: start.elapsed() })
}

struct CoverSearch<'a> {
    balls: &'a [VertexSet],
    target: Option<usize>,
    enumerate_all: bool,
    chosen: Vec<usize>,
    solutions: Vec<Vec<usize>>,
    nodes: u64,
}

impl CoverSearch<'_> {
    /// Returns true once the search should stop.
    fn run(&mut self, uncovered: &VertexSet) -> bool {
        self.nodes += 1;
        if uncovered.is_empty() {
            let mut s = self.chosen.clone();
            s.sort_unstable();
            self.solutions.push(s);
            return !self.enumerate_all;
        }
        if self.target.is_some_and(|k| self.chosen.len() >= k) {
            return false;
        }
        // uncovered vertex with the fewest closed neighborhoods still fitting
        let mut best: Option<Vec<usize>> = None;
        for u in uncovered {
            let covers: Vec<usize> = self.balls[u].iter().filter(|&x| self.balls[x].is_subset(uncovered)).collect();
            if best.as_ref().is_none_or(|b| covers.len() < b.len()) {
                let dead = covers.is_empty();
                best = Some(covers);
                if dead {
                    return false;
                }
            }
        }
        for x in best.expect("uncovered is nonempty") {
            self.chosen.push(x);
            let stop = self.run(&uncovered.difference(&self.balls[x]));
            self.chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Tests every subset of V with [`verify_eds`]; always enumerates.
pub fn solve_naive(g: &Graph) -> Result<OracleReport> {
    let start = Instant::now();
    let n = g.n();
    if n > NAIVE_MAX_N {
        return Err(EdsError::capacity(format!("naive oracle handles at most {NAIVE_MAX_N} vertices, got {n}")));
    }
    let mut solutions: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let set = VertexSet::from_ids(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        if verify_eds(g, &set)? {
            solutions.push(set.to_vec());
        }
    }
    solutions.sort();
    let solutions: Vec<VertexSet> = solutions.into_iter().map(|s| VertexSet::from_ids(n, s)).collect();
    Ok(OracleReport { has_eds: !solutions.is_empty(), solutions, nodes_explored: 1u64 << n, elapsed: start.elapsed() })
}

//! Regular-graph families and the textual `GenSpec` form used to name them.
//!
//! Random families draw from ChaCha8 (`rand_chacha` 0.3) seeded with
//! `seed_from_u64(seed)`; retry `k` of the pairing model uses stream `k` of
//! that generator, so a spec string always denotes the same graph.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{EdsError, Result};
use crate::graph::Graph;

/// Retry budget of the pairing model.
pub const RANDOM_REGULAR_RETRIES: u64 = 10_000;

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(EdsError::usage(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(EdsError::usage("complete graph needs n >= 1"));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// The d-dimensional hypercube; vertex ids are the bit strings themselves.
pub fn hypercube(d: usize) -> Result<Graph> {
    if !(1..=20).contains(&d) {
        return Err(EdsError::usage(format!("hypercube needs 1 <= d <= 20, got {d}")));
    }
    let n = 1usize << d;
    Graph::from_edges(n, (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|(u, v)| u < v))
}

/// Circulant graph: `i ~ i ± o (mod n)` for every offset `o`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    if n < 2 || offsets.is_empty() {
        return Err(EdsError::usage("circulant needs n >= 2 and at least one offset"));
    }
    let mut sorted = offsets.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != offsets.len() || sorted.iter().any(|&o| o == 0 || o > n / 2) {
        return Err(EdsError::usage(format!("circulant offsets must be distinct with 0 < o <= n/2, got {offsets:?}")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for &o in &sorted {
            let j = (i + o) % n;
            // the antipodal offset yields each edge twice
            if 2 * o == n && j < i {
                continue;
            }
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, edges)
}

/// Generalized Petersen graph GP(n, k): outer cycle `0..n`, spokes `i ~ n+i`,
/// inner edges `n+i ~ n+(i+k mod n)`.
pub fn petersen(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k < 1 || 2 * k >= n {
        return Err(EdsError::usage(format!("generalized Petersen needs n >= 3 and 1 <= k < n/2, got n={n}, k={k}")));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::from_edges(2 * n, edges)
}

/// Connected simple r-regular graph from the pairing (configuration) model,
/// rejecting any matching with a loop, a repeated edge, or more than one
/// component.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    if n == 0 || r >= n || (n * r) % 2 == 1 {
        return Err(EdsError::usage(format!("random regular graph needs n*r even and r < n, got n={n}, r={r}")));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    for attempt in 0..RANDOM_REGULAR_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        stubs.sort_unstable();
        stubs.shuffle(&mut rng);
        let pairs = stubs.chunks_exact(2).map(|p| (p[0], p[1]));
        // from_edges rejects loops and multi-edges
        let Ok(g) = Graph::from_edges(n, pairs) else { continue };
        if g.is_connected()? {
            return Ok(g);
        }
    }
    Err(EdsError::capacity(format!(
        "no connected simple {r}-regular graph on {n} vertices after {RANDOM_REGULAR_RETRIES} attempts (seed {seed})"
    )))
}

/// Named parameters of a [`GenSpec`], kept as raw strings until a family
/// interprets them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn int(&self, key: &str) -> Result<u64> {
        let raw = self.raw(key).ok_or_else(|| EdsError::usage(format!("missing parameter {key}")))?;
        raw.parse().map_err(|_| EdsError::usage(format!("parameter {key} must be a non-negative integer, got {raw:?}")))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        self.int(key).map(|v| v as usize)
    }

    /// A `+`-separated integer list such as `1+2`.
    pub fn list(&self, key: &str) -> Result<Vec<usize>> {
        let raw = self.raw(key).ok_or_else(|| EdsError::usage(format!("missing parameter {key}")))?;
        raw.split('+')
            .map(|s| s.parse().map_err(|_| EdsError::usage(format!("parameter {key} must be a +-separated list, got {raw:?}"))))
            .collect()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.0.insert(key.into(), value.into());
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

/// A generator family: a name, the parameter keys it takes, and a builder.
pub trait GraphFamily: Send + Sync {
    fn name(&self) -> &'static str;
    /// Parameter keys in canonical order.
    fn param_names(&self) -> &'static [&'static str];
    fn build(&self, params: &Params) -> Result<Graph>;
}

macro_rules! family {
    ($ty:ident, $name:literal, [$($p:literal),*], |$params:ident| $body:expr) => {
        pub struct $ty;
        impl GraphFamily for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn param_names(&self) -> &'static [&'static str] {
                &[$($p),*]
            }
            fn build(&self, $params: &Params) -> Result<Graph> {
                $body
            }
        }
    };
}

family!(CycleFamily, "cycle", ["n"], |p| cycle(p.usize("n")?));
family!(CompleteFamily, "complete", ["n"], |p| complete(p.usize("n")?));
family!(HypercubeFamily, "hypercube", ["d"], |p| hypercube(p.usize("d")?));
family!(CirculantFamily, "circulant", ["n", "offsets"], |p| circulant(p.usize("n")?, &p.list("offsets")?));
family!(PetersenFamily, "generalized-petersen", ["n", "k"], |p| petersen(p.usize("n")?, p.usize("k")?));
family!(RandomRegularFamily, "random-regular", ["n", "r", "seed"], |p| random_regular(
    p.usize("n")?,
    p.usize("r")?,
    p.int("seed")?
));

/// Every built-in family.
pub fn builtin_families() -> Vec<Box<dyn GraphFamily>> {
    vec![
        Box::new(CycleFamily),
        Box::new(CompleteFamily),
        Box::new(HypercubeFamily),
        Box::new(CirculantFamily),
        Box::new(PetersenFamily),
        Box::new(RandomRegularFamily),
    ]
}

/// A family name plus parameters, written `family:key=value,key=value`,
/// e.g. `random-regular:n=10,r=3,seed=42`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub family: String,
    pub params: Params,
}

impl FromStr for GenSpec {
    type Err = EdsError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        if family.is_empty() {
            return Err(EdsError::usage(format!("generator spec {s:?} has no family")));
        }
        let mut params = Params::default();
        for item in rest.split(',').filter(|i| !i.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .filter(|(k, v)| !k.is_empty() && !v.is_empty())
                .ok_or_else(|| EdsError::usage(format!("malformed parameter {item:?} in {s:?}")))?;
            if params.raw(k).is_some() {
                return Err(EdsError::usage(format!("parameter {k} repeated in {s:?}")));
            }
            params.set(k, v);
        }
        Ok(GenSpec { family: family.to_string(), params })
    }
}

impl fmt::Display for GenSpec {
    /// Parameters print in key order; [`GenSpec::canonical`] uses the
    /// family's own order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family)?;
        let mut sep = ':';
        for (k, v) in &self.params.0 {
            write!(f, "{sep}{k}={v}")?;
            sep = ',';
        }
        Ok(())
    }
}

impl GenSpec {
    /// Canonical string with parameters in the family's declared order.
    /// Unknown keys are rejected.
    pub fn canonical(&self, family: &dyn GraphFamily) -> Result<String> {
        let names = family.param_names();
        if let Some(k) = self.params.keys().find(|k| !names.contains(k)) {
            return Err(EdsError::usage(format!("family {} has no parameter {k}", family.name())));
        }
        let body: Vec<String> =
            names.iter().filter_map(|k| self.params.raw(k).map(|v| format!("{k}={v}"))).collect();
        Ok(if body.is_empty() { family.name().to_string() } else { format!("{}:{}", family.name(), body.join(",")) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::encode_graph6;

    #[test]
    fn structured_families() {
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.n(), q3.edge_count(), q3.is_regular().unwrap()), (8, 12, Some(3)));
        let p = petersen(5, 2).unwrap();
        assert_eq!((p.n(), p.edge_count(), p.is_regular().unwrap()), (10, 15, Some(3)));
        assert!(p.is_connected().unwrap());
        let c = circulant(9, &[1, 2]).unwrap();
        assert_eq!((c.n(), c.is_regular().unwrap()), (9, Some(4)));
        let m = circulant(8, &[1, 4]).unwrap();
        assert_eq!(m.is_regular().unwrap(), Some(3));
        for d in 1..=6 {
            let g = hypercube(d).unwrap();
            assert_eq!(g.edge_count(), d << (d - 1));
            assert_eq!(g.is_regular().unwrap(), Some(d));
            assert!(g.is_connected().unwrap());
        }
        assert_eq!(complete(1).unwrap().is_regular().unwrap(), Some(0));
    }

    #[test]
    fn invalid_parameters() {
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert!(hypercube(0).is_err());
        assert!(circulant(9, &[]).is_err());
        assert!(circulant(9, &[5]).is_err());
        assert!(circulant(9, &[1, 1]).is_err());
        assert!(petersen(5, 0).is_err());
        assert!(petersen(6, 3).is_err());
        assert!(matches!(random_regular(5, 3, 1), Err(EdsError::Usage(_))));
        assert!(matches!(random_regular(4, 4, 1), Err(EdsError::Usage(_))));
        assert!(matches!(random_regular(4, 1, 1), Err(EdsError::Capacity(_))));
    }

    #[test]
    fn random_regular_is_deterministic() {
        let a = random_regular(10, 3, 42).unwrap();
        let b = random_regular(10, 3, 42).unwrap();
        assert_eq!(encode_graph6(&a), encode_graph6(&b));
        assert_eq!(a.is_regular().unwrap(), Some(3));
        assert!(a.is_connected().unwrap());
    }

    #[test]
    fn random_cubic_on_eight_vertices() {
        for seed in 1..=100 {
            let g = random_regular(8, 3, seed).unwrap();
            assert_eq!(g.is_regular().unwrap(), Some(3));
            assert!(g.is_connected().unwrap());
            assert!(g.check_invariants());
        }
    }

    #[test]
    fn genspec_parsing() {
        let s: GenSpec = "random-regular:seed=42,n=10,r=3".parse().unwrap();
        assert_eq!(s.canonical(&RandomRegularFamily).unwrap(), "random-regular:n=10,r=3,seed=42");
        assert_eq!(s.to_string(), "random-regular:n=10,r=3,seed=42");
        let c: GenSpec = "circulant:n=9,offsets=1+2".parse().unwrap();
        assert_eq!(CirculantFamily.build(&c.params).unwrap().is_regular().unwrap(), Some(4));
        assert!("cycle:n".parse::<GenSpec>().is_err());
        assert!("cycle:n=3,n=4".parse::<GenSpec>().is_err());
        assert!(":n=3".parse::<GenSpec>().is_err());
        let bad: GenSpec = "cycle:m=3".parse().unwrap();
        assert!(bad.canonical(&CycleFamily).is_err());
        assert!(CycleFamily.build(&bad.params).is_err());
    }
}

//! Efficient dominating sets: verification and the regular-graph size bound.

use serde::{Deserialize, Serialize};

use crate::error::{EdsError, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

fn check_members(g: &Graph, s: &VertexSet) -> Result<()> {
    match s.iter().find(|&v| v >= g.n()) {
        Some(v) => Err(EdsError::usage(format!("set member {v} out of range for n = {}", g.n()))),
        None => Ok(()),
    }
}

/// Rebuilds `s` over the universe of `g`, so sets of any capacity are accepted.
fn normalize(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    check_members(g, s)?;
    Ok(if s.capacity() == g.n() { s.clone() } else { VertexSet::from_ids(g.n(), s.iter()) })
}

/// True iff every vertex is in `s` or adjacent to a member of `s`.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> Result<bool> {
    let s = normalize(g, s)?;
    Ok((0..g.n()).all(|v| s.contains(v) || g.adj_set(v).intersects(&s)))
}

/// `s` is independent and each vertex outside it has exactly one neighbor in it.
pub(crate) fn exactly_once_check(g: &Graph, s: &VertexSet) -> bool {
    (0..g.n()).all(|v| {
        let hits = g.adj_set(v).intersection_len(s);
        if s.contains(v) { hits == 0 } else { hits == 1 }
    })
}

/// The closed neighborhoods of `s` are pairwise disjoint and cover V.
pub(crate) fn partition_check(g: &Graph, s: &VertexSet) -> bool {
    let mut covered = VertexSet::empty(g.n());
    for x in s {
        let ball = g.closed_neighborhood(x);
        if covered.intersects(&ball) {
            return false;
        }
        covered.union_with(&ball);
    }
    covered.len() == g.n()
}

/// True iff `s` is an efficient dominating set of `g`.
///
/// Debug builds evaluate both the exactly-once characterization and the
/// closed-neighborhood partition and assert that they agree.
pub fn verify_eds(g: &Graph, s: &VertexSet) -> Result<bool> {
    let s = normalize(g, s)?;
    let once = exactly_once_check(g, &s);
    debug_assert_eq!(once, partition_check(g, &s), "EDS characterizations disagree on {s:?}");
    Ok(once)
}

/// For an r-regular graph every EDS has exactly n/(r+1) members; `None` when
/// r+1 does not divide n, which rules out any EDS.
pub fn eds_size_bound(g: &Graph) -> Result<Option<usize>> {
    let r = g.is_regular()?.ok_or_else(|| EdsError::usage("eds_size_bound requires a regular graph"))?;
    Ok(g.n().is_multiple_of(r + 1).then(|| g.n() / (r + 1)))
}

/// A vertex set that passed [`verify_eds`] against a graph of `graph_n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdsCertificate {
    set: VertexSet,
    graph_n: usize,
}

impl EdsCertificate {
    /// Returns `None` if `set` is not an EDS of `g`.
    pub fn new(g: &Graph, set: VertexSet) -> Result<Option<Self>> {
        let set = normalize(g, &set)?;
        Ok(verify_eds(g, &set)?.then_some(EdsCertificate { set, graph_n: g.n() }))
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn graph_n(&self) -> usize {
        self.graph_n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, hypercube, petersen};
    use proptest::prelude::*;

    fn set(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(n, ids.iter().copied())
    }

    #[test]
    fn domination_examples() {
        let c6 = cycle(6).unwrap();
        assert!(is_dominating(&c6, &set(6, &[0, 3])).unwrap());
        assert!(!is_dominating(&c6, &set(6, &[0])).unwrap());
        assert!(is_dominating(&complete(4).unwrap(), &set(4, &[2])).unwrap());
        assert!(is_dominating(&c6, &set(10, &[7])).is_err());
    }

    #[test]
    fn verify_examples() {
        let c6 = cycle(6).unwrap();
        assert!(verify_eds(&c6, &set(6, &[0, 3])).unwrap());
        assert!(!verify_eds(&c6, &set(6, &[0, 2])).unwrap());
        let q3 = hypercube(3).unwrap();
        assert!(verify_eds(&q3, &set(8, &[0b000, 0b111])).unwrap());
        assert!(!verify_eds(&q3, &set(8, &[0b000, 0b011])).unwrap());
        assert!(verify_eds(&c6, &set(7, &[6])).is_err());
    }

    #[test]
    fn empty_set_is_eds_only_of_empty_graph() {
        let g0 = Graph::from_edges(0, []).unwrap();
        assert!(verify_eds(&g0, &VertexSet::empty(0)).unwrap());
        for n in 1..5 {
            assert!(!verify_eds(&complete(n).unwrap(), &VertexSet::empty(n)).unwrap());
        }
    }

    #[test]
    fn size_bound_examples() {
        assert_eq!(eds_size_bound(&petersen(5, 2).unwrap()).unwrap(), None);
        assert_eq!(eds_size_bound(&hypercube(3).unwrap()).unwrap(), Some(2));
        assert_eq!(eds_size_bound(&cycle(6).unwrap()).unwrap(), Some(2));
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(eds_size_bound(&p3), Err(EdsError::Usage(_))));
    }

    #[test]
    fn certificate_requires_valid_set() {
        let c6 = cycle(6).unwrap();
        assert!(EdsCertificate::new(&c6, set(6, &[0, 2])).unwrap().is_none());
        let cert = EdsCertificate::new(&c6, set(6, &[1, 4])).unwrap().unwrap();
        assert_eq!(cert.set().to_vec(), vec![1, 4]);
        assert_eq!(cert.graph_n(), 6);
    }

    proptest! {
        #[test]
        fn characterizations_agree(n in 1usize..16, edge_bits in any::<u128>(), set_bits in any::<u16>()) {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.enumerate().filter(|(i, _)| edge_bits >> (i % 128) & 1 == 1).map(|(_, p)| p);
            let g = Graph::from_edges(n, edges).unwrap();
            let s = VertexSet::from_ids(n, (0..n).filter(|i| set_bits >> i & 1 == 1));
            prop_assert_eq!(exactly_once_check(&g, &s), partition_check(&g, &s));
        }
    }
}

use std::collections::VecDeque;

use crate::error::{EdsError, Result};
use crate::vertex_set::VertexSet;

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored twice: as sorted neighbor lists for iteration and as
/// bit sets for the set algebra the reduction relies on.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    lists: Vec<Vec<usize>>,
    sets: Vec<VertexSet>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut sets = vec![VertexSet::empty(n); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(EdsError::usage(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(EdsError::usage(format!("self-loop at vertex {u}")));
            }
            if !sets[u].insert(v) {
                return Err(EdsError::usage(format!("duplicate edge ({u}, {v})")));
            }
            sets[v].insert(u);
            edge_count += 1;
        }
        let lists = sets.iter().map(VertexSet::to_vec).collect();
        Ok(Graph { n, lists, sets, edge_count })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    /// Neighbor ids of `v` in ascending order. Panics on out-of-range ids;
    /// use [`Graph::neighbors`] for the checked form.
    #[inline]
    pub fn adj(&self, v: usize) -> &[usize] {
        &self.lists[v]
    }

    /// Neighbor set of `v`. Panics on out-of-range ids.
    #[inline]
    pub fn adj_set(&self, v: usize) -> &VertexSet {
        &self.sets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.sets[u].contains(v)
    }

    /// All edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lists.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(EdsError::usage(format!("vertex {v} out of range for n = {}", self.n)))
        }
    }

    /// Open neighborhood N(v).
    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.sets[v].clone())
    }

    /// Closed neighborhood N[v].
    pub fn closed_neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.closed_neighborhood(v))
    }

    /// Vertices at distance exactly two from `v`.
    pub fn second_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.distance_two(v))
    }

    pub(crate) fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.sets[v].clone();
        s.insert(v);
        s
    }

    /// N(N(v)) \ N[v], unchecked.
    pub(crate) fn distance_two(&self, v: usize) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for &u in &self.lists[v] {
            out.union_with(&self.sets[u]);
        }
        out.difference_with(&self.sets[v]);
        out.remove(v);
        out
    }

    /// N(v) ∪ N²(v): every vertex at distance one or two from `v`.
    pub(crate) fn ball_two_punctured(&self, v: usize) -> VertexSet {
        let mut out = self.sets[v].clone();
        for &u in &self.lists[v] {
            out.union_with(&self.sets[u]);
        }
        out.remove(v);
        out
    }

    /// Returns the common degree if the graph is regular.
    pub fn is_regular(&self) -> Result<Option<usize>> {
        if self.n == 0 {
            return Err(EdsError::usage("regularity is undefined for the empty graph"));
        }
        let r = self.degree(0);
        Ok((1..self.n).all(|v| self.degree(v) == r).then_some(r))
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(EdsError::usage("connectivity is undefined for the empty graph"));
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.lists[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        Ok(reached == self.n)
    }

    /// Checks the structural invariants: symmetry, no loops, edge count.
    pub fn check_invariants(&self) -> bool {
        let symmetric = (0..self.n).all(|v| self.lists[v].iter().all(|&u| u != v && self.sets[u].contains(v)));
        let degree_sum: usize = self.lists.iter().map(Vec::len).sum();
        symmetric && degree_sum == 2 * self.edge_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    fn q3() -> Graph {
        let e = (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|(u, v)| u < v);
        Graph::from_edges(8, e).unwrap()
    }

    fn bfs_dist(g: &Graph, s: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; g.n()];
        d[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &u in g.adj(v) {
                if d[u].is_none() {
                    d[u] = Some(d[v].unwrap() + 1);
                    q.push_back(u);
                }
            }
        }
        d
    }

    #[test]
    fn neighborhoods_on_small_graphs() {
        let c6 = cycle(6);
        assert_eq!(c6.neighbors(0).unwrap().to_vec(), vec![1, 5]);
        assert_eq!(c6.closed_neighbors(0).unwrap().to_vec(), vec![0, 1, 5]);
        assert_eq!(c6.second_neighborhood(0).unwrap().to_vec(), vec![2, 4]);

        let k4 = complete(4);
        assert_eq!(k4.neighbors(2).unwrap().to_vec(), vec![0, 1, 3]);
        assert_eq!(k4.closed_neighbors(2).unwrap().to_vec(), vec![0, 1, 2, 3]);
        assert!(k4.second_neighborhood(0).unwrap().is_empty());

        let k1 = complete(1);
        assert!(k1.neighbors(0).unwrap().is_empty());
        assert_eq!(k1.closed_neighbors(0).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn petersen_second_neighborhood_matches_bfs() {
        let g = petersen();
        let d = bfs_dist(&g, 0);
        let expected: Vec<usize> = (0..10).filter(|&v| d[v] == Some(2)).collect();
        assert_eq!(expected.len(), 6);
        assert_eq!(g.second_neighborhood(0).unwrap().to_vec(), expected);
    }

    #[test]
    fn out_of_range_vertex_is_usage_error() {
        let g = cycle(6);
        assert!(matches!(g.neighbors(6), Err(EdsError::Usage(_))));
        assert!(matches!(g.closed_neighbors(7), Err(EdsError::Usage(_))));
        assert!(matches!(g.second_neighborhood(99), Err(EdsError::Usage(_))));
    }

    #[test]
    fn regularity_and_connectivity() {
        assert_eq!(cycle(6).is_regular().unwrap(), Some(2));
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.is_regular().unwrap(), None);
        assert_eq!(petersen().is_regular().unwrap(), Some(3));

        assert!(cycle(6).is_connected().unwrap());
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!two_triangles.is_connected().unwrap());
        assert!(q3().is_connected().unwrap());

        let empty = Graph::from_edges(0, []).unwrap();
        assert!(empty.is_regular().is_err());
        assert!(empty.is_connected().is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..24).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn second_neighborhood_properties(g in arb_graph()) {
            prop_assert!(g.check_invariants());
            for v in 0..g.n() {
                let n2 = g.second_neighborhood(v).unwrap();
                let closed = g.closed_neighbors(v).unwrap();
                prop_assert!(n2.is_disjoint(&closed));
                for w in &n2 {
                    prop_assert!(g.adj_set(w).intersects(g.adj_set(v)));
                }
                let d = bfs_dist(&g, v);
                let expected: Vec<usize> = (0..g.n()).filter(|&u| d[u] == Some(2)).collect();
                prop_assert_eq!(n2.to_vec(), expected);
            }
        }
    }
}

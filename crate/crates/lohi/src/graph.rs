//! Simple undirected graphs, node labelings, and induced subgraphs.
//!
//! Everything downstream assumes simple graphs: no self-loops, no duplicate
//! edges, no weights. [`Graph::new`] enforces that by dropping offenders and
//! reporting how many it dropped.

use crate::error::{Error, Result};

/// Count of edges discarded while building a [`Graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DroppedEdges {
    /// Edges of the form (i, i).
    pub self_loops: usize,
    /// Repeated undirected pairs beyond the first occurrence.
    pub duplicates: usize,
}

/// An immutable simple undirected graph with dense node ids `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from an edge iterator, dropping self-loops and
    /// duplicates. Edges are stored with the smaller endpoint first and
    /// sorted; adjacency lists are sorted ascending.
    ///
    /// Endpoints must be `< n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<(Self, DroppedEdges)> {
        let mut dropped = DroppedEdges::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= n || b as usize >= n {
                let id = a.max(b) as usize;
                return Err(Error::InvalidNode { id, nodes: n });
            }
            if a == b {
                dropped.self_loops += 1;
                continue;
            }
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        dropped.duplicates = before - pairs.len();

        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &pairs {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok((
            Graph {
                n,
                edges: pairs,
                adj,
            },
            dropped,
        ))
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, smaller endpoint first, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Neighbors of `i`, ascending.
    pub fn neighbors(&self, i: usize) -> Result<&[u32]> {
        self.adj
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::InvalidNode { id: i, nodes: self.n })
    }

    /// Degree of `i`.
    pub fn degree(&self, i: usize) -> Result<usize> {
        Ok(self.neighbors(i)?.len())
    }

    /// Sum of degrees over `s`.
    pub fn volume(&self, s: &NodeSet) -> Result<u64> {
        let mut total = 0u64;
        for &i in s.iter() {
            total += self.degree(i as usize)? as u64;
        }
        Ok(total)
    }

    /// Whether the undirected edge (a, b) exists.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        match self.adj.get(a) {
            Some(list) => list.binary_search(&(b as u32)).is_ok(),
            None => false,
        }
    }
}

/// A sorted, deduplicated set of node ids belonging to some graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet(Vec<u32>);

impl NodeSet {
    /// Builds a set from arbitrary ids (sorted and deduplicated here).
    pub fn new(ids: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the set is empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, id: u32) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    /// Members, ascending.
    pub fn iter(&self) -> std::slice::Iter<'_, u32> {
        self.0.iter()
    }

    /// Members as a slice, ascending.
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> NodeSet {
        let mut out = Vec::with_capacity(n - self.0.len());
        let mut members = self.0.iter().peekable();
        for id in 0..n as u32 {
            if members.peek() == Some(&&id) {
                members.next();
            } else {
                out.push(id);
            }
        }
        NodeSet(out)
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }
}

impl FromIterator<u32> for NodeSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        NodeSet::new(iter)
    }
}

/// Per-node neighbor-label histogram: `U[l-1]` = number of neighbors carrying
/// label `l`. Sums to the node's degree.
pub type NeighborHistogram = Vec<u32>;

/// A [`Graph`] plus a label in `1..=q` per node — an outcome of the q-state
/// Potts field.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    /// The underlying graph.
    pub graph: Graph,
    labels: Vec<u32>,
    q: u32,
}

impl LabeledGraph {
    /// Validates that every label is in `1..=q`, that there is one label per
    /// node, and that `q >= 2` (a single state makes the local conditional
    /// degenerate).
    pub fn new(graph: Graph, labels: Vec<u32>, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::TooFewStates { got: q });
        }
        if labels.len() != graph.node_count() {
            return Err(Error::LabelCount {
                expected: graph.node_count(),
                got: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l < 1 || l > q) {
            return Err(Error::LabelOutOfRange { label: bad, q });
        }
        Ok(LabeledGraph { graph, labels, q })
    }

    /// Number of label states.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Label of node `i`.
    pub fn label(&self, i: usize) -> Result<u32> {
        self.labels
            .get(i)
            .copied()
            .ok_or(Error::InvalidNode { id: i, nodes: self.labels.len() })
    }

    /// All labels, indexed by node id.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Histogram of neighbor labels at node `i`.
    pub fn neighbor_histogram(&self, i: usize) -> Result<NeighborHistogram> {
        let mut u = vec![0u32; self.q as usize];
        for &j in self.graph.neighbors(i)? {
            u[(self.labels[j as usize] - 1) as usize] += 1;
        }
        Ok(u)
    }

    /// Histograms for every node in one pass.
    pub fn neighbor_histograms(&self) -> Vec<NeighborHistogram> {
        (0..self.graph.node_count())
            .map(|i| self.neighbor_histogram(i).expect("node id in range"))
            .collect()
    }

    /// Subgraph induced by `s`: exactly the nodes of `s` and the edges with
    /// both endpoints in `s`, labels carried over, `q` unchanged. Node ids are
    /// remapped to `0..s.len()`; the second return value maps new id → old id
    /// (ascending, so the old order is preserved).
    pub fn induced(&self, s: &NodeSet) -> Result<(LabeledGraph, Vec<u32>)> {
        if let Some(max) = s.max() {
            if max as usize >= self.graph.node_count() {
                return Err(Error::InvalidNode {
                    id: max as usize,
                    nodes: self.graph.node_count(),
                });
            }
        }
        let new_to_old: Vec<u32> = s.iter().copied().collect();
        let mut old_to_new = vec![u32::MAX; self.graph.node_count()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old as usize] = new as u32;
        }
        let edges = self
            .graph
            .edges()
            .iter()
            .filter(|&&(a, b)| s.contains(a) && s.contains(b))
            .map(|&(a, b)| (old_to_new[a as usize], old_to_new[b as usize]));
        let (graph, _) = Graph::new(new_to_old.len(), edges)?;
        let labels = new_to_old.iter().map(|&old| self.labels[old as usize]).collect();
        let lg = LabeledGraph {
            graph,
            labels,
            q: self.q,
        };
        Ok((lg, new_to_old))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap().0
    }

    #[test]
    fn dedupes_and_drops_self_loops() {
        let (g, dropped) = Graph::new(3, [(0, 1), (1, 0), (2, 2), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(dropped.self_loops, 1);
        assert_eq!(dropped.duplicates, 2);
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        assert!(matches!(
            Graph::new(2, [(0, 5)]),
            Err(Error::InvalidNode { id: 5, nodes: 2 })
        ));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = triangle();
        let total: usize = (0..3).map(|i| g.degree(i).unwrap()).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn volume_examples() {
        let g = triangle();
        assert_eq!(g.volume(&NodeSet::new([0])).unwrap(), 2);
        assert_eq!(g.volume(&NodeSet::new([0, 1, 2])).unwrap(), 6);
        let (star, _) = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.volume(&NodeSet::new([0])).unwrap(), 4);
    }

    #[test]
    fn histogram_counts_neighbor_labels() {
        // Node 0 adjacent to labels 1, 1, 2, 3 with q = 3.
        let (g, _) = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let lg = LabeledGraph::new(g, vec![1, 1, 1, 2, 3], 3).unwrap();
        assert_eq!(lg.neighbor_histogram(0).unwrap(), vec![2, 1, 1]);
    }

    #[test]
    fn histogram_of_isolated_node_is_zero() {
        let (g, _) = Graph::new(1, []).unwrap();
        let lg = LabeledGraph::new(g, vec![1], 4).unwrap();
        assert_eq!(lg.neighbor_histogram(0).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn histogram_on_alternating_cycle() {
        let (g, _) = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let lg = LabeledGraph::new(g, vec![1, 2, 1, 2], 2).unwrap();
        assert_eq!(lg.neighbor_histogram(0).unwrap(), vec![0, 2]);
    }

    #[test]
    fn histogram_sums_to_degree() {
        let (g, _) = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 5)]).unwrap();
        let lg = LabeledGraph::new(g, vec![1, 2, 2, 1, 3, 3], 3).unwrap();
        for i in 0..6 {
            let u = lg.neighbor_histogram(i).unwrap();
            assert_eq!(u.iter().sum::<u32>() as usize, lg.graph.degree(i).unwrap());
        }
    }

    #[test]
    fn labels_validated() {
        let g = triangle();
        assert!(matches!(
            LabeledGraph::new(g.clone(), vec![1, 2], 2),
            Err(Error::LabelCount { .. })
        ));
        assert!(matches!(
            LabeledGraph::new(g.clone(), vec![1, 2, 3], 2),
            Err(Error::LabelOutOfRange { label: 3, q: 2 })
        ));
        assert!(matches!(
            LabeledGraph::new(g, vec![1, 1, 1], 1),
            Err(Error::TooFewStates { got: 1 })
        ));
    }

    #[test]
    fn induced_subgraph_of_triangle_edge() {
        let lg = LabeledGraph::new(triangle(), vec![1, 1, 2], 2).unwrap();
        let (sub, map) = lg.induced(&NodeSet::new([0, 1])).unwrap();
        assert_eq!(sub.graph.node_count(), 2);
        assert_eq!(sub.graph.edges(), &[(0, 1)]);
        assert_eq!(sub.labels(), &[1, 1]);
        assert_eq!(map, vec![0, 1]);
    }

    #[test]
    fn induced_subgraph_identity() {
        let lg = LabeledGraph::new(triangle(), vec![1, 2, 2], 2).unwrap();
        let (sub, _) = lg.induced(&NodeSet::new([0, 1, 2])).unwrap();
        assert_eq!(sub.graph.edge_count(), 3);
        assert_eq!(sub.labels(), lg.labels());
    }

    #[test]
    fn induced_subgraph_drops_path_middle() {
        let (g, _) = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let lg = LabeledGraph::new(g, vec![1, 2, 1], 2).unwrap();
        let (sub, _) = lg.induced(&NodeSet::new([0, 2])).unwrap();
        assert_eq!(sub.graph.node_count(), 2);
        assert_eq!(sub.graph.edge_count(), 0);
    }

    #[test]
    fn complement_partitions_ids() {
        let s = NodeSet::new([1, 3]);
        assert_eq!(s.complement(5).as_slice(), &[0, 2, 4]);
    }
}

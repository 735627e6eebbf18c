//! Partition-quality measures, all on the unweighted graph: modularity,
//! coverage, performance, and conductance in its cut-set and pairwise forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

fn check_labels(g: &Graph, labels: &[u32]) -> Result<()> {
    if labels.len() != g.node_count() {
        return Err(Error::LabelCount {
            expected: g.node_count(),
            got: labels.len(),
        });
    }
    Ok(())
}

/// Newman modularity of a labeled partition:
/// `Q = sum_c [ e_c/m - (d_c/(2m))^2 ]` with `e_c` the intra-community edge
/// count and `d_c` the community degree sum. Communities are whatever label
/// values are present.
pub fn modularity(g: &Graph, labels: &[u32]) -> Result<f64> {
    check_labels(g, labels)?;
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let m = g.edge_count() as f64;
    let mut intra: HashMap<u32, u64> = HashMap::new();
    let mut degree: HashMap<u32, u64> = HashMap::new();
    for &(u, v) in g.edges() {
        if labels[u as usize] == labels[v as usize] {
            *intra.entry(labels[u as usize]).or_insert(0) += 1;
        }
    }
    for (i, &l) in labels.iter().enumerate() {
        *degree.entry(l).or_insert(0) += g.degree(i).expect("in range") as u64;
    }
    let mut q = 0.0;
    for (&label, &d) in &degree {
        let e = intra.get(&label).copied().unwrap_or(0) as f64;
        let frac = d as f64 / (2.0 * m);
        q += e / m - frac * frac;
    }
    Ok(q)
}

/// Fraction of edges that stay inside a community: `intra / m`.
pub fn coverage(g: &Graph, labels: &[u32]) -> Result<f64> {
    check_labels(g, labels)?;
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let intra = g
        .edges()
        .iter()
        .filter(|&&(u, v)| labels[u as usize] == labels[v as usize])
        .count();
    Ok(intra as f64 / g.edge_count() as f64)
}

/// Fraction of node pairs the partition classifies correctly: intra-community
/// edges plus inter-community non-edges, over all `n(n-1)/2` pairs.
pub fn performance(g: &Graph, labels: &[u32]) -> Result<f64> {
    check_labels(g, labels)?;
    let n = g.node_count() as u64;
    if n < 2 {
        return Err(Error::TooFewNodes {
            nodes: g.node_count(),
        });
    }
    let total_pairs = n * (n - 1) / 2;
    let mut sizes: HashMap<u32, u64> = HashMap::new();
    for &l in labels {
        *sizes.entry(l).or_insert(0) += 1;
    }
    let intra_pairs: u64 = sizes.values().map(|&s| s * (s - 1) / 2).sum();
    let inter_pairs = total_pairs - intra_pairs;
    let intra_edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| labels[u as usize] == labels[v as usize])
        .count() as u64;
    let inter_edges = g.edge_count() as u64 - intra_edges;
    let inter_non_edges = inter_pairs - inter_edges;
    Ok((intra_edges + inter_non_edges) as f64 / total_pairs as f64)
}

/// Conductance of the cut `(s, V \ s)`: crossing edges over the smaller side's
/// volume, both volumes taken in `g`. `Ok(None)` when both sides exist but the
/// smaller one has no edge ends at all.
pub fn conductance(g: &Graph, s: &NodeSet) -> Result<Option<f64>> {
    if let Some(max) = s.max() {
        if max as usize >= g.node_count() {
            return Err(Error::InvalidNode {
                id: max as usize,
                nodes: g.node_count(),
            });
        }
    }
    let complement = s.complement(g.node_count());
    if s.is_empty() || complement.is_empty() {
        return Err(Error::EmptyCutSide);
    }
    let mut cut = 0u64;
    for &i in s.iter() {
        for &j in g.neighbors(i as usize).expect("in range") {
            if !s.contains(j) {
                cut += 1;
            }
        }
    }
    let denom = g.volume(s)?.min(g.volume(&complement)?);
    if denom == 0 {
        return Ok(None);
    }
    Ok(Some(cut as f64 / denom as f64))
}

/// Largest conductance over unordered pairs of present communities. For the
/// pair `(A, B)` the cut counts only A-B edges and the denominator is the
/// smaller full-graph volume of the two. Pairs with a zero denominator are
/// skipped; `Ok(None)` when no pair has a positive one.
pub fn max_pairwise_community_conductance(g: &Graph, labels: &[u32]) -> Result<Option<f64>> {
    check_labels(g, labels)?;
    let mut volume: HashMap<u32, u64> = HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        *volume.entry(l).or_insert(0) += g.degree(i).expect("in range") as u64;
    }
    let mut cross: HashMap<(u32, u32), u64> = HashMap::new();
    for &(u, v) in g.edges() {
        let (a, b) = (labels[u as usize], labels[v as usize]);
        if a != b {
            *cross.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let mut present: Vec<u32> = volume.keys().copied().collect();
    present.sort_unstable();
    let mut best: Option<f64> = None;
    for (i, &a) in present.iter().enumerate() {
        for &b in &present[i + 1..] {
            let denom = volume[&a].min(volume[&b]);
            if denom == 0 {
                continue;
            }
            let cut = cross.get(&(a, b)).copied().unwrap_or(0) as f64;
            let value = cut / denom as f64;
            best = Some(match best {
                None => value,
                Some(prev) => prev.max(value),
            });
        }
    }
    Ok(best)
}

/// The metric block reported for one graph and partition. Every field is
/// optional because small or degenerate subgraphs make individual measures
/// undefined (no edges, one node, one community).
#[derive(Debug, Clone, Copy, Default, serde::Serialize)]
pub struct PartitionReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modularity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub performance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conductance_pairwise_max: Option<f64>,
    /// Conductance of the L/H cut; only the original-graph block carries it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conductance_lh: Option<f64>,
}

/// Computes every measure that is defined for this graph and partition,
/// mapping the undefined ones to `None`.
pub fn partition_report(g: &Graph, labels: &[u32]) -> PartitionReport {
    PartitionReport {
        modularity: modularity(g, labels).ok(),
        coverage: coverage(g, labels).ok(),
        performance: performance(g, labels).ok(),
        conductance_pairwise_max: max_pairwise_community_conductance(g, labels)
            .ok()
            .flatten(),
        conductance_lh: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap().0
    }

    fn two_triangles() -> Graph {
        graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    }

    #[test]
    fn modularity_two_disjoint_triangles() {
        let q = modularity(&two_triangles(), &[1, 1, 1, 2, 2, 2]).unwrap();
        assert_relative_eq!(q, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn modularity_single_community_is_zero() {
        let q = modularity(&two_triangles(), &[1; 6]).unwrap();
        assert_relative_eq!(q, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn modularity_ignores_label_values() {
        // Only the grouping matters, not which integers name it.
        let g = two_triangles();
        let a = modularity(&g, &[1, 1, 1, 2, 2, 2]).unwrap();
        let b = modularity(&g, &[9, 9, 9, 4, 4, 4]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coverage_counts_intra_edges() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_relative_eq!(
            coverage(&g, &[1, 1, 2, 2]).unwrap(),
            2.0 / 3.0,
            max_relative = 1e-12
        );
        assert_eq!(coverage(&two_triangles(), &[1, 1, 1, 2, 2, 2]).unwrap(), 1.0);
    }

    #[test]
    fn performance_perfect_on_separated_cliques() {
        assert_eq!(
            performance(&two_triangles(), &[1, 1, 1, 2, 2, 2]).unwrap(),
            1.0
        );
    }

    #[test]
    fn performance_counts_both_kinds_of_agreement() {
        // Path 0-1-2 split {0,1} vs {2}: intra edge (0,1), inter edge (1,2)
        // wrong, inter non-edge (0,2) right: 2 of 3 pairs.
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_relative_eq!(
            performance(&g, &[1, 1, 2]).unwrap(),
            2.0 / 3.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn conductance_bridge_hand_value() {
        let g = graph(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        );
        let s = NodeSet::new([0, 1, 2]);
        assert_relative_eq!(
            conductance(&g, &s).unwrap().unwrap(),
            1.0 / 7.0,
            max_relative = 1e-12
        );
        // Symmetric in the cut.
        let t = NodeSet::new([3, 4, 5]);
        assert_eq!(conductance(&g, &s).unwrap(), conductance(&g, &t).unwrap());
    }

    #[test]
    fn conductance_edge_cases() {
        let g = two_triangles();
        assert!(matches!(
            conductance(&g, &NodeSet::new(std::iter::empty())),
            Err(Error::EmptyCutSide)
        ));
        assert!(matches!(
            conductance(&g, &NodeSet::new(0..6)),
            Err(Error::EmptyCutSide)
        ));
        assert!(matches!(
            conductance(&g, &NodeSet::new([9])),
            Err(Error::InvalidNode { .. })
        ));
        // Isolated node on either side: zero volume, undefined.
        let g = graph(3, &[(0, 1)]);
        assert_eq!(conductance(&g, &NodeSet::new([2])).unwrap(), None);
    }

    #[test]
    fn pairwise_conductance_two_triangles_bridge() {
        let g = graph(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        );
        // Communities are the triangles; their only cross edge is the bridge.
        let v = max_pairwise_community_conductance(&g, &[1, 1, 1, 2, 2, 2])
            .unwrap()
            .unwrap();
        assert_relative_eq!(v, 1.0 / 7.0, max_relative = 1e-12);
    }

    #[test]
    fn pairwise_conductance_takes_the_max() {
        // Star center with two leaves in one community, one in another, one in
        // a third: cuts 2/2 and 1/1 and 0/1 between leaf communities.
        let g = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let v = max_pairwise_community_conductance(&g, &[1, 1, 2, 3])
            .unwrap()
            .unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn pairwise_conductance_none_cases() {
        // A single community has no pairs.
        let g = two_triangles();
        assert_eq!(
            max_pairwise_community_conductance(&g, &[1; 6]).unwrap(),
            None
        );
        // Two communities of isolated nodes have no volume.
        let g2 = graph(2, &[]);
        assert!(matches!(
            max_pairwise_community_conductance(&g2, &[1, 2]),
            Ok(None)
        ));
    }

    #[test]
    fn report_degrades_gracefully() {
        // Edgeless graph: modularity and coverage undefined, performance fine.
        let g = graph(3, &[]);
        let r = partition_report(&g, &[1, 2, 1]);
        assert!(r.modularity.is_none());
        assert!(r.coverage.is_none());
        assert_eq!(r.performance, Some(2.0 / 3.0));
        assert!(r.conductance_pairwise_max.is_none());

        // Single node: nothing defined.
        let g1 = graph(1, &[]);
        let r1 = partition_report(&g1, &[1]);
        assert!(r1.modularity.is_none() && r1.performance.is_none());
    }

    #[test]
    fn report_full_graph() {
        let r = partition_report(&two_triangles(), &[1, 1, 1, 2, 2, 2]);
        assert_relative_eq!(r.modularity.unwrap(), 0.5, max_relative = 1e-12);
        assert_eq!(r.coverage, Some(1.0));
        assert_eq!(r.performance, Some(1.0));
        // Disjoint triangles: the cross cut is empty but volumes are positive.
        assert_eq!(r.conductance_pairwise_max, Some(0.0));
    }
}

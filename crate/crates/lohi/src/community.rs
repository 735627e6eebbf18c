//! Greedy modularity-maximizing community detection (Clauset, Newman, Moore)
//! and conversion of community lists into dense node labels.
//!
//! The merge schedule reproduces the reference agglomerative implementation
//! decision for decision: best merge by modularity gain with ties broken
//! lexicographically on the community-representative pair, zero-gain merges
//! taken, the process stopping at the first strictly negative gain or, on
//! disconnected graphs, when no mergeable pair remains.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ingest::NamedGraph;

/// A community assignment of every node.
#[derive(Debug, Clone)]
pub struct Partition {
    /// Member lists, largest community first (stable on ties), members
    /// ascending.
    pub communities: Vec<Vec<u32>>,
    /// Per-node community label in `1..=q`; community `communities[i]` has
    /// label `i + 1`.
    pub labels: Vec<u32>,
    /// Community count.
    pub q: u32,
}

/// Candidate merge of community `u` into community `v`, ordered so the heap
/// yields the largest `dq` first and breaks ties toward the smallest pair of
/// comparison ranks `(ku, kv)`.
#[derive(Debug, Clone, Copy)]
struct MergeCand {
    dq: f64,
    u: u32,
    v: u32,
    ku: u32,
    kv: u32,
}

impl PartialEq for MergeCand {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for MergeCand {}
impl PartialOrd for MergeCand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MergeCand {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap: greater = better. Higher dq wins; equal dq prefers the
        // lexicographically smaller rank pair, hence the flipped comparisons.
        self.dq
            .total_cmp(&other.dq)
            .then_with(|| other.ku.cmp(&self.ku))
            .then_with(|| other.kv.cmp(&self.kv))
    }
}

/// Tie-break ranks for the merge schedule: numeric order when every name is
/// an unsigned integer, lexicographic otherwise. Either way the ranks depend
/// only on the name set, never on the order nodes were loaded.
fn name_ranks(names: &[String]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..names.len() as u32).collect();
    let numeric: Option<Vec<u64>> = names.iter().map(|s| s.parse::<u64>().ok()).collect();
    match numeric {
        Some(values) => order.sort_unstable_by_key(|&i| (values[i as usize], i)),
        None => order.sort_unstable_by(|&a, &b| {
            names[a as usize].cmp(&names[b as usize]).then(a.cmp(&b))
        }),
    }
    let mut rank = vec![0u32; names.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i as usize] = r as u32;
    }
    rank
}

/// Clauset-Newman-Moore greedy modularity maximization.
///
/// Returns the community member lists, largest first (ties keep ascending
/// representative order), each list sorted ascending. A graph that is one
/// modularity basin comes back as a single community; disconnected graphs
/// whose merging exhausts all pairs come back as their components.
///
/// Equal-gain merges break toward the smallest node-id pair. On a graph
/// loaded from a file, prefer [`greedy_modularity_communities_named`], whose
/// tie order follows the node names instead of the load order.
pub fn greedy_modularity_communities(g: &Graph) -> Result<Vec<Vec<u32>>> {
    let rank: Vec<u32> = (0..g.node_count() as u32).collect();
    greedy_with_ranks(g, &rank)
}

/// [`greedy_modularity_communities`] with merge ties resolved in node-name
/// order (numeric when every name is an integer), so the schedule does not
/// depend on the order edges appear in the source file.
pub fn greedy_modularity_communities_named(g: &NamedGraph) -> Result<Vec<Vec<u32>>> {
    greedy_with_ranks(&g.graph, &name_ranks(&g.names))
}

fn greedy_with_ranks(g: &Graph, rank: &[u32]) -> Result<Vec<Vec<u32>>> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }

    let m = g.edge_count() as f64;
    let q0 = 1.0 / m;
    // a[u]: fraction of edge ends at u.
    let mut a: Vec<f64> = (0..n)
        .map(|u| g.degree(u).expect("in range") as f64 * q0 * 0.5)
        .collect();

    // dq_dict[u][v]: modularity change from merging u's and v's communities.
    let mut dq_dict: Vec<HashMap<u32, f64>> = vec![HashMap::new(); n];
    let mut heap: BinaryHeap<MergeCand> = BinaryHeap::with_capacity(4 * g.edge_count());
    let cand = |dq: f64, u: u32, v: u32| MergeCand {
        dq,
        u,
        v,
        ku: rank[u as usize],
        kv: rank[v as usize],
    };
    for &(u, v) in g.edges() {
        let dq = q0 - 2.0 * (a[u as usize] * a[v as usize]);
        dq_dict[u as usize].insert(v, dq);
        dq_dict[v as usize].insert(u, dq);
        heap.push(cand(dq, u, v));
        heap.push(cand(dq, v, u));
    }

    // members[r] is the community currently represented by r; merged-away
    // representatives hold None.
    let mut members: Vec<Option<Vec<u32>>> = (0..n as u32).map(|i| Some(vec![i])).collect();
    let mut remaining = n;

    while remaining > 1 {
        // Stale heap entries (superseded or deleted pairs) are skipped; the
        // dictionary holds the current value of every live pair.
        let best = loop {
            match heap.pop() {
                None => break None,
                Some(c) => {
                    if dq_dict[c.u as usize].get(&c.v) == Some(&c.dq) {
                        break Some(c);
                    }
                }
            }
        };
        let Some(MergeCand { dq, u, v, .. }) = best else {
            break; // No mergeable pair left: disconnected components remain.
        };
        if dq < 0.0 {
            break; // Every further merge lowers modularity.
        }

        // Merge u into v: recompute the gains between v and each community
        // touching u or v, from the values before the merge.
        let u_nbrs: Vec<u32> = dq_dict[u as usize].keys().copied().collect();
        let v_nbrs: Vec<u32> = dq_dict[v as usize].keys().copied().collect();
        let mut all_nbrs: Vec<u32> = u_nbrs
            .iter()
            .chain(v_nbrs.iter())
            .copied()
            .filter(|&w| w != u && w != v)
            .collect();
        all_nbrs.sort_unstable();
        all_nbrs.dedup();
        for &w in &all_nbrs {
            let in_u = dq_dict[u as usize].contains_key(&w);
            let in_v = dq_dict[v as usize].contains_key(&w);
            let dq_vw = if in_u && in_v {
                dq_dict[v as usize][&w] + dq_dict[u as usize][&w]
            } else if in_v {
                dq_dict[v as usize][&w] - 2.0 * (a[u as usize] * a[w as usize])
            } else {
                dq_dict[u as usize][&w] - 2.0 * (a[v as usize] * a[w as usize])
            };
            dq_dict[v as usize].insert(w, dq_vw);
            dq_dict[w as usize].insert(v, dq_vw);
            heap.push(cand(dq_vw, v, w));
            heap.push(cand(dq_vw, w, v));
        }

        // Drop row and column u.
        for w in dq_dict[u as usize].keys().copied().collect::<Vec<u32>>() {
            dq_dict[w as usize].remove(&u);
        }
        dq_dict[u as usize] = HashMap::new();
        a[v as usize] += a[u as usize];
        a[u as usize] = 0.0;

        let absorbed = members[u as usize].take().expect("live representative");
        members[v as usize]
            .as_mut()
            .expect("live representative")
            .extend(absorbed);
        remaining -= 1;
    }

    // Surviving representatives in ascending id order, then a stable sort by
    // size so equal-sized communities keep that order.
    let mut out: Vec<Vec<u32>> = members.into_iter().flatten().collect();
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort_by_key(|c| std::cmp::Reverse(c.len()));
    Ok(out)
}

/// Converts community member lists into per-node labels `1..=q`, community
/// `i` getting label `i + 1`. The lists must partition `0..n` and there must
/// be at least two of them.
pub fn partition_to_labels(n: usize, communities: &[Vec<u32>]) -> Result<(Vec<u32>, u32)> {
    let q = communities.len() as u32;
    if q < 2 {
        return Err(Error::TooFewStates { got: q });
    }
    let mut labels = vec![0u32; n];
    let mut seen = 0usize;
    for (i, community) in communities.iter().enumerate() {
        for &node in community {
            let slot = labels
                .get_mut(node as usize)
                .ok_or(Error::InvalidNode {
                    id: node as usize,
                    nodes: n,
                })?;
            if *slot != 0 {
                return Err(Error::InvalidConfig(format!(
                    "node {node} appears in more than one community"
                )));
            }
            *slot = i as u32 + 1;
            seen += 1;
        }
    }
    if seen != n {
        return Err(Error::LabelCount {
            expected: n,
            got: seen,
        });
    }
    Ok((labels, q))
}

/// Runs [`greedy_modularity_communities`] and packages the result as a
/// [`Partition`].
pub fn detect_communities(g: &Graph) -> Result<Partition> {
    let communities = greedy_modularity_communities(g)?;
    let (labels, q) = partition_to_labels(g.node_count(), &communities)?;
    Ok(Partition {
        communities,
        labels,
        q,
    })
}

/// Runs [`greedy_modularity_communities_named`] and packages the result as a
/// [`Partition`].
pub fn detect_communities_named(g: &NamedGraph) -> Result<Partition> {
    let communities = greedy_modularity_communities_named(g)?;
    let (labels, q) = partition_to_labels(g.graph.node_count(), &communities)?;
    Ok(Partition {
        communities,
        labels,
        q,
    })
}

//! Exhaustive ground truth for small graphs.
//!
//! Partitions into at most `p` parts are enumerated as restricted growth
//! strings (`a_0 = 0`, `a_i ≤ 1 + max(a_0..a_{i−1})`, `a_i < p`), which lists
//! every unordered partition exactly once and in lexicographic order. Optima
//! keep the first string that attains them, so ties resolve to the
//! lexicographically smallest string.

use crate::error::{Error, Result};
use crate::graph::{pairs, Graph, Partition};
use crate::guards::Guards;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// Maximum number of edges of `G` split by a partition into at most `p` parts.
    pub max_p_partite_edges: u64,
    pub best_partition: Partition,
    /// `min_K ed(G, K)` over complete `≤p`-partite `K` on `V(G)`.
    pub exact_ed_to_p_partite: u64,
    pub best_ed_partition: Partition,
    /// Number of partitions examined.
    pub enumerated: u64,
}

pub fn oracle_report(g: &Graph, p: usize) -> Result<OracleReport> {
    oracle_report_with(g, p, &Guards::default())
}

pub fn oracle_report_with(g: &Graph, p: usize, guards: &Guards) -> Result<OracleReport> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "number of parts p must be >= 1".into(),
        ));
    }
    guards.check_oracle(g.n(), p)?;
    let masks = adjacency_masks(g)?;
    let n = g.n();

    let mut search = RgsSearch {
        masks: &masks,
        p,
        m: g.edge_count(),
        all_pairs: pairs(n),
        rgs: vec![0; n],
        block_mask: vec![0; p],
        block_size: vec![0; p],
        best_keep: None,
        best_ed: None,
        enumerated: 0,
    };
    search.descend(0, 0, 0);

    let (max_keep, keep_rgs) = search.best_keep.expect("at least one partition exists");
    let (min_ed, ed_rgs) = search.best_ed.expect("at least one partition exists");
    let report = OracleReport {
        max_p_partite_edges: max_keep,
        best_partition: Partition::from_labels(&keep_rgs, p)?,
        exact_ed_to_p_partite: min_ed,
        best_ed_partition: Partition::from_labels(&ed_rgs, p)?,
        enumerated: search.enumerated,
    };
    debug_assert_eq!(
        recount_kept(g, &report.best_partition),
        report.max_p_partite_edges
    );
    Ok(report)
}

/// Maximum `p`-partite subgraph size and a partition attaining it.
pub fn max_p_partite_subgraph(g: &Graph, p: usize) -> Result<(u64, Partition)> {
    let r = oracle_report(g, p)?;
    Ok((r.max_p_partite_edges, r.best_partition))
}

/// `ed(G, 𝒫)` for the class of complete `≤p`-partite graphs, with a minimizer.
pub fn exact_ed_to_p_partite(g: &Graph, p: usize) -> Result<(u64, Partition)> {
    let r = oracle_report(g, p)?;
    Ok((r.exact_ed_to_p_partite, r.best_ed_partition))
}

fn recount_kept(g: &Graph, partition: &Partition) -> u64 {
    let labels = partition.labels();
    g.edges().filter(|&(u, v)| labels[u] != labels[v]).count() as u64
}

fn adjacency_masks(g: &Graph) -> Result<Vec<u64>> {
    if g.n() > 64 {
        return Err(Error::GuardExceeded {
            what: "bitmask oracle",
            size: g.n(),
            limit: 64,
        });
    }
    Ok((0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |mask, w| mask | 1 << w))
        .collect())
}

struct RgsSearch<'a> {
    masks: &'a [u64],
    p: usize,
    m: u64,
    all_pairs: u64,
    rgs: Vec<usize>,
    block_mask: Vec<u64>,
    block_size: Vec<usize>,
    best_keep: Option<(u64, Vec<usize>)>,
    best_ed: Option<(u64, Vec<usize>)>,
    enumerated: u64,
}

impl RgsSearch<'_> {
    fn descend(&mut self, vertex: usize, blocks: usize, internal: u64) {
        if vertex == self.masks.len() {
            self.leaf(internal);
            return;
        }
        let top = blocks.min(self.p - 1);
        for b in 0..=top {
            let added = (self.masks[vertex] & self.block_mask[b]).count_ones() as u64;
            self.rgs[vertex] = b;
            self.block_mask[b] |= 1 << vertex;
            self.block_size[b] += 1;
            self.descend(vertex + 1, blocks.max(b + 1), internal + added);
            self.block_mask[b] &= !(1 << vertex);
            self.block_size[b] -= 1;
        }
    }

    fn leaf(&mut self, internal: u64) {
        self.enumerated += 1;
        let keep = self.m - internal;
        let cross_pairs = self.all_pairs - self.block_size.iter().map(|&s| pairs(s)).sum::<u64>();
        let ed = internal + (cross_pairs - keep);
        if self.best_keep.as_ref().is_none_or(|(best, _)| keep > *best) {
            self.best_keep = Some((keep, self.rgs.clone()));
        }
        if self.best_ed.as_ref().is_none_or(|(best, _)| ed < *best) {
            self.best_ed = Some((ed, self.rgs.clone()));
        }
    }
}

/// Exact `χ(G)`: tries `k = 1, 2, …` and for each runs a plain label-order
/// backtracking search for a proper `k`-colouring.
pub fn chromatic_oracle(g: &Graph) -> Result<usize> {
    chromatic_oracle_with(g, &Guards::default())
}

pub fn chromatic_oracle_with(g: &Graph, guards: &Guards) -> Result<usize> {
    guards.check_oracle(g.n(), 1)?;
    let masks = adjacency_masks(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let mut colors = vec![0usize; n];
    for k in 1..=n {
        if colorable(&masks, k, 0, 0, &mut colors) {
            return Ok(k);
        }
    }
    unreachable!("n colours always suffice")
}

fn colorable(masks: &[u64], k: usize, vertex: usize, used: usize, colors: &mut [usize]) -> bool {
    if vertex == masks.len() {
        return true;
    }
    for c in 0..(used + 1).min(k) {
        let clash = (0..vertex).any(|w| masks[vertex] >> w & 1 == 1 && colors[w] == c);
        if clash {
            continue;
        }
        colors[vertex] = c;
        if colorable(masks, k, vertex + 1, used.max(c + 1), colors) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::turan_graph;

    /// Stirling numbers of the second kind, summed over at most `p` blocks.
    fn partitions_up_to(n: usize, p: usize) -> u64 {
        let mut s = vec![vec![0u64; p + 1]; n + 1];
        s[0][0] = 1;
        for i in 1..=n {
            for k in 1..=p {
                s[i][k] = k as u64 * s[i - 1][k] + s[i - 1][k - 1];
            }
        }
        s[n].iter().sum()
    }

    #[test]
    fn max_p_partite_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let (keep, part) = max_p_partite_subgraph(&c5, 2).unwrap();
        assert_eq!(keep, 4);
        assert_eq!(recount_kept(&c5, &part), 4);
        assert_eq!(max_p_partite_subgraph(&Graph::petersen(), 2).unwrap().0, 12);
        assert_eq!(max_p_partite_subgraph(&Graph::complete(4), 4).unwrap().0, 6);
    }

    #[test]
    fn exact_ed_examples() {
        assert_eq!(
            exact_ed_to_p_partite(&turan_graph(6, 3).unwrap().0, 3)
                .unwrap()
                .0,
            0
        );
        assert_eq!(
            exact_ed_to_p_partite(&Graph::cycle(5).unwrap(), 2)
                .unwrap()
                .0,
            3
        );
        let (ed, part) = exact_ed_to_p_partite(&Graph::complete(4), 2).unwrap();
        assert_eq!(ed, 2);
        assert_eq!(part.sizes(), vec![2, 2]);
    }

    #[test]
    fn ties_resolve_to_smallest_string() {
        // C5 bipartitions keeping 4 edges: the first in RGS order is 0,0,1,0,1
        let (_, part) = max_p_partite_subgraph(&Graph::cycle(5).unwrap(), 2).unwrap();
        assert_eq!(part.labels(), vec![0, 0, 1, 0, 1]);
    }

    #[test]
    fn enumerates_each_partition_once() {
        for (n, p) in [(0, 2), (1, 3), (5, 2), (7, 3), (8, 4)] {
            let r = oracle_report(&Graph::empty(n), p).unwrap();
            assert_eq!(r.enumerated, partitions_up_to(n, p), "n={n} p={p}");
        }
        // 2^(n-1) bipartitions of 5 vertices, counted as RGS strings
        assert_eq!(partitions_up_to(5, 2), 16);
    }

    #[test]
    fn chromatic_oracle_examples() {
        assert_eq!(chromatic_oracle(&Graph::cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_oracle(&turan_graph(8, 4).unwrap().0).unwrap(), 4);
        assert_eq!(chromatic_oracle(&Graph::petersen()).unwrap(), 3);
        assert_eq!(chromatic_oracle(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(chromatic_oracle(&Graph::empty(3)).unwrap(), 1);
    }

    #[test]
    fn guards_are_enforced() {
        assert!(matches!(
            oracle_report(&Graph::empty(13), 4),
            Err(Error::GuardExceeded {
                size: 13,
                limit: 12,
                ..
            })
        ));
        assert!(oracle_report(&Graph::empty(15), 3).is_err());
        assert!(chromatic_oracle(&Graph::empty(15)).is_err());
        assert!(oracle_report(&Graph::empty(3), 0).is_err());
    }
}

//! Simple undirected graphs on the labels `0..n` and the complete multipartite
//! constructions built from them.
//!
//! Adjacency is stored as one bitset row per vertex, so membership tests are
//! O(1) and restricted degrees are a masked popcount.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Sorted set of vertex labels.
pub type VertexSet = BTreeSet<usize>;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
    edge_count: u64,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
            edge_count: 0,
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        complete_multipartite(&Partition::singletons(n))
    }

    /// Builds a graph from unordered pairs. Self-loops, repeated pairs and
    /// out-of-range labels are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !g.insert_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    /// Cycle `0-1-…-(n-1)-0`; `n` must be at least 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        Graph::from_edges(10, outer.chain(inner).chain(spokes)).expect("petersen edges are valid")
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        if self.rows[u].contains(v) {
            return false;
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.edge_count += 1;
        true
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.rows[u].contains(v) {
            return false;
        }
        self.rows[u].set(v, false);
        self.rows[v].set(u, false);
        self.edge_count -= 1;
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: x,
                n: self.n,
            })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u].contains(v)
    }

    /// Neighbours of `x` in increasing order. Panics if `x` is out of range.
    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[x].ones()
    }

    pub(crate) fn row(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.rows[u]
                .ones()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// `deg(x) = |N(x)|`.
    pub fn degree(&self, x: usize) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(self.rows[x].count_ones(..))
    }

    /// `deg(x | A) = |N(x) ∩ A|`.
    pub fn restricted_degree(&self, x: usize, within: &VertexSet) -> Result<usize> {
        self.check_vertex(x)?;
        let mask = self.mask(within)?;
        Ok(self.rows[x].intersection_count(&mask))
    }

    /// Bitset of `set`, validating every label.
    pub fn mask(&self, set: &VertexSet) -> Result<FixedBitSet> {
        let mut mask = FixedBitSet::with_capacity(self.n);
        for &v in set {
            self.check_vertex(v)?;
            mask.insert(v);
        }
        Ok(mask)
    }

    /// `e(G|A)` for a vertex mask.
    pub(crate) fn edges_within(&self, mask: &FixedBitSet) -> u64 {
        let twice: usize = mask
            .ones()
            .map(|v| self.rows[v].intersection_count(mask))
            .sum();
        (twice / 2) as u64
    }

    /// `e(A, B)` for disjoint vertex masks.
    pub(crate) fn edges_between(&self, a: &FixedBitSet, b: &FixedBitSet) -> u64 {
        a.ones()
            .map(|v| self.rows[v].intersection_count(b) as u64)
            .sum()
    }

    /// `G|A`, relabelled to `0..|A|` in increasing order of the old labels.
    pub fn induced_subgraph(&self, vertices: &VertexSet) -> Result<InducedSubgraph> {
        let mask = self.mask(vertices)?;
        let old_to_new: BTreeMap<usize, usize> = vertices
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let mut graph = Graph::empty(vertices.len());
        for (&old, &new) in &old_to_new {
            for w in self.rows[old].ones() {
                if w > old && mask.contains(w) {
                    graph.insert_edge(new, old_to_new[&w]);
                }
            }
        }
        Ok(InducedSubgraph { graph, old_to_new })
    }
}

/// Result of [`Graph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: BTreeMap<usize, usize>,
}

/// Ordered list of disjoint vertex sets covering `0..n`. Parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self> {
        let mut seen = vec![false; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "part {i} holds vertex {v}, but n = {n}"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} lies in two parts"
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!(
                "vertex {missing} is in no part"
            )));
        }
        Ok(Partition { n, parts })
    }

    /// Partition with `parts` parts where vertex `v` lies in part `labels[v]`.
    pub fn from_labels(labels: &[usize], parts: usize) -> Result<Self> {
        let mut sets = vec![VertexSet::new(); parts];
        for (v, &label) in labels.iter().enumerate() {
            let set = sets.get_mut(label).ok_or_else(|| {
                Error::InvalidPartition(format!("vertex {v} has label {label} >= {parts}"))
            })?;
            set.insert(v);
        }
        Ok(Partition {
            n: labels.len(),
            parts: sets,
        })
    }

    /// Contiguous parts: the first `sizes[0]` labels, then the next `sizes[1]`, and so on.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut next = 0;
        let parts = sizes
            .iter()
            .map(|&size| {
                let part: VertexSet = (next..next + size).collect();
                next += size;
                part
            })
            .collect();
        Partition { n: next, parts }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            parts: (0..n).map(|v| VertexSet::from([v])).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(VertexSet::len).collect()
    }

    /// Part index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                labels[v] = i;
            }
        }
        labels
    }

    /// Appends empty parts until there are at least `len` of them.
    pub fn padded(mut self, len: usize) -> Self {
        if self.parts.len() < len {
            self.parts.resize(len, VertexSet::new());
        }
        self
    }

    /// Errors unless this partition is over the same vertex set as `g`.
    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.n != g.n() {
            return Err(Error::InvalidPartition(format!(
                "partition is over {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        Ok(())
    }

    /// Number of vertex pairs split across parts, i.e. `e(K(V_1, …, V_k))`.
    pub fn cross_pairs(&self) -> u64 {
        pairs(self.n) - self.parts.iter().map(|p| pairs(p.len())).sum::<u64>()
    }
}

/// `C(k, 2)`.
pub fn pairs(k: usize) -> u64 {
    let k = k as u64;
    k * k.saturating_sub(1) / 2
}

/// `K(V_1, …, V_k)`: every pair in different parts is an edge.
pub fn complete_multipartite(partition: &Partition) -> Graph {
    let n = partition.n();
    let labels = partition.labels();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if labels[u] != labels[v] {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// Part sizes of `T_{n,p}` in part order: `n mod p` parts of size `⌈n/p⌉`, then `⌊n/p⌋`.
pub fn turan_part_sizes(n: usize, p: usize) -> Result<Vec<usize>> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "number of parts p must be >= 1".into(),
        ));
    }
    let (q, r) = (n / p, n % p);
    Ok((0..p).map(|i| if i < r { q + 1 } else { q }).collect())
}

/// The Turán partition: vertex `v` goes to part `v mod p`.
pub fn turan_partition(n: usize, p: usize) -> Result<Partition> {
    turan_part_sizes(n, p)?;
    let labels: Vec<usize> = (0..n).map(|v| v % p).collect();
    Partition::from_labels(&labels, p)
}

/// `T_{n,p}` together with its parts.
pub fn turan_graph(n: usize, p: usize) -> Result<(Graph, Partition)> {
    let partition = turan_partition(n, p)?;
    Ok((complete_multipartite(&partition), partition))
}

/// `e(T_{n,p}) = C(n,2) − r·C(q+1,2) − (p−r)·C(q,2)` with `n = qp + r`.
pub fn turan_edge_count(n: usize, p: usize) -> Result<u64> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "number of parts p must be >= 1".into(),
        ));
    }
    let (q, r) = (n / p, n % p);
    Ok(pairs(n) - r as u64 * pairs(q + 1) - (p - r) as u64 * pairs(q))
}

/// `ed(G_1, G_2) = |E_1 △ E_2|` on a shared labelled vertex set.
pub fn symmetric_difference_size(a: &Graph, b: &Graph) -> Result<u64> {
    if a.n() != b.n() {
        return Err(Error::VertexCountMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let twice: usize = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(ra, rb)| ra.symmetric_difference_count(rb))
        .sum();
    Ok((twice / 2) as u64)
}

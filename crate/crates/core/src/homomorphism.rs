//! Exact clique, homomorphism and chromatic-number search for small graphs.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::graph::Graph;
use crate::guards::Guards;

/// A graph used as the source of homomorphisms, with its chromatic number
/// computed on first use.
#[derive(Debug, Clone)]
pub struct PatternGraph {
    graph: Graph,
    chromatic: OnceLock<usize>,
}

impl PatternGraph {
    pub fn new(graph: Graph) -> Self {
        PatternGraph {
            graph,
            chromatic: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `χ(F)`, cached after the first successful computation.
    pub fn chromatic_number(&self) -> Result<usize> {
        self.chromatic_number_with(&Guards::default())
    }

    pub fn chromatic_number_with(&self, guards: &Guards) -> Result<usize> {
        if let Some(&chi) = self.chromatic.get() {
            return Ok(chi);
        }
        let chi = chromatic_number_with(&self.graph, guards)?;
        Ok(*self.chromatic.get_or_init(|| chi))
    }
}

impl From<Graph> for PatternGraph {
    fn from(graph: Graph) -> Self {
        PatternGraph::new(graph)
    }
}

/// Returns a `k`-set spanning a complete subgraph, or `None`.
///
/// The search is exact and visits vertex sets in lexicographic order, so the
/// witness is the lexicographically first `k`-clique. `k = 0` yields the empty set.
pub fn contains_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let n = g.n();
    let mut eligible = FixedBitSet::with_capacity(n);
    for v in 0..n {
        if g.row(v).count_ones(..) + 1 >= k {
            eligible.insert(v);
        }
    }
    let mut clique = Vec::with_capacity(k);
    if extend_clique(g, k, &mut clique, &eligible) {
        debug_assert!(is_clique(g, &clique));
        Some(clique)
    } else {
        None
    }
}

fn extend_clique(g: &Graph, k: usize, clique: &mut Vec<usize>, candidates: &FixedBitSet) -> bool {
    if clique.len() == k {
        return true;
    }
    if clique.len() + candidates.count_ones(..) < k {
        return false;
    }
    for v in candidates.ones() {
        let mut next = candidates.clone();
        next.intersect_with(g.row(v));
        // keep only labels above v so each set is visited once
        next.remove_range(..v + 1);
        clique.push(v);
        if extend_clique(g, k, clique, &next) {
            return true;
        }
        clique.pop();
    }
    false
}

/// Whether `vertices` are pairwise adjacent (and distinct).
pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Whether `map` sends every edge of `pattern` to an edge of `target`.
pub fn is_homomorphism(pattern: &Graph, target: &Graph, map: &[usize]) -> bool {
    map.len() == pattern.n()
        && map.iter().all(|&h| h < target.n())
        && pattern
            .edges()
            .all(|(u, v)| target.has_edge(map[u], map[v]))
}

/// Finds `φ: V(F) → V(H)` with every `F`-edge mapped to an `H`-edge.
///
/// Pattern vertices are assigned in descending-degree order (ties by label),
/// target candidates in ascending label order; assigning a vertex prunes the
/// domains of its unassigned neighbours to the image's neighbourhood.
pub fn hom_exists(pattern: &PatternGraph, target: &Graph) -> Result<Option<Vec<usize>>> {
    hom_exists_with(pattern, target, &Guards::default())
}

pub fn hom_exists_with(
    pattern: &PatternGraph,
    target: &Graph,
    guards: &Guards,
) -> Result<Option<Vec<usize>>> {
    let f = pattern.graph();
    guards.check_pattern(f.n())?;

    let mut order: Vec<usize> = (0..f.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(f.row(v).count_ones(..)), v));

    let mut full = FixedBitSet::with_capacity(target.n());
    full.insert_range(..);
    let domains = vec![full; f.n()];
    let mut map = vec![usize::MAX; f.n()];

    if assign(f, target, &order, 0, domains, &mut map) {
        debug_assert!(is_homomorphism(f, target, &map));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn assign(
    f: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    domains: Vec<FixedBitSet>,
    map: &mut [usize],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for image in domains[x].ones() {
        let mut next = domains.clone();
        let mut wiped = false;
        for y in f.neighbors(x) {
            if map[y] == usize::MAX {
                next[y].intersect_with(h.row(image));
                if next[y].is_clear() {
                    wiped = true;
                    break;
                }
            }
        }
        if wiped {
            continue;
        }
        map[x] = image;
        if assign(f, h, order, depth + 1, next, map) {
            return true;
        }
        map[x] = usize::MAX;
    }
    false
}

/// `true` iff no homomorphism `F → H` exists.
pub fn is_hom_free(target: &Graph, pattern: &PatternGraph) -> Result<bool> {
    Ok(hom_exists(pattern, target)?.is_none())
}

/// Exact `χ(F)` by DSATUR branch and bound. The null graph has `χ = 0`.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with(g, &Guards::default())
}

pub fn chromatic_number_with(g: &Graph, guards: &Guards) -> Result<usize> {
    guards.check_pattern(g.n())?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let mut search = Dsatur {
        g,
        colors: vec![None; n],
        best: n,
        lower: 2,
    };
    search.branch(0, 0);
    Ok(search.best)
}

struct Dsatur<'a> {
    g: &'a Graph,
    colors: Vec<Option<usize>>,
    best: usize,
    lower: usize,
}

impl Dsatur<'_> {
    fn neighbour_colors(&self, v: usize) -> Vec<bool> {
        let mut used = vec![false; self.best + 1];
        for w in self.g.neighbors(v) {
            if let Some(c) = self.colors[w] {
                if c < used.len() {
                    used[c] = true;
                }
            }
        }
        used
    }

    /// Uncoloured vertex with the most distinct neighbour colours, then the
    /// most uncoloured neighbours, then the smallest label.
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| {
                let saturation = self.neighbour_colors(v).iter().filter(|&&b| b).count();
                let free = self
                    .g
                    .neighbors(v)
                    .filter(|&w| self.colors[w].is_none())
                    .count();
                (saturation, free, std::cmp::Reverse(v))
            })
    }

    fn branch(&mut self, colored: usize, used: usize) {
        if self.best <= self.lower {
            return;
        }
        if colored == self.g.n() {
            self.best = self.best.min(used);
            return;
        }
        let v = self.pick().expect("an uncoloured vertex remains");
        let blocked = self.neighbour_colors(v);
        for c in (0..used).filter(|&c| !blocked[c]) {
            self.colors[v] = Some(c);
            self.branch(colored + 1, used);
            self.colors[v] = None;
        }
        if used + 1 < self.best {
            self.colors[v] = Some(used);
            self.branch(colored + 1, used + 1);
            self.colors[v] = None;
        }
    }
}

//! Degree-majorization partitioning of a graph and the certified
//! `p`-partite subgraph it yields.
//!
//! Starting from the whole vertex set, each step picks a vertex `x_i` of maximum
//! degree inside the current residual set `R`, makes `R ∖ N(x_i)` the next part
//! and continues with `R ∩ N(x_i)`. Every part satisfies
//!
//! ```text
//! 2·e(G|V_i) + e(V_i, V_i⁺) = Σ_{x ∈ V_i} deg(x | R) ≤ |V_i|·|V_i⁺|
//! ```
//!
//! and the pivots are pairwise adjacent, so on a `K_{p+1}`-free graph the
//! procedure ends after at most `p` steps with at most
//! `t = e(T_{n,p}) − e(G)` edges inside parts.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{turan_edge_count, Graph, Partition, VertexSet};
use crate::guards::Guards;
use crate::homomorphism::{contains_clique, is_clique};

/// Above this many vertices, residual degrees are updated incrementally
/// instead of recounted at every step.
pub const INCREMENTAL_DEGREE_THRESHOLD: usize = 1000;

/// How residual degrees are maintained between steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeTracking {
    /// Recount `deg(x | R)` for every residual vertex at each step.
    Recompute,
    /// Subtract each removed part's contribution from the previous counts.
    Incremental,
    /// `Recompute` up to [`INCREMENTAL_DEGREE_THRESHOLD`] vertices, `Incremental` above.
    Auto,
}

/// One step of the procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationStep {
    pub pivot: usize,
    /// `V_i = V_{i−1}⁺ ∖ N(x_i)`.
    pub part: VertexSet,
    /// `V_i⁺ = V_{i−1}⁺ ∩ N(x_i)`.
    pub residual: VertexSet,
    /// `Σ_{x ∈ V_i} deg(x | V_{i−1}⁺)`.
    pub degree_sum: u64,
    /// `e(G|V_i)`.
    pub internal_edges: u64,
    /// `e(V_i, V_i⁺)`.
    pub cross_edges: u64,
}

impl MajorizationStep {
    /// `|V_i|·|V_i⁺|`, the right-hand side of the per-step bound.
    pub fn pair_bound(&self) -> u64 {
        self.part.len() as u64 * self.residual.len() as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationTrace {
    pub n: usize,
    pub steps: Vec<MajorizationStep>,
    /// The parts `V_1, …, V_s` in step order.
    pub partition: Partition,
}

impl MajorizationTrace {
    /// Number of steps `s`.
    pub fn s(&self) -> usize {
        self.steps.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.pivot).collect()
    }

    /// `Σ_i e(G|V_i)`.
    pub fn internal_total(&self) -> u64 {
        self.steps.iter().map(|s| s.internal_edges).sum()
    }

    pub fn degree_sum_total(&self) -> u64 {
        self.steps.iter().map(|s| s.degree_sum).sum()
    }

    /// `Σ_i |V_i|·|V_i⁺| = e(K(V_1, …, V_s))`.
    pub fn pair_bound_total(&self) -> u64 {
        self.steps.iter().map(MajorizationStep::pair_bound).sum()
    }

    /// Checks every structural invariant of a trace against the graph it was
    /// produced from. Returns a description of the first violation.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.n != g.n() || self.partition.n() != g.n() {
            return Err("trace and graph have different vertex counts".into());
        }
        let mut residual: VertexSet = (0..g.n()).collect();
        for (i, step) in self.steps.iter().enumerate() {
            let i = i + 1;
            if !residual.contains(&step.pivot) {
                return Err(format!(
                    "step {i}: pivot {} not in V_{}⁺",
                    step.pivot,
                    i - 1
                ));
            }
            let max_degree = residual
                .iter()
                .map(|&x| g.neighbors(x).filter(|w| residual.contains(w)).count())
                .max()
                .unwrap_or(0);
            let pivot_degree = g
                .neighbors(step.pivot)
                .filter(|w| residual.contains(w))
                .count();
            if pivot_degree != max_degree {
                return Err(format!(
                    "step {i}: pivot {} is not of maximum degree",
                    step.pivot
                ));
            }
            let part: VertexSet = residual
                .iter()
                .copied()
                .filter(|&x| !g.has_edge(step.pivot, x))
                .collect();
            let next: VertexSet = residual.difference(&part).copied().collect();
            if part != step.part || next != step.residual {
                return Err(format!(
                    "step {i}: V_i or V_i⁺ does not match the pivot's neighbourhood"
                ));
            }
            if pivot_degree != next.len() {
                return Err(format!("step {i}: deg(x_i | V_{}⁺) != |V_i⁺|", i - 1));
            }
            let degree_sum: u64 = part
                .iter()
                .map(|&x| g.neighbors(x).filter(|w| residual.contains(w)).count() as u64)
                .sum();
            if degree_sum != step.degree_sum
                || 2 * step.internal_edges + step.cross_edges != step.degree_sum
                || step.degree_sum > step.pair_bound()
            {
                return Err(format!("step {i}: per-step degree identity or bound fails"));
            }
            residual = next;
        }
        if !residual.is_empty() {
            return Err("residual set not exhausted".into());
        }
        let parts: Vec<VertexSet> = self.steps.iter().map(|s| s.part.clone()).collect();
        if self.partition.parts() != parts.as_slice() {
            return Err("partition does not list the step parts in order".into());
        }
        if !is_clique(g, &self.pivots()) {
            return Err("pivots do not span a complete graph".into());
        }
        Ok(())
    }

    /// Line-oriented text form: a header, then one line per step with
    /// `index pivot members residual_size degree_sum internal cross`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# majorization-trace v1 n={} s={}", self.n, self.s()).unwrap();
        writeln!(
            out,
            "# step pivot part residual_size degree_sum internal cross"
        )
        .unwrap();
        for (i, step) in self.steps.iter().enumerate() {
            let members: Vec<String> = step.part.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "{} {} {} {} {} {} {}",
                i + 1,
                step.pivot,
                members.join(","),
                step.residual.len(),
                step.degree_sum,
                step.internal_edges,
                step.cross_edges
            )
            .unwrap();
        }
        out
    }
}

/// Runs degree majorization with the default degree-tracking strategy.
///
/// Ties between maximum-degree vertices go to the smallest label. Works on any
/// graph; on a graph with clique number `ω` it stops after at most `ω` steps.
pub fn degree_majorization(g: &Graph) -> MajorizationTrace {
    degree_majorization_with(g, DegreeTracking::Auto)
}

pub fn degree_majorization_with(g: &Graph, tracking: DegreeTracking) -> MajorizationTrace {
    let n = g.n();
    let incremental = match tracking {
        DegreeTracking::Recompute => false,
        DegreeTracking::Incremental => true,
        DegreeTracking::Auto => n > INCREMENTAL_DEGREE_THRESHOLD,
    };

    let mut residual = FixedBitSet::with_capacity(n);
    residual.insert_range(..);
    let mut degree: Vec<usize> = (0..n).map(|x| g.row(x).count_ones(..)).collect();
    let mut steps = Vec::new();

    while !residual.is_clear() {
        if !incremental && !steps.is_empty() {
            for x in residual.ones() {
                degree[x] = g.row(x).intersection_count(&residual);
            }
        }
        let pivot = residual
            .ones()
            .max_by_key(|&x| (degree[x], std::cmp::Reverse(x)))
            .expect("residual is non-empty");

        let mut part = residual.clone();
        part.difference_with(g.row(pivot));
        let mut next = residual.clone();
        next.intersect_with(g.row(pivot));

        let degree_sum: u64 = part.ones().map(|x| degree[x] as u64).sum();
        let internal_edges = g.edges_within(&part);
        let cross_edges = g.edges_between(&part, &next);

        if incremental {
            for x in next.ones() {
                degree[x] -= g.row(x).intersection_count(&part);
            }
        }

        steps.push(MajorizationStep {
            pivot,
            part: part.ones().collect(),
            residual: next.ones().collect(),
            degree_sum,
            internal_edges,
            cross_edges,
        });
        residual = next;
    }

    let parts = steps.iter().map(|s| s.part.clone()).collect();
    let partition = Partition::new(n, parts).expect("majorization parts partition the vertex set");
    MajorizationTrace {
        n,
        steps,
        partition,
    }
}

/// `H_0`: `G` without the edges that lie inside a part of `partition`.
pub fn p_partite_subgraph(g: &Graph, partition: &Partition) -> Result<Graph> {
    partition.check_covers(g)?;
    let labels = partition.labels();
    let kept = g.edges().filter(|&(u, v)| labels[u] != labels[v]);
    Graph::from_edges(g.n(), kept)
}

/// Edges of `g` with both ends in the same part.
pub fn internal_edge_count(g: &Graph, partition: &Partition) -> Result<u64> {
    partition.check_covers(g)?;
    let labels = partition.labels();
    Ok(g.edges().filter(|&(u, v)| labels[u] == labels[v]).count() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem1Certificate {
    pub n: usize,
    pub p: usize,
    /// `e(T_{n,p}) − e(G)`.
    pub t: u64,
    /// Number of majorization steps.
    pub s: usize,
    /// `Σ_i e(G|V_i)`.
    pub internal_total: u64,
    /// `e(H_0) = e(G) − internal_total`.
    pub h0_edges: u64,
    /// `internal_total ≤ t`, equivalently `e(H_0) ≥ e(G) − t`.
    pub bound_ok: bool,
}

/// Certificate together with the objects it was computed from.
#[derive(Debug, Clone)]
pub struct Theorem1Outcome {
    pub certificate: Theorem1Certificate,
    pub trace: MajorizationTrace,
    /// The trace's parts padded with empty parts to exactly `p`.
    pub partition: Partition,
    pub h0: Graph,
}

/// Partitions a `K_{p+1}`-free graph into `p` parts with at most `t` internal edges.
///
/// A `K_{p+1}` is reported as [`Error::CliquePresent`]: first from the pivots
/// when the procedure needs more than `p` steps, otherwise from an exact clique
/// search when `n` is within the clique guard. Above the guard the caller vouches
/// for the precondition.
pub fn theorem1_certificate(g: &Graph, p: usize) -> Result<Theorem1Outcome> {
    theorem1_certificate_with(g, p, &Guards::default())
}

pub fn theorem1_certificate_with(g: &Graph, p: usize, guards: &Guards) -> Result<Theorem1Outcome> {
    let turan = turan_edge_count(g.n(), p)?;
    let trace = degree_majorization(g);
    if trace.s() > p {
        let witness = trace.pivots()[..=p].to_vec();
        return Err(Error::CliquePresent { witness });
    }
    if g.n() <= guards.clique_max_n {
        if let Some(witness) = contains_clique(g, p + 1) {
            return Err(Error::CliquePresent { witness });
        }
    }
    // s ≤ p forces e(G) ≤ e(K(V_1..V_s)) ≤ e(T_{n,p})
    let t = turan
        .checked_sub(g.edge_count())
        .expect("a partition into at most p parts bounds e(G) by e(T_{n,p})");

    let internal_total = trace.internal_total();
    let partition = trace.partition.clone().padded(p);
    let h0 = p_partite_subgraph(g, &partition)?;
    let certificate = Theorem1Certificate {
        n: g.n(),
        p,
        t,
        s: trace.s(),
        internal_total,
        h0_edges: h0.edge_count(),
        bound_ok: internal_total <= t,
    };
    Ok(Theorem1Outcome {
        certificate,
        trace,
        partition,
        h0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_multipartite, turan_graph};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn c5_trace_matches_hand_computation() {
        let g = Graph::cycle(5).unwrap();
        let trace = degree_majorization(&g);
        trace.verify(&g).unwrap();
        assert_eq!(trace.s(), 2);
        assert_eq!(trace.pivots(), vec![0, 1]);
        assert_eq!(trace.steps[0].part, set(&[0, 2, 3]));
        assert_eq!(trace.steps[0].residual, set(&[1, 4]));
        assert_eq!(trace.steps[1].part, set(&[1, 4]));
        assert_eq!(
            (
                trace.steps[0].degree_sum,
                trace.steps[0].internal_edges,
                trace.steps[0].cross_edges
            ),
            (6, 1, 4)
        );
        assert_eq!(trace.internal_total(), 1);
        assert_eq!(
            trace.to_text(),
            "# majorization-trace v1 n=5 s=2\n\
             # step pivot part residual_size degree_sum internal cross\n\
             1 0 0,2,3 2 6 1 4\n\
             2 1 1,4 0 0 0 0\n"
        );
    }

    #[test]
    fn turan_graph_recovers_its_parts() {
        for (n, p) in [(5, 2), (9, 3), (12, 4), (7, 3), (13, 5)] {
            let (g, parts) = turan_graph(n, p).unwrap();
            let trace = degree_majorization(&g);
            trace.verify(&g).unwrap();
            assert_eq!(trace.s(), p);
            assert_eq!(trace.internal_total(), 0);
            let mut got: Vec<VertexSet> = trace.partition.parts().to_vec();
            let mut want: Vec<VertexSet> = parts.parts().to_vec();
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn edgeless_graph_is_one_part() {
        let g = Graph::empty(4);
        let trace = degree_majorization(&g);
        assert_eq!(trace.s(), 1);
        assert_eq!(trace.steps[0].part, (0..4).collect());
        assert_eq!(trace.internal_total(), 0);
        assert_eq!(degree_majorization(&Graph::empty(0)).s(), 0);
    }

    #[test]
    fn p_partite_subgraph_examples() {
        let g = Graph::cycle(5).unwrap();
        let p = Partition::new(5, vec![set(&[0, 2, 3]), set(&[1, 4])]).unwrap();
        let h0 = p_partite_subgraph(&g, &p).unwrap();
        assert_eq!(h0.edge_count(), 4);
        assert!(!h0.has_edge(2, 3));
        assert_eq!(
            p_partite_subgraph(&g, &Partition::singletons(5)).unwrap(),
            g
        );
        let (t, parts) = turan_graph(8, 3).unwrap();
        assert_eq!(p_partite_subgraph(&t, &parts).unwrap(), t);
        assert!(p_partite_subgraph(&g, &Partition::singletons(4)).is_err());
    }

    #[test]
    fn certificate_on_c5() {
        let out = theorem1_certificate(&Graph::cycle(5).unwrap(), 2).unwrap();
        assert_eq!(
            out.certificate,
            Theorem1Certificate {
                n: 5,
                p: 2,
                t: 1,
                s: 2,
                internal_total: 1,
                h0_edges: 4,
                bound_ok: true
            }
        );
    }

    #[test]
    fn certificate_pads_to_p_parts() {
        let out = theorem1_certificate(&Graph::empty(4), 3).unwrap();
        assert_eq!(out.partition.sizes(), vec![4, 0, 0]);
        assert_eq!(out.certificate.t, 5);
    }

    #[test]
    fn certificate_on_turan_minus_three_edges() {
        let (mut g, _) = turan_graph(8, 2).unwrap();
        for (u, v) in [(0, 1), (2, 5), (4, 7)] {
            assert!(g.remove_edge(u, v));
        }
        let out = theorem1_certificate(&g, 2).unwrap();
        assert_eq!(out.certificate.t, 3);
        assert!(out.certificate.internal_total <= 3);
        assert!(out.certificate.bound_ok);
    }

    #[test]
    fn k4_is_rejected_with_pivot_witness() {
        match theorem1_certificate(&Graph::complete(4), 2) {
            Err(Error::CliquePresent { witness }) => assert_eq!(witness, vec![0, 1, 2]),
            other => panic!("expected clique error, got {other:?}"),
        }
    }

    #[test]
    fn hidden_clique_is_found_by_exact_search() {
        // K_{3,3} plus a disjoint triangle: two steps suffice, yet a triangle exists.
        let cross = (0..3).flat_map(|u| (3..6).map(move |v| (u, v)));
        let g = Graph::from_edges(9, cross.chain([(6, 7), (7, 8), (6, 8)])).unwrap();
        assert_eq!(degree_majorization(&g).s(), 2);
        match theorem1_certificate(&g, 2) {
            Err(Error::CliquePresent { witness }) => assert_eq!(witness, vec![6, 7, 8]),
            other => panic!("expected clique error, got {other:?}"),
        }
    }

    #[test]
    fn tracking_strategies_agree() {
        let (base, parts) = turan_graph(30, 3).unwrap();
        let mut g = base.clone();
        for (u, v) in base.edges().filter(|(u, v)| (u * 7 + v) % 5 == 0) {
            g.remove_edge(u, v);
        }
        let a = degree_majorization_with(&g, DegreeTracking::Recompute);
        let b = degree_majorization_with(&g, DegreeTracking::Incremental);
        assert_eq!(a, b);
        a.verify(&g).unwrap();
        let k = complete_multipartite(&parts);
        assert_eq!(
            degree_majorization_with(&k, DegreeTracking::Recompute),
            degree_majorization_with(&k, DegreeTracking::Incremental)
        );
    }
}

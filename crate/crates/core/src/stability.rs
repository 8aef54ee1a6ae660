//! Completion of the certified `p`-partite subgraph to a complete `p`-partite
//! graph, and the balancing of its parts toward the Turán shape.
//!
//! Quantities involving `n/p` or square roots are compared in cleared-denominator
//! integer form:
//!
//! ```text
//! Σ_i (|V_i| − n/p)² ≤ 4t     ⇔  Σ_i (p·|V_i| − n)² ≤ 4·t·p²
//! ed(K, T) ≤ n·√(t/p)         ⇔  ed²·p ≤ n²·t
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{
    complete_multipartite, pairs, turan_edge_count, turan_part_sizes, Graph, Partition, VertexSet,
};
use crate::guards::Guards;
use crate::partitioner::{internal_edge_count, theorem1_certificate_with, Theorem1Outcome};

/// Outcome of a checked inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The inequality's hypothesis is not met, so it asserts nothing.
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn is_failure(self) -> bool {
        self == Verdict::Fails
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "true",
            Verdict::Fails => "false",
            Verdict::NotApplicable => "na",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    /// `K(V_1, …, V_p)`.
    pub k: Graph,
    /// `|E(G) △ E(K)|`.
    pub ed: u64,
    /// Edges of `G` inside parts (deleted).
    pub deleted: u64,
    /// Cross pairs missing from `G` (added).
    pub added: u64,
}

/// Completes `G` to `K(P)`. The distance is counted as internal edges of `G`
/// plus cross pairs missing from `G`.
pub fn completion(g: &Graph, partition: &Partition) -> Result<Completion> {
    partition.check_covers(g)?;
    let deleted = internal_edge_count(g, partition)?;
    let present_cross = g.edge_count() - deleted;
    let added = partition.cross_pairs() - present_cross;
    Ok(Completion {
        k: complete_multipartite(partition),
        ed: deleted + added,
        deleted,
        added,
    })
}

/// A vertex reassignment made while balancing parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rebalance {
    pub moves: Vec<Move>,
    /// Partition whose size multiset equals that of `T_{n,p}`.
    pub balanced: Partition,
    /// `|E(K(P)) △ E(K(balanced))|`.
    pub ed_k_tshape: u64,
}

/// Target size for each part: parts ranked by (size descending, index
/// ascending) receive the Turán sizes in descending order.
pub fn matched_targets(sizes: &[usize]) -> Vec<usize> {
    let n = sizes.iter().sum();
    let p = sizes.len();
    if p == 0 {
        return Vec::new();
    }
    let turan = turan_part_sizes(n, p).expect("p >= 1");
    let mut rank: Vec<usize> = (0..p).collect();
    rank.sort_by_key(|&i| (std::cmp::Reverse(sizes[i]), i));
    let mut targets = vec![0; p];
    for (r, &i) in rank.iter().enumerate() {
        targets[i] = turan[r];
    }
    targets
}

/// Moves the fewest vertices needed to give `P` the Turán size multiset.
///
/// Oversized parts give up their highest labels, lowest part index first; the
/// freed vertices fill deficient parts in index order.
pub fn rebalance_to_turan(partition: &Partition) -> Rebalance {
    let sizes = partition.sizes();
    let targets = matched_targets(&sizes);
    let mut parts: Vec<VertexSet> = partition.parts().to_vec();

    let mut pool: Vec<(usize, usize)> = Vec::new();
    for (i, part) in parts.iter_mut().enumerate() {
        while part.len() > targets[i] {
            let v = part.pop_last().expect("oversized part is non-empty");
            pool.push((v, i));
        }
    }
    let mut pool = pool.into_iter();
    let mut moves = Vec::new();
    for (i, part) in parts.iter_mut().enumerate() {
        while part.len() < targets[i] {
            let (vertex, from) = pool.next().expect("surplus equals deficit");
            part.insert(vertex);
            moves.push(Move {
                vertex,
                from,
                to: i,
            });
        }
    }

    let balanced = Partition::new(partition.n(), parts).expect("moves preserve the vertex set");
    let ed_k_tshape = multipartite_distance(partition, &balanced);
    Rebalance {
        moves,
        balanced,
        ed_k_tshape,
    }
}

/// `|E(K(P)) △ E(K(Q))|` from part intersections: a pair differs exactly when it
/// is inside a part of one partition but not the other.
pub fn multipartite_distance(a: &Partition, b: &Partition) -> u64 {
    let b_labels = b.labels();
    let mut both = 0u64;
    for part in a.parts() {
        let mut counts = vec![0usize; b.len()];
        for &v in part {
            counts[b_labels[v]] += 1;
        }
        both += counts.into_iter().map(pairs).sum::<u64>();
    }
    let inside = |p: &Partition| p.parts().iter().map(|s| pairs(s.len())).sum::<u64>();
    inside(a) + inside(b) - 2 * both
}

/// `Σ_i (p·|V_i| − n)²`.
pub fn imbalance(n: usize, sizes: &[usize]) -> u128 {
    let p = sizes.len() as i128;
    sizes
        .iter()
        .map(|&s| {
            let d = p * s as i128 - n as i128;
            (d * d) as u128
        })
        .sum()
}

/// Largest value `imbalance` can take when `e(K) ≥ e(T_{n,p}) − 2t`:
/// `4·t·p² + p·r·(p − r)` with `r = n mod p`. The second term vanishes when `p | n`.
pub fn exact_imbalance_limit(n: usize, p: usize, t: u64) -> u128 {
    let (p, r, t) = (p as u128, (n % p.max(1)) as u128, t as u128);
    4 * t * p * p + p * r * (p - r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Co2Check {
    pub imbalance: u128,
    pub imbalance_ok: Verdict,
    pub ed_k_tshape: u64,
    pub co2_ok: Verdict,
}

/// Evaluates the balancing inequalities for part sizes `sizes` and deficiency `t`.
///
/// Both verdicts are [`Verdict::NotApplicable`] unless
/// `e(K(sizes)) ≥ e(T_{n,p}) − 2t`.
pub fn co2_check(n: usize, p: usize, t: u64, sizes: &[usize]) -> Result<Co2Check> {
    if sizes.len() != p || p == 0 {
        return Err(Error::InvalidParameter(format!(
            "expected {p} part sizes, got {}",
            sizes.len()
        )));
    }
    if sizes.iter().sum::<usize>() != n {
        return Err(Error::InvalidParameter(format!(
            "part sizes {sizes:?} do not sum to {n}"
        )));
    }
    let layout = Partition::from_sizes(sizes);
    let ed_k_tshape = rebalance_to_turan(&layout).ed_k_tshape;
    let imbalance = imbalance(n, sizes);

    let applicable = layout.cross_pairs() + 2 * t >= turan_edge_count(n, p)?;
    let (imbalance_ok, co2_ok) = if applicable {
        let (p, n, t) = (p as u128, n as u128, t as u128);
        let ed = ed_k_tshape as u128;
        (
            Verdict::from_bool(imbalance <= 4 * t * p * p),
            Verdict::from_bool(ed * ed * p <= n * n * t),
        )
    } else {
        (Verdict::NotApplicable, Verdict::NotApplicable)
    };
    Ok(Co2Check {
        imbalance,
        imbalance_ok,
        ed_k_tshape,
        co2_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityCertificate {
    pub n: usize,
    pub p: usize,
    pub t: u64,
    pub s: usize,
    pub internal_total: u64,
    pub h0_edges: u64,
    /// `|E(G) △ E(K)|`.
    pub ed_g_k: u64,
    /// `ed_g_k ≤ 3t`.
    pub bound_3t_ok: bool,
    pub part_sizes: Vec<usize>,
    /// `Σ_i (p·|V_i| − n)²`.
    pub imbalance: u128,
    /// `imbalance ≤ 4·t·p²`.
    pub imbalance_ok: Verdict,
    pub ed_k_tshape: u64,
    /// `ed_k_tshape²·p ≤ n²·t`.
    pub co2_ok: Verdict,
    pub seed: Option<u64>,
}

impl StabilityCertificate {
    pub const CSV_HEADER: [&'static str; 13] = [
        "n",
        "p",
        "t",
        "s",
        "internal_total",
        "h0_edges",
        "ed_G_K",
        "bound_3t_ok",
        "imbalance",
        "imbalance_ok",
        "ed_K_Tshape",
        "co2_ok",
        "seed",
    ];

    /// Fields in [`Self::CSV_HEADER`] order. A missing seed is an empty field.
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.p.to_string(),
            self.t.to_string(),
            self.s.to_string(),
            self.internal_total.to_string(),
            self.h0_edges.to_string(),
            self.ed_g_k.to_string(),
            self.bound_3t_ok.to_string(),
            self.imbalance.to_string(),
            self.imbalance_ok.to_string(),
            self.ed_k_tshape.to_string(),
            self.co2_ok.to_string(),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        ]
    }

    /// Verdicts that follow from proved theorems: `internal_total ≤ t` and `ed ≤ 3t`.
    pub fn theorem_verdicts_hold(&self) -> bool {
        self.internal_total <= self.t && self.bound_3t_ok
    }

    /// Balancing verdicts that failed.
    pub fn balance_failures(&self) -> usize {
        usize::from(self.imbalance_ok.is_failure()) + usize::from(self.co2_ok.is_failure())
    }

    pub fn all_verdicts_hold(&self) -> bool {
        self.theorem_verdicts_hold() && self.balance_failures() == 0
    }
}

#[derive(Debug, Clone)]
pub struct StabilityOutcome {
    pub certificate: StabilityCertificate,
    pub theorem1: Theorem1Outcome,
    pub completion: Completion,
    pub rebalance: Rebalance,
}

/// Partition, complete and balance a `K_{p+1}`-free graph, certifying each bound.
pub fn corollary1_certificate(g: &Graph, p: usize) -> Result<StabilityOutcome> {
    corollary1_certificate_with(g, p, &Guards::default())
}

pub fn corollary1_certificate_with(
    g: &Graph,
    p: usize,
    guards: &Guards,
) -> Result<StabilityOutcome> {
    let theorem1 = theorem1_certificate_with(g, p, guards)?;
    let t = theorem1.certificate.t;
    let completion = completion(g, &theorem1.partition)?;
    let rebalance = rebalance_to_turan(&theorem1.partition);
    let part_sizes = theorem1.partition.sizes();
    let co2 = co2_check(g.n(), p, t, &part_sizes)?;
    debug_assert_eq!(co2.ed_k_tshape, rebalance.ed_k_tshape);

    let certificate = StabilityCertificate {
        n: g.n(),
        p,
        t,
        s: theorem1.certificate.s,
        internal_total: theorem1.certificate.internal_total,
        h0_edges: theorem1.certificate.h0_edges,
        ed_g_k: completion.ed,
        bound_3t_ok: completion.ed <= 3 * t,
        part_sizes,
        imbalance: co2.imbalance,
        imbalance_ok: co2.imbalance_ok,
        ed_k_tshape: rebalance.ed_k_tshape,
        co2_ok: co2.co2_ok,
        seed: None,
    };
    Ok(StabilityOutcome {
        certificate,
        theorem1,
        completion,
        rebalance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{symmetric_difference_size, turan_graph};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn completion_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let p = Partition::new(5, vec![set(&[0, 2, 3]), set(&[1, 4])]).unwrap();
        let c = completion(&c5, &p).unwrap();
        assert_eq!(c.k.edge_count(), 6);
        assert_eq!((c.ed, c.deleted, c.added), (3, 1, 2));
        assert_eq!(symmetric_difference_size(&c5, &c.k).unwrap(), 3);

        let (t, parts) = turan_graph(9, 3).unwrap();
        assert_eq!(completion(&t, &parts).unwrap().ed, 0);

        let p = Partition::new(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        assert_eq!(completion(&Graph::empty(4), &p).unwrap().ed, 4);
        assert!(completion(&Graph::empty(3), &p).is_err());
    }

    #[test]
    fn rebalance_examples() {
        let r = rebalance_to_turan(&Partition::from_sizes(&[3, 2]));
        assert!(r.moves.is_empty());
        assert_eq!(r.ed_k_tshape, 0);

        let r = rebalance_to_turan(&Partition::from_sizes(&[4, 0]));
        assert_eq!(
            r.moves,
            vec![
                Move {
                    vertex: 3,
                    from: 0,
                    to: 1
                },
                Move {
                    vertex: 2,
                    from: 0,
                    to: 1
                }
            ]
        );
        assert_eq!(r.balanced.sizes(), vec![2, 2]);
        assert_eq!(r.ed_k_tshape, 4);

        assert!(rebalance_to_turan(&Partition::from_sizes(&[2, 2, 2]))
            .moves
            .is_empty());
    }

    #[test]
    fn rebalance_matches_sizes_by_rank() {
        // (1, 5, 0) for n = 6, p = 3: part 1 keeps 2, parts 0 and 2 take one each
        let r = rebalance_to_turan(&Partition::from_sizes(&[1, 5, 0]));
        assert_eq!(matched_targets(&[1, 5, 0]), vec![2, 2, 2]);
        assert_eq!(r.moves.len(), 3);
        assert_eq!(r.balanced.sizes(), vec![2, 2, 2]);
        // n = 7: the largest part gets the larger target
        assert_eq!(matched_targets(&[1, 5, 1]), vec![2, 3, 2]);
    }

    #[test]
    fn co2_examples() {
        let c = co2_check(9, 3, 0, &[3, 3, 3]).unwrap();
        assert_eq!((c.imbalance, c.ed_k_tshape), (0, 0));
        assert_eq!((c.imbalance_ok, c.co2_ok), (Verdict::Holds, Verdict::Holds));

        let c = co2_check(5, 2, 1, &[3, 2]).unwrap();
        assert_eq!(c.imbalance, 2);
        assert_eq!(c.imbalance_ok, Verdict::Holds);

        let c = co2_check(4, 2, 2, &[4, 0]).unwrap();
        assert_eq!((c.imbalance, c.ed_k_tshape), (32, 4));
        assert_eq!((c.imbalance_ok, c.co2_ok), (Verdict::Holds, Verdict::Holds));

        let c = co2_check(4, 2, 1, &[4, 0]).unwrap();
        assert_eq!(
            (c.imbalance_ok, c.co2_ok),
            (Verdict::NotApplicable, Verdict::NotApplicable)
        );

        assert!(co2_check(4, 2, 1, &[4]).is_err());
        assert!(co2_check(4, 2, 1, &[3, 0]).is_err());
    }

    #[test]
    fn rounding_term_of_the_imbalance_bound() {
        // T_{5,2} itself, t = 0: the literal bound asks 2 <= 0.
        let c = co2_check(5, 2, 0, &[3, 2]).unwrap();
        assert_eq!(c.imbalance, 2);
        assert_eq!(c.imbalance_ok, Verdict::Fails);
        assert_eq!(exact_imbalance_limit(5, 2, 0), 2);
        assert_eq!(exact_imbalance_limit(9, 3, 1), 36);
    }

    #[test]
    fn balancing_bound_can_fail_at_the_hypothesis_boundary() {
        // sizes (6, 4), n = 10, t = 1: e(K) = 24 >= 25 - 2, but one move costs 9 pairs.
        let c = co2_check(10, 2, 1, &[6, 4]).unwrap();
        assert_eq!(c.ed_k_tshape, 9);
        assert_eq!(c.imbalance_ok, Verdict::Holds);
        assert_eq!(c.co2_ok, Verdict::Fails);
    }

    #[test]
    fn corollary_on_small_graphs() {
        let out = corollary1_certificate(&Graph::cycle(5).unwrap(), 2).unwrap();
        let c = &out.certificate;
        assert_eq!((c.t, c.internal_total, c.h0_edges, c.ed_g_k), (1, 1, 4, 3));
        assert!(c.bound_3t_ok);
        assert_eq!(c.part_sizes, vec![3, 2]);

        let (t93, _) = turan_graph(9, 3).unwrap();
        let c = corollary1_certificate(&t93, 3).unwrap().certificate;
        assert_eq!(
            (c.t, c.internal_total, c.ed_g_k, c.imbalance, c.ed_k_tshape),
            (0, 0, 0, 0, 0)
        );
        assert!(c.all_verdicts_hold());
        assert_eq!(
            c.csv_record().join(","),
            "9,3,0,3,0,27,0,true,0,true,0,true,"
        );
    }
}

//! Seeded generators of `K_{p+1}`-free graphs.
//!
//! All randomness comes from SplitMix64 seeded with the generator's 64-bit seed.
//! Draws are reproducible in any language that implements the two helpers
//! below the same way:
//!
//! * `below(b)`: draw `x = next_u64()`, reject while `x > u64::MAX − (2⁶⁴ mod b)`,
//!   return `x mod b`.
//! * Bernoulli with probability `num/den`: `below(den) < num`, one draw per trial
//!   (also when the probability is 0 or 1).
//!
//! Candidate pairs are always visited in lexicographic order `(u, v)`, `u < v`.
//!
//! A generator is described by a one-line spec `kind:n:p:param:seed`:
//!
//! | kind                | `n` field                      | `param`                     |
//! |---------------------|--------------------------------|-----------------------------|
//! | `perturbed_turan`   | vertex count                   | `k`, edges removed          |
//! | `sub_multipartite`  | vertex count or sizes `5,1,…`  | keep probability `num/den`  |
//! | `clique_broken_gnp` | vertex count                   | edge probability `num/den`  |
//!
//! For `sub_multipartite` a bare vertex count means the Turán part sizes; an
//! explicit size list must have exactly `p` entries.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::graph::{turan_graph, turan_part_sizes, Graph, Partition};
use crate::guards::Guards;
use crate::homomorphism::contains_clique;

/// Uniform integer in `0..bound` by rejection sampling. `bound` must be positive.
pub fn below(rng: &mut impl RngCore, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    let rem = (u64::MAX % bound + 1) % bound;
    let limit = u64::MAX - rem;
    loop {
        let x = rng.next_u64();
        if x <= limit {
            return x % bound;
        }
    }
}

/// A probability `num/den` with `0 <= num <= den`, `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidParameter(format!(
                "{num}/{den} is not a probability"
            )));
        }
        Ok(Ratio { num, den })
    }

    pub const ONE: Ratio = Ratio { num: 1, den: 1 };
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn sample(self, rng: &mut impl RngCore) -> bool {
        below(rng, self.den) < self.num
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("probability {s:?} is not num/den"));
        match s.split_once('/') {
            Some((a, b)) => {
                Ratio::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
            }
            None => Ratio::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

/// `T_{n,p}` minus `k` distinct edges chosen uniformly, so `t = k` exactly.
///
/// The removed edges are the first `k` positions of a partial Fisher–Yates
/// shuffle of the lexicographically ordered edge list.
pub fn perturbed_turan(n: usize, p: usize, k: u64, seed: u64) -> Result<Graph> {
    let (mut g, _) = turan_graph(n, p)?;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len() as u64;
    if k > m {
        return Err(Error::InvalidParameter(format!(
            "cannot remove {k} edges from T_{{{n},{p}}} with {m} edges"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    for i in 0..k {
        let j = i + below(&mut rng, m - i);
        edges.swap(i as usize, j as usize);
        let (u, v) = edges[i as usize];
        g.remove_edge(u, v);
    }
    Ok(g)
}

/// Each cross pair of `K(sizes)` (contiguous parts) kept independently with probability `keep`.
pub fn sub_multipartite(sizes: &[usize], keep: Ratio, seed: u64) -> Graph {
    let labels = Partition::from_sizes(sizes).labels();
    let n = labels.len();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if labels[u] != labels[v] && keep.sample(&mut rng) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// `G(n, prob)` with every `K_{p+1}` destroyed: while a clique is found, the
/// smallest pair of the lexicographically first `(p+1)`-clique is deleted.
pub fn clique_broken_gnp(n: usize, p: usize, prob: Ratio, seed: u64) -> Result<Graph> {
    clique_broken_gnp_with(n, p, prob, seed, &Guards::default())
}

pub fn clique_broken_gnp_with(
    n: usize,
    p: usize,
    prob: Ratio,
    seed: u64,
    guards: &Guards,
) -> Result<Graph> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "number of parts p must be >= 1".into(),
        ));
    }
    guards.check_clique(n)?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if prob.sample(&mut rng) {
                g.insert_edge(u, v);
            }
        }
    }
    if p < n {
        while let Some(witness) = contains_clique(&g, p + 1) {
            g.remove_edge(witness[0], witness[1]);
        }
    }
    Ok(g)
}

/// One reproducible generator invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    PerturbedTuran {
        n: usize,
        p: usize,
        k: u64,
        seed: u64,
    },
    SubMultipartite {
        sizes: Vec<usize>,
        keep: Ratio,
        seed: u64,
    },
    CliqueBrokenGnp {
        n: usize,
        p: usize,
        prob: Ratio,
        seed: u64,
    },
}

impl GenSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            GenSpec::PerturbedTuran { .. } => "perturbed_turan",
            GenSpec::SubMultipartite { .. } => "sub_multipartite",
            GenSpec::CliqueBrokenGnp { .. } => "clique_broken_gnp",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            GenSpec::PerturbedTuran { n, .. } | GenSpec::CliqueBrokenGnp { n, .. } => *n,
            GenSpec::SubMultipartite { sizes, .. } => sizes.iter().sum(),
        }
    }

    /// Number of parts; the output is `K_{p+1}`-free.
    pub fn p(&self) -> usize {
        match self {
            GenSpec::PerturbedTuran { p, .. } | GenSpec::CliqueBrokenGnp { p, .. } => *p,
            GenSpec::SubMultipartite { sizes, .. } => sizes.len(),
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            GenSpec::PerturbedTuran { seed, .. }
            | GenSpec::SubMultipartite { seed, .. }
            | GenSpec::CliqueBrokenGnp { seed, .. } => *seed,
        }
    }

    pub fn with_seed(mut self, new_seed: u64) -> Self {
        match &mut self {
            GenSpec::PerturbedTuran { seed, .. }
            | GenSpec::SubMultipartite { seed, .. }
            | GenSpec::CliqueBrokenGnp { seed, .. } => *seed = new_seed,
        }
        self
    }

    pub fn generate(&self) -> Result<Graph> {
        self.generate_with(&Guards::default())
    }

    pub fn generate_with(&self, guards: &Guards) -> Result<Graph> {
        match self {
            GenSpec::PerturbedTuran { n, p, k, seed } => perturbed_turan(*n, *p, *k, *seed),
            GenSpec::SubMultipartite { sizes, keep, seed } => {
                Ok(sub_multipartite(sizes, *keep, *seed))
            }
            GenSpec::CliqueBrokenGnp { n, p, prob, seed } => {
                clique_broken_gnp_with(*n, *p, *prob, *seed, guards)
            }
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::PerturbedTuran { n, p, k, seed } => {
                write!(f, "perturbed_turan:{n}:{p}:{k}:{seed}")
            }
            GenSpec::SubMultipartite { sizes, keep, seed } => {
                let n: usize = sizes.iter().sum();
                let p = sizes.len();
                if turan_part_sizes(n, p).ok().as_ref() == Some(sizes) {
                    write!(f, "sub_multipartite:{n}:{p}:{keep}:{seed}")
                } else {
                    let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
                    write!(f, "sub_multipartite:{}:{p}:{keep}:{seed}", list.join(","))
                }
            }
            GenSpec::CliqueBrokenGnp { n, p, prob, seed } => {
                write!(f, "clique_broken_gnp:{n}:{p}:{prob}:{seed}")
            }
        }
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.trim().split(':').collect();
        let bad = |what: &str| Error::InvalidParameter(format!("generator spec {line:?}: {what}"));
        let [kind, n_field, p_field, param, seed] = fields[..] else {
            return Err(bad("expected kind:n:p:param:seed"));
        };
        let int = |s: &str, what: &str| s.parse::<usize>().map_err(|_| bad(what));
        let p = int(p_field, "p is not an integer")?;
        if p == 0 {
            return Err(bad("p must be >= 1"));
        }
        let seed: u64 = seed
            .parse()
            .map_err(|_| bad("seed is not a 64-bit integer"))?;
        match kind {
            "perturbed_turan" => Ok(GenSpec::PerturbedTuran {
                n: int(n_field, "n is not an integer")?,
                p,
                k: param.parse().map_err(|_| bad("k is not an integer"))?,
                seed,
            }),
            "sub_multipartite" => {
                let sizes = if n_field.contains(',') {
                    let sizes = n_field
                        .split(',')
                        .map(|s| int(s, "part size is not an integer"))
                        .collect::<Result<Vec<_>>>()?;
                    if sizes.len() != p {
                        return Err(bad("number of part sizes differs from p"));
                    }
                    sizes
                } else {
                    turan_part_sizes(int(n_field, "n is not an integer")?, p)?
                };
                Ok(GenSpec::SubMultipartite {
                    sizes,
                    keep: param.parse()?,
                    seed,
                })
            }
            "clique_broken_gnp" => Ok(GenSpec::CliqueBrokenGnp {
                n: int(n_field, "n is not an integer")?,
                p,
                prob: param.parse()?,
                seed,
            }),
            other => Err(bad(&format!("unknown kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_multipartite, turan_edge_count};

    #[test]
    fn splitmix_reference_stream() {
        // First outputs of SplitMix64 seeded with 1234567 (reference C implementation).
        let mut rng = SplitMix64::seed_from_u64(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = SplitMix64::seed_from_u64(3);
        for bound in [1u64, 2, 3, 7, 1 << 40, u64::MAX] {
            for _ in 0..100 {
                assert!(below(&mut rng, bound) < bound);
            }
        }
    }

    #[test]
    fn perturbed_turan_examples() {
        let g = perturbed_turan(10, 2, 0, 99).unwrap();
        assert_eq!(g, turan_graph(10, 2).unwrap().0);
        assert_eq!(g.edge_count(), 25);

        let g = perturbed_turan(8, 2, 3, 1).unwrap();
        assert_eq!(g.edge_count(), 13);
        assert_eq!(contains_clique(&g, 3), None);

        assert_eq!(perturbed_turan(6, 3, 12, 5).unwrap().edge_count(), 0);
        assert!(perturbed_turan(6, 3, 13, 5).is_err());
        assert_eq!(
            perturbed_turan(12, 3, 7, 42).unwrap(),
            perturbed_turan(12, 3, 7, 42).unwrap()
        );
        assert_eq!(
            perturbed_turan(20, 4, 5, 8).unwrap().edge_count(),
            turan_edge_count(20, 4).unwrap() - 5
        );
    }

    #[test]
    fn sub_multipartite_examples() {
        let full = sub_multipartite(&[3, 2, 2], Ratio::ONE, 4);
        assert_eq!(
            full,
            complete_multipartite(&Partition::from_sizes(&[3, 2, 2]))
        );
        assert_eq!(sub_multipartite(&[3, 2, 2], Ratio::ZERO, 4).edge_count(), 0);
        let star = sub_multipartite(&[5, 1], Ratio::ONE, 0);
        assert_eq!(star.edge_count(), 5);
        assert_eq!(star.degree(5).unwrap(), 5);
        assert_eq!(contains_clique(&star, 3), None);
    }

    #[test]
    fn clique_broken_gnp_examples() {
        let g = clique_broken_gnp(9, 2, Ratio::ZERO, 1).unwrap();
        assert_eq!(g, Graph::empty(9));

        let r = Ratio::new(1, 2).unwrap();
        let raw = clique_broken_gnp(4, 4, r, 11).unwrap();
        let same = clique_broken_gnp(4, 7, r, 11).unwrap();
        assert_eq!(raw, same);

        let g = clique_broken_gnp(5, 2, Ratio::ONE, 0).unwrap();
        assert_eq!(contains_clique(&g, 3), None);
        // K_5 loses 01, 02, 03, 12, 13, 23 in that order, leaving the star at 4
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 4), (1, 4), (2, 4), (3, 4)]
        );

        let small = Guards {
            clique_max_n: 8,
            ..Guards::default()
        };
        assert!(clique_broken_gnp_with(9, 2, r, 0, &small).is_err());
    }

    #[test]
    fn spec_lines() {
        let spec: GenSpec = "perturbed_turan:5:2:0:0".parse().unwrap();
        assert_eq!(
            spec,
            GenSpec::PerturbedTuran {
                n: 5,
                p: 2,
                k: 0,
                seed: 0
            }
        );
        assert_eq!(spec.to_string(), "perturbed_turan:5:2:0:0");

        let spec: GenSpec = "sub_multipartite:5,1:2:1/1:3".parse().unwrap();
        assert_eq!(spec.generate().unwrap().edge_count(), 5);
        assert_eq!(spec.to_string(), "sub_multipartite:5,1:2:1/1:3");

        let spec: GenSpec = "sub_multipartite:7:3:1/2:3".parse().unwrap();
        assert_eq!(
            spec,
            GenSpec::SubMultipartite {
                sizes: vec![3, 2, 2],
                keep: Ratio::new(1, 2).unwrap(),
                seed: 3
            }
        );
        assert_eq!(spec.to_string(), "sub_multipartite:7:3:1/2:3");

        let spec: GenSpec = "clique_broken_gnp:10:2:3/10:77".parse().unwrap();
        assert_eq!(spec.to_string(), "clique_broken_gnp:10:2:3/10:77");

        for bad in [
            "",
            "perturbed_turan:5:2:0",
            "unknown:5:2:0:0",
            "perturbed_turan:5:0:0:0",
            "sub_multipartite:5,1:3:1:0",
            "clique_broken_gnp:5:2:3/2:0",
            "clique_broken_gnp:5:2:1/0:0",
        ] {
            assert!(bad.parse::<GenSpec>().is_err(), "{bad:?}");
        }
    }
}

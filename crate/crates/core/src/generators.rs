//! Seeded generators for the experimental and example digraphs.
//!
//! Randomness comes from [`SplitMix64`], a 64-bit state-transition generator
//! with fixed constants:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! A uniform draw in `[0, 1)` is the top 53 bits of one output divided by
//! 2^53. Both steps are integer-exact, so a seed yields the same digraph on
//! every platform.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::persistence::WeightedDigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        Self { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform integer in `0..bound` (rejection sampling, no modulo bias).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }
}

/// Erdős–Rényi digraph with uniform `[0, 1)` edge weights.
///
/// Ordered pairs `(u, v)`, `u != v`, are visited row-major. Each visit makes
/// one presence draw (`uniform() < p`) and, if present, one weight draw.
pub fn erdos_renyi_weighted(n: usize, p: f64, seed: Seed) -> Result<WeightedDigraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if rng.uniform() < p {
                edges.push(((u, v), rng.uniform()));
            }
        }
    }
    WeightedDigraph::new(n, &edges)
}

/// Open reciprocal chain `0 <-> 1 <-> ... <-> n-1`. For each `i` the weight
/// of `(i, i+1)` is drawn before the weight of `(i+1, i)`.
pub fn necklace_weighted(n: usize, seed: Seed) -> Result<WeightedDigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("necklace needs n >= 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(2 * (n - 1));
    for i in 0..n - 1 {
        edges.push(((i, i + 1), rng.uniform()));
        edges.push(((i + 1, i), rng.uniform()));
    }
    WeightedDigraph::new(n, &edges)
}

/// Coherently oriented cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn cycle_digraph(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::CycleTooSmall(n));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Digraph::new(n, &edges, false)
}

/// Linear digraph `0 -> 1 -> ... -> n-1`.
pub fn linear_digraph(n: usize) -> Digraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Digraph::new(n, &edges, false).expect("in range")
}

/// Adds an apex vertex (index `n`) with an edge from every original vertex.
pub fn cone(g: &Digraph) -> Digraph {
    let apex = g.vertex_count();
    let mut edges = g.edges().to_vec();
    edges.extend((0..apex).map(|v| (v, apex)));
    Digraph::new(apex + 1, &edges, g.allows_loops()).expect("in range")
}

/// Uniformly random DAG: a random vertex permutation fixes the order and
/// each forward pair is present with probability `p`.
pub fn random_dag(n: usize, p: f64, seed: Seed) -> Digraph {
    let mut rng = SplitMix64::new(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.uniform() < p {
                edges.push((perm[a], perm[b]));
            }
        }
    }
    Digraph::new(n, &edges, false).expect("in range")
}

/// Random digraph without weights (loop-free, row-major presence draws).
pub fn random_digraph(n: usize, p: f64, seed: Seed) -> Digraph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.uniform() < p {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, &edges, false).expect("in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{is_acyclic, strongly_connected_components, weak_components};

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0 of the reference splitmix64
        let mut rng = SplitMix64::new(Seed(0));
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = SplitMix64::new(Seed(42));
        for _ in 0..10_000 {
            let x = rng.uniform();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn er_extremes() {
        let w = erdos_renyi_weighted(6, 0.0, Seed(1)).unwrap();
        assert_eq!(w.graph().edge_count(), 0);
        let w = erdos_renyi_weighted(3, 1.0, Seed(1)).unwrap();
        assert_eq!(w.graph().edge_count(), 6);
        assert!(erdos_renyi_weighted(3, 1.5, Seed(1)).is_err());
    }

    #[test]
    fn er_concentration() {
        for seed in 0..100 {
            let w = erdos_renyi_weighted(20, 0.5, Seed(seed)).unwrap();
            let m = w.graph().edge_count();
            assert!((140..=240).contains(&m), "seed {seed}: {m} edges");
            let mean = w.weights().iter().sum::<f64>() / m as f64;
            assert!((0.4..=0.6).contains(&mean), "seed {seed}: mean {mean}");
        }
    }

    #[test]
    fn er_is_seed_deterministic() {
        let a = erdos_renyi_weighted(20, 0.5, Seed(7)).unwrap();
        let b = erdos_renyi_weighted(20, 0.5, Seed(7)).unwrap();
        assert_eq!(a, b);
        let c = erdos_renyi_weighted(20, 0.5, Seed(8)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn necklace_shape() {
        let one = necklace_weighted(1, Seed(3)).unwrap();
        assert_eq!(one.graph().vertex_count(), 1);
        assert_eq!(one.graph().edge_count(), 0);

        let five = necklace_weighted(5, Seed(3)).unwrap();
        assert_eq!(five.graph().edge_count(), 8);
        assert_eq!(weak_components(five.graph()).block_count, 1);
        for &(u, v) in five.graph().edges() {
            assert_eq!(u.abs_diff(v), 1);
        }
        let full = necklace_weighted(20, Seed(3)).unwrap();
        assert_eq!(strongly_connected_components(full.graph()).block_count, 1);
    }

    #[test]
    fn small_shapes() {
        let c3 = cone(&cycle_digraph(3).unwrap());
        assert_eq!((c3.vertex_count(), c3.edge_count()), (4, 6));
        let l1 = linear_digraph(1);
        assert_eq!((l1.vertex_count(), l1.edge_count()), (1, 0));
        assert_eq!(linear_digraph(3).edges(), &[(0, 1), (1, 2)]);
        assert_eq!(cycle_digraph(1), Err(Error::CycleTooSmall(1)));
        assert_eq!(cycle_digraph(2).unwrap().edges(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn random_dags_are_acyclic() {
        for seed in 0..50 {
            assert!(is_acyclic(&random_dag(12, 0.4, Seed(seed))).is_some());
        }
    }
}

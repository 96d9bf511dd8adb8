#![allow(dead_code)]

use hochgraph::generators::{Seed, SplitMix64};
use hochgraph::poset::ChainComplexF2;
use hochgraph::{DiagramPoint, Digraph, PersistenceDiagram, WeightedDigraph};

pub fn dg(n: usize, edges: &[(usize, usize)]) -> Digraph {
    Digraph::new(n, edges, false).unwrap()
}

pub fn square() -> Digraph {
    dg(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

pub fn square_with_diagonal() -> Digraph {
    dg(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])
}

pub fn triangle() -> Digraph {
    dg(3, &[(0, 1), (1, 2), (0, 2)])
}

/// w0 -> w3, w0 -> w1, w1 -> w2, w0 -> w2, w3 -> w1
pub fn morphism_target() -> Digraph {
    dg(4, &[(0, 3), (0, 1), (1, 2), (0, 2), (3, 1)])
}

pub fn g1() -> Digraph {
    dg(5, &[(0, 1), (0, 2), (2, 4), (1, 2), (3, 1), (3, 2), (3, 4)])
}

pub fn g2() -> Digraph {
    dg(5, &[(0, 1), (0, 2), (2, 4), (1, 2), (1, 3), (2, 3), (4, 3)])
}

pub fn sphere1() -> Digraph {
    dg(4, &[(0, 1), (0, 2), (1, 2), (2, 1), (2, 3), (1, 3)])
}

pub fn sphere2() -> Digraph {
    dg(4, &[(0, 1), (0, 2), (2, 1), (1, 2), (3, 1), (3, 2)])
}

/// Number of directed u -> v paths by explicit DFS enumeration.
pub fn paths_by_dfs(g: &Digraph, u: usize, v: usize) -> u64 {
    if u == v {
        return 1;
    }
    g.out_neighbors(u)
        .iter()
        .map(|&w| paths_by_dfs(g, w, v))
        .sum()
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Simple cycles by checking every vertex subset in every cyclic order
/// that starts at the subset minimum.
pub fn cycles_by_brute_force(g: &Digraph) -> u64 {
    let n = g.vertex_count();
    let mut count = 0;
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if members.len() == 1 {
            if g.has_edge(members[0], members[0]) {
                count += 1;
            }
            continue;
        }
        let first = members[0];
        let mut rest = members[1..].to_vec();
        loop {
            let mut order = vec![first];
            order.extend(&rest);
            let closed =
                (0..order.len()).all(|k| g.has_edge(order[k], order[(k + 1) % order.len()]));
            if closed {
                count += 1;
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
    }
    count
}

/// Ordered cliques of size `k + 1` by testing every tuple of distinct
/// vertices, in lexicographic order.
pub fn ordered_cliques_by_brute_force(g: &Digraph, k: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut tuple = Vec::new();
    fn rec(g: &Digraph, n: usize, len: usize, tuple: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if tuple.len() == len {
            let ok = (0..len).all(|a| (a + 1..len).all(|b| g.has_edge(tuple[a], tuple[b])));
            if ok {
                out.push(tuple.clone());
            }
            return;
        }
        for v in 0..n {
            if !tuple.contains(&v) {
                tuple.push(v);
                rec(g, n, len, tuple, out);
                tuple.pop();
            }
        }
    }
    rec(g, n, k + 1, &mut tuple, &mut out);
    out
}

/// Canonical form: lexicographically least sorted edge list over all
/// vertex relabellings.
pub fn canonical_form(g: &Digraph) -> (usize, Vec<(usize, usize)>) {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (n, best.unwrap_or_default())
}

fn dense_rank_f2(mut m: Vec<Vec<u8>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] == 1 {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers over F2 from dense boundary matrices built from the
/// simplex lists alone.
pub fn betti_by_dense_elimination(c: &ChainComplexF2) -> Vec<usize> {
    let top = c.simplices.len();
    let rank = |k: usize| -> usize {
        if k == 0 || k >= top {
            return 0;
        }
        let lower = &c.simplices[k - 1];
        let m: Vec<Vec<u8>> = lower
            .iter()
            .map(|f| {
                c.simplices[k]
                    .iter()
                    .map(|s| {
                        let is_facet = (0..s.len()).any(|d| {
                            let facet: Vec<usize> = s
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| i != d)
                                .map(|(_, &v)| v)
                                .collect();
                            facet == *f
                        });
                        u8::from(is_facet)
                    })
                    .collect()
            })
            .collect();
        dense_rank_f2(m)
    };
    (0..top)
        .map(|k| c.simplices[k].len() - rank(k) - rank(k + 1))
        .collect()
}

/// Bottleneck distance by trying every partial injection between the
/// expanded point lists.
pub fn bottleneck_by_exhaustion(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let expand = |d: &PersistenceDiagram| -> Vec<(f64, f64)> {
        d.points
            .iter()
            .flat_map(|p| std::iter::repeat_n((p.birth, p.death), p.multiplicity as usize))
            .collect()
    };
    let a = expand(d1);
    let b = expand(d2);
    let to_diag = |p: (f64, f64)| {
        if p.1.is_infinite() {
            f64::INFINITY
        } else {
            (p.1 - p.0) / 2.0
        }
    };
    let pair = |p: (f64, f64), q: (f64, f64)| {
        let death = match (p.1.is_infinite(), q.1.is_infinite()) {
            (true, true) => 0.0,
            (false, false) => (p.1 - q.1).abs(),
            _ => f64::INFINITY,
        };
        (p.0 - q.0).abs().max(death)
    };
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        a: &[(f64, f64)],
        b: &[(f64, f64)],
        used: &mut Vec<bool>,
        cost: f64,
        best: &mut f64,
        pair: &dyn Fn((f64, f64), (f64, f64)) -> f64,
        to_diag: &dyn Fn((f64, f64)) -> f64,
    ) {
        if cost >= *best {
            return;
        }
        if k == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(&q, _)| to_diag(q))
                .fold(cost, f64::max);
            if rest < *best {
                *best = rest;
            }
            return;
        }
        rec(
            k + 1,
            a,
            b,
            used,
            cost.max(to_diag(a[k])),
            best,
            pair,
            to_diag,
        );
        for l in 0..b.len() {
            if !used[l] {
                used[l] = true;
                rec(
                    k + 1,
                    a,
                    b,
                    used,
                    cost.max(pair(a[k], b[l])),
                    best,
                    pair,
                    to_diag,
                );
                used[l] = false;
            }
        }
    }
    // stays infinite when every assignment leaves an essential point alone
    let mut best = f64::INFINITY;
    let mut used = vec![false; b.len()];
    rec(0, &a, &b, &mut used, 0.0, &mut best, &pair, &to_diag);
    best
}

/// Random diagram with at most `max_points` points (counted with
/// multiplicity), births and deaths on a coarse grid so ties occur.
pub fn random_diagram(rng: &mut SplitMix64, max_points: u64) -> PersistenceDiagram {
    let total = rng.below(max_points + 1);
    let mut points = Vec::new();
    let mut left = total;
    while left > 0 {
        let m = 1 + rng.below(left.min(2));
        left -= m;
        let birth = rng.below(8) as f64 * 0.25;
        let death = if rng.below(4) == 0 {
            f64::INFINITY
        } else {
            birth + rng.below(8) as f64 * 0.25
        };
        points.push(DiagramPoint {
            birth,
            death,
            multiplicity: m,
        });
    }
    PersistenceDiagram::new(points).unwrap()
}

/// Random DAG with weights on a 0.01 grid (ties allowed).
pub fn random_weighted_dag(n: usize, p: f64, seed: u64) -> WeightedDigraph {
    let g = hochgraph::generators::random_dag(n, p, Seed(seed));
    let mut rng = SplitMix64::new(Seed(seed ^ 0x5eed));
    let edges: Vec<_> = g
        .edges()
        .iter()
        .map(|&e| (e, rng.below(40) as f64 * 0.01))
        .collect();
    WeightedDigraph::new(n, &edges).unwrap()
}

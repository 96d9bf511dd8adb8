//! Reachability posets of DAGs, their order complexes, and Betti numbers
//! over the two-element field.

use crate::connectivity::q_digraph;
use crate::digraph::{condensation, find_cycle, is_acyclic, Digraph};
use crate::error::{Error, Result};

/// A strict partial order on `0..element_count`, stored as one bitset of
/// strictly greater elements per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    element_count: usize,
    above: Vec<BitSet>,
}

impl Poset {
    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    /// All pairs `(x, y)` with `x < y`, sorted.
    pub fn strictly_less(&self) -> Vec<(usize, usize)> {
        (0..self.element_count)
            .flat_map(|x| self.above[x].iter().map(move |y| (x, y)))
            .collect()
    }
}

/// `x < y` iff there is a nonempty directed path from `x` to `y`.
pub fn reachability_poset(g: &Digraph) -> Result<Poset> {
    let order = is_acyclic(g).ok_or_else(|| Error::NotAcyclic {
        cycle: find_cycle(g).unwrap_or_default(),
    })?;
    let n = g.vertex_count();
    let mut above = vec![BitSet::new(n); n];
    // reverse topological order: successors are complete before v
    for &v in order.iter().rev() {
        let mut acc = BitSet::new(n);
        for &w in g.out_neighbors(v) {
            acc.insert(w);
            acc.union_with(&above[w]);
        }
        above[v] = acc;
    }
    Ok(Poset {
        element_count: n,
        above,
    })
}

/// Simplicial chain complex with F2 coefficients. `boundaries[k][c]` lists
/// the (k-1)-simplices in the boundary of k-simplex `c`.
#[derive(Debug, Clone)]
pub struct ChainComplexF2 {
    pub simplices: Vec<Vec<Vec<usize>>>,
    pub boundaries: Vec<Vec<Vec<usize>>>,
    /// True when chains longer than the dimension cap exist and were not
    /// enumerated; the top boundary map is then treated as zero.
    pub truncated: bool,
}

impl ChainComplexF2 {
    pub fn dim_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    /// Checks `∂∘∂ = 0` over F2.
    pub fn boundary_squared_is_zero(&self) -> bool {
        for k in 2..self.boundaries.len() {
            for col in &self.boundaries[k] {
                let mut parity = vec![false; self.count(k - 2)];
                for &face in col {
                    for &ff in &self.boundaries[k - 1][face] {
                        parity[ff] ^= true;
                    }
                }
                if parity.iter().any(|&p| p) {
                    return false;
                }
            }
        }
        true
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if k % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }
}

/// Order complex (nerve) of `p`: k-simplices are chains `x0 < ... < xk`,
/// enumerated up to `max_dim`.
pub fn order_complex(p: &Poset, max_dim: usize) -> ChainComplexF2 {
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_dim + 1];
    let mut truncated = false;
    let mut chain = Vec::new();
    for x in 0..p.element_count() {
        chain.push(x);
        grow_chains(p, max_dim, &mut chain, &mut simplices, &mut truncated);
        chain.pop();
    }
    while simplices.len() > 1 && simplices.last().is_some_and(Vec::is_empty) {
        simplices.pop();
    }

    // DFS from ascending roots with ascending extensions lists each
    // dimension in lexicographic order, so facets can be binary searched
    let mut boundaries = vec![vec![Vec::new(); simplices[0].len()]];
    for k in 1..simplices.len() {
        let cols = simplices[k]
            .iter()
            .map(|s| {
                let mut col: Vec<usize> = (0..s.len())
                    .map(|drop| {
                        let facet: Vec<usize> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        simplices[k - 1]
                            .binary_search(&facet)
                            .expect("chains are closed under facets")
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        boundaries.push(cols);
    }
    ChainComplexF2 {
        simplices,
        boundaries,
        truncated,
    }
}

fn grow_chains(
    p: &Poset,
    max_dim: usize,
    chain: &mut Vec<usize>,
    out: &mut [Vec<Vec<usize>>],
    truncated: &mut bool,
) {
    out[chain.len() - 1].push(chain.clone());
    let last = *chain.last().unwrap();
    if chain.len() > max_dim {
        if p.above[last].iter().next().is_some() {
            *truncated = true;
        }
        return;
    }
    for y in p.above[last].iter() {
        chain.push(y);
        grow_chains(p, max_dim, chain, out, truncated);
        chain.pop();
    }
}

/// Rank of the boundary map from degree `k` to `k - 1` over F2.
pub fn boundary_rank(c: &ChainComplexF2, k: usize) -> usize {
    if k == 0 || k >= c.boundaries.len() {
        return 0;
    }
    rank_f2(c.count(k - 1), &c.boundaries[k])
}

/// Column rank of a sparse F2 matrix by elimination on bit-packed columns.
pub fn rank_f2(rows: usize, columns: &[Vec<usize>]) -> usize {
    // pivot row -> reduced column whose highest set bit is that row
    let mut pivots: Vec<Option<BitSet>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut v = BitSet::new(rows);
        for &r in col {
            v.toggle(r);
        }
        while let Some(top) = v.highest() {
            match &pivots[top] {
                Some(p) => v.xor_with(p),
                None => {
                    pivots[top] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Betti numbers `β_0..=β_max_deg` over F2.
pub fn betti_f2(c: &ChainComplexF2, max_deg: usize) -> Vec<usize> {
    (0..=max_deg)
        .map(|k| c.count(k) - boundary_rank(c, k) - boundary_rank(c, k + 1))
        .collect()
}

/// Betti numbers of the order complex of the condensed
/// (q, d̂_i, d̂_j)-preorder, in degrees `0..=top` of the full order complex.
pub fn q_homotopy_betti(
    g: &Digraph,
    q: usize,
    i: usize,
    j: usize,
    max_dim: usize,
) -> Result<(Vec<usize>, ChainComplexF2)> {
    let conn = q_digraph(g, q, i, j, max_dim)?;
    let (quotient, _) = condensation(&conn.graph);
    let poset = reachability_poset(&quotient)?;
    let complex = order_complex(&poset, poset.element_count().max(1));
    let top = complex.dim_count().saturating_sub(1);
    Ok((betti_f2(&complex, top), complex))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn xor_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn highest(&self) -> Option<usize> {
        self.words
            .iter()
            .rposition(|&w| w != 0)
            .map(|k| k * 64 + 63 - self.words[k].leading_zeros() as usize)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * 64 + bit)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(n: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, edges, false).unwrap()
    }

    // simplicial complex given by its simplices (sorted vertex lists)
    fn complex_from(simplices: &[&[usize]]) -> ChainComplexF2 {
        let top = simplices.iter().map(|s| s.len()).max().unwrap() - 1;
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        for s in simplices {
            by_dim[s.len() - 1].push(s.to_vec());
        }
        for l in &mut by_dim {
            l.sort();
        }
        let mut boundaries = vec![vec![Vec::new(); by_dim[0].len()]];
        for k in 1..=top {
            boundaries.push(
                by_dim[k]
                    .iter()
                    .map(|s| {
                        (0..s.len())
                            .map(|d| {
                                let mut f = s.clone();
                                f.remove(d);
                                by_dim[k - 1].binary_search(&f).unwrap()
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        ChainComplexF2 {
            simplices: by_dim,
            boundaries,
            truncated: false,
        }
    }

    #[test]
    fn reachability_examples() {
        let chain = reachability_poset(&dg(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(chain.strictly_less(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(reachability_poset(&Digraph::edgeless(4))
            .unwrap()
            .strictly_less()
            .is_empty());
        let sq = reachability_poset(&dg(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])).unwrap();
        assert_eq!(
            sq.strictly_less(),
            vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
        );
        assert!(matches!(
            reachability_poset(&dg(2, &[(0, 1), (1, 0)])),
            Err(Error::NotAcyclic { .. })
        ));
    }

    #[test]
    fn order_complex_examples() {
        let chain = reachability_poset(&dg(3, &[(0, 1), (1, 2)])).unwrap();
        let c = order_complex(&chain, 5);
        assert_eq!((c.count(0), c.count(1), c.count(2)), (3, 3, 1));
        assert!(!c.truncated);
        assert_eq!(betti_f2(&c, 2), vec![1, 0, 0]);

        let anti = reachability_poset(&Digraph::edgeless(4)).unwrap();
        let c = order_complex(&anti, 3);
        assert_eq!(c.dim_count(), 1);
        assert_eq!(c.count(0), 4);

        let c = order_complex(&chain, 1);
        assert!(c.truncated);
        assert_eq!(c.count(2), 0);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_f2(&complex_from(&[&[0]]), 2), vec![1, 0, 0]);
        let hollow = complex_from(&[&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(betti_f2(&hollow, 1), vec![1, 1]);
        let filled = complex_from(&[&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]]);
        assert_eq!(betti_f2(&filled, 2), vec![1, 0, 0]);
        assert!(filled.boundary_squared_is_zero());
    }

    #[test]
    fn rank_small() {
        // columns {0,1}, {1,2}, {0,2} are dependent over F2
        assert_eq!(rank_f2(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]), 2);
        assert_eq!(rank_f2(3, &[vec![0], vec![1], vec![2]]), 3);
        assert_eq!(rank_f2(0, &[]), 0);
    }

    #[test]
    fn bitset_ops() {
        let mut b = BitSet::new(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(b.highest(), Some(129));
        b.toggle(129);
        assert_eq!(b.highest(), Some(64));
        assert!(b.contains(63) && !b.contains(62));
    }
}

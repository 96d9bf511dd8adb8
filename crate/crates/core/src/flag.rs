//! Directed flag complexes: ordered cliques as ordered simplices.

use std::fmt;

use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// An ordered simplex `(v0, ..., vk)` of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedSimplex(Vec<usize>);

impl OrderedSimplex {
    /// Checks that the tuple is an ordered clique of `g`: distinct vertices
    /// with an edge `(v_i, v_j)` for every `i < j`.
    pub fn new(g: &Digraph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("empty simplex".into()));
        }
        for (i, &a) in vertices.iter().enumerate() {
            if a >= g.vertex_count() {
                return Err(Error::OutOfRangeVertex {
                    vertex: a,
                    vertex_count: g.vertex_count(),
                });
            }
            for &b in &vertices[i + 1..] {
                if a == b || !g.has_edge(a, b) {
                    return Err(Error::InvalidParameter(format!(
                        "{vertices:?} is not an ordered clique"
                    )));
                }
            }
        }
        Ok(Self(vertices))
    }

    /// Wraps a tuple without clique checks.
    pub fn from_vertices(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The face `d_i`: drop the vertex at position `i`.
    pub fn face(&self, i: usize) -> Result<OrderedSimplex> {
        if self.dim() == 0 {
            return Err(Error::FaceOfVertex);
        }
        if i > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(self.drop_at(i))
    }

    /// The extended face: drop the vertex at position `min(i, dim)`.
    pub fn extended_face(&self, i: usize) -> Result<OrderedSimplex> {
        if self.dim() == 0 {
            return Err(Error::FaceOfVertex);
        }
        Ok(self.drop_at(i.min(self.dim())))
    }

    fn drop_at(&self, i: usize) -> OrderedSimplex {
        let mut v = Vec::with_capacity(self.0.len() - 1);
        v.extend_from_slice(&self.0[..i]);
        v.extend_from_slice(&self.0[i + 1..]);
        OrderedSimplex(v)
    }

    /// True if `self` is a (not necessarily proper) face of `other`, i.e. an
    /// order-preserving sub-tuple.
    pub fn is_face_of(&self, other: &OrderedSimplex) -> bool {
        is_subsequence(&self.0, &other.0)
    }

    /// All sub-tuples with exactly `len` vertices, in lexicographic order of
    /// the chosen positions.
    pub fn subfaces_with_len(&self, len: usize) -> Vec<OrderedSimplex> {
        let mut out = Vec::new();
        if len == 0 || len > self.0.len() {
            return out;
        }
        let mut pick = Vec::with_capacity(len);
        subsets_rec(&self.0, len, 0, &mut pick, &mut out);
        out
    }
}

fn subsets_rec(
    src: &[usize],
    len: usize,
    start: usize,
    pick: &mut Vec<usize>,
    out: &mut Vec<OrderedSimplex>,
) {
    if pick.len() == len {
        out.push(OrderedSimplex(pick.clone()));
        return;
    }
    let remaining = len - pick.len();
    for i in start..=src.len() - remaining {
        pick.push(src[i]);
        subsets_rec(src, len, i + 1, pick, out);
        pick.pop();
    }
}

pub(crate) fn is_subsequence(needle: &[usize], hay: &[usize]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|x| it.any(|y| y == x))
}

impl fmt::Display for OrderedSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The directed flag complex of a digraph, truncated at `max_dim`.
#[derive(Debug, Clone)]
pub struct OrderedSimplicialComplex {
    source: Digraph,
    simplices_by_dim: Vec<Vec<OrderedSimplex>>,
    max_dim: usize,
}

impl OrderedSimplicialComplex {
    pub fn source(&self) -> &Digraph {
        &self.source
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Simplices of dimension `d`, sorted lexicographically. Empty above the
    /// cap or above the clique number.
    pub fn simplices(&self, d: usize) -> &[OrderedSimplex] {
        self.simplices_by_dim
            .get(d)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Highest dimension with at least one simplex.
    pub fn top_dim(&self) -> Option<usize> {
        self.simplices_by_dim.iter().rposition(|s| !s.is_empty())
    }

    /// Index of `s` within [`Self::simplices`] of its dimension.
    pub fn index_of(&self, s: &OrderedSimplex) -> Option<usize> {
        self.simplices(s.dim()).binary_search(s).ok()
    }

    pub fn len(&self) -> usize {
        self.simplices_by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &OrderedSimplex> {
        self.simplices_by_dim.iter().flatten()
    }

    /// Debug dump: one line `dim v0 v1 ... vk` per simplex.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in self.iter() {
            out.push_str(&s.dim().to_string());
            for v in s.vertices() {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Enumerates every ordered clique of `g` with at most `max_dim + 1`
/// vertices. Cliques are grown depth-first by intersecting sorted
/// out-neighbourhoods, one root vertex per task.
pub fn directed_flag_complex(g: &Digraph, max_dim: usize) -> Result<OrderedSimplicialComplex> {
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let per_root: Vec<Vec<Vec<OrderedSimplex>>> = (0..g.vertex_count())
        .into_par_iter()
        .map(|root| {
            let mut found = vec![Vec::new(); max_dim + 1];
            let mut clique = vec![root];
            extend_clique(g, max_dim, &mut clique, g.out_neighbors(root), &mut found);
            found
        })
        .collect();

    let mut simplices_by_dim: Vec<Vec<OrderedSimplex>> = vec![Vec::new(); max_dim + 1];
    for found in per_root {
        for (d, list) in found.into_iter().enumerate() {
            simplices_by_dim[d].extend(list);
        }
    }
    for list in &mut simplices_by_dim {
        list.sort_unstable();
    }
    Ok(OrderedSimplicialComplex {
        source: g.clone(),
        simplices_by_dim,
        max_dim,
    })
}

fn extend_clique(
    g: &Digraph,
    max_dim: usize,
    clique: &mut Vec<usize>,
    candidates: &[usize],
    found: &mut [Vec<OrderedSimplex>],
) {
    found[clique.len() - 1].push(OrderedSimplex(clique.clone()));
    if clique.len() > max_dim {
        return;
    }
    for &w in candidates {
        let next = intersect_sorted(candidates, g.out_neighbors(w));
        clique.push(w);
        extend_clique(g, max_dim, clique, &next, found);
        clique.pop();
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

//! Connectivity digraphs built from the directed flag complex: n-path
//! digraphs (strict and relaxed), (q, d̂_i, d̂_j)-digraphs and q-graphs.

use std::fmt;

use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::flag::{directed_flag_complex, OrderedSimplex, OrderedSimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityKind {
    NPath {
        n: usize,
    },
    NPathRelaxed {
        n: usize,
    },
    QDigraph {
        q: usize,
        i: usize,
        j: usize,
        max_dim: usize,
    },
    QGraph {
        q: usize,
        max_dim: usize,
    },
}

impl fmt::Display for ConnectivityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConnectivityKind::NPath { n } => write!(f, "npath n={n}"),
            ConnectivityKind::NPathRelaxed { n } => write!(f, "npath-relaxed n={n}"),
            ConnectivityKind::QDigraph { q, i, j, max_dim } => {
                write!(f, "qdigraph q={q} i={i} j={j} max_dim={max_dim}")
            }
            ConnectivityKind::QGraph { q, max_dim } => write!(f, "qgraph q={q} max_dim={max_dim}"),
        }
    }
}

/// A digraph whose vertices stand for simplices of a directed flag complex.
#[derive(Debug, Clone)]
pub struct ConnectivityDigraph {
    pub graph: Digraph,
    pub vertex_simplices: Vec<OrderedSimplex>,
    pub kind: ConnectivityKind,
}

impl ConnectivityDigraph {
    pub fn vertex_of(&self, s: &OrderedSimplex) -> Option<usize> {
        // vertex_simplices is sorted by (dim, tuple)
        self.vertex_simplices
            .binary_search_by(|x| (x.dim(), x.vertices()).cmp(&(s.dim(), s.vertices())))
            .ok()
    }

    /// Induced subdigraph on the vertices whose simplex has dimension `dim`.
    pub fn restrict_to_dim(&self, dim: usize) -> ConnectivityDigraph {
        let keep: Vec<usize> = (0..self.vertex_simplices.len())
            .filter(|&v| self.vertex_simplices[v].dim() == dim)
            .collect();
        let mut new_id = vec![usize::MAX; self.vertex_simplices.len()];
        for (k, &v) in keep.iter().enumerate() {
            new_id[v] = k;
        }
        let edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        ConnectivityDigraph {
            graph: Digraph::new(keep.len(), &edges, self.graph.allows_loops())
                .expect("induced edges are in range"),
            vertex_simplices: keep
                .iter()
                .map(|&v| self.vertex_simplices[v].clone())
                .collect(),
            kind: self.kind,
        }
    }

    /// Text form: a `vertices <n>` header, one `(v0 ... vk)` line per
    /// vertex, then one `(..) (..)` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# {}\nvertices {}\n",
            self.kind,
            self.vertex_simplices.len()
        );
        for s in &self.vertex_simplices {
            out.push_str(&format!("{s}\n"));
        }
        for &(u, v) in self.graph.edges() {
            out.push_str(&format!(
                "{} {}\n",
                self.vertex_simplices[u], self.vertex_simplices[v]
            ));
        }
        out
    }
}

/// The n-path digraph. Vertices are the n-simplices of the directed flag
/// complex; `(σ, τ)` is an edge iff `d_i(σ) = d_j(τ)` for some `i < j`
/// (`i <= j` and `σ != τ` when `relaxed`). For `n = 0` this is `g` itself.
pub fn n_path_digraph(g: &Digraph, n: usize, relaxed: bool) -> Result<ConnectivityDigraph> {
    let kind = if relaxed {
        ConnectivityKind::NPathRelaxed { n }
    } else {
        ConnectivityKind::NPath { n }
    };
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    if n == 0 {
        return Ok(ConnectivityDigraph {
            graph: g.clone(),
            vertex_simplices: (0..g.vertex_count())
                .map(|v| OrderedSimplex::from_vertices(vec![v]))
                .collect(),
            kind,
        });
    }
    let complex = directed_flag_complex(g, n)?;
    let top = complex.simplices(n);
    let faces = complex.simplices(n - 1);

    // bucket (simplex, face position) by the shared (n-1)-face
    let mut buckets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.len()];
    for (a, sigma) in top.iter().enumerate() {
        for i in 0..=n {
            let face = sigma.face(i).expect("n >= 1");
            let f = faces
                .binary_search(&face)
                .expect("flag complex is face-closed");
            buckets[f].push((a, i));
        }
    }

    let mut edges: Vec<(usize, usize)> = buckets
        .par_iter()
        .flat_map_iter(|bucket| {
            let mut local = Vec::new();
            for &(a, i) in bucket {
                for &(b, j) in bucket {
                    let linked = if relaxed { i <= j && a != b } else { i < j };
                    if linked {
                        local.push((a, b));
                    }
                }
            }
            local
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    debug_assert!(relaxed || edges.iter().all(|(a, b)| a != b));

    Ok(ConnectivityDigraph {
        graph: Digraph::from_sorted_edges(top.len(), edges, false),
        vertex_simplices: top.to_vec(),
        kind,
    })
}

/// Vertices of dimension `q..=max_dim`, ordered by dimension then tuple,
/// with a lookup from a simplex to its vertex id.
struct SimplexIndex<'a> {
    complex: &'a OrderedSimplicialComplex,
    q: usize,
    offsets: Vec<usize>,
}

impl<'a> SimplexIndex<'a> {
    fn new(complex: &'a OrderedSimplicialComplex, q: usize, max_dim: usize) -> Self {
        let mut offsets = vec![0];
        for d in q..=max_dim {
            offsets.push(offsets.last().unwrap() + complex.simplices(d).len());
        }
        Self {
            complex,
            q,
            offsets,
        }
    }

    fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn simplices(&self) -> Vec<OrderedSimplex> {
        (0..self.offsets.len() - 1)
            .flat_map(|k| self.complex.simplices(self.q + k).iter().cloned())
            .collect()
    }

    fn id(&self, s: &OrderedSimplex) -> usize {
        let local = self
            .complex
            .index_of(s)
            .expect("faces of cliques are cliques");
        self.offsets[s.dim() - self.q] + local
    }

    fn iter(&self) -> impl Iterator<Item = (usize, &OrderedSimplex)> {
        (0..self.offsets.len() - 1).flat_map(move |k| {
            let base = self.offsets[k];
            self.complex
                .simplices(self.q + k)
                .iter()
                .enumerate()
                .map(move |(idx, s)| (base + idx, s))
        })
    }
}

/// The (q, d̂_i, d̂_j)-digraph truncated at `max_dim`. `(σ, τ)`, `σ != τ`, is
/// an edge iff σ is a proper face of τ, or some q-simplex is a face of both
/// `d̂_i(σ)` and `d̂_j(τ)`. Reflexive loops are not drawn.
pub fn q_digraph(
    g: &Digraph,
    q: usize,
    i: usize,
    j: usize,
    max_dim: usize,
) -> Result<ConnectivityDigraph> {
    if max_dim < q {
        return Err(Error::InvalidParameter(format!(
            "max_dim {max_dim} must be at least q = {q}"
        )));
    }
    let complex = directed_flag_complex(g, max_dim)?;
    let index = SimplexIndex::new(&complex, q, max_dim);
    let q_simplices = complex.simplices(q);

    let mut edges = proper_inclusion_edges(&index);

    // witness buckets per q-simplex α: σ with α ↪ d̂_i(σ), τ with α ↪ d̂_j(τ)
    let mut left: Vec<Vec<usize>> = vec![Vec::new(); q_simplices.len()];
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); q_simplices.len()];
    for (id, s) in index.iter() {
        if s.dim() < q + 1 {
            continue;
        }
        for (pos, bucket) in [(i, &mut left), (j, &mut right)] {
            let face = s.extended_face(pos).expect("dim >= 1");
            for alpha in face.subfaces_with_len(q + 1) {
                let a = q_simplices.binary_search(&alpha).expect("face-closed");
                bucket[a].push(id);
            }
        }
    }
    let joined: Vec<(usize, usize)> = left
        .par_iter()
        .zip(right.par_iter())
        .flat_map_iter(|(ls, rs)| {
            let mut local = Vec::with_capacity(ls.len() * rs.len());
            for &a in ls {
                for &b in rs {
                    if a != b {
                        local.push((a, b));
                    }
                }
            }
            local
        })
        .collect();
    edges.extend(joined);
    edges.sort_unstable();
    edges.dedup();

    Ok(ConnectivityDigraph {
        graph: Digraph::from_sorted_edges(index.len(), edges, false),
        vertex_simplices: index.simplices(),
        kind: ConnectivityKind::QDigraph { q, i, j, max_dim },
    })
}

fn proper_inclusion_edges(index: &SimplexIndex<'_>) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (tau_id, tau) in index.iter() {
        for len in index.q + 1..=tau.dim() {
            for sigma in tau.subfaces_with_len(len) {
                edges.push((index.id(&sigma), tau_id));
            }
        }
    }
    edges
}

/// The q-graph truncated at `max_dim`: simplices of dimension `q..=max_dim`
/// joined when they share a q-face. Undirected edges are stored as
/// reciprocal pairs.
pub fn q_graph(g: &Digraph, q: usize, max_dim: usize) -> Result<ConnectivityDigraph> {
    if max_dim < q {
        return Err(Error::InvalidParameter(format!(
            "max_dim {max_dim} must be at least q = {q}"
        )));
    }
    let complex = directed_flag_complex(g, max_dim)?;
    let index = SimplexIndex::new(&complex, q, max_dim);
    let q_simplices = complex.simplices(q);

    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); q_simplices.len()];
    for (id, s) in index.iter() {
        for alpha in s.subfaces_with_len(q + 1) {
            let a = q_simplices.binary_search(&alpha).expect("face-closed");
            buckets[a].push(id);
        }
    }
    let mut edges: Vec<(usize, usize)> = buckets
        .par_iter()
        .flat_map_iter(|b| {
            let mut local = Vec::new();
            for &x in b {
                for &y in b {
                    if x != y {
                        local.push((x, y));
                    }
                }
            }
            local
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();

    Ok(ConnectivityDigraph {
        graph: Digraph::from_sorted_edges(index.len(), edges, false),
        vertex_simplices: index.simplices(),
        kind: ConnectivityKind::QGraph { q, max_dim },
    })
}

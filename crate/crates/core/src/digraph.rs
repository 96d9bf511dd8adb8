//! Finite directed graphs on dense vertex indices.
//!
//! A [`Digraph`] stores its edge set in canonical sorted order together with
//! materialized out- and in-adjacency lists. Everything downstream (flag
//! complexes, connectivity digraphs, path counting) works on vertex indices;
//! labels are carried along for display only.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite simple digraph. Reciprocal pairs `(u, v)`, `(v, u)` are allowed;
/// self-loops only when `allow_loops` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    // index into `edges` of the first edge leaving each vertex
    edge_offset: Vec<usize>,
    allow_loops: bool,
    labels: Option<Vec<String>>,
}

impl Digraph {
    /// Builds a digraph from an edge list. Duplicate edges collapse; the
    /// stored edge set is sorted lexicographically.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)], allow_loops: bool) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::OutOfRangeVertex {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v && !allow_loops {
                return Err(Error::SelfLoopForbidden(u));
            }
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        sorted.dedup();
        Ok(Self::from_sorted_edges(vertex_count, sorted, allow_loops))
    }

    /// Digraph with `vertex_count` vertices and no edges.
    pub fn edgeless(vertex_count: usize) -> Self {
        Self::from_sorted_edges(vertex_count, Vec::new(), false)
    }

    // `edges` must already be sorted, deduplicated and in range.
    pub(crate) fn from_sorted_edges(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        allow_loops: bool,
    ) -> Self {
        let mut out_adj = vec![Vec::new(); vertex_count];
        let mut in_adj = vec![Vec::new(); vertex_count];
        let mut edge_offset = vec![edges.len(); vertex_count + 1];
        for (idx, &(u, v)) in edges.iter().enumerate().rev() {
            edge_offset[u] = idx;
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.reverse();
        }
        // vertices without out-edges point at the next vertex's offset
        for u in (0..vertex_count).rev() {
            if out_adj[u].is_empty() {
                edge_offset[u] = edge_offset[u + 1];
            }
        }
        Self {
            vertex_count,
            edges,
            out_adj,
            in_adj,
            edge_offset,
            allow_loops,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn allows_loops(&self) -> bool {
        self.allow_loops
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Position of `(u, v)` in [`Digraph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.vertex_count {
            return None;
        }
        self.out_adj[u]
            .binary_search(&v)
            .ok()
            .map(|k| self.edge_offset[u] + k)
    }

    /// Same vertex set, only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Digraph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| keep(u, v))
            .collect();
        let mut g = Self::from_sorted_edges(self.vertex_count, edges, self.allow_loops);
        g.labels = self.labels.clone();
        g
    }
}

/// Assignment of every vertex to one of `block_count` blocks numbered
/// contiguously from zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub block_of: Vec<usize>,
    pub block_count: usize,
}

impl Partition {
    /// Renumbers arbitrary block ids so that blocks are ordered by their
    /// smallest member vertex.
    fn canonical(raw: &[usize]) -> Self {
        let mut relabel = vec![usize::MAX; raw.len()];
        let mut block_of = Vec::with_capacity(raw.len());
        let mut next = 0;
        for &b in raw {
            if relabel[b] == usize::MAX {
                relabel[b] = next;
                next += 1;
            }
            block_of.push(relabel[b]);
        }
        Self {
            block_of,
            block_count: next,
        }
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (v, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(v);
        }
        blocks
    }
}

/// Connected components of the underlying undirected graph.
pub fn weak_components(g: &Digraph) -> Partition {
    let mut uf = UnionFind::new(g.vertex_count());
    for &(u, v) in g.edges() {
        uf.union(u, v);
    }
    let raw: Vec<usize> = (0..g.vertex_count()).map(|v| uf.find(v)).collect();
    Partition::canonical(&raw)
}

/// Strongly connected components (iterative Tarjan, linear time). Blocks are
/// numbered by their smallest vertex.
pub fn strongly_connected_components(g: &Digraph) -> Partition {
    const UNVISITED: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNVISITED; n];
    let mut comp_count = 0;
    let mut next_index = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[v] == UNVISITED {
                index[v] = next_index;
                lowlink[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            let succ = g.out_neighbors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = comp_count;
                    if w == v {
                        break;
                    }
                }
                comp_count += 1;
            }
        }
    }
    Partition::canonical(&comp)
}

/// Quotient by strongly connected components. The result never has loops
/// and is always acyclic.
pub fn condensation(g: &Digraph) -> (Digraph, Partition) {
    let scc = strongly_connected_components(g);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (scc.block_of[u], scc.block_of[v]))
        .filter(|(a, b)| a != b)
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let quotient = Digraph::from_sorted_edges(scc.block_count, edges, false);
    debug_assert!(is_acyclic(&quotient).is_some());
    (quotient, scc)
}

/// Topological order if `g` has no oriented cycle (loops count as cycles).
/// Ties are broken by smallest vertex index.
pub fn is_acyclic(g: &Digraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_neighbors(v).len()).collect();
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| indeg[v] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in g.out_neighbors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(std::cmp::Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Some oriented cycle of `g` as a vertex sequence (first vertex not
/// repeated), or `None` if `g` is acyclic.
pub fn find_cycle(g: &Digraph) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let n = g.vertex_count();
    let mut color = vec![Color::White; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != Color::White {
            continue;
        }
        let mut call = vec![(root, 0usize)];
        color[root] = Color::Grey;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = g.out_neighbors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                match color[w] {
                    Color::White => {
                        color[w] = Color::Grey;
                        parent[w] = v;
                        call.push((w, 0));
                    }
                    Color::Grey => {
                        let mut cycle = vec![v];
                        let mut x = v;
                        while x != w {
                            x = parent[x];
                            cycle.push(x);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                call.pop();
            }
        }
    }
    None
}

/// Line digraph: one vertex per edge of `g` (in canonical edge order) and an
/// edge `(p, q)` whenever the target of edge `p` is the source of edge `q`.
pub fn line_digraph(g: &Digraph) -> Digraph {
    let mut edges = Vec::new();
    for (p, &(_, mid)) in g.edges().iter().enumerate() {
        let start = g.edge_offset[mid];
        for k in 0..g.out_neighbors(mid).len() {
            edges.push((p, start + k));
        }
    }
    // edges are produced in sorted order: p ascending, then q ascending
    Digraph::from_sorted_edges(g.edge_count(), edges, g.allows_loops())
}

/// Isomorphism test by backtracking over degree-compatible vertex
/// assignments. Intended for small digraphs.
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let sig = |g: &Digraph, v: usize| {
        (
            g.out_neighbors(v).len(),
            g.in_neighbors(v).len(),
            g.has_edge(v, v),
        )
    };
    let mut sa: Vec<_> = (0..a.vertex_count()).map(|v| sig(a, v)).collect();
    let mut sb: Vec<_> = (0..b.vertex_count()).map(|v| sig(b, v)).collect();
    let (sa_v, sb_v) = (sa.clone(), sb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }

    fn extend(
        a: &Digraph,
        b: &Digraph,
        sa: &[(usize, usize, bool)],
        sb: &[(usize, usize, bool)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let v = map.len();
        if v == a.vertex_count() {
            return true;
        }
        for w in 0..b.vertex_count() {
            if used[w] || sa[v] != sb[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                a.has_edge(u, v) == b.has_edge(map[u], w)
                    && a.has_edge(v, u) == b.has_edge(w, map[u])
            });
            if !consistent {
                continue;
            }
            map.push(w);
            used[w] = true;
            if extend(a, b, sa, sb, map, used) {
                return true;
            }
            used[w] = false;
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(a.vertex_count());
    let mut used = vec![false; b.vertex_count()];
    extend(a, b, &sa_v, &sb_v, &mut map, &mut used)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Vertices reachable from `start` by a (possibly empty) directed path.
pub fn reachable_from(g: &Digraph, start: usize) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.out_neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

//! Hochschild homology dimensions of path algebras of acyclic digraphs.
//!
//! For a connected acyclic digraph with `n` vertices,
//! `dim HH_0 = 1` and `dim HH_1 = 1 - n + Σ_e #paths(s(e) → t(e))`, and all
//! higher groups vanish. The path algebra of a disjoint union is the product
//! of the component algebras, so for disconnected inputs the default
//! [`HhMode::PerComponent`] sums the formula over weak components:
//! `dim HH_0 = c` and `dim HH_1 = c - n + Σ`. [`HhMode::Literal`] evaluates
//! the single expression `1 - n + Σ` regardless of connectedness.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::digraph::{
    find_cycle, is_acyclic, strongly_connected_components, weak_components, Digraph,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HhMode {
    #[default]
    PerComponent,
    Literal,
}

impl std::str::FromStr for HhMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per_component" | "per-component" => Ok(HhMode::PerComponent),
            "literal" => Ok(HhMode::Literal),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HHSummary {
    pub dim_hh0: usize,
    /// The HH_1 term. Never negative in per-component mode; the literal
    /// expression can be negative on disconnected inputs.
    pub dim_hh1: BigInt,
    pub path_sum: BigUint,
    pub simple_cycles: Option<u64>,
    pub characteristic: BigInt,
}

impl HHSummary {
    /// Records a simple-cycle count and folds it into the characteristic.
    pub fn with_cycles(mut self, cycles: u64) -> Self {
        let previous = self.simple_cycles.unwrap_or(0);
        self.characteristic += BigInt::from(cycles) - BigInt::from(previous);
        self.simple_cycles = Some(cycles);
        self
    }

    /// `hh0=… hh1=… paths=… chi=…`, with `cycles=…` before `chi` once a
    /// cycle count is recorded.
    pub fn record(&self) -> String {
        let cycles = self
            .simple_cycles
            .map_or_else(String::new, |c| format!(" cycles={c}"));
        format!(
            "hh0={} hh1={} paths={}{} chi={}",
            self.dim_hh0, self.dim_hh1, self.path_sum, cycles, self.characteristic
        )
    }
}

fn require_acyclic(g: &Digraph) -> Result<Vec<usize>> {
    is_acyclic(g).ok_or_else(|| Error::NotAcyclic {
        cycle: find_cycle(g).unwrap_or_default(),
    })
}

/// Number of directed paths from `source` to every vertex, the trivial path
/// included. `order` must be a topological order of `g`.
///
/// Counts are accumulated in `u128`; on overflow the pass is redone with
/// arbitrary-precision integers.
fn path_counts_from(
    g: &Digraph,
    order: &[usize],
    position: &[usize],
    source: usize,
) -> Vec<BigUint> {
    let start = position[source];
    let mut small = vec![0u128; g.vertex_count()];
    small[source] = 1;
    let mut overflow = false;
    'outer: for &v in &order[start..] {
        let here = small[v];
        if here == 0 {
            continue;
        }
        for &w in g.out_neighbors(v) {
            match small[w].checked_add(here) {
                Some(x) => small[w] = x,
                None => {
                    overflow = true;
                    break 'outer;
                }
            }
        }
    }
    if !overflow {
        return small.into_iter().map(BigUint::from).collect();
    }
    let mut big = vec![BigUint::zero(); g.vertex_count()];
    big[source] = BigUint::one();
    for &v in &order[start..] {
        if big[v].is_zero() {
            continue;
        }
        let here = big[v].clone();
        for &w in g.out_neighbors(v) {
            big[w] += &here;
        }
    }
    big
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut position = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    position
}

/// Number of directed paths from `u` to `v` (1 when `u == v`).
pub fn count_paths(g: &Digraph, u: usize, v: usize) -> Result<BigUint> {
    for w in [u, v] {
        if w >= g.vertex_count() {
            return Err(Error::OutOfRangeVertex {
                vertex: w,
                vertex_count: g.vertex_count(),
            });
        }
    }
    let order = require_acyclic(g)?;
    let position = positions(&order);
    Ok(path_counts_from(g, &order, &position, u).swap_remove(v))
}

/// `Σ_{e ∈ E} #paths(s(e) → t(e))` for an acyclic digraph.
pub fn path_sum(g: &Digraph) -> Result<BigUint> {
    let order = require_acyclic(g)?;
    Ok(path_sum_with_order(g, &order))
}

fn path_sum_with_order(g: &Digraph, order: &[usize]) -> BigUint {
    let position = positions(order);
    (0..g.vertex_count())
        .into_par_iter()
        .filter(|&s| !g.out_neighbors(s).is_empty())
        .map(|s| {
            let counts = path_counts_from(g, order, &position, s);
            g.out_neighbors(s)
                .iter()
                .fold(BigUint::zero(), |acc, &t| acc + &counts[t])
        })
        .reduce(BigUint::zero, |a, b| a + b)
}

/// HH_0 and HH_1 dimensions of the path algebra of an acyclic digraph.
pub fn hh_dimensions(g: &Digraph, mode: HhMode) -> Result<HHSummary> {
    let order = require_acyclic(g)?;
    let paths = path_sum_with_order(g, &order);
    let components = weak_components(g).block_count;
    let n = BigInt::from(g.vertex_count());
    let constant = match mode {
        HhMode::PerComponent => BigInt::from(components),
        HhMode::Literal => BigInt::one(),
    };
    let dim_hh1 = constant - n + BigInt::from(paths.clone());
    let characteristic = BigInt::from(components) - &dim_hh1;
    Ok(HHSummary {
        dim_hh0: components,
        dim_hh1,
        path_sum: paths,
        simple_cycles: None,
        characteristic,
    })
}

/// Hochschild characteristic of an acyclic digraph (the simple-cycle term
/// is zero). Digraphs with oriented cycles must be condensed first.
pub fn hochschild_characteristic(g: &Digraph, mode: HhMode) -> Result<BigInt> {
    Ok(hh_dimensions(g, mode)?.characteristic)
}

/// Counts simple oriented cycles (Johnson's circuit search). A reciprocal
/// pair is one 2-cycle; a loop is a 1-cycle. Fails once the count exceeds
/// `cap`.
pub fn count_simple_cycles(g: &Digraph, cap: u64) -> Result<u64> {
    if cap == 0 {
        return Err(Error::InvalidParameter("cycle cap must be positive".into()));
    }
    let n = g.vertex_count();
    let mut search = CircuitSearch {
        g,
        start: 0,
        in_scope: vec![false; n],
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        count: 0,
        cap,
    };
    for start in 0..n {
        // strongly connected component of `start` among vertices >= start
        let sub = g.filter_edges(|u, v| u >= start && v >= start);
        let scc = strongly_connected_components(&sub);
        let block = scc.block_of[start];
        let mut members = 0;
        for v in 0..n {
            let inside = v >= start && scc.block_of[v] == block;
            search.in_scope[v] = inside;
            search.blocked[v] = false;
            search.blocked_by[v].clear();
            members += usize::from(inside);
        }
        if members == 1 && !g.has_edge(start, start) {
            continue;
        }
        search.start = start;
        search.circuit(start)?;
    }
    Ok(search.count)
}

struct CircuitSearch<'a> {
    g: &'a Digraph,
    start: usize,
    in_scope: Vec<bool>,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    count: u64,
    cap: u64,
}

impl CircuitSearch<'_> {
    fn circuit(&mut self, v: usize) -> Result<bool> {
        let mut closed = false;
        self.blocked[v] = true;
        for &w in self.g.out_neighbors(v) {
            if !self.in_scope[w] {
                continue;
            }
            if w == self.start {
                self.count += 1;
                if self.count > self.cap {
                    return Err(Error::CycleCapExceeded(self.cap));
                }
                closed = true;
            } else if !self.blocked[w] && self.circuit(w)? {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in self.g.out_neighbors(v) {
                if self.in_scope[w] && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        Ok(closed)
    }

    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(x) = pending.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            pending.append(&mut self.blocked_by[x]);
        }
    }
}

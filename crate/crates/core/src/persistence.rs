//! Edge-weight filtrations of digraphs and their persistence invariants.
//!
//! All vertices are present from the start; an edge enters at its weight
//! (inclusive) and edges with equal weight enter together. The filtration
//! is therefore tame with critical values equal to the distinct weights.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::connectivity::{n_path_digraph, q_digraph, ConnectivityDigraph};
use crate::digraph::{condensation, is_acyclic, Digraph, UnionFind};
use crate::error::{Error, Result};
use crate::hochschild::{count_simple_cycles, hh_dimensions, HhMode};

/// A digraph with one finite real weight per edge. `weights[k]` belongs to
/// `graph.edges()[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    graph: Digraph,
    weights: Vec<f64>,
}

impl WeightedDigraph {
    pub fn new(vertex_count: usize, edges: &[((usize, usize), f64)]) -> Result<Self> {
        let mut sorted: Vec<((usize, usize), f64)> = edges.to_vec();
        for &((u, v), w) in &sorted {
            if !w.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) has non-finite weight {w}"
                )));
            }
        }
        sorted.sort_by_key(|e| e.0);
        if let Some(dup) = sorted.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(Error::InvalidParameter(format!(
                "edge ({}, {}) given twice",
                dup[0].0 .0, dup[0].0 .1
            )));
        }
        let pairs: Vec<(usize, usize)> = sorted.iter().map(|e| e.0).collect();
        let graph = Digraph::new(vertex_count, &pairs, false)?;
        Ok(Self {
            graph,
            weights: sorted.into_iter().map(|e| e.1).collect(),
        })
    }

    /// Every edge of `g` with the same weight.
    pub fn constant(g: &Digraph, weight: f64) -> Result<Self> {
        let edges: Vec<_> = g.edges().iter().map(|&e| (e, weight)).collect();
        Self::new(g.vertex_count(), &edges)
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.graph.edge_index(u, v).map(|k| self.weights[k])
    }

    /// Same edges with each weight replaced by `f(u, v, w)`.
    pub fn map_weights(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        let edges: Vec<_> = self
            .graph
            .edges()
            .iter()
            .zip(&self.weights)
            .map(|(&(u, v), &w)| ((u, v), f(u, v, w)))
            .collect();
        Self::new(self.graph.vertex_count(), &edges)
    }
}

/// Distinct edge weights in increasing order.
pub fn critical_values(w: &WeightedDigraph) -> Vec<f64> {
    let mut values = w.weights.clone();
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
}

/// All vertices and the edges of weight at most `t`.
pub fn sublevel_digraph(w: &WeightedDigraph, t: f64) -> Digraph {
    let mut k = 0;
    w.graph.filter_edges(|_, _| {
        let keep = w.weights[k] <= t;
        k += 1;
        keep
    })
}

/// Which connectivity digraph the pipeline applies at each stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivitySpec {
    Identity,
    NPath {
        n: usize,
        relaxed: bool,
    },
    QDigraph {
        q: usize,
        i: usize,
        j: usize,
        max_dim: usize,
    },
}

impl ConnectivitySpec {
    pub fn apply(&self, g: &Digraph) -> Result<ConnectivityDigraph> {
        match *self {
            ConnectivitySpec::Identity => n_path_digraph(g, 0, false),
            ConnectivitySpec::NPath { n, relaxed } => n_path_digraph(g, n, relaxed),
            ConnectivitySpec::QDigraph { q, i, j, max_dim } => q_digraph(g, q, i, j, max_dim),
        }
    }
}

impl fmt::Display for ConnectivitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConnectivitySpec::Identity => write!(f, "identity"),
            ConnectivitySpec::NPath { n, relaxed: false } => write!(f, "npath:{n}"),
            ConnectivitySpec::NPath { n, relaxed: true } => write!(f, "npath:{n}:relaxed"),
            ConnectivitySpec::QDigraph { q, i, j, max_dim } => {
                write!(f, "qdigraph:{q}:{i}:{j}:{max_dim}")
            }
        }
    }
}

impl FromStr for ConnectivitySpec {
    type Err = Error;

    /// `identity`, `npath:<n>`, `npath:<n>:relaxed`, or
    /// `qdigraph:<q>:<i>:<j>:<max_dim>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| {
            x.parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad number {x:?} in {s:?}")))
        };
        match parts.as_slice() {
            ["identity"] => Ok(ConnectivitySpec::Identity),
            ["npath", n] => Ok(ConnectivitySpec::NPath {
                n: num(n)?,
                relaxed: false,
            }),
            ["npath", n, "relaxed"] => Ok(ConnectivitySpec::NPath {
                n: num(n)?,
                relaxed: true,
            }),
            ["qdigraph", q, i, j, max_dim] => {
                let (q, max_dim) = (num(q)?, num(max_dim)?);
                if max_dim < q {
                    return Err(Error::InvalidParameter(format!(
                        "max_dim {max_dim} must be at least q = {q}"
                    )));
                }
                Ok(ConnectivitySpec::QDigraph {
                    q,
                    i: num(i)?,
                    j: num(j)?,
                    max_dim,
                })
            }
            _ => Err(Error::InvalidParameter(format!(
                "unknown connectivity spec {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    /// Filtration value; `-inf` for the initial edgeless stage.
    pub t: f64,
    pub hh0: usize,
    pub hh1: BigInt,
    /// Simple cycles of the connectivity digraph before condensation.
    pub cycles: Option<u64>,
    pub chi: BigInt,
    pub conn_vertices: usize,
    pub conn_edges: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceCurve {
    pub spec: ConnectivitySpec,
    pub rows: Vec<CurveRow>,
}

impl PersistenceCurve {
    pub const CSV_HEADER: &'static str = "t,hh0,hh1,cycles,chi,conn_v,conn_e";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let cycles = r.cycles.map_or_else(|| "na".to_string(), |c| c.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                format_real(r.t),
                r.hh0,
                r.hh1,
                cycles,
                r.chi,
                r.conn_vertices,
                r.conn_edges
            ));
        }
        out
    }
}

/// Reals with 17 significant digits; infinities as `inf` / `-inf`.
pub fn format_real(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn parse_real(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "+inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        other => other.parse().ok().filter(|x: &f64| x.is_finite()),
    }
}

/// For the edgeless stage and every critical value: build the sublevel
/// digraph, apply the connectivity construction, optionally count its
/// simple cycles, condense, and evaluate HH dimensions and the Hochschild
/// characteristic of the condensation.
pub fn characteristic_pipeline(
    w: &WeightedDigraph,
    spec: ConnectivitySpec,
    mode: HhMode,
    cycles_cap: Option<u64>,
) -> Result<PersistenceCurve> {
    let mut stages = vec![f64::NEG_INFINITY];
    stages.extend(critical_values(w));
    let rows = stages
        .par_iter()
        .map(|&t| pipeline_row(w, spec, mode, cycles_cap, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(PersistenceCurve { spec, rows })
}

fn pipeline_row(
    w: &WeightedDigraph,
    spec: ConnectivitySpec,
    mode: HhMode,
    cycles_cap: Option<u64>,
    t: f64,
) -> Result<CurveRow> {
    let stage = sublevel_digraph(w, t);
    let conn = spec.apply(&stage)?;
    let cycles = cycles_cap
        .map(|cap| count_simple_cycles(&conn.graph, cap))
        .transpose()?;
    let (quotient, _) = condensation(&conn.graph);
    let hh = hh_dimensions(&quotient, mode)?;
    Ok(CurveRow {
        t,
        hh0: hh.dim_hh0,
        hh1: hh.dim_hh1,
        cycles,
        chi: hh.characteristic,
        conn_vertices: conn.graph.vertex_count(),
        conn_edges: conn.graph.edge_count(),
    })
}

/// Persistent Betti numbers `p(t_i, t_j)`, `i <= j`, over the critical
/// values. Entries below the diagonal are zero and unused.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceTable {
    pub critical_values: Vec<f64>,
    pub values: Vec<Vec<i128>>,
}

impl PersistenceTable {
    pub fn len(&self) -> usize {
        self.critical_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.critical_values.is_empty()
    }

    /// `p(t_i, t_j)` with `i = None` standing for "before the first
    /// critical value" (always zero).
    pub fn get(&self, i: Option<usize>, j: usize) -> i128 {
        i.map_or(0, |i| self.values[i][j])
    }

    /// Checks both persistence-function inequalities for every
    /// `u1 <= u2 <= v1 <= v2`: `p(u1, v1) <= p(u2, v1)` and
    /// `p(u2, v2) <= p(u2, v1)`, and
    /// `p(u2, v1) - p(u1, v1) >= p(u2, v2) - p(u1, v2)`.
    pub fn satisfies_persistence_inequalities(&self) -> bool {
        let m = self.len();
        for u1 in 0..m {
            for u2 in u1..m {
                for v1 in u2..m {
                    if self.values[u1][v1] > self.values[u2][v1] {
                        return false;
                    }
                    for v2 in v1..m {
                        if self.values[u2][v2] > self.values[u2][v1] {
                            return false;
                        }
                        let left = self.values[u2][v1] - self.values[u1][v1];
                        let right = self.values[u2][v2] - self.values[u1][v2];
                        if left < right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Zero,
    One,
}

impl TryFrom<u8> for Degree {
    type Error = Error;

    fn try_from(d: u8) -> Result<Self> {
        match d {
            0 => Ok(Degree::Zero),
            1 => Ok(Degree::One),
            other => Err(Error::InvalidParameter(format!(
                "degree must be 0 or 1, got {other}"
            ))),
        }
    }
}

/// Persistent Betti numbers of the filtered connectivity digraph. Every
/// stage must be acyclic.
///
/// Degree 0 counts the components at `t_j` that contain a vertex already
/// present at `t_i`. Degree 1 uses injectivity of the induced maps on HH_1
/// along inclusions of acyclic digraphs: `p(t_i, t_j) = dim HH_1` at `t_i`.
pub fn persistent_betti(
    w: &WeightedDigraph,
    spec: ConnectivitySpec,
    degree: Degree,
) -> Result<PersistenceTable> {
    let critical = critical_values(w);
    let stages: Vec<ConnectivityDigraph> = critical
        .par_iter()
        .map(|&t| {
            let conn = spec.apply(&sublevel_digraph(w, t))?;
            if is_acyclic(&conn.graph).is_none() {
                return Err(Error::NotAcyclicAtStage { t });
            }
            Ok(conn)
        })
        .collect::<Result<_>>()?;
    let m = critical.len();

    let values = match degree {
        Degree::One => {
            let dims: Vec<i128> = stages
                .par_iter()
                .map(|c| {
                    let h = hh_dimensions(&c.graph, HhMode::PerComponent)?;
                    h.dim_hh1.to_i128().ok_or_else(|| {
                        Error::InvalidParameter("HH_1 dimension exceeds 128 bits".into())
                    })
                })
                .collect::<Result<_>>()?;
            (0..m)
                .map(|i| (0..m).map(|j| if i <= j { dims[i] } else { 0 }).collect())
                .collect()
        }
        Degree::Zero => {
            let roots: Vec<Vec<usize>> = stages
                .par_iter()
                .map(|c| {
                    let mut uf = UnionFind::new(c.graph.vertex_count());
                    for &(u, v) in c.graph.edges() {
                        uf.union(u, v);
                    }
                    (0..c.graph.vertex_count()).map(|v| uf.find(v)).collect()
                })
                .collect();
            (0..m)
                .into_par_iter()
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            if i > j {
                                return 0;
                            }
                            let mut hit: Vec<usize> = stages[i]
                                .vertex_simplices
                                .iter()
                                .map(|s| {
                                    let v =
                                        stages[j].vertex_of(s).expect("sublevel simplices persist");
                                    roots[j][v]
                                })
                                .collect();
                            hit.sort_unstable();
                            hit.dedup();
                            hit.len() as i128
                        })
                        .collect()
                })
                .collect()
        }
    };
    Ok(PersistenceTable {
        critical_values: critical,
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub birth: f64,
    /// `f64::INFINITY` for essential classes.
    pub death: f64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    pub points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub const CSV_HEADER: &'static str = "birth,death,multiplicity";

    pub fn new(mut points: Vec<DiagramPoint>) -> Result<Self> {
        for p in &points {
            if p.multiplicity == 0 || !p.birth.is_finite() || p.death.is_nan() || p.birth > p.death
            {
                return Err(Error::InvalidParameter(format!(
                    "invalid diagram point {p:?}"
                )));
            }
        }
        points.sort_by(|a, b| {
            a.birth
                .total_cmp(&b.birth)
                .then(a.death.total_cmp(&b.death))
        });
        Ok(Self { points })
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Total number of points counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{}\n",
                format_real(p.birth),
                format_real(p.death),
                p.multiplicity
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line == Self::CSV_HEADER {
                continue;
            }
            let bad = |message: &str| Error::Parse {
                line: k + 1,
                message: message.to_string(),
            };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(bad("expected birth,death,multiplicity"));
            }
            let birth = parse_real(fields[0]).ok_or_else(|| bad("bad birth"))?;
            let death = parse_real(fields[1]).ok_or_else(|| bad("bad death"))?;
            let multiplicity = fields[2]
                .trim()
                .parse()
                .map_err(|_| bad("bad multiplicity"))?;
            points.push(DiagramPoint {
                birth,
                death,
                multiplicity,
            });
        }
        Self::new(points)
    }
}

/// Diagram of a persistence table by inclusion–exclusion over consecutive
/// critical values:
///
/// `μ(t_i, t_j) = p(t_i, t_{j-1}) - p(t_{i-1}, t_{j-1}) - p(t_i, t_j) + p(t_{i-1}, t_j)`
///
/// for `i < j`, and `μ(t_i, ∞) = p(t_i, t_m) - p(t_{i-1}, t_m)`, where
/// `p(t_{-1}, ·) = 0`.
pub fn persistence_diagram(table: &PersistenceTable) -> Result<PersistenceDiagram> {
    let m = table.len();
    let t = &table.critical_values;
    let prev = |i: usize| i.checked_sub(1);
    let mut points = Vec::new();
    let mut push = |birth: f64, death: f64, mu: i128| -> Result<()> {
        if mu < 0 {
            return Err(Error::NegativeMultiplicity {
                birth,
                death,
                multiplicity: mu as i64,
            });
        }
        if mu > 0 {
            points.push(DiagramPoint {
                birth,
                death,
                multiplicity: mu as u64,
            });
        }
        Ok(())
    };
    for i in 0..m {
        for j in i + 1..m {
            let mu = table.get(Some(i), j - 1) - table.get(prev(i), j - 1) - table.get(Some(i), j)
                + table.get(prev(i), j);
            push(t[i], t[j], mu)?;
        }
        let mu = table.get(Some(i), m - 1) - table.get(prev(i), m - 1);
        push(t[i], f64::INFINITY, mu)?;
    }
    PersistenceDiagram::new(points)
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

/// Bottleneck distance. Essential points are matched among themselves
/// (infinite distance if their counts differ); finite points match each
/// other or the diagonal. Finite part: binary search over candidate radii
/// with a bipartite perfect-matching test.
pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let expand = |d: &PersistenceDiagram, essential: bool| -> Vec<(f64, f64)> {
        d.points
            .iter()
            .filter(|p| p.death.is_infinite() == essential)
            .flat_map(|p| std::iter::repeat_n((p.birth, p.death), p.multiplicity as usize))
            .collect()
    };
    let mut e1: Vec<f64> = expand(d1, true).into_iter().map(|p| p.0).collect();
    let mut e2: Vec<f64> = expand(d2, true).into_iter().map(|p| p.0).collect();
    if e1.len() != e2.len() {
        return f64::INFINITY;
    }
    e1.sort_by(f64::total_cmp);
    e2.sort_by(f64::total_cmp);
    let essential = e1
        .iter()
        .zip(&e2)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let a = expand(d1, false);
    let b = expand(d2, false);
    essential.max(finite_bottleneck(&a, &b))
}

fn finite_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let half = |p: &(f64, f64)| (p.1 - p.0) / 2.0;
    let mut candidates: Vec<f64> = vec![0.0];
    candidates.extend(a.iter().map(half));
    candidates.extend(b.iter().map(half));
    for p in a {
        for q in b {
            candidates.push(linf(*p, *q));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_exists(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

// Left side: points of `a`, then diagonal copies of points of `b`.
// Right side: points of `b`, then diagonal copies of points of `a`.
fn perfect_matching_exists(a: &[(f64, f64)], b: &[(f64, f64)], r: f64) -> bool {
    let (na, nb) = (a.len(), b.len());
    let size = na + nb;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (k, p) in a.iter().enumerate() {
        for (l, q) in b.iter().enumerate() {
            if linf(*p, *q) <= r {
                adj[k].push(l);
            }
        }
        if (p.1 - p.0) / 2.0 <= r {
            adj[k].push(nb + k);
        }
    }
    for (l, q) in b.iter().enumerate() {
        if (q.1 - q.0) / 2.0 <= r {
            adj[na + l].push(l);
        }
        adj[na + l].extend(nb..nb + na);
    }

    let mut match_right = vec![usize::MAX; size];
    for left in 0..size {
        let mut seen = vec![false; size];
        if !augment(left, &adj, &mut seen, &mut match_right) {
            return false;
        }
    }
    true
}

fn augment(left: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [usize]) -> bool {
    for &right in &adj[left] {
        if seen[right] {
            continue;
        }
        seen[right] = true;
        if match_right[right] == usize::MAX || augment(match_right[right], adj, seen, match_right) {
            match_right[right] = left;
            return true;
        }
    }
    false
}

/// Self-contained SVG line plot of chi against t, one polyline per curve.
/// The initial `-inf` stage is not drawn.
pub fn curves_svg(curves: &[PersistenceCurve]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const MARGIN: f64 = 56.0;
    const COLORS: [&str; 6] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
    ];

    let points: Vec<Vec<(f64, f64)>> = curves
        .iter()
        .map(|c| {
            c.rows
                .iter()
                .filter(|r| r.t.is_finite())
                .map(|r| (r.t, r.chi.to_f64().unwrap_or(f64::NAN)))
                .collect()
        })
        .collect();
    let all = points.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    svg.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    ));
    for k in 0..=4 {
        let fx = x0 + (x1 - x0) * k as f64 / 4.0;
        let fy = y0 + (y1 - y0) * k as f64 / 4.0;
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{b}\" x2=\"{x:.2}\" y2=\"{b2}\" stroke=\"black\"/>\
             <text x=\"{x:.2}\" y=\"{ty}\" font-size=\"11\" text-anchor=\"middle\">{fx:.3}</text>\n",
            x = sx(fx),
            b = H - MARGIN,
            b2 = H - MARGIN + 5.0,
            ty = H - MARGIN + 18.0
        ));
        svg.push_str(&format!(
            "<line x1=\"{m}\" y1=\"{y:.2}\" x2=\"{m2}\" y2=\"{y:.2}\" stroke=\"black\"/>\
             <text x=\"{tx}\" y=\"{y:.2}\" font-size=\"11\" text-anchor=\"end\">{fy:.1}</text>\n",
            m = MARGIN,
            m2 = MARGIN - 5.0,
            tx = MARGIN - 8.0,
            y = sy(fy)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">t</text>\n\
         <text x=\"14\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">chi</text>\n",
        W / 2.0,
        H - 12.0,
        H / 2.0
    ));
    for (k, (curve, pts)) in curves.iter().zip(&points).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n\
             <text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">{}</text>\n",
            coords.join(" "),
            W - MARGIN + 4.0,
            MARGIN + 14.0 * k as f64,
            curve.spec
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_filtration() -> WeightedDigraph {
        WeightedDigraph::new(
            4,
            &[
                ((0, 1), 0.1),
                ((0, 2), 0.2),
                ((1, 3), 0.3),
                ((2, 3), 0.4),
                ((0, 3), 0.5),
            ],
        )
        .unwrap()
    }

    fn point(birth: f64, death: f64, multiplicity: u64) -> DiagramPoint {
        DiagramPoint {
            birth,
            death,
            multiplicity,
        }
    }

    #[test]
    fn weighted_digraph_validation() {
        assert!(WeightedDigraph::new(2, &[((0, 1), f64::NAN)]).is_err());
        assert!(WeightedDigraph::new(2, &[((0, 1), 0.1), ((0, 1), 0.2)]).is_err());
        let w = WeightedDigraph::new(3, &[((2, 0), 0.5), ((0, 1), 0.25)]).unwrap();
        assert_eq!(w.weight(2, 0), Some(0.5));
        assert_eq!(w.weights(), &[0.25, 0.5]);
    }

    #[test]
    fn critical_value_examples() {
        let w = WeightedDigraph::new(3, &[((0, 1), 0.2), ((1, 2), 0.2), ((0, 2), 0.7)]).unwrap();
        assert_eq!(critical_values(&w), vec![0.2, 0.7]);
        assert!(critical_values(&WeightedDigraph::new(3, &[]).unwrap()).is_empty());
    }

    #[test]
    fn sublevel_examples() {
        let w = WeightedDigraph::new(3, &[((0, 1), 0.2), ((1, 2), 0.5), ((0, 2), 0.7)]).unwrap();
        assert_eq!(sublevel_digraph(&w, 0.1).edge_count(), 0);
        assert_eq!(sublevel_digraph(&w, 0.1).vertex_count(), 3);
        assert_eq!(sublevel_digraph(&w, 0.5).edges(), &[(0, 1), (1, 2)]);
        assert_eq!(&sublevel_digraph(&w, 0.7), w.graph());
    }

    #[test]
    fn spec_parsing() {
        for s in ["identity", "npath:1", "npath:2:relaxed", "qdigraph:1:1:2:2"] {
            assert_eq!(s.parse::<ConnectivitySpec>().unwrap().to_string(), s);
        }
        assert!("npath".parse::<ConnectivitySpec>().is_err());
        assert!("npath:-1".parse::<ConnectivitySpec>().is_err());
        assert!("qdigraph:2:0:1:1".parse::<ConnectivitySpec>().is_err());
    }

    #[test]
    fn pipeline_first_row_counts_vertices() {
        let w = square_filtration();
        let c = characteristic_pipeline(&w, ConnectivitySpec::Identity, HhMode::PerComponent, None)
            .unwrap();
        assert_eq!(c.rows.len(), 6);
        assert_eq!(c.rows[0].t, f64::NEG_INFINITY);
        assert_eq!(c.rows[0].chi, BigInt::from(4));
        // full square plus diagonal: chi = n - path_sum = 4 - 7
        assert_eq!(c.rows[5].chi, BigInt::from(-3));
        assert_eq!(c.rows[5].hh1, BigInt::from(4));
    }

    #[test]
    fn square_degree_one_table() {
        let table = persistent_betti(
            &square_filtration(),
            ConnectivitySpec::Identity,
            Degree::One,
        )
        .unwrap();
        let diag: Vec<i128> = (0..5).map(|i| table.values[i][i]).collect();
        assert_eq!(diag, vec![0, 0, 0, 1, 4]);
        let d = persistence_diagram(&table).unwrap();
        assert_eq!(
            d.points,
            vec![point(0.4, f64::INFINITY, 1), point(0.5, f64::INFINITY, 3)]
        );
    }

    #[test]
    fn edgeless_tables() {
        let w = WeightedDigraph::new(4, &[]).unwrap();
        let t0 = persistent_betti(&w, ConnectivitySpec::Identity, Degree::Zero).unwrap();
        assert!(t0.is_empty());
        assert!(persistence_diagram(&t0).unwrap().is_empty());
    }

    #[test]
    fn degree_zero_merges() {
        // three components at 0.1 ({0,1}, {2}, {3}) merge into one at 0.5
        let w = WeightedDigraph::new(4, &[((0, 1), 0.1), ((1, 2), 0.5), ((2, 3), 0.5)]).unwrap();
        let table = persistent_betti(&w, ConnectivitySpec::Identity, Degree::Zero).unwrap();
        assert_eq!(table.values, vec![vec![3, 1], vec![0, 1]]);
        let d = persistence_diagram(&table).unwrap();
        assert_eq!(
            d.points,
            vec![point(0.1, 0.5, 2), point(0.1, f64::INFINITY, 1)]
        );
    }

    #[test]
    fn cyclic_stage_rejected() {
        let w = WeightedDigraph::new(2, &[((0, 1), 0.1), ((1, 0), 0.2)]).unwrap();
        assert_eq!(
            persistent_betti(&w, ConnectivitySpec::Identity, Degree::One),
            Err(Error::NotAcyclicAtStage { t: 0.2 })
        );
    }

    #[test]
    fn constant_table_gives_empty_diagram() {
        let table = PersistenceTable {
            critical_values: vec![0.0, 1.0, 2.0],
            values: vec![vec![0; 3]; 3],
        };
        assert!(persistence_diagram(&table).unwrap().is_empty());
    }

    #[test]
    fn inconsistent_table_is_rejected() {
        let table = PersistenceTable {
            critical_values: vec![0.0, 1.0],
            values: vec![vec![1, 2], vec![0, 2]],
        };
        assert!(!table.satisfies_persistence_inequalities());
        assert!(matches!(
            persistence_diagram(&table),
            Err(Error::NegativeMultiplicity { .. })
        ));
    }

    #[test]
    fn bottleneck_basics() {
        let a = PersistenceDiagram::new(vec![point(1.0, f64::INFINITY, 1), point(0.0, 2.0, 1)])
            .unwrap();
        assert_eq!(bottleneck_distance(&a, &a), 0.0);

        let eps = 1e-3;
        let x = PersistenceDiagram::new(vec![point(1.0, f64::INFINITY, 1)]).unwrap();
        let y = PersistenceDiagram::new(vec![point(1.0 + eps, f64::INFINITY, 1)]).unwrap();
        assert!((bottleneck_distance(&x, &y) - eps).abs() < 1e-15);

        let empty = PersistenceDiagram::default();
        assert_eq!(bottleneck_distance(&x, &empty), f64::INFINITY);
        let single = PersistenceDiagram::new(vec![point(0.0, 2.0, 1)]).unwrap();
        assert_eq!(bottleneck_distance(&single, &empty), 1.0);
        // matching to the diagonal beats a far partner
        let far = PersistenceDiagram::new(vec![point(10.0, 10.5, 1)]).unwrap();
        assert_eq!(bottleneck_distance(&single, &far), 1.0);
    }

    #[test]
    fn diagram_csv_round_trip() {
        let d = PersistenceDiagram::new(vec![point(0.25, f64::INFINITY, 2), point(0.1, 0.5, 1)])
            .unwrap();
        let text = d.to_csv();
        assert!(text.starts_with("birth,death,multiplicity\n"));
        assert!(text.contains(",inf,2"));
        assert_eq!(PersistenceDiagram::from_csv(&text).unwrap(), d);
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.2), "2.0000000000000001e-1");
        assert_eq!(format_real(f64::NEG_INFINITY), "-inf");
        for x in [0.1, 1.0 / 3.0, 123456.789, 5e-300] {
            assert_eq!(parse_real(&format_real(x)), Some(x));
        }
    }

    #[test]
    fn svg_is_self_contained() {
        let c = characteristic_pipeline(
            &square_filtration(),
            ConnectivitySpec::Identity,
            HhMode::PerComponent,
            None,
        )
        .unwrap();
        let svg = curves_svg(&[c]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polyline"));
        assert!(!svg.contains("href"));
    }
}

//! # hochgraph
//!
//! Persistent Hochschild homology of directed graphs through connectivity
//! digraphs.
//!
//! The building blocks:
//!
//! * [`digraph`]: the [`Digraph`] type, weak and strong components,
//!   condensation, acyclicity and line digraphs.
//! * [`flag`]: directed flag complexes and (extended) face maps.
//! * [`connectivity`]: n-path digraphs, (q, d̂_i, d̂_j)-digraphs and q-graphs.
//! * [`hochschild`]: HH_0/HH_1 dimensions of path algebras of acyclic
//!   digraphs, directed path counts, simple cycles and the Hochschild
//!   characteristic.
//! * [`poset`]: reachability posets, order complexes and F2 Betti numbers.
//! * [`persistence`]: edge-weight filtrations, characteristic curves,
//!   persistent Betti tables, diagrams and bottleneck distance.
//! * [`generators`]: seeded random and structured digraphs.
//! * [`io`]: edge-list text formats.
//!
//! ```
//! use hochgraph::{hh_dimensions, Digraph, HhMode};
//!
//! let square = Digraph::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], false).unwrap();
//! let hh = hh_dimensions(&square, HhMode::PerComponent).unwrap();
//! assert_eq!(hh.dim_hh0, 1);
//! assert_eq!(hh.dim_hh1, 1.into());
//! ```

pub mod connectivity;
pub mod digraph;
pub mod error;
pub mod flag;
pub mod generators;
pub mod hochschild;
pub mod io;
pub mod persistence;
pub mod poset;

pub use connectivity::{n_path_digraph, q_digraph, q_graph, ConnectivityDigraph, ConnectivityKind};
pub use digraph::{
    are_isomorphic, condensation, find_cycle, is_acyclic, line_digraph,
    strongly_connected_components, weak_components, Digraph, Partition,
};
pub use error::{Error, Result};
pub use flag::{directed_flag_complex, OrderedSimplex, OrderedSimplicialComplex};
pub use generators::{
    cone, cycle_digraph, erdos_renyi_weighted, linear_digraph, necklace_weighted, Seed,
};
pub use hochschild::{
    count_paths, count_simple_cycles, hh_dimensions, hochschild_characteristic, path_sum,
    HHSummary, HhMode,
};
pub use persistence::{
    bottleneck_distance, characteristic_pipeline, critical_values, persistence_diagram,
    persistent_betti, sublevel_digraph, ConnectivitySpec, Degree, DiagramPoint, PersistenceCurve,
    PersistenceDiagram, PersistenceTable, WeightedDigraph,
};
pub use poset::{
    betti_f2, order_complex, q_homotopy_betti, reachability_poset, ChainComplexF2, Poset,
};

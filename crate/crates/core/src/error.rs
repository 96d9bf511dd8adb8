use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph with {vertex_count} vertices")]
    OutOfRangeVertex { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0} but loops are not allowed")]
    SelfLoopForbidden(usize),

    #[error("digraph has self-loops; the directed flag complex needs a loop-free digraph")]
    LoopsPresent,

    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("a 0-simplex has no faces")]
    FaceOfVertex,

    #[error("NotAcyclic: digraph has an oriented cycle {}", render_cycle(.cycle))]
    NotAcyclic { cycle: Vec<usize> },

    #[error("NotAcyclicAtStage: connectivity digraph at t = {t} has an oriented cycle; use the characteristic pipeline instead")]
    NotAcyclicAtStage { t: f64 },

    #[error("CycleCapExceeded: more than {0} simple cycles")]
    CycleCapExceeded(u64),

    #[error("cycle digraph needs at least 2 vertices, got {0}")]
    CycleTooSmall(usize),

    #[error("negative multiplicity {multiplicity} at ({birth}, {death}); the table violates the persistence inequalities")]
    NegativeMultiplicity {
        birth: f64,
        death: f64,
        multiplicity: i64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn render_cycle(cycle: &[usize]) -> String {
    let mut out = String::new();
    for v in cycle {
        out.push_str(&v.to_string());
        out.push_str(" -> ");
    }
    if let Some(first) = cycle.first() {
        out.push_str(&first.to_string());
    }
    out
}

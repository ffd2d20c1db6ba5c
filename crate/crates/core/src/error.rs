use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mesh: {0}")]
    Mesh(String),

    #[error("cell {cell} is degenerate (signed area {area:e})")]
    DegenerateCell { cell: usize, area: f64 },

    #[error("edge ({a}, {b}) is shared by more than two cells")]
    NonManifoldEdge { a: usize, b: usize },

    #[error("node {0} does not belong to any cell")]
    DanglingNode(usize),

    #[error("tangled mesh: cell {cell} has signed area {area:e}")]
    TangledMesh { cell: usize, area: f64 },

    #[error("thermodynamic domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero nodal weight at node {0}")]
    ZeroWeight(usize),

    #[error("inadmissible state in {} cell(s) (first: {}): {reason}", cells.len(), cells.first().copied().unwrap_or(0))]
    Inadmissible { cells: Vec<usize>, reason: String },

    #[error("global vacuum: no cell has a positive sound speed")]
    GlobalVacuum,

    #[error("time step failed at t = {t}: {reason}")]
    StepFailed { t: f64, reason: String },

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

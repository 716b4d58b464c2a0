use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected: vertex {vertex} unreachable from vertex {from}")]
    Disconnected { from: usize, vertex: usize },

    #[error("block structure violated at ({row}, {col}): {detail}")]
    Structure {
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("eigensolver failed after {sweeps} sweeps (residual {residual:e})")]
    NumericFailure { sweeps: usize, residual: f64 },

    #[error("rank anomaly: expected at most {expected} near-zero eigenvalues, found {found}")]
    RankAnomaly { expected: usize, found: usize },

    #[error("matrix is not positive semidefinite: eigenvalue {0:e}")]
    NotPositiveSemidefinite(f64),

    #[error("consistency check failed for {what}: {left} != {right}")]
    Consistency {
        what: String,
        left: String,
        right: String,
    },

    #[error("value is not rational: {0}")]
    Irrational(String),
}

impl Error {
    pub(crate) fn consistency(
        what: impl Into<String>,
        left: impl ToString,
        right: impl ToString,
    ) -> Self {
        Error::Consistency {
            what: what.into(),
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}

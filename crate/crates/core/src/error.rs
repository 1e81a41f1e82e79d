use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("matrix is not positive semi-definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("index set {indices:?} is invalid for a {dim}x{dim} matrix")]
    IndexOutOfRange { indices: Vec<usize>, dim: usize },

    #[error("matrix is not special unitary ({0})")]
    NotSpecialUnitary(String),

    #[error("matrix is not skew-Hermitian (max |A + A^dagger| = {deviation:e})")]
    NotSkewHermitian { deviation: f64 },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("eigenvectors are not orthogonal (|<psi1|psi2>| = {overlap:e})")]
    RankDeficient { overlap: f64 },

    #[error("expected a rank-{expected} state, found rank {found}")]
    WrongRank { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid mixture weights: {0}")]
    WeightError(String),

    #[error("decomposition does not reproduce the target state (residual {residual:e})")]
    DecompositionMismatch { residual: f64 },

    #[error("state is not in canonical form: {0}")]
    NotCanonical(String),

    #[error("unsupported bipartite shape {n_a}x{n_b}")]
    UnsupportedShape { n_a: usize, n_b: usize },

    #[error("unknown {kind} '{name}' (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |A - A^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not of X form: entry ({row}, {col}) = {magnitude:e}")]
    NotXState {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("no dark point for omega = {omega}, delta0 = {delta0}")]
    NoDarkPoint { omega: f64, delta0: f64 },

    #[error(
        "state construction failed at (t_u = {t_u}, omega = {omega}, delta0 = {delta0}): {source}"
    )]
    GridPoint {
        t_u: f64,
        omega: f64,
        delta0: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by caller-supplied values rather than by the numerics.
    pub fn is_domain_error(&self) -> bool {
        match self {
            Error::InvalidParameter { .. }
            | Error::InvalidArgument(_)
            | Error::NoDarkPoint { .. } => true,
            Error::GridPoint { source, .. } => source.is_domain_error(),
            _ => false,
        }
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {modulus}")]
    NotCoprime { a: i64, modulus: u64 },

    #[error("{what} needs {requested} entries, over the budget of {budget}")]
    Capacity {
        what: &'static str,
        requested: usize,
        budget: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("log-gamma pole at z = {0}")]
    Pole(f64),

    #[error("quadrature did not reach tolerance {tol:e}: {context}")]
    ToleranceNotMet { tol: f64, context: String },

    #[error("contour abscissa {sigma} is outside the legal strip (needs sigma > {bound})")]
    ContourViolation { sigma: f64, bound: f64 },

    #[error("unsupported kernel: {0}")]
    UnsupportedKernel(&'static str),

    #[error("no prime moduli in [{lo}, {hi}] are coprime to r = {r}")]
    EmptyModuliSet { lo: f64, hi: f64, r: u64 },

    #[error("table '{label}' covers n <= {available}, but n <= {needed} is required")]
    RangeNotCovered {
        label: String,
        needed: usize,
        available: usize,
    },

    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("coefficient oracle has no value for A({0}, {1})")]
    OracleGap(u64, u64),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("internal arithmetic failure: {0}")]
    Internal(String),

    #[error("cache checksum mismatch (stored {stored:#018x}, computed {computed:#018x})")]
    Checksum { stored: u64, computed: u64 },

    #[error("cache format mismatch: {0}")]
    Version(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

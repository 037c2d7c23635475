use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    #[error("propagation failed at step {t}: {reason}")]
    Propagation { t: usize, reason: String },

    #[error("singular proposal fit at step {t}: increase the covariance jitter (used {jitter:e})")]
    SingularFit { t: usize, jitter: f64 },

    #[error("all kernel weights underflowed for bandwidth b1={b1:?}; widen the bandwidth")]
    WidenBandwidth { b1: Vec<f64> },

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("backward pilot degenerated at step {t}: increase the pilot sample size")]
    PilotDegeneracy { t: usize },

    #[error("did not converge: {0}")]
    NonConvergence(String),

    #[error("search space too large: {size} paths exceeds the cap of {cap}")]
    SizeCapExceeded { size: u128, cap: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

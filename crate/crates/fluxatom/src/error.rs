use thiserror::Error;

/// Errors produced by the simulation modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter failed validation. `field` names the offending input.
    #[error("invalid configuration: {field}: {message}")]
    Config { field: String, message: String },

    /// The requested charge-basis dimension exceeds the configured limit.
    #[error("charge basis dimension {dim} exceeds limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },

    /// Two objects that must share a basis do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A basis mismatch other than raw dimension (e.g. operators built at
    /// different flux values).
    #[error("basis mismatch: {detail}")]
    BasisMismatch { detail: String },

    /// The dense eigensolver failed; pairs are never returned unverified.
    #[error("eigensolver failure: {detail}")]
    Convergence { detail: String },

    /// A level spacing fell below the divide-safety threshold.
    #[error("degenerate levels: {detail}")]
    DegenerateLevels { detail: String },

    /// Transition moduli do not match either the ladder or the cyclic pattern.
    #[error("ambiguous transition structure: {detail}")]
    AmbiguousStructure { detail: String },

    /// An eigensolve inside a flux sweep failed; carries the offending point.
    #[error("sweep point f = {f}: {source}")]
    SweepPoint {
        f: f64,
        #[source]
        source: Box<Error>,
    },

    /// Instantaneous eigenvalues too close for a meaningful adiabatic frame.
    #[error("level crossing at t = {time}: min gap {gap:.3e} below threshold")]
    Crossing { time: f64, gap: f64 },

    /// The closed-form eigenvector parametrization is singular here.
    #[error("singular eigenvector parametrization for branch {branch} at t = {time}")]
    SingularParametrization { branch: usize, time: f64 },

    /// The two nonadiabatic-coupling computations disagree beyond tolerance.
    #[error("coupling cross-check failed at t = {time}: methods disagree by {deviation:.1}%")]
    StepSize { time: f64, deviation: f64 },

    /// Time integration could not proceed.
    #[error("integration failure at t = {time}: {detail}")]
    Integration { time: f64, detail: String },
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by bad input rather than by numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config { .. }
                | Error::DimensionLimit { .. }
                | Error::DimensionMismatch { .. }
                | Error::BasisMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside an operation's domain (selection rules, signs, ranges).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid ramp: {0}")]
    InvalidRamp(String),
    #[error("integration failed at t = {t:e}: {reason}")]
    Integration { t: f64, reason: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("root finding failed: {0}")]
    Root(String),
    #[error("trajectory escaped the trap at t = {t:e} s")]
    Escape { t: f64 },
    #[error("data error: {0}")]
    Data(String),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Integration { .. } | Error::Invariant(_) | Error::Root(_) | Error::Escape { .. }
        )
    }
}

use thiserror::Error;

/// Errors raised by the physical models and the inverse solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FoilError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("inflation model out of validity range: p = {p} exceeds p_max = {p_max}")]
    OutOfValidity { p: f64, p_max: f64 },

    #[error("unbounded resonance: drive frequency equals the natural frequency")]
    UnboundedResonance,

    #[error("unstable step size: {0}")]
    UnstableStep(String),

    #[error(
        "target frequency {target_hz} Hz is out of envelope: achievable band is [{f_min_hz}, {f_max_hz}] Hz"
    )]
    OutOfEnvelope {
        target_hz: f64,
        f_min_hz: f64,
        f_max_hz: f64,
    },

    #[error("calibration did not converge after {iterations} iterations (residual rms {residual_rms})")]
    NonConvergence {
        iterations: usize,
        residual_rms: f64,
        best: Vec<f64>,
    },

    #[error("rank-deficient data: {0}")]
    RankDeficient(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, FoilError>;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(FoilError::Domain(msg()))
    }
}

use thiserror::Error;

/// Errors produced by parameter validation, the closed-form evaluators and
/// the master-equation oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pump ratio epsilon/kappa = {0} is at or above the oscillation threshold 0.5")]
    ThresholdViolation(f64),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("delay must be non-negative, got {0}")]
    NegativeDelay(f64),

    #[error("initial population {0} is outside [0, 1]")]
    PopulationOutOfRange(f64),

    #[error("invalid atomic state: {0}")]
    InvalidAtomicState(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no half-maximum crossing found for omega in (0, {0}]")]
    BracketNotFound(f64),

    #[error("fock cutoff must be at least 2, got {0}")]
    InvalidCutoff(usize),

    #[error("fock cutoff {cutoff} too small: at least {required} levels needed for mean photon number {mean_photons:.4}")]
    CutoffTooSmall {
        cutoff: usize,
        required: usize,
        mean_photons: f64,
    },

    #[error("steady state is not unique: constrained Liouvillian is singular")]
    DegenerateNullSpace,

    #[error("steady-state solve did not converge (residual {residual:e})")]
    NotConverged { residual: f64 },

    #[error("linear solver failure: {0}")]
    Solver(String),

    #[error("unknown observable `{0}`")]
    UnknownObservable(String),

    #[error("propagation unstable at tau = {tau}: trace drift {trace_error:e}")]
    PropagationUnstable { tau: f64, trace_error: f64 },

    #[error("correlation only decayed to {ratio:e} of its initial value; window too short")]
    InsufficientDecay { ratio: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the equation of state and the solvers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("density {rho} outside the admissible domain ({min}, {max})")]
    Domain { rho: f64, min: f64, max: f64 },

    #[error("invalid state (rho = {rho}, v = {v}): {reason}")]
    InvalidState { rho: f64, v: f64, reason: &'static str },

    #[error("pressure {target} is not attainable on the admissible density domain")]
    NoRoot { target: f64 },

    #[error(
        "no intermediate state: pressure {target} exceeds the bounded Chaplygin range; \
         this is the delta-shock regime, use the limit analysis instead"
    )]
    DeltaShockRegime { target: f64 },

    #[error("bisection did not converge in {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("degenerate shock: left and intermediate densities coincide ({rho})")]
    DegenerateShock { rho: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("blow-up at cell {cell}, t = {time}: rho = {rho}, v = {v}")]
    BlowUp {
        cell: usize,
        time: f64,
        rho: f64,
        v: f64,
    },

    #[error("maximum number of steps ({0}) exceeded before t_end")]
    MaxSteps(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

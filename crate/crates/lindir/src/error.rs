//! Error type shared across the toolkit.

use crate::deriv::DerivativeResult;
use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("{context}: expected dimension {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid fixture parameters: {0}")]
    Fixture(String),

    #[error(
        "quadrature did not converge: order {order}, {nodes} nodes, estimated error {est:.3e}",
        order = best.order,
        nodes = best.nodes,
        est = best.est_abs_error
    )]
    Accuracy {
        /// Best value reached before the node budget ran out.
        best: DerivativeResult,
    },

    #[error("zero search could not isolate roots near {center} (box half-width {half:.3e})")]
    Resolution { center: Complex64, half: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn fixture(msg: impl Into<String>) -> Self {
        Error::Fixture(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors raised by the simulation and analysis layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A sample or coefficient block does not match the signal dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Histories are append-only; samples must arrive at consecutive indices.
    NonContiguousIndex { expected: usize, got: usize },
    /// A sample required at the given time index is not stored.
    MissingSamples { index: usize },
    /// Pseudo orders must satisfy `l_u >= 1` (and `l_y >= 0`).
    InvalidOrders { l_y: usize, l_u: usize },
    /// Two vectors that must share a layout have different lengths.
    LengthMismatch { expected: usize, got: usize },
    /// Plant id not in the registry.
    UnknownPlant(String),
    /// Trajectory id not in the registry.
    UnknownTrajectory(String),
    /// Disturbance id not in the registry.
    UnknownDisturbance(String),
    /// Requested pseudo orders fall below what the plant's exact
    /// coefficients are constructed for.
    UnsupportedOrders {
        required_l_y: usize,
        required_l_u: usize,
    },
    /// `lambda + phi^2` is numerically zero in the scalar control law.
    SingularGain,
    /// The regularized normal matrix is singular or too ill-conditioned.
    SingularNormalMatrix,
    /// Observer gain outside the stable range [0, 2].
    GainOutOfRange { gain: f64 },
    /// Pole extraction from the identically-zero polynomial.
    ZeroPolynomial,
    /// Transfer-function evaluation at a pole of the closed loop.
    SingularAtPoint,
    /// Final-value computation requires a stable closed loop.
    UnstableLoop { max_modulus: f64 },
    /// Experiment configuration failed validation.
    ConfigInvalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NonContiguousIndex { expected, got } => {
                write!(f, "non-contiguous index: expected {expected}, got {got}")
            }
            Error::MissingSamples { index } => write!(f, "missing sample at index {index}"),
            Error::InvalidOrders { l_y, l_u } => {
                write!(f, "invalid pseudo orders l_y={l_y}, l_u={l_u}")
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::UnknownPlant(id) => write!(f, "unknown plant id: {id}"),
            Error::UnknownTrajectory(id) => write!(f, "unknown trajectory id: {id}"),
            Error::UnknownDisturbance(id) => write!(f, "unknown disturbance id: {id}"),
            Error::UnsupportedOrders {
                required_l_y,
                required_l_u,
            } => write!(
                f,
                "unsupported pseudo orders: plant requires l_y={required_l_y}, l_u={required_l_u}"
            ),
            Error::SingularGain => write!(f, "singular control gain: lambda + phi^2 is zero"),
            Error::SingularNormalMatrix => write!(f, "singular or ill-conditioned normal matrix"),
            Error::GainOutOfRange { gain } => {
                write!(f, "observer gain {gain} outside the stable range [0, 2]")
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial has no pole structure"),
            Error::SingularAtPoint => write!(f, "transfer function singular at this point"),
            Error::UnstableLoop { max_modulus } => {
                write!(f, "closed loop unstable (max pole modulus {max_modulus})")
            }
            Error::ConfigInvalid(reason) => write!(f, "invalid configuration: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

//! Flows of normal-form fields: exact symbolic curves and a Runge–Kutta oracle.

use core::fmt;

use crate::algebra::AlgebraError;
use crate::field::FieldError;

pub mod exp_poly;
pub mod numeric;
pub mod symbolic;

pub use exp_poly::{ExpPolynomial, ExpWeight};
pub use numeric::{numeric_flow, straight_path, DEFAULT_STEP, MAX_STEP};
pub use symbolic::{compose, flow_residual, symbolic_flow, Direction, FlowCurve};

#[derive(Clone, Debug, PartialEq)]
pub enum FlowError {
    Field(FieldError),
    Algebra(AlgebraError),
    /// A supplied curve breaks `q_0 = 0`, `q_j(η; 0) = 0` or the
    /// dependence on `η_0 … η_{j−1}` only.
    Structure { j: usize, reason: &'static str },
    StepTooLarge { index: usize, size: f64 },
    /// The numerical trajectory left the representable range.
    Escaped { index: usize },
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Field(e) => write!(f, "{e}"),
            Self::Algebra(e) => write!(f, "{e}"),
            Self::Structure { j, reason } => write!(f, "flow coordinate {j}: {reason}"),
            Self::StepTooLarge { index, size } => {
                write!(f, "step {index} has size {size}, above the limit {MAX_STEP}")
            }
            Self::Escaped { index } => write!(f, "trajectory escaped at step {index}"),
            Self::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
        }
    }
}

impl core::error::Error for FlowError {}

impl From<FieldError> for FlowError {
    fn from(e: FieldError) -> Self {
        Self::Field(e)
    }
}

impl From<AlgebraError> for FlowError {
    fn from(e: AlgebraError) -> Self {
        Self::Algebra(e)
    }
}

//! Exact arithmetic: rationals, Gaussian rationals, multi-indices, mixed
//! polynomials and truncated series.

use core::fmt;

pub mod gaussian;
pub mod multi_index;
pub mod poly;
pub mod rational;
pub mod series;

pub use gaussian::GaussianRational;
pub use multi_index::{lex_compare, MultiIndex};
pub use poly::{poly_mul, Algebra, MixedPolynomial, Monomial, Var};
pub use rational::{format_rational, parse_rational, Rational};
pub use series::{Truncated, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    DimensionMismatch { left: usize, right: usize },
    IndexOutOfRange { index: usize, n: usize },
    MissingImage { expected: usize, holo: usize, anti: usize },
    InconsistentTarget { left: usize, right: usize },
    Parse(alloc::string::String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Self::IndexOutOfRange { index, n } => {
                write!(f, "variable index {index} out of range for dimension {n}")
            }
            Self::MissingImage { expected, holo, anti } => write!(
                f,
                "substitution needs {expected} images per family, got {holo} holomorphic and {anti} antiholomorphic"
            ),
            Self::InconsistentTarget { left, right } => {
                write!(f, "substitution images live in different spaces ({left} vs {right})")
            }
            Self::Parse(s) => write!(f, "cannot parse rational {s:?}"),
        }
    }
}

impl core::error::Error for AlgebraError {}

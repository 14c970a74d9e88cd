//! Leafwise-holomorphic but non-holomorphic functions, and the numerical
//! checks that tell the two properties apart.

mod check;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::algebra::GaussianRational;
use crate::field::{FieldError, NormalFormField};
use crate::flow::FlowError;

pub use check::{
    chain_rule_cascade_check, leafwise_holomorphy_check, smoothness_probe, verify,
    wirtinger_residual, CascadeEntry, CascadeReport, LeafwiseResult, ProbeSample, Verdict,
    VerificationReport, VerifyConfig, Witness,
};

/// Why a [`SampledFunction`] could not be evaluated at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// The point is not in the domain (wrong length, non-finite).
    OutOfDomain,
    /// The principal branch of a complex power is cut too close to the point.
    OutOfBranch,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::OutOfDomain => write!(f, "point outside the domain"),
            EvalError::OutOfBranch => write!(f, "point too close to the branch cut"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GalleryError {
    InvalidParameters(String),
    Eval(EvalError),
    /// The flow left the finite plane.
    Escape,
    Field(FieldError),
    Flow(FlowError),
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for GalleryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryError::InvalidParameters(why) => write!(f, "invalid parameters: {why}"),
            GalleryError::Eval(e) => write!(f, "evaluation failed: {e}"),
            GalleryError::Escape => write!(f, "trajectory escaped"),
            GalleryError::Field(e) => write!(f, "{e}"),
            GalleryError::Flow(e) => write!(f, "{e}"),
            GalleryError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
        }
    }
}

impl core::error::Error for GalleryError {}

impl From<EvalError> for GalleryError {
    fn from(e: EvalError) -> Self {
        GalleryError::Eval(e)
    }
}

impl From<FieldError> for GalleryError {
    fn from(e: FieldError) -> Self {
        GalleryError::Field(e)
    }
}

impl From<FlowError> for GalleryError {
    fn from(e: FlowError) -> Self {
        GalleryError::Flow(e)
    }
}

type Evaluator = Box<dyn Fn(&[Complex64]) -> Result<Complex64, EvalError> + Send + Sync>;

/// A function `ℂⁿ → ℂ` known only through point evaluations.
pub struct SampledFunction {
    n: usize,
    label: String,
    evaluator: Evaluator,
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction").field("n", &self.n).field("label", &self.label).finish()
    }
}

impl SampledFunction {
    pub fn new<F>(n: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[Complex64]) -> Result<Complex64, EvalError> + Send + Sync + 'static,
    {
        Self { n, label: label.into(), evaluator: Box::new(f) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64, EvalError> {
        if z.len() != self.n || z.iter().any(|c| !c.is_finite()) {
            return Err(EvalError::OutOfDomain);
        }
        let v = (self.evaluator)(z)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::OutOfDomain)
        }
    }
}

/// The three families of counterexamples, all in the variables `(z, w)`.
#[derive(Clone, Debug, PartialEq)]
pub enum CounterexampleSpec {
    /// `(w̄/z̄)·z^{k+2}`: `C^k`, holomorphic on complex lines through 0.
    FiniteSmooth { k: u32 },
    /// `exp(-1/(|w|^t |z|))`, leafwise holomorphic for `αz∂z + βw∂w` when
    /// `α/β = -t`.
    NegativeRatio { t: f64, alpha: Complex64, beta: Complex64 },
    /// `exp[(γ log|z| + (γ̄/t) log|w|)^b]` with `γ = 1/(2α₁) - i/(2α₂)`,
    /// leafwise holomorphic for `αz∂z + t·ᾱ w∂w`, `α = α₁ + iα₂`.
    NonRealRatio { alpha1: f64, alpha2: f64, t: f64, b: f64 },
}

/// Branch cut exclusion angle around the negative real axis.
const BRANCH_MARGIN: f64 = 1e-3;

impl CounterexampleSpec {
    pub fn negative_ratio(t: f64) -> Self {
        let alpha = Complex64::new(1.0, 0.0);
        CounterexampleSpec::NegativeRatio { t, alpha, beta: -alpha / t }
    }

    pub fn nonreal_ratio(alpha1: f64, alpha2: f64, t: f64) -> Self {
        CounterexampleSpec::NonRealRatio { alpha1, alpha2, t, b: 2.0 }
    }

    pub fn validate(&self) -> Result<(), GalleryError> {
        let bad = |why: &str| Err(GalleryError::InvalidParameters(why.into()));
        let positive = |v: f64| v.is_finite() && v > 0.0;
        match *self {
            CounterexampleSpec::FiniteSmooth { k: 0 } => bad("k must be positive"),
            CounterexampleSpec::FiniteSmooth { .. } => Ok(()),
            CounterexampleSpec::NegativeRatio { t, alpha, beta } => {
                if !positive(t) {
                    return bad("t must be a positive real");
                }
                if !(alpha.is_finite() && beta.is_finite()) || alpha.norm() == 0.0 || beta.norm() == 0.0 {
                    return bad("alpha and beta must be finite and nonzero");
                }
                if (alpha / beta + t).norm() > 1e-12 * t {
                    return bad("alpha/beta must equal -t");
                }
                Ok(())
            }
            CounterexampleSpec::NonRealRatio { alpha1, alpha2, t, b } => {
                if !(positive(alpha1) && positive(alpha2) && positive(t)) {
                    return bad("alpha1, alpha2 and t must be positive reals");
                }
                if !(b.is_finite() && b > 1.0) {
                    return bad("b must exceed 1");
                }
                Ok(())
            }
        }
    }

    /// `γ = 1/(2α₁) - i/(2α₂)` for the non-real family.
    pub fn gamma(&self) -> Option<Complex64> {
        match *self {
            CounterexampleSpec::NonRealRatio { alpha1, alpha2, .. } => {
                Some(Complex64::new(0.5 / alpha1, -0.5 / alpha2))
            }
            _ => None,
        }
    }

    /// Eigenvalues of the field along whose leaves the function is holomorphic.
    pub fn field_eigenvalues(&self) -> [Complex64; 2] {
        match *self {
            CounterexampleSpec::FiniteSmooth { .. } => [Complex64::new(1.0, 0.0); 2],
            CounterexampleSpec::NegativeRatio { alpha, beta, .. } => [alpha, beta],
            CounterexampleSpec::NonRealRatio { alpha1, alpha2, t, .. } => {
                let alpha = Complex64::new(alpha1, alpha2);
                [alpha, alpha.conj() * t]
            }
        }
    }

    /// The diagonal field `λ₁ z∂z + λ₂ w∂w` with the eigenvalues above.
    pub fn designated_field(&self) -> Result<NormalFormField, GalleryError> {
        self.validate()?;
        let lambda = self
            .field_eigenvalues()
            .iter()
            .map(|l| GaussianRational::from_complex64(*l))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GalleryError::InvalidParameters("non-finite eigenvalue".into()))?;
        Ok(NormalFormField::diagonal(lambda)?)
    }

    /// Points where `|∂f/∂z̄_j|` is expected to be large.
    pub fn witness_points(&self) -> Vec<[Complex64; 2]> {
        let p = |a: f64, b: f64, c: f64, d: f64| [Complex64::new(a, b), Complex64::new(c, d)];
        match self {
            CounterexampleSpec::FiniteSmooth { .. } => {
                vec![p(0.5, 0.0, 0.5, 0.0), p(0.9, 0.0, 0.9, 0.0)]
            }
            CounterexampleSpec::NegativeRatio { .. } => {
                vec![p(0.8, 0.0, 0.8, 0.0), p(0.95, 0.0, 0.95, 0.0)]
            }
            CounterexampleSpec::NonRealRatio { .. } => {
                vec![p(0.5, 0.0, 0.5, 0.0), p(0.8, 0.0, 0.3, 0.0), p(0.3, 0.0, 0.8, 0.0)]
            }
        }
    }

    /// Starting points `η` of the leaves sampled by [`verify`].
    pub fn leaf_seeds(&self) -> Vec<[Complex64; 2]> {
        let p = |a: f64, b: f64, c: f64, d: f64| [Complex64::new(a, b), Complex64::new(c, d)];
        match self {
            // Moduli near 1 keep the exponent base small, so the third
            // ζ-derivative stays moderate.
            CounterexampleSpec::NonRealRatio { .. } => {
                vec![p(0.8, 0.0, 0.7, 0.0), p(0.5, 0.6, -0.6, 0.4), p(-0.7, -0.4, 0.75, -0.2)]
            }
            _ => vec![p(0.4, 0.0, 0.3, 0.0), p(0.3, 0.2, -0.2, 0.25), p(-0.25, -0.3, 0.35, -0.1)],
        }
    }
}

/// Closed-form evaluator for a counterexample; it is 0 on the degenerate set.
pub fn build_counterexample(spec: &CounterexampleSpec) -> Result<SampledFunction, GalleryError> {
    spec.validate()?;
    let zero = Complex64::new(0.0, 0.0);
    Ok(match *spec {
        CounterexampleSpec::FiniteSmooth { k } => SampledFunction::new(
            2,
            alloc::format!("finite-smooth k={k}"),
            move |z| {
                if z[0] == zero {
                    return Ok(zero);
                }
                Ok(z[1].conj() / z[0].conj() * z[0].powu(k + 2))
            },
        ),
        CounterexampleSpec::NegativeRatio { t, .. } => SampledFunction::new(
            2,
            alloc::format!("negative-ratio t={t}"),
            move |z| {
                if z[0] == zero || z[1] == zero {
                    return Ok(zero);
                }
                let s = crate::float::powf(z[1].norm(), t) * z[0].norm();
                Ok(Complex64::new(crate::float::exp(-1.0 / s), 0.0))
            },
        ),
        CounterexampleSpec::NonRealRatio { t, b, .. } => {
            let gamma = spec.gamma().expect("non-real family");
            let integer = b == crate::float::floor(b);
            SampledFunction::new(2, alloc::format!("nonreal-ratio b={b}"), move |z| {
                if z[0] == zero || z[1] == zero {
                    return Ok(zero);
                }
                let u = gamma * crate::float::ln(z[0].norm())
                    + gamma.conj() / t * crate::float::ln(z[1].norm());
                if !integer && u.re < 0.0 && u.im.abs() <= BRANCH_MARGIN * u.norm() {
                    return Err(EvalError::OutOfBranch);
                }
                Ok(u.powf(b).exp())
            })
        }
    })
}

#[cfg(test)]
mod tests;

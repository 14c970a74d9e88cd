use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::One;

use super::exp_poly::{ExpPolynomial, ExpWeight};
use super::FlowError;
use crate::algebra::{GaussianRational, MixedPolynomial, Var};
use crate::field::{require_valid, NormalFormField};

/// Sign convention of a flow.
///
/// `Forward` solves `dz/dζ = X(z)` with `z_j = e^{λ_jζ}(η_j + q_j)`;
/// `Backward` solves `dz/dζ = −X(z)` with `z_j = e^{−λ_jζ}(η_j + q_j)`,
/// the contracting direction for positive eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> GaussianRational {
        match self {
            Self::Forward => GaussianRational::one(),
            Self::Backward => -GaussianRational::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Forward => Self::Backward,
            Self::Backward => Self::Forward,
        }
    }
}

/// Closed-form flow `z_j(η; ζ) = e^{±λ_jζ}(η_j + q_j(η, ζ))`.
///
/// Each `q_j` is a holomorphic polynomial in `n + 1` variables, `η_0 … η_{n−1}`
/// followed by `ζ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowCurve {
    field: NormalFormField,
    direction: Direction,
    exponent: Direction,
    q: Vec<MixedPolynomial>,
}

impl FlowCurve {
    /// Assembles a candidate curve, checking only the structural conditions.
    /// `direction` picks the ODE `dz/dζ = ±X`, `exponent` the sign in `e^{±λζ}`;
    /// they agree for genuine flows, and [`flow_residual`] exposes mismatches.
    pub fn from_parts(
        field: NormalFormField,
        direction: Direction,
        exponent: Direction,
        q: Vec<MixedPolynomial>,
    ) -> Result<Self, FlowError> {
        let n = field.n();
        if q.len() != n {
            return Err(FlowError::DimensionMismatch { expected: n, got: q.len() });
        }
        for (j, qj) in q.iter().enumerate() {
            if qj.n() != n + 1 {
                return Err(FlowError::Structure { j, reason: "q_j must have n + 1 variables" });
            }
            if !qj.is_holomorphic() {
                return Err(FlowError::Structure { j, reason: "q_j must be holomorphic" });
            }
            if j == 0 && !qj.is_zero() {
                return Err(FlowError::Structure { j, reason: "q_0 must vanish" });
            }
            if !qj.at_zero(Var::Holo, n).is_zero() {
                return Err(FlowError::Structure { j, reason: "q_j(eta; 0) must vanish" });
            }
            if (j..n).any(|k| qj.depends_on(Var::Holo, k)) {
                return Err(FlowError::Structure { j, reason: "q_j may only involve eta_0 .. eta_{j-1}" });
            }
        }
        Ok(Self { field, direction, exponent, q })
    }

    pub fn field(&self) -> &NormalFormField {
        &self.field
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn exponent(&self) -> Direction {
        self.exponent
    }

    pub fn q(&self) -> &[MixedPolynomial] {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.field.n()
    }

    /// `z_j(η; ζ)` as an exponential polynomial.
    pub fn coordinate(&self, j: usize) -> ExpPolynomial {
        let n = self.n();
        let weight = ExpWeight::holomorphic(&self.exponent.sign() * &self.field.lambda()[j]);
        ExpPolynomial::from_term(weight, &MixedPolynomial::holo_var(n + 1, j) + &self.q[j])
    }

    pub fn coordinates(&self) -> Vec<ExpPolynomial> {
        (0..self.n()).map(|j| self.coordinate(j)).collect()
    }

    /// `∂z_k/∂η_j` as an exponential polynomial.
    pub fn d_coordinate_d_eta(&self, k: usize, j: usize) -> ExpPolynomial {
        let n = self.n();
        let mut inner = self.q[k].wirtinger_d(Var::Holo, j).expect("index in range");
        if k == j {
            inner = &inner + &MixedPolynomial::one(n + 1);
        }
        let weight = ExpWeight::holomorphic(&self.exponent.sign() * &self.field.lambda()[k]);
        ExpPolynomial::from_term(weight, inner)
    }

    /// Floating evaluation of `z(η; ζ)`.
    pub fn evaluate(&self, eta: &[Complex64], zeta: Complex64) -> Vec<Complex64> {
        let mut point = eta.to_vec();
        point.push(zeta);
        let sign = if self.exponent == Direction::Forward { 1.0 } else { -1.0 };
        self.field
            .lambda()
            .iter()
            .enumerate()
            .map(|(j, l)| (l.to_complex64() * zeta * sign).exp() * (eta[j] + self.q[j].eval_at(&point)))
            .collect()
    }
}

/// Exact flow by successive variation of constants.
///
/// Substituting the ansatz into `dz/dζ = ±X(z)` and using the resonance
/// identity `Σ m_k λ_k = λ_j` for every monomial of `g_j` cancels the
/// exponentials, leaving `dq_j/dζ = ± g_j(η + q)`. Since `g_j` only reads
/// coordinates below `j`, the `q_j` follow one by one as polynomial integrals.
pub fn symbolic_flow(field: &NormalFormField, direction: Direction) -> Result<FlowCurve, FlowError> {
    require_valid(field)?;
    let n = field.n();
    let zeta = n;
    let sign = direction.sign();
    let mut reduced: Vec<MixedPolynomial> = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for j in 0..n {
        let gj = &field.g()[j];
        let qj = if gj.is_zero() {
            MixedPolynomial::zero(n + 1)
        } else {
            // g_j only reads u_0 … u_{j−1}; later slots are placeholders.
            let mut holo = reduced.clone();
            holo.extend((j..n).map(|k| MixedPolynomial::holo_var(n + 1, k)));
            let anti: Vec<MixedPolynomial> = holo.iter().map(MixedPolynomial::conjugate).collect();
            let integrand = gj.substitute(&holo, &anti)?.scale(&sign);
            integrand.antiderivative(Var::Holo, zeta)?
        };
        reduced.push(&MixedPolynomial::holo_var(n + 1, j) + &qj);
        q.push(qj);
    }
    FlowCurve::from_parts(field.clone(), direction, direction, q)
}

/// Per-coordinate residual `dz_j/dζ ∓ X_j(z(η; ζ))`, exactly zero for a true flow.
pub fn flow_residual(curve: &FlowCurve) -> Vec<ExpPolynomial> {
    let z = curve.coordinates();
    let zbar: Vec<ExpPolynomial> = z.iter().map(ExpPolynomial::conj).collect();
    let sign = curve.direction.sign();
    (0..curve.n())
        .map(|j| {
            let rhs = curve.field.component(j).substitute(&z, &zbar).expect("consistent images");
            z[j].d_zeta().sub(&crate::algebra::Algebra::alg_scale(&rhs, &sign))
        })
        .collect()
}

/// `F(z(η; ζ))` for a mixed polynomial `F` in the field's `n` variables.
pub fn compose(curve: &FlowCurve, f: &MixedPolynomial) -> Result<ExpPolynomial, FlowError> {
    if f.n() != curve.n() {
        return Err(FlowError::DimensionMismatch { expected: curve.n(), got: f.n() });
    }
    let z = curve.coordinates();
    let zbar: Vec<ExpPolynomial> = z.iter().map(ExpPolynomial::conj).collect();
    Ok(f.substitute(&z, &zbar)?)
}

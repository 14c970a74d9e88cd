use alloc::vec::Vec;

use num_complex::Complex64;

use super::{build_counterexample, CounterexampleSpec, EvalError, GalleryError, SampledFunction};
use crate::field::NormalFormField;
use crate::flow::{symbolic_flow, Direction};

/// Tolerances and sampling plan for [`verify`].
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Finite-difference step.
    pub h: f64,
    pub leafwise_tol: f64,
    /// Smallest `|∂f/∂z̄_j|` that counts as a non-holomorphy witness.
    pub witness_floor: f64,
    /// `ζ` samples form a `grid × grid` lattice on `[-radius, radius]²`.
    pub grid: usize,
    pub radius: f64,
    pub min_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { h: 1e-4, leafwise_tol: 1e-6, witness_floor: 0.1, grid: 11, radius: 0.5, min_samples: 100 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    LeafwiseHolomorphicNotGlobal,
    Holomorphic,
    Inconsistent,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LeafwiseResult {
    /// Largest `|∂G/∂ζ̄|` over evaluated samples.
    pub max_residual: f64,
    pub evaluated: usize,
    /// Samples whose stencil left the domain or crossed a branch cut.
    pub skipped: usize,
}

impl LeafwiseResult {
    fn merge(&mut self, other: &LeafwiseResult) {
        self.max_residual = self.max_residual.max(other.max_residual);
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub point: Vec<Complex64>,
    /// `∂f/∂z̄_j` estimates; `None` when the stencil could not be evaluated.
    pub dbar: Option<Vec<Complex64>>,
    pub max_abs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeSample {
    pub radius: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub spec: CounterexampleSpec,
    pub label: alloc::string::String,
    pub config: VerifyConfig,
    pub leafwise: LeafwiseResult,
    pub witnesses: Vec<Witness>,
    pub best_witness: Option<usize>,
    pub verdict: Verdict,
    /// Name of the quantity tabulated in `probe`.
    pub probe_quantity: &'static str,
    pub probe: Vec<ProbeSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CascadeEntry {
    pub j: usize,
    /// `∂G/∂η̄_j` by finite differences.
    pub lhs: Complex64,
    /// `Σ_{k≥j} ∂F/∂z̄_k(z) · conj(∂z_k/∂η_j)`.
    pub rhs: Complex64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CascadeReport {
    pub point: Vec<Complex64>,
    pub entries: Vec<CascadeEntry>,
    pub max_error: f64,
}

fn check_step(h: f64) -> Result<(), GalleryError> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(GalleryError::InvalidParameters("step must be positive".into()))
    }
}

/// `½(∂_x + i∂_y) g` at `z` by central differences.
fn dbar_1d<G>(g: G, z: Complex64, h: f64) -> Result<Complex64, EvalError>
where
    G: Fn(Complex64) -> Result<Complex64, EvalError>,
{
    let i = Complex64::new(0.0, 1.0);
    let dx = (g(z + h)? - g(z - h)?) / (2.0 * h);
    let dy = (g(z + i * h)? - g(z - i * h)?) / (2.0 * h);
    Ok((dx + i * dy) * 0.5)
}

/// Estimates `∂f/∂z̄_j` for every `j`.
pub fn wirtinger_residual(
    f: &SampledFunction,
    point: &[Complex64],
    h: f64,
) -> Result<Vec<Complex64>, GalleryError> {
    check_step(h)?;
    if point.len() != f.n() {
        return Err(GalleryError::DimensionMismatch { expected: f.n(), got: point.len() });
    }
    (0..point.len())
        .map(|j| {
            let slice = |v: Complex64| {
                let mut p = point.to_vec();
                p[j] = v;
                f.eval(&p)
            };
            dbar_1d(slice, point[j], h).map_err(GalleryError::from)
        })
        .collect()
}

/// Largest `|∂G/∂ζ̄|` for `G(ζ) = f(z(η; ζ))` along the forward flow of `field`.
pub fn leafwise_holomorphy_check(
    f: &SampledFunction,
    field: &NormalFormField,
    eta: &[Complex64],
    zeta_samples: &[Complex64],
    h: f64,
) -> Result<LeafwiseResult, GalleryError> {
    check_step(h)?;
    if eta.len() != field.n() || f.n() != field.n() {
        return Err(GalleryError::DimensionMismatch { expected: field.n(), got: eta.len() });
    }
    let curve = symbolic_flow(field, Direction::Forward)?;
    let escaped = core::cell::Cell::new(false);
    let g = |s: Complex64| {
        let z = curve.evaluate(eta, s);
        if z.iter().any(|c| !c.is_finite()) {
            escaped.set(true);
            return Err(EvalError::OutOfDomain);
        }
        f.eval(&z)
    };
    let mut out = LeafwiseResult::default();
    for &zeta in zeta_samples {
        match dbar_1d(g, zeta, h) {
            Ok(r) => {
                out.max_residual = out.max_residual.max(r.norm());
                out.evaluated += 1;
            }
            Err(_) if escaped.get() => return Err(GalleryError::Escape),
            Err(_) => out.skipped += 1,
        }
    }
    Ok(out)
}

/// Compares `∂G/∂η̄_j` for `G(η) = F(z(η; ζ))` along the backward flow
/// `z_j = e^{-λ_j ζ}(η_j + q_j)` with the chain rule
/// `∂G/∂η̄_j = Σ_{k≥j} ∂F/∂z̄_k · conj(∂z_k/∂η_j)`. For `j = n` this is
/// `∂F/∂z̄_n · e^{-λ̄_n ζ̄}`; lower `j` pick up the `∂q_k/∂η_j` terms.
pub fn chain_rule_cascade_check(
    f: &SampledFunction,
    field: &NormalFormField,
    eta: &[Complex64],
    zeta: Complex64,
    h: f64,
) -> Result<CascadeReport, GalleryError> {
    check_step(h)?;
    let n = field.n();
    if eta.len() != n || f.n() != n {
        return Err(GalleryError::DimensionMismatch { expected: n, got: eta.len() });
    }
    let curve = symbolic_flow(field, Direction::Backward)?;
    let z = curve.evaluate(eta, zeta);
    if z.iter().any(|c| !c.is_finite()) {
        return Err(GalleryError::Escape);
    }
    let df = wirtinger_residual(f, &z, h)?;
    let mut entries = Vec::with_capacity(n);
    for j in 0..n {
        let g = |v: Complex64| {
            let mut e = eta.to_vec();
            e[j] = v;
            f.eval(&curve.evaluate(&e, zeta))
        };
        let lhs = dbar_1d(g, eta[j], h)?;
        let rhs: Complex64 = (j..n)
            .map(|k| df[k] * curve.d_coordinate_d_eta(k, j).eval(eta, zeta).conj())
            .sum();
        entries.push(CascadeEntry { j, lhs, rhs, error: (lhs - rhs).norm() });
    }
    let max_error = entries.iter().map(|e| e.error).fold(0.0, f64::max);
    Ok(CascadeReport { point: z, entries, max_error })
}

/// Qualitative behaviour near the degenerate set, reported but never judged.
///
/// For the finite-smooth family this is the order-`(k+2)` difference quotient
/// in the `Im z` direction at `(r, 1/2)`, which grows like `1/r`; for the
/// others it is `|f(r, r)|`.
pub fn smoothness_probe(
    spec: &CounterexampleSpec,
    f: &SampledFunction,
) -> (&'static str, Vec<ProbeSample>) {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match *spec {
        CounterexampleSpec::FiniteSmooth { k } => {
            let m = k + 2;
            let samples = [0.1, 0.03, 0.01, 0.003]
                .iter()
                .map(|&r| {
                    let s = r / 8.0;
                    let mut acc = c(0.0, 0.0);
                    let mut binom = 1.0;
                    for i in 0..=m {
                        let offset = s * (m as f64 / 2.0 - i as f64);
                        let v = f.eval(&[c(r, offset), c(0.5, 0.0)]).unwrap_or(c(f64::NAN, 0.0));
                        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                        acc += v * (sign * binom);
                        binom = binom * (m - i) as f64 / (i + 1) as f64;
                    }
                    ProbeSample { radius: r, value: acc.norm() / crate::float::powi(s, m as i32) }
                })
                .collect();
            ("difference quotient of order k+2 in Im z at (r, 1/2)", samples)
        }
        _ => {
            let samples = [0.5, 0.2, 0.1, 0.05]
                .iter()
                .map(|&r| ProbeSample {
                    radius: r,
                    value: f.eval(&[c(r, 0.0), c(r, 0.0)]).map_or(f64::NAN, |v| v.norm()),
                })
                .collect();
            ("|f(r, r)|", samples)
        }
    }
}

/// Builds the counterexample, samples it along leaves of its field and at its
/// witness points, and classifies the outcome.
pub fn verify(
    spec: &CounterexampleSpec,
    config: &VerifyConfig,
) -> Result<VerificationReport, GalleryError> {
    check_step(config.h)?;
    if config.grid < 2 || !(config.radius.is_finite() && config.radius > 0.0) {
        return Err(GalleryError::InvalidParameters("sample grid needs ≥ 2 points and radius > 0".into()));
    }
    let f = build_counterexample(spec)?;
    let field = spec.designated_field()?;
    let step = 2.0 * config.radius / (config.grid - 1) as f64;
    let zetas: Vec<Complex64> = (0..config.grid)
        .flat_map(|a| {
            (0..config.grid).map(move |b| {
                Complex64::new(-config.radius + a as f64 * step, -config.radius + b as f64 * step)
            })
        })
        .collect();
    let mut leafwise = LeafwiseResult::default();
    for eta in spec.leaf_seeds() {
        leafwise.merge(&leafwise_holomorphy_check(&f, &field, &eta, &zetas, config.h)?);
    }
    let witnesses: Vec<Witness> = spec
        .witness_points()
        .iter()
        .map(|p| {
            let dbar = wirtinger_residual(&f, p, config.h).ok();
            let max_abs = dbar.as_ref().map_or(0.0, |d| d.iter().map(|v| v.norm()).fold(0.0, f64::max));
            Witness { point: p.to_vec(), dbar, max_abs }
        })
        .collect();
    let best_witness = (0..witnesses.len())
        .filter(|&i| witnesses[i].dbar.is_some())
        .max_by(|&a, &b| witnesses[a].max_abs.total_cmp(&witnesses[b].max_abs));
    let best = best_witness.map_or(0.0, |i| witnesses[i].max_abs);
    let verdict = if leafwise.evaluated < config.min_samples || leafwise.max_residual > config.leafwise_tol {
        Verdict::Inconsistent
    } else if best >= config.witness_floor {
        Verdict::LeafwiseHolomorphicNotGlobal
    } else if best_witness.is_some() && best <= config.leafwise_tol {
        Verdict::Holomorphic
    } else {
        Verdict::Inconsistent
    };
    let (probe_quantity, probe) = smoothness_probe(spec, &f);
    Ok(VerificationReport {
        spec: spec.clone(),
        label: f.label().into(),
        config: config.clone(),
        leafwise,
        witnesses,
        best_witness,
        verdict,
        probe_quantity,
        probe,
    })
}

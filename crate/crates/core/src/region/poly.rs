use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::float;

/// Univariate polynomial with `f64` complex coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

/// One root of a [`ComplexPoly`] as returned by [`ComplexPoly::roots`].
#[derive(Clone, Debug, PartialEq)]
pub struct RootEstimate {
    pub value: Complex64,
    pub multiplicity: usize,
    /// `|P(value)|` after refinement.
    pub residual: f64,
    pub converged: bool,
}

const MAX_ITER: usize = 500;
const CLUSTER_TOL: f64 = 1e-8;

impl ComplexPoly {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `ζ - root`.
    pub fn linear(root: Complex64) -> Self {
        Self::new(vec![-root, Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Complex64::new(1.0, 0.0)), |acc, _| acc.mul(self))
    }

    /// Sum of coefficient moduli; bounds `|P(t)|` by `S·|t|^deg` for `|t| ≥ 1`.
    pub(crate) fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// All roots, by Aberth–Ehrlich simultaneous iteration followed by Newton
    /// polishing. Roots closer than `1e-8` are merged into one entry.
    pub fn roots(&self) -> Vec<RootEstimate> {
        let d = self.degree();
        if self.is_zero() || d == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[d];
        let monic = self.scale(lead.inv());
        let dp = monic.derivative();
        let radius = 1.0
            + monic.coeffs[..d]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| {
                let angle = 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / d as f64;
                Complex64::from_polar(0.5 * radius, angle)
            })
            .collect();
        let mut converged = vec![false; d];
        for _ in 0..MAX_ITER {
            let mut moved = 0.0f64;
            for i in 0..d {
                let p = monic.eval(z[i]);
                if p.norm() == 0.0 {
                    converged[i] = true;
                    continue;
                }
                let ratio = p / dp.eval(z[i]);
                let repulsion: Complex64 = (0..d)
                    .filter(|&k| k != i)
                    .map(|k| (z[i] - z[k]).inv())
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[i] -= step;
                    moved = moved.max(step.norm() / (1.0 + z[i].norm()));
                    converged[i] = step.norm() <= 1e-15 * (1.0 + z[i].norm());
                }
            }
            if moved <= 1e-15 {
                converged.iter_mut().for_each(|c| *c = true);
                break;
            }
        }
        for (zi, ok) in z.iter_mut().zip(&mut converged) {
            for _ in 0..5 {
                let step = monic.eval(*zi) / dp.eval(*zi);
                if !step.is_finite() || step.norm() == 0.0 {
                    break;
                }
                let candidate = *zi - step;
                if monic.eval(candidate).norm() >= monic.eval(*zi).norm() {
                    break;
                }
                *zi = candidate;
            }
            *ok = *ok || monic.eval(*zi).norm() <= 1e-12 * float::powi(1.0 + zi.norm(), d as i32);
        }
        let mut out: Vec<RootEstimate> = Vec::new();
        for (zi, ok) in z.into_iter().zip(converged) {
            if let Some(r) = out.iter_mut().find(|r| (r.value - zi).norm() <= CLUSTER_TOL) {
                r.value = (r.value * r.multiplicity as f64 + zi) / (r.multiplicity + 1) as f64;
                r.multiplicity += 1;
                r.converged &= ok;
            } else {
                out.push(RootEstimate { value: zi, multiplicity: 1, residual: 0.0, converged: ok });
            }
        }
        for r in &mut out {
            r.residual = self.eval(r.value).norm();
        }
        out.sort_by(|a, b| {
            (a.value.re, a.value.im)
                .partial_cmp(&(b.value.re, b.value.im))
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        out
    }

    /// Smallest `r ≥ 1` with `|P(t)|·e^{-λt} < 1` for every real `t > r`,
    /// from the bound `|P(t)| ≤ S·t^deg`.
    pub(crate) fn ray_bound(&self, lambda: f64) -> f64 {
        let d = self.degree() as i32;
        let s = self.abs_sum();
        let ok = |t: f64| s * float::powi(t, d) * float::exp(-lambda * t) < 1.0;
        let mut lo = (d as f64 / lambda).max(1.0);
        if ok(lo) {
            return lo;
        }
        let mut hi = 2.0 * lo;
        while !ok(hi) {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::FlowError;
use crate::field::NormalFormField;

/// Default step length for [`straight_path`].
pub const DEFAULT_STEP: f64 = 0.01;
/// Largest step `numeric_flow` accepts.
pub const MAX_STEP: f64 = 0.1;

const ESCAPE_NORM: f64 = 1e150;

/// `X` with coefficients rounded to `f64`, for repeated evaluation.
struct FloatField {
    lambda: Vec<Complex64>,
    /// Per component: `(coefficient, [(variable, exponent)])`.
    g: Vec<Vec<(Complex64, Vec<(usize, u32)>)>>,
}

impl FloatField {
    fn new(field: &NormalFormField) -> Self {
        let g = field
            .g()
            .iter()
            .map(|gj| {
                gj.terms()
                    .map(|(m, c)| {
                        let vars = m
                            .holo
                            .exponents()
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e != 0)
                            .map(|(k, &e)| (k, e))
                            .collect();
                        (c.to_complex64(), vars)
                    })
                    .collect()
            })
            .collect();
        Self { lambda: field.lambda().iter().map(|l| l.to_complex64()).collect(), g }
    }

    fn eval(&self, z: &[Complex64], out: &mut [Complex64]) {
        for (j, slot) in out.iter_mut().enumerate() {
            let mut v = self.lambda[j] * z[j];
            for (c, vars) in &self.g[j] {
                let mut t = *c;
                for &(k, e) in vars {
                    t *= z[k].powu(e);
                }
                v += t;
            }
            *slot = v;
        }
    }
}

/// Splits the segment `0 → zeta` into equal steps no longer than `max_step`.
pub fn straight_path(zeta: Complex64, max_step: f64) -> Vec<Complex64> {
    let len = zeta.norm();
    if len == 0.0 {
        return Vec::new();
    }
    let count = crate::float::ceil(len / max_step).max(1.0) as usize;
    vec![zeta / count as f64; count]
}

/// Integrates `dz/dζ = X(z)` from `eta` along the given `ζ` increments with
/// the classical fourth-order Runge–Kutta scheme.
pub fn numeric_flow(
    field: &NormalFormField,
    eta: &[Complex64],
    steps: &[Complex64],
) -> Result<Vec<Complex64>, FlowError> {
    let n = field.n();
    if eta.len() != n {
        return Err(FlowError::DimensionMismatch { expected: n, got: eta.len() });
    }
    if let Some((index, h)) = steps.iter().enumerate().find(|(_, h)| h.norm() > MAX_STEP) {
        return Err(FlowError::StepTooLarge { index, size: h.norm() });
    }
    let x = FloatField::new(field);
    let mut z = eta.to_vec();
    let zero = Complex64::new(0.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4) = (vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]);
    let mut tmp = vec![zero; n];
    for (index, &h) in steps.iter().enumerate() {
        x.eval(&z, &mut k1);
        for i in 0..n {
            tmp[i] = z[i] + k1[i] * (h * 0.5);
        }
        x.eval(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = z[i] + k2[i] * (h * 0.5);
        }
        x.eval(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = z[i] + k3[i] * h;
        }
        x.eval(&tmp, &mut k4);
        for i in 0..n {
            z[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
        if z.iter().any(|v| !v.re.is_finite() || !v.im.is_finite() || v.norm() > ESCAPE_NORM) {
            return Err(FlowError::Escaped { index });
        }
    }
    Ok(z)
}

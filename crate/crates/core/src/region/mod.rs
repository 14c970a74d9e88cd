//! The plane regions `D(P, λ) = {ζ : |P_j(ζ)| e^{-λ_j Re ζ} < 1 for all j}`.
//!
//! Everything here is floating point and diagnostic: membership, a raster of
//! the region with its connected components, the component `D★` that contains
//! a right real ray, admissible-sequence candidates and the bounds on
//! `g_ℓ(ζ) = f(ζ) e^{λ₁ℓζ} / P₁(ζ)^ℓ`.

mod bounds;
mod poly;
mod raster;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::float;

pub use bounds::{
    admissible_candidates, boundary_bound_report, g_ell_transform, order_permutation,
    region_diagnostics, BoundRow, BoundaryReport, Candidate, CandidateKind, RegionDiagnostics,
};
pub use poly::{ComplexPoly, RootEstimate};
pub use raster::{find_star_component, BBox, ComponentMap};

#[derive(Clone, Debug, PartialEq)]
pub enum RegionError {
    InvalidSpec(String),
    InvalidGrid(String),
    /// No right real ray of member cells inside the box.
    RayNotFound { re_max: f64 },
    /// `P₁` vanishes at sample `index`.
    Pole { index: usize },
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for RegionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionError::InvalidSpec(why) => write!(f, "invalid region spec: {why}"),
            RegionError::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            RegionError::RayNotFound { re_max } => write!(
                f,
                "no right real ray lies in the region up to Re = {re_max}; try a larger box"
            ),
            RegionError::Pole { index } => write!(f, "P_1 vanishes at sample {index}"),
            RegionError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} samples, got {got}")
            }
        }
    }
}

impl core::error::Error for RegionError {}

/// The data `(P, λ)` of a region.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionSpec {
    p: Vec<ComplexPoly>,
    lambda: Vec<f64>,
}

impl RegionSpec {
    pub fn new(p: Vec<ComplexPoly>, lambda: Vec<f64>) -> Result<Self, RegionError> {
        if p.is_empty() {
            return Err(RegionError::InvalidSpec("no polynomials".into()));
        }
        if p.len() != lambda.len() {
            return Err(RegionError::InvalidSpec(alloc::format!(
                "{} polynomials but {} exponents",
                p.len(),
                lambda.len()
            )));
        }
        if let Some(j) = p.iter().position(ComplexPoly::is_zero) {
            return Err(RegionError::InvalidSpec(alloc::format!("P_{} is zero", j + 1)));
        }
        if let Some(j) = p.iter().position(|q| q.coeffs().iter().any(|c| !c.is_finite())) {
            return Err(RegionError::InvalidSpec(alloc::format!(
                "P_{} has a non-finite coefficient",
                j + 1
            )));
        }
        if let Some(j) = lambda.iter().position(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(RegionError::InvalidSpec(alloc::format!(
                "lambda_{} must be a positive real",
                j + 1
            )));
        }
        Ok(Self { p, lambda })
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[ComplexPoly] {
        &self.p
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// `(|P_j(ζ)| e^{-λ_j Re ζ})_j`.
    pub fn profile(&self, zeta: Complex64) -> Vec<f64> {
        self.p
            .iter()
            .zip(&self.lambda)
            .map(|(p, l)| p.eval(zeta).norm() * float::exp(-l * zeta.re))
            .collect()
    }

    /// Coordinates permuted so that `perm[k]` becomes entry `k`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            p: perm.iter().map(|&j| self.p[j].clone()).collect(),
            lambda: perm.iter().map(|&j| self.lambda[j]).collect(),
        }
    }

    /// A real `r ≥ 1` with `(r, ∞) ⊂ D`, certified by coefficient bounds.
    pub fn certified_ray(&self) -> f64 {
        self.p
            .iter()
            .zip(&self.lambda)
            .map(|(p, &l)| p.ray_bound(l))
            .fold(1.0, f64::max)
    }
}

/// Whether `ζ ∈ D(P, λ)`; the inequalities are strict.
pub fn membership(spec: &RegionSpec, zeta: Complex64) -> bool {
    spec.p
        .iter()
        .zip(&spec.lambda)
        .all(|(p, l)| p.eval(zeta).norm() * float::exp(-l * zeta.re) < 1.0)
}

#[cfg(test)]
mod tests;

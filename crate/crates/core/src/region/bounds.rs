use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::raster::{find_star_component, BBox, ComponentMap};
use super::{membership, RegionError, RegionSpec};
use crate::float;

/// Relative slack when comparing sampled `|g_ℓ|` against `M·C^ℓ`.
const BOUND_SLACK: f64 = 1e-9;
/// `f` counts as unbounded when it exceeds this multiple of its sampled
/// supremum somewhere along the right ray.
const GROWTH_FACTOR: f64 = 2.0;
const RAY_PROBES: i32 = 10;

/// Cutoff data estimated for a region, in the reordered coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionDiagnostics {
    /// Lower bound for `|P_j|` on `Re ζ > A`.
    pub epsilon: f64,
    pub a_cutoff: f64,
    /// Smallest `|P₁(ζ)| e^{-λ₁ Re ζ}` over sampled `∂D` with `Re ζ ≥ A`;
    /// `None` when no boundary cell lies there.
    pub delta0_estimate: Option<f64>,
    /// Entry `k` of the reordered spec is entry `order_permutation[k]` of the
    /// original.
    pub order_permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CandidateKind {
    /// Root of `P_poly` lying in `D`.
    Root { poly: usize, multiplicity: usize, residual: f64, converged: bool },
    /// Real point right of the certified ray.
    RightMarching,
}

/// A point from which admissible sequences can be built, with its profile
/// `(|P_j(ζ)| e^{-λ_j Re ζ})_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub zeta: Complex64,
    pub kind: CandidateKind,
    pub profile: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub ell: u32,
    /// Largest sampled `|g_ℓ|` on `∂D(P, λ; A)`.
    pub boundary_max: f64,
    /// The same over boundary samples in the right half of their `Re` range.
    pub tail_max: f64,
    /// `M·C^ℓ`.
    pub bound: f64,
    pub violated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub diagnostics: RegionDiagnostics,
    /// `M`: largest `|f|` over member cells.
    pub sup_f: f64,
    /// `C = max(δ₀⁻¹, ε⁻¹ e^{λ₁A})`.
    pub c_constant: f64,
    pub boundary_samples: usize,
    pub rows: Vec<BoundRow>,
    /// Largest `|f|` at `r + 2^k` along the certified ray.
    pub ray_sup: f64,
    /// `f` grows along the ray beyond its sampled supremum.
    pub unbounded: bool,
}

impl BoundaryReport {
    pub fn violation(&self) -> bool {
        self.unbounded || self.rows.iter().any(|r| r.violated)
    }
}

/// Coordinate order with `deg(P₁)/λ₁` maximal, ties kept in original order.
pub fn order_permutation(spec: &RegionSpec) -> Vec<usize> {
    let key = |j: usize| spec.p()[j].degree() as f64 / spec.lambda()[j];
    let mut perm: Vec<usize> = (0..spec.n()).collect();
    perm.sort_by(|&a, &b| key(b).partial_cmp(&key(a)).unwrap_or(core::cmp::Ordering::Equal));
    perm
}

/// Roots of the `P_j` lying in `D`, then `count` real points `r + 1, r + 2, …`
/// right of the certified ray `r`.
pub fn admissible_candidates(
    spec: &RegionSpec,
    count: usize,
) -> Result<Vec<Candidate>, RegionError> {
    if count == 0 {
        return Err(RegionError::InvalidSpec("candidate count must be at least 1".into()));
    }
    let mut out = Vec::new();
    for (j, p) in spec.p().iter().enumerate() {
        for root in p.roots() {
            if membership(spec, root.value) {
                out.push(Candidate {
                    zeta: root.value,
                    kind: CandidateKind::Root {
                        poly: j,
                        multiplicity: root.multiplicity,
                        residual: root.residual,
                        converged: root.converged,
                    },
                    profile: spec.profile(root.value),
                });
            }
        }
    }
    let r = spec.certified_ray();
    for k in 1..=count {
        let zeta = Complex64::new(r + k as f64, 0.0);
        out.push(Candidate { zeta, kind: CandidateKind::RightMarching, profile: spec.profile(zeta) });
    }
    Ok(out)
}

/// `g_ℓ(ζ) = f(ζ) e^{λ₁ℓζ} / P₁(ζ)^ℓ` at each point, given `values[i] = f(points[i])`.
/// `spec` should already be reordered so that its first entry is `P₁`.
pub fn g_ell_transform(
    values: &[Complex64],
    spec: &RegionSpec,
    ell: u32,
    points: &[Complex64],
) -> Result<Vec<Complex64>, RegionError> {
    if values.len() != points.len() {
        return Err(RegionError::DimensionMismatch { expected: points.len(), got: values.len() });
    }
    if ell == 0 {
        return Ok(values.to_vec());
    }
    let (p1, l1) = (&spec.p()[0], spec.lambda()[0]);
    values
        .iter()
        .zip(points)
        .enumerate()
        .map(|(i, (f, z))| {
            let p = p1.eval(*z);
            if p.norm() == 0.0 {
                return Err(RegionError::Pole { index: i });
            }
            let g = f * (z * (l1 * ell as f64)).exp() / p.powu(ell);
            if g.is_finite() {
                Ok(g)
            } else {
                Err(RegionError::Pole { index: i })
            }
        })
        .collect()
}

/// `A` sits one unit right of every root (or at the left edge of the box when
/// there are none); `ε` is `|lead| Π (A - Re root)` minimized over `j`.
pub fn region_diagnostics(spec: &RegionSpec, map: &ComponentMap) -> RegionDiagnostics {
    let perm = order_permutation(spec);
    let s = spec.permuted(&perm);
    let roots: Vec<_> = s.p().iter().map(|p| p.roots()).collect();
    let a_cutoff = roots
        .iter()
        .flatten()
        .map(|r| r.value.re + 1.0)
        .fold(map.bbox().re_min, f64::max);
    let epsilon = s
        .p()
        .iter()
        .zip(&roots)
        .map(|(p, rs)| {
            let lead = p.coeffs()[p.degree()].norm();
            rs.iter().fold(lead, |acc, r| {
                acc * float::powi(a_cutoff - r.value.re, r.multiplicity as i32)
            })
        })
        .fold(f64::INFINITY, f64::min)
        * (1.0 - BOUND_SLACK);
    let delta0_estimate = map
        .boundary_cells()
        .into_iter()
        .map(|(c, r)| map.cell_center(c, r))
        .filter(|z| z.re >= a_cutoff)
        .map(|z| s.profile(z)[0])
        .reduce(f64::min);
    RegionDiagnostics { epsilon, a_cutoff, delta0_estimate, order_permutation: perm }
}

/// Samples the bound `|g_ℓ| ≤ M·C^ℓ` of the unique-continuation argument on
/// the raster boundary of `D(P, λ; A) = D ∩ {Re ζ > A}` for `ℓ = 0..=ell_max`.
pub fn boundary_bound_report<F>(
    spec: &RegionSpec,
    f: F,
    ell_max: u32,
    bbox: BBox,
    resolution: f64,
) -> Result<BoundaryReport, RegionError>
where
    F: Fn(Complex64) -> Complex64,
{
    let map = find_star_component(spec, bbox, resolution)?;
    let diagnostics = region_diagnostics(spec, &map);
    let s = spec.permuted(&diagnostics.order_permutation);
    let (p1, l1) = (&s.p()[0], s.lambda()[0]);
    let a = diagnostics.a_cutoff;

    let mut sup_f = 0.0f64;
    let mut line_col = None;
    for row in 0..map.rows() {
        for col in 0..map.cols() {
            if map.label(col, row) != 0 {
                sup_f = sup_f.max(f(map.cell_center(col, row)).norm());
            }
        }
    }
    for col in 0..map.cols() {
        if map.cell_center(col, 0).re >= a {
            line_col = Some(col);
            break;
        }
    }
    let mut on_boundary = vec![false; map.cols() * map.rows()];
    for (c, r) in map.boundary_cells() {
        if map.cell_center(c, r).re >= a {
            on_boundary[r * map.cols() + c] = true;
        }
    }
    if let Some(c) = line_col {
        for r in 0..map.rows() {
            if map.label(c, r) != 0 {
                on_boundary[r * map.cols() + c] = true;
            }
        }
    }
    let samples: Vec<Complex64> = on_boundary
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(k, _)| map.cell_center(k % map.cols(), k / map.cols()))
        .collect();
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| (lo.min(z.re), hi.max(z.re)));
    let tail_from = 0.5 * (lo + hi);

    let c_constant = diagnostics
        .delta0_estimate
        .map_or(0.0, |d| 1.0 / d)
        .max(float::exp(l1 * a) / diagnostics.epsilon);
    let moduli: Vec<(f64, f64, f64)> = samples
        .iter()
        .map(|z| (z.re, f(*z).norm(), float::exp(l1 * z.re) / p1.eval(*z).norm()))
        .collect();
    let rows = (0..=ell_max)
        .map(|ell| {
            let mut boundary_max = 0.0f64;
            let mut tail_max = 0.0f64;
            for &(re, fz, ratio) in &moduli {
                let g = fz * float::powi(ratio, ell as i32);
                boundary_max = boundary_max.max(g);
                if re >= tail_from {
                    tail_max = tail_max.max(g);
                }
            }
            let bound = sup_f * float::powi(c_constant, ell as i32);
            BoundRow {
                ell,
                boundary_max,
                tail_max,
                bound,
                violated: boundary_max > bound * (1.0 + BOUND_SLACK),
            }
        })
        .collect();

    let r = s.certified_ray();
    let ray_sup = (0..=RAY_PROBES)
        .map(|k| f(Complex64::new(r + float::powi(2.0, k), 0.0)).norm())
        .fold(0.0, f64::max);
    Ok(BoundaryReport {
        diagnostics,
        sup_f,
        c_constant,
        boundary_samples: samples.len(),
        rows,
        ray_sup,
        unbounded: !(ray_sup <= GROWTH_FACTOR * sup_f),
    })
}

//! JSON reports for each command.

use forelli_core::field::{AStatus, Classification, ValidityReport, Violation};
use forelli_core::flow::FlowCurve;
use forelli_core::formal::oracle::OracleComparison;
use forelli_core::formal::KernelBasis;
use forelli_core::gallery::{CounterexampleSpec, Verdict, VerificationReport};
use forelli_core::region::{
    BoundaryReport, Candidate, CandidateKind, ComponentMap, RegionDiagnostics, RegionSpec,
};
use serde_json::{json, Value};

use crate::format::{complex, complex_list, gaussian, multi_index, poly, real, region_spec};

fn violation(v: &Violation) -> Value {
    let mut out = match v {
        Violation::FirstComponentNonzero => json!({"kind": "first-component-nonzero"}),
        Violation::ConstantTerm { j } => json!({"kind": "constant-term", "j": j}),
        Violation::LaterVariable { j, monomial, var } => json!({
            "kind": "later-variable", "j": j, "monomial": multi_index(monomial), "var": var,
        }),
        Violation::NonResonantMonomial { j, monomial, weight } => json!({
            "kind": "non-resonant-monomial", "j": j,
            "monomial": multi_index(monomial), "weight": gaussian(weight),
        }),
        Violation::NonPositiveRealPart { j } => json!({"kind": "non-positive-real-part", "j": j}),
        Violation::OrderingViolated { j } => json!({"kind": "ordering-violated", "j": j}),
    };
    out["structural"] = json!(v.is_structural());
    out["message"] = json!(v.to_string());
    out
}

pub fn validation(report: &ValidityReport) -> Value {
    json!({
        "valid": report.is_valid(),
        "strict": report.is_strict(),
        "violations": report.violations.iter().map(violation).collect::<Vec<_>>(),
    })
}

fn a_status(a: &AStatus) -> Value {
    match a {
        AStatus::Empty => json!({"status": "empty"}),
        AStatus::EmptyUpToCap(cap) => json!({"status": "empty-up-to-cap", "cap": cap}),
        AStatus::NonEmpty(m) => json!({"status": "nonempty", "witness": multi_index(m)}),
    }
}

pub fn classification(c: &Classification, cap: u32) -> Value {
    json!({
        "validity": validation(&c.validity),
        "contracting": c.is_contracting,
        "aligned": c.is_aligned,
        "degenerate": c.degenerate,
        "resonances": c.resonances.iter().map(|r| json!({
            "target": r.target,
            "m": multi_index(&r.m),
        })).collect::<Vec<_>>(),
        "capped_targets": c.capped_targets,
        "search_cap": cap,
        "a": a_status(&c.a_status),
    })
}

pub fn kernel(k: &KernelBasis, oracle: Option<&OracleComparison>) -> Value {
    let mut out = json!({
        "degree_cap": k.degree_cap,
        "dimension": k.len(),
        "holomorphic_only": k.holomorphic_only,
        "basis": k.basis.iter().map(|s| poly(s.poly())).collect::<Vec<_>>(),
    });
    if let Some(o) = oracle {
        out["oracle"] = json!({
            "oracle_dim": o.oracle_dim,
            "candidate_dim": o.candidate_dim,
            "all_members": o.all_members,
            "candidate_rank": o.candidate_rank,
            "spans_agree": o.spans_agree(),
        });
    }
    out
}

/// Symbolic flow dump. Variables of `q` are `η_0 … η_{n-1}` then `ζ` at index `n`.
pub fn flow(curve: &FlowCurve, residual_zero: bool) -> Value {
    let sign = curve.exponent().sign();
    json!({
        "direction": direction_name(curve.direction()),
        "variables": curve.n() + 1,
        "coordinates": (0..curve.n()).map(|j| json!({
            "j": j,
            "exponent": gaussian(&(&sign * &curve.field().lambda()[j])),
            "q": poly(&curve.q()[j]),
        })).collect::<Vec<_>>(),
        "residual_zero": residual_zero,
    })
}

pub fn direction_name(d: forelli_core::flow::Direction) -> &'static str {
    match d {
        forelli_core::flow::Direction::Forward => "forward",
        forelli_core::flow::Direction::Backward => "backward",
    }
}

fn diagnostics(d: &RegionDiagnostics) -> Value {
    json!({
        "epsilon": real(d.epsilon),
        "a_cutoff": real(d.a_cutoff),
        "delta0_estimate": d.delta0_estimate.map_or(Value::Null, real),
        "order_permutation": d.order_permutation,
    })
}

fn candidate(c: &Candidate) -> Value {
    let mut out = json!({
        "zeta": complex(c.zeta),
        "profile": c.profile.iter().map(|v| real(*v)).collect::<Vec<_>>(),
    });
    match &c.kind {
        CandidateKind::Root { poly, multiplicity, residual, converged } => {
            out["kind"] = json!("root");
            out["poly"] = json!(poly);
            out["multiplicity"] = json!(multiplicity);
            out["residual"] = real(*residual);
            out["converged"] = json!(converged);
        }
        CandidateKind::RightMarching => out["kind"] = json!("right-marching"),
    }
    out
}

pub fn bounds(b: &BoundaryReport) -> Value {
    json!({
        "sup_f": real(b.sup_f),
        "c_constant": real(b.c_constant),
        "boundary_samples": b.boundary_samples,
        "rows": b.rows.iter().map(|r| json!({
            "ell": r.ell,
            "boundary_max": real(r.boundary_max),
            "tail_max": real(r.tail_max),
            "bound": real(r.bound),
            "violated": r.violated,
        })).collect::<Vec<_>>(),
        "ray_sup": real(b.ray_sup),
        "unbounded": b.unbounded,
        "violation": b.violation(),
    })
}

pub struct RegionParts<'a> {
    pub spec: &'a RegionSpec,
    pub map: &'a ComponentMap,
    pub diagnostics: &'a RegionDiagnostics,
    pub candidates: &'a [Candidate],
    pub bounds: &'a BoundaryReport,
    pub raster: Option<&'a str>,
}

pub fn region(parts: &RegionParts<'_>) -> Value {
    let b = parts.map.bbox();
    json!({
        "spec": region_spec(parts.spec),
        "bbox": [real(b.re_min), real(b.re_max), real(b.im_min), real(b.im_max)],
        "resolution": real(parts.map.resolution()),
        "cols": parts.map.cols(),
        "rows": parts.map.rows(),
        "components": parts.map.component_count(),
        "component_sizes": &parts.map.component_sizes()[1..],
        "star_id": parts.map.star_id(),
        "r_ray": real(parts.map.r_ray()),
        "certified_ray": real(parts.spec.certified_ray()),
        "diagnostics": diagnostics(parts.diagnostics),
        "candidates": parts.candidates.iter().map(candidate).collect::<Vec<_>>(),
        "bounds_for_constant_one": bounds(parts.bounds),
        "raster": parts.raster,
    })
}

/// Labels as a plain graymap, top row (largest `Im ζ`) first. Labels above
/// 65535 are clamped.
pub fn pgm(map: &ComponentMap) -> String {
    let maxval = map.component_count().clamp(1, 65535);
    let mut out = format!("P2\n{} {}\n{}\n", map.cols(), map.rows(), maxval);
    for row in (0..map.rows()).rev() {
        let line: Vec<String> =
            (0..map.cols()).map(|col| map.label(col, row).min(65535).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn case(spec: &CounterexampleSpec) -> Value {
    match spec {
        CounterexampleSpec::FiniteSmooth { k } => json!({"kind": "finite-smooth", "k": k}),
        CounterexampleSpec::NegativeRatio { t, alpha, beta } => json!({
            "kind": "negative-ratio", "t": real(*t), "alpha": complex(*alpha), "beta": complex(*beta),
        }),
        CounterexampleSpec::NonRealRatio { alpha1, alpha2, t, b } => json!({
            "kind": "nonreal-ratio",
            "alpha1": real(*alpha1), "alpha2": real(*alpha2), "t": real(*t), "b": real(*b),
            "gamma": complex(spec.gamma().expect("non-real family")),
        }),
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::LeafwiseHolomorphicNotGlobal => "LeafwiseHolomorphicNotGlobal",
        Verdict::Holomorphic => "Holomorphic",
        Verdict::Inconsistent => "Inconsistent",
    }
}

pub fn verification(r: &VerificationReport) -> Value {
    let c = &r.config;
    json!({
        "case": case(&r.spec),
        "label": r.label,
        "thresholds": {
            "h": real(c.h),
            "leafwise_tol": real(c.leafwise_tol),
            "witness_floor": real(c.witness_floor),
            "grid": c.grid,
            "radius": real(c.radius),
            "min_samples": c.min_samples,
        },
        "leafwise": {
            "max_residual": real(r.leafwise.max_residual),
            "evaluated": r.leafwise.evaluated,
            "skipped": r.leafwise.skipped,
        },
        "witnesses": r.witnesses.iter().map(|w| json!({
            "point": complex_list(&w.point),
            "dbar": w.dbar.as_deref().map_or(Value::Null, complex_list),
            "max_abs": real(w.max_abs),
        })).collect::<Vec<_>>(),
        "best_witness": r.best_witness,
        "verdict": verdict_name(r.verdict),
        "probe": {
            "quantity": r.probe_quantity,
            "samples": r.probe.iter().map(|p| json!({
                "radius": real(p.radius),
                "value": real(p.value),
            })).collect::<Vec<_>>(),
        },
    })
}

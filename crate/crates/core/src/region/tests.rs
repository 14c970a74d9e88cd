extern crate std;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn spec(p: Vec<ComplexPoly>, lambda: Vec<f64>) -> RegionSpec {
    RegionSpec::new(p, lambda).unwrap()
}

fn half_plane() -> RegionSpec {
    spec(vec![ComplexPoly::constant(c(1.0, 0.0))], vec![1.0])
}

fn identity_poly() -> RegionSpec {
    spec(vec![ComplexPoly::linear(c(0.0, 0.0))], vec![1.0])
}

fn bbox(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> BBox {
    BBox::new(re_min, re_max, im_min, im_max).unwrap()
}

#[test]
fn membership_examples() {
    assert!(membership(&half_plane(), c(1.0, 0.0)));
    assert!(!membership(&half_plane(), c(-1.0, 0.0)));
    assert!(membership(&identity_poly(), c(0.0, 0.0)));
    assert!(!membership(&identity_poly(), c(0.0, 3.0)));
}

#[test]
fn spec_validation() {
    let one = || ComplexPoly::constant(c(1.0, 0.0));
    assert!(RegionSpec::new(vec![ComplexPoly::new(vec![c(0.0, 0.0)])], vec![1.0]).is_err());
    assert!(RegionSpec::new(vec![one()], vec![0.0]).is_err());
    assert!(RegionSpec::new(vec![one()], vec![-1.0]).is_err());
    assert!(RegionSpec::new(vec![one(), one()], vec![1.0]).is_err());
    assert!(RegionSpec::new(vec![], vec![]).is_err());
}

#[test]
fn half_plane_is_one_component() {
    let map = find_star_component(&half_plane(), bbox(-2.0, 6.0, -3.0, 3.0), 0.02).unwrap();
    assert_eq!(map.component_count(), 1);
    assert_eq!(map.star_id(), 1);
    for row in 0..map.rows() {
        let mismatched = (0..map.cols())
            .filter(|&col| (map.label(col, row) != 0) != (map.cell_center(col, row).re > 0.0))
            .count();
        assert!(mismatched <= 1, "row {row}: {mismatched} cells differ");
    }
}

#[test]
fn half_plane_is_resolution_stable() {
    for res in [0.1, 0.07, 0.05, 0.03, 0.02] {
        let map = find_star_component(&half_plane(), bbox(-2.0, 6.0, -3.0, 3.0), res).unwrap();
        assert_eq!(map.component_count(), 1, "res {res}");
    }
}

#[test]
fn zero_and_far_ray_share_a_component() {
    let s = identity_poly();
    // t·e^{-t} < 1 on the whole closed half-line.
    assert!((0..=6000).all(|k| membership(&s, c(k as f64 * 1e-3, 0.0))));
    let map = find_star_component(&s, bbox(-2.0, 6.0, -3.0, 3.0), 0.02).unwrap();
    assert_eq!(map.component_count(), 1);
    let star = Some(map.star_id());
    assert_eq!(map.label_at(c(0.001, 0.001)), star);
    for k in 0..40 {
        assert_eq!(map.label_at(c(2.0 + 0.1 * k as f64, 0.001)), star);
    }
}

#[test]
fn separated_disc_is_its_own_component() {
    let s = spec(vec![ComplexPoly::linear(c(0.0, 2.0)).scale(c(10.0, 0.0))], vec![1.0]);
    let map = find_star_component(&s, bbox(-2.0, 8.0, -3.0, 3.0), 0.01).unwrap();
    assert_eq!(map.component_count(), 2);
    let disc = map.label_at(c(0.0, 2.0)).unwrap();
    assert_ne!(disc, 0);
    assert_ne!(disc, map.star_id());
    assert_eq!(map.label_at(c(7.5, 0.0)), Some(map.star_id()));
    assert!(map.r_ray() > 3.5 && map.r_ray() < 4.5, "{}", map.r_ray());
}

#[test]
fn star_covers_the_axis_beyond_r_ray() {
    for s in [half_plane(), identity_poly()] {
        let map = find_star_component(&s, bbox(-2.0, 6.0, -3.0, 3.0), 0.05).unwrap();
        let row = map.axis_row();
        for col in 0..map.cols() {
            if map.cell_center(col, row).re > map.r_ray() {
                assert_eq!(map.label(col, row), map.star_id());
            }
        }
        assert!(s.certified_ray() >= map.r_ray() - 1e-12 || map.r_ray() == 0.0);
    }
}

#[test]
fn grid_errors() {
    let slow = spec(vec![ComplexPoly::linear(c(0.0, 0.0))], vec![0.1]);
    assert!(matches!(
        find_star_component(&slow, bbox(-1.0, 10.0, -1.0, 1.0), 0.05),
        Err(RegionError::RayNotFound { .. })
    ));
    assert!(matches!(
        find_star_component(&half_plane(), bbox(-3.0, -1.0, -1.0, 1.0), 0.05),
        Err(RegionError::InvalidGrid(_))
    ));
    assert!(matches!(
        find_star_component(&half_plane(), bbox(-1.0, 1.0, 1.0, 2.0), 0.05),
        Err(RegionError::InvalidGrid(_))
    ));
    assert!(find_star_component(&half_plane(), bbox(-1.0, 1.0, -1.0, 1.0), 0.0).is_err());
    assert!(BBox::new(1.0, 0.0, -1.0, 1.0).is_err());
}

#[test]
fn certified_ray_lies_in_region() {
    let s = spec(
        vec![
            ComplexPoly::new(vec![c(3.0, 1.0), c(-2.0, 0.0), c(0.5, 0.5)]),
            ComplexPoly::linear(c(1.0, -1.0)),
        ],
        vec![0.7, 2.0],
    );
    let r = s.certified_ray();
    assert!((0..2000).all(|k| membership(&s, c(r + 1e-6 + 0.05 * k as f64, 0.0))));
}

#[test]
fn roots_of_products() {
    let expected = [c(0.2, 0.0), c(-1.0, 2.0), c(3.0, -0.5), c(0.0, 1.0)];
    let p = expected
        .iter()
        .fold(ComplexPoly::constant(c(2.0, 1.0)), |acc, r| acc.mul(&ComplexPoly::linear(*r)));
    let roots = p.roots();
    assert_eq!(roots.len(), 4);
    for r in &expected {
        let hit = roots.iter().find(|e| (e.value - r).norm() < 1e-10).unwrap();
        assert!(hit.converged && hit.residual <= 1e-10 && hit.multiplicity == 1);
    }
    assert!(ComplexPoly::constant(c(1.0, 0.0)).roots().is_empty());
}

#[test]
fn double_roots_cluster() {
    let p = ComplexPoly::linear(c(1.0, 0.0)).pow(2).mul(&ComplexPoly::linear(c(-2.0, 0.0)));
    let roots = p.roots();
    assert_eq!(roots.len(), 2, "{roots:?}");
    assert_eq!(roots[1].multiplicity, 2);
    assert!((roots[1].value - c(1.0, 0.0)).norm() < 1e-7);
}

#[test]
fn admissible_candidate_examples() {
    let s = spec(vec![ComplexPoly::linear(c(0.2, 0.0))], vec![1.0]);
    let cands = admissible_candidates(&s, 3).unwrap();
    assert!(matches!(cands[0].kind, CandidateKind::Root { poly: 0, .. }));
    assert!((cands[0].zeta - c(0.2, 0.0)).norm() < 1e-12);
    assert!(cands[0].profile[0] <= 1e-10);
    assert_eq!(cands.len(), 4);

    let cands = admissible_candidates(&half_plane(), 5).unwrap();
    assert!(cands.iter().all(|p| p.kind == CandidateKind::RightMarching));
    let profiles: Vec<f64> = cands.iter().map(|p| p.profile[0]).collect();
    assert!(profiles.windows(2).all(|w| w[1] < w[0]));
    for (p, cand) in profiles.iter().zip(&cands) {
        assert!((p - (-cand.zeta.re).exp()).abs() <= 1e-15);
    }

    let s = spec(vec![ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])], vec![2.0]);
    let roots: Vec<_> = admissible_candidates(&s, 1)
        .unwrap()
        .into_iter()
        .filter(|p| p.kind != CandidateKind::RightMarching)
        .collect();
    assert_eq!(roots.len(), 2);
    assert!((roots[0].zeta - c(0.0, -1.0)).norm() < 1e-12);
    assert!((roots[1].zeta - c(0.0, 1.0)).norm() < 1e-12);
    assert!(admissible_candidates(&s, 0).is_err());
}

#[test]
fn roots_outside_region_are_skipped() {
    // The root of P₂ sits where P₁ is large.
    let s = spec(
        vec![ComplexPoly::constant(c(5.0, 0.0)), ComplexPoly::linear(c(0.0, 0.0))],
        vec![1.0, 1.0],
    );
    let cands = admissible_candidates(&s, 1).unwrap();
    assert!(cands.iter().all(|p| p.kind == CandidateKind::RightMarching));
}

#[test]
fn g_ell_examples() {
    let pts = [c(1.0, 0.0), c(0.3, -2.0)];
    let vals = [c(1.0, 1.0), c(-2.0, 0.5)];
    assert_eq!(g_ell_transform(&vals, &half_plane(), 0, &pts).unwrap(), vals);
    let g = g_ell_transform(&[c(1.0, 0.0)], &half_plane(), 2, &[c(1.0, 0.0)]).unwrap();
    assert!((g[0] - c(1f64.exp().powi(2), 0.0)).norm() < 1e-12);

    let s = spec(vec![ComplexPoly::new(vec![c(1.0, 1.0), c(0.5, 0.0)])], vec![1.5]);
    let ell = 3;
    let synthetic: Vec<Complex64> = pts
        .iter()
        .map(|z| s.p()[0].eval(*z).powu(ell) / (z * (1.5 * ell as f64)).exp())
        .collect();
    for g in g_ell_transform(&synthetic, &s, ell, &pts).unwrap() {
        assert!((g - c(1.0, 0.0)).norm() < 1e-12);
    }
    assert_eq!(
        g_ell_transform(&[c(1.0, 0.0)], &identity_poly(), 1, &[c(0.0, 0.0)]),
        Err(RegionError::Pole { index: 0 })
    );
    assert!(g_ell_transform(&[c(1.0, 0.0)], &half_plane(), 1, &[]).is_err());
}

#[test]
fn ordering_maximizes_degree_ratio() {
    let p = |d: usize| ComplexPoly::linear(c(0.0, 0.0)).pow(d as u32);
    let s = spec(vec![p(1), p(3), p(2), p(3)], vec![1.0, 1.0, 1.0, 1.0]);
    assert_eq!(order_permutation(&s), vec![1, 3, 2, 0]);
    let s = spec(vec![p(1), p(2)], vec![0.25, 1.0]);
    assert_eq!(order_permutation(&s), vec![0, 1]);
}

#[test]
fn constant_one_meets_its_bound() {
    let report =
        boundary_bound_report(&half_plane(), |_| c(1.0, 0.0), 5, bbox(-2.0, 6.0, -3.0, 3.0), 0.02)
            .unwrap();
    assert!(!report.violation(), "{report:?}");
    assert!((report.c_constant - 1.0).abs() < 0.02);
    assert!((report.sup_f - 1.0).abs() < 1e-15);
    assert!(report.boundary_samples >= 300);
    let d0 = report.diagnostics.delta0_estimate.unwrap();
    assert!(d0 > 0.95 && d0 < 1.0);
    for row in &report.rows {
        assert!((row.boundary_max - row.bound).abs() <= 1e-9 * row.bound);
    }
}

#[test]
fn decaying_function_vanishes_along_right_boundary() {
    let s = spec(vec![ComplexPoly::linear(c(-1.0, 0.0))], vec![1.0]);
    let ell_max = 3;
    let f = |z: Complex64| (-z * (ell_max + 1) as f64).exp();
    let report = boundary_bound_report(&s, f, ell_max, bbox(-3.0, 3.0, -20.0, 20.0), 0.02).unwrap();
    assert!(!report.violation(), "{report:?}");
    for row in &report.rows {
        assert!(row.tail_max < 1e-2, "{row:?}");
    }
}

#[test]
fn growing_function_is_flagged() {
    let report =
        boundary_bound_report(&half_plane(), |z| z.exp(), 3, bbox(-2.0, 6.0, -3.0, 3.0), 0.05)
            .unwrap();
    assert!(report.unbounded && report.violation());
}

fn arb_poly() -> impl Strategy<Value = ComplexPoly> {
    proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..4).prop_filter_map(
        "nonzero leading coefficient",
        |cs| {
            let p = ComplexPoly::new(cs.into_iter().map(|(a, b)| c(a, b)).collect());
            (!p.is_zero()).then_some(p)
        },
    )
}

fn arb_spec() -> impl Strategy<Value = RegionSpec> {
    proptest::collection::vec((arb_poly(), 0.1f64..3.0), 1..3).prop_map(|entries| {
        let (p, l) = entries.into_iter().unzip();
        spec(p, l)
    })
}

proptest! {
    #[test]
    fn shrinking_a_polynomial_keeps_members(s in arb_spec(), j in 0usize..2, re in -3.0f64..5.0, im in -3.0f64..3.0) {
        let j = j % s.n();
        let z = c(re, im);
        let mut p = s.p().to_vec();
        p[j] = p[j].scale(c(0.5, 0.0));
        let shrunk = spec(p, s.lambda().to_vec());
        prop_assert!(!membership(&s, z) || membership(&shrunk, z));
    }

    #[test]
    fn integer_powers_preserve_membership(s in arb_spec(), k in 2u32..4, re in -3.0f64..5.0, im in -3.0f64..3.0) {
        let z = c(re, im);
        let powered = spec(
            s.p().iter().map(|p| p.pow(k)).collect(),
            s.lambda().iter().map(|l| l * k as f64).collect(),
        );
        let margin = s.profile(z).iter().map(|v| (v - 1.0).abs()).fold(f64::INFINITY, f64::min);
        prop_assume!(margin > 1e-9);
        prop_assert_eq!(membership(&s, z), membership(&powered, z));
    }

    #[test]
    fn root_candidates_have_vanishing_profile(roots in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..4)) {
        let p = roots.iter().fold(ComplexPoly::constant(c(1.0, 0.0)), |acc, &(a, b)| acc.mul(&ComplexPoly::linear(c(a, b))));
        let s = spec(vec![p], vec![1.0]);
        for cand in admissible_candidates(&s, 1).unwrap() {
            if let CandidateKind::Root { residual, .. } = cand.kind {
                prop_assert!(residual <= 1e-10);
                prop_assert!(cand.profile[0] <= 1e-10);
            }
        }
    }
}

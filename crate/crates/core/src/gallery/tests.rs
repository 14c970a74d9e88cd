extern crate std;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::algebra::{GaussianRational, MixedPolynomial};
use crate::formal::solve_kernel;

const H: f64 = 1e-4;
/// Step small enough that `h²·G'''` drops below `1e-8` for the polynomial checks.
const H_FINE: f64 = 1e-5;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn planar() -> NormalFormField {
    NormalFormField::planar_resonant(GaussianRational::from_int(1, 0), 2, GaussianRational::from_int(1, 0))
        .unwrap()
}

fn zeta_grid(radius: f64, count: usize) -> Vec<Complex64> {
    let step = 2.0 * radius / (count - 1) as f64;
    (0..count)
        .flat_map(|a| (0..count).map(move |b| c(-radius + a as f64 * step, -radius + b as f64 * step)))
        .collect()
}

fn from_poly(p: MixedPolynomial) -> SampledFunction {
    SampledFunction::new(p.n(), "polynomial", move |z| Ok(p.eval_at(z)))
}

#[test]
fn closed_form_values() {
    let f = build_counterexample(&CounterexampleSpec::FiniteSmooth { k: 1 }).unwrap();
    assert!((f.eval(&[c(0.5, 0.0), c(0.5, 0.0)]).unwrap() - c(0.125, 0.0)).norm() < 1e-15);
    assert_eq!(f.eval(&[c(0.0, 0.0), c(0.5, 0.3)]).unwrap(), c(0.0, 0.0));

    let f = build_counterexample(&CounterexampleSpec::negative_ratio(1.0)).unwrap();
    assert_eq!(f.eval(&[c(0.0, 0.0), c(0.5, 0.3)]).unwrap(), c(0.0, 0.0));
    assert_eq!(f.eval(&[c(0.7, 0.1), c(0.0, 0.0)]).unwrap(), c(0.0, 0.0));
    let v = f.eval(&[c(0.8, 0.0), c(0.0, 0.8)]).unwrap();
    assert!((v.re - (-1.0f64 / 0.64).exp()).abs() < 1e-15);

    let f = build_counterexample(&CounterexampleSpec::nonreal_ratio(1.0, 1.0, 1.0)).unwrap();
    assert_eq!(f.eval(&[c(0.0, 0.0), c(0.5, 0.3)]).unwrap(), c(0.0, 0.0));
    assert_eq!(f.eval(&[c(0.5, 0.3), c(0.0, 0.0)]).unwrap(), c(0.0, 0.0));
    // γ + γ̄ = 1 when α₁ = 1, so at |z| = |w| = ½ the base is log ½.
    let v = f.eval(&[c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
    assert!((v.re - (0.5f64.ln().powi(2)).exp()).abs() < 1e-12);
}

#[test]
fn invalid_parameters() {
    let bad = [
        CounterexampleSpec::FiniteSmooth { k: 0 },
        CounterexampleSpec::NegativeRatio { t: 1.0, alpha: c(1.0, 0.0), beta: c(1.0, 0.0) },
        CounterexampleSpec::NegativeRatio { t: -1.0, alpha: c(1.0, 0.0), beta: c(1.0, 0.0) },
        CounterexampleSpec::NonRealRatio { alpha1: 1.0, alpha2: 0.0, t: 1.0, b: 2.0 },
        CounterexampleSpec::NonRealRatio { alpha1: 1.0, alpha2: 1.0, t: 1.0, b: 1.0 },
    ];
    for spec in bad {
        assert!(build_counterexample(&spec).is_err(), "{spec:?}");
    }
}

#[test]
fn wirtinger_examples() {
    let z1 = MixedPolynomial::holo_var(1, 0);
    let est = wirtinger_residual(&from_poly(z1.pow(2)), &[c(0.3, 0.1)], H).unwrap();
    assert!(est[0].norm() <= 1e-6);
    let est = wirtinger_residual(&from_poly(MixedPolynomial::anti_var(1, 0)), &[c(-0.7, 2.0)], H).unwrap();
    assert!((est[0] - c(1.0, 0.0)).norm() <= 1e-9);

    let f = build_counterexample(&CounterexampleSpec::FiniteSmooth { k: 1 }).unwrap();
    let est = wirtinger_residual(&f, &[c(0.5, 0.0), c(0.5, 0.0)], H).unwrap();
    // ∂F/∂z̄₂ = z₁³/z̄₁.
    assert!((est[1] - c(0.25, 0.0)).norm() <= 1e-3);
    assert!(wirtinger_residual(&f, &[c(0.5, 0.0)], H).is_err());
    assert!(wirtinger_residual(&f, &[c(0.5, 0.0), c(0.5, 0.0)], 0.0).is_err());
}

#[test]
fn negative_ratio_witness_matches_closed_form() {
    // |∂f/∂z̄| = f / (2|w|^t |z|²).
    let f = build_counterexample(&CounterexampleSpec::negative_ratio(1.0)).unwrap();
    let est = wirtinger_residual(&f, &[c(0.8, 0.0), c(0.8, 0.0)], H).unwrap();
    let expected = (-1.0f64 / 0.64).exp() / (2.0 * 0.8 * 0.64);
    assert!((est[0].norm() - expected).abs() < 1e-7);
}

#[test]
fn richardson_scaling() {
    // f = z̄ e^z has ∂f/∂z̄ = e^z.
    let f = SampledFunction::new(1, "zbar exp z", |z| Ok(z[0].conj() * z[0].exp()));
    let p = [c(0.3, -0.4)];
    let exact = p[0].exp();
    let err = |h: f64| (wirtinger_residual(&f, &p, h).unwrap()[0] - exact).norm();
    let ratio = err(1e-2) / err(5e-3);
    assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
}

#[test]
fn leafwise_examples() {
    let zetas = zeta_grid(0.5, 11);
    let f = build_counterexample(&CounterexampleSpec::negative_ratio(1.0)).unwrap();
    let spec = CounterexampleSpec::negative_ratio(1.0);
    let field = spec.designated_field().unwrap();
    let r = leafwise_holomorphy_check(&f, &field, &[c(0.4, 0.0), c(0.3, 0.0)], &zetas, H).unwrap();
    assert!(r.max_residual <= 1e-6 && r.evaluated == zetas.len());

    let f = build_counterexample(&CounterexampleSpec::FiniteSmooth { k: 1 }).unwrap();
    let euler = NormalFormField::euler(2).unwrap();
    let r = leafwise_holomorphy_check(&f, &euler, &[c(0.3, 0.1), c(-0.2, 0.2)], &zetas, H).unwrap();
    assert!(r.max_residual <= 1e-6);

    let z1 = from_poly(MixedPolynomial::holo_var(2, 0));
    let r = leafwise_holomorphy_check(&z1, &planar(), &[c(0.3, 0.0), c(0.2, 0.1)], &zetas, H).unwrap();
    assert!(r.max_residual <= 1e-8);

    // A non-invariant function is caught.
    let zb = from_poly(MixedPolynomial::anti_var(2, 0));
    let r = leafwise_holomorphy_check(&zb, &euler, &[c(0.3, 0.0), c(0.2, 0.1)], &zetas, H).unwrap();
    assert!(r.max_residual > 0.1);
}

#[test]
fn escaping_trajectory_is_an_error() {
    let field = NormalFormField::diagonal(vec![GaussianRational::from_int(1000, 0)]).unwrap();
    let f = from_poly(MixedPolynomial::holo_var(1, 0));
    let err = leafwise_holomorphy_check(&f, &field, &[c(1.0, 0.0)], &[c(1.0, 0.0)], H);
    assert_eq!(err, Err(GalleryError::Escape));
}

#[test]
fn cascade_examples() {
    let field = planar();
    let eta = [c(0.3, 0.0), c(0.2, 0.0)];
    let zeta = c(0.2, 0.0);
    let zb2 = from_poly(MixedPolynomial::anti_var(2, 1));
    let report = chain_rule_cascade_check(&zb2, &field, &eta, zeta, H).unwrap();
    // ∂G/∂η̄₂ = e^{-2ζ̄}, and ∂G/∂η̄₁ = conj(∂z₂/∂η₁) = conj(-2η₁ζ e^{-2ζ}).
    assert!((report.entries[1].lhs - (c(-0.4, 0.0)).exp()).norm() <= 1e-5);
    let expected = (c(-2.0 * 0.3 * 0.2, 0.0) * c(-0.4, 0.0).exp()).conj();
    assert!((report.entries[0].lhs - expected).norm() <= 1e-5);
    assert!(report.max_error <= 1e-5);

    let zb1 = from_poly(MixedPolynomial::anti_var(2, 0));
    let report = chain_rule_cascade_check(&zb1, &field, &eta, zeta, H).unwrap();
    assert!(report.max_error <= 1e-5);
    assert!(report.entries[1].lhs.norm() <= 1e-8);

    let hol = from_poly(&MixedPolynomial::holo_var(2, 0) * &MixedPolynomial::holo_var(2, 1));
    let report = chain_rule_cascade_check(&hol, &field, &eta, c(0.1, -0.3), H).unwrap();
    for e in &report.entries {
        assert!(e.lhs.norm() <= 1e-8 && e.rhs.norm() <= 1e-8);
    }
}

#[test]
fn cascade_with_non_polynomial_function() {
    let f = build_counterexample(&CounterexampleSpec::FiniteSmooth { k: 2 }).unwrap();
    let report =
        chain_rule_cascade_check(&f, &planar(), &[c(0.4, 0.1), c(0.2, -0.3)], c(0.1, 0.2), H).unwrap();
    assert!(report.max_error <= 1e-5, "{report:?}");
}

#[test]
fn gallery_verdicts() {
    let config = VerifyConfig::default();
    let cases = [
        CounterexampleSpec::FiniteSmooth { k: 1 },
        CounterexampleSpec::FiniteSmooth { k: 4 },
        CounterexampleSpec::negative_ratio(1.0),
        CounterexampleSpec::negative_ratio(2.5),
        CounterexampleSpec::NegativeRatio { t: 0.5, alpha: c(1.0, 1.0), beta: c(-2.0, -2.0) },
        CounterexampleSpec::nonreal_ratio(1.0, 1.0, 1.0),
        CounterexampleSpec::nonreal_ratio(0.5, 2.0, 3.0),
        CounterexampleSpec::NonRealRatio { alpha1: 1.0, alpha2: 1.0, t: 1.0, b: 1.25 },
    ];
    for spec in cases {
        let report = verify(&spec, &config).unwrap();
        assert_eq!(report.verdict, Verdict::LeafwiseHolomorphicNotGlobal, "{report:?}");
        assert!(report.leafwise.evaluated >= 100);
        assert!(report.leafwise.max_residual <= 1e-6);
    }
}

#[test]
fn finite_smooth_witness_value() {
    let report = verify(&CounterexampleSpec::FiniteSmooth { k: 1 }, &VerifyConfig::default()).unwrap();
    let first = report.witnesses[0].dbar.as_ref().unwrap();
    assert!((first[1].norm() - 0.25).abs() <= 1e-3);
}

#[test]
fn smoothness_probe_grows() {
    let spec = CounterexampleSpec::FiniteSmooth { k: 1 };
    let f = build_counterexample(&spec).unwrap();
    let (_, samples) = smoothness_probe(&spec, &f);
    assert!(samples.windows(2).all(|w| w[1].value > w[0].value));

    let spec = CounterexampleSpec::negative_ratio(1.0);
    let f = build_counterexample(&spec).unwrap();
    let (_, samples) = smoothness_probe(&spec, &f);
    assert!(samples.last().unwrap().value < 1e-100);
}

#[test]
fn branch_cut_samples_are_skipped() {
    let spec = CounterexampleSpec::NonRealRatio { alpha1: 1.0, alpha2: 1.0, t: 1.0, b: 1.5 };
    let f = build_counterexample(&spec).unwrap();
    // Equal moduli put the base on the negative real axis.
    assert_eq!(f.eval(&[c(0.5, 0.0), c(0.0, 0.5)]), Err(EvalError::OutOfBranch));
}

#[test]
fn holomorphic_function_is_classified_holomorphic() {
    // Not a gallery family, but exercises the verdict logic through the
    // public checks: a polynomial kernel element of X̄ is holomorphic.
    let kernel = solve_kernel(&planar(), 4).unwrap();
    assert!(kernel.holomorphic_only);
    let zetas = zeta_grid(0.5, 5);
    for s in &kernel.basis {
        let f = from_poly(s.poly().clone());
        let r = leafwise_holomorphy_check(&f, &planar(), &[c(0.3, 0.1), c(0.2, -0.1)], &zetas, H_FINE).unwrap();
        assert!(r.max_residual <= 1e-8, "{r:?}");
        let w = wirtinger_residual(&f, &[c(0.2, 0.3), c(-0.4, 0.1)], H_FINE).unwrap();
        assert!(w.iter().all(|v| v.norm() <= 1e-8));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn negative_ratio_is_leafwise_holomorphic(t in 0.3f64..3.0, re in -1.0f64..1.0, im in -1.0f64..1.0,
                                              e in proptest::collection::vec(-0.6f64..0.6, 4)) {
        let alpha = c(re, im);
        prop_assume!(alpha.norm() > 0.2);
        let spec = CounterexampleSpec::NegativeRatio { t, alpha, beta: -alpha / t };
        let f = build_counterexample(&spec).unwrap();
        let field = spec.designated_field().unwrap();
        let eta = [c(e[0], e[1]), c(e[2], e[3])];
        prop_assume!(eta[0].norm() > 0.2 && eta[1].norm() > 0.2);
        let r = leafwise_holomorphy_check(&f, &field, &eta, &zeta_grid(0.3, 4), H).unwrap();
        prop_assert!(r.max_residual <= 1e-6);
    }
}

extern crate std;

use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::oracle::DenseKernel;
use super::*;
use crate::algebra::rational::rational;
use crate::field::{resonance_relations, validate_normal_form};

fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_int(re, im)
}

fn real(p: i64, q: i64) -> GaussianRational {
    GaussianRational::real(rational(p, q))
}

fn z(n: usize, j: usize) -> MixedPolynomial {
    MixedPolynomial::holo_var(n, j)
}

fn zb(n: usize, j: usize) -> MixedPolynomial {
    MixedPolynomial::anti_var(n, j)
}

fn series(p: MixedPolynomial, cap: u32) -> TruncatedSeries {
    TruncatedSeries::new(p, cap).value
}

fn planar(m: u32, beta: GaussianRational) -> NormalFormField {
    NormalFormField::planar_resonant(gr(1, 0), m, beta).unwrap()
}

/// `z₁∂₁ − t z₂∂₂`.
fn negative_ratio_field(q: i64, p: i64) -> NormalFormField {
    NormalFormField::diagonal(vec![gr(1, 0), real(-q, p)]).unwrap()
}

/// `|z₁|^{2q} |z₂|^{2p}`.
fn modulus_product(q: u32, p: u32) -> MixedPolynomial {
    &(&z(2, 0).pow(q) * &zb(2, 0).pow(q)) * &(&z(2, 1).pow(p) * &zb(2, 1).pow(p))
}

fn assert_oracle_agrees(field: &NormalFormField, cap: u32) -> KernelBasis {
    let kernel = solve_kernel(field, cap).unwrap();
    let oracle = DenseKernel::build(field, cap).unwrap();
    let polys: Vec<MixedPolynomial> = kernel.basis.iter().map(|s| s.poly().clone()).collect();
    let cmp = oracle.compare(&polys);
    assert!(cmp.spans_agree(), "{cmp:?} for {field:?}");
    kernel
}

/// Small deterministic generator for random aligned normal forms.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
    fn below(&mut self, k: u64) -> u64 {
        self.next() % k
    }
}

fn random_aligned_field(seed: u64) -> NormalFormField {
    let mut rng = Lcg(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = 1 + rng.below(3) as usize;
    let mut lambda: Vec<GaussianRational> = Vec::new();
    for j in 0..n {
        let candidates: Vec<GaussianRational> = (1..=5)
            .flat_map(|p| (1..=5).map(move |q| real(p, q)))
            .filter(|c| lambda.last().is_none_or(|prev| c.re >= prev.re))
            .collect();
        let resonant: Vec<GaussianRational> = candidates
            .iter()
            .filter(|c| {
                let mut l = lambda.clone();
                l.push((*c).clone());
                j > 0 && !resonance_relations(&l, j).unwrap().is_empty()
            })
            .cloned()
            .collect();
        let pool = if !resonant.is_empty() && rng.below(10) < 7 { &resonant } else { &candidates };
        lambda.push(pool[rng.below(pool.len() as u64) as usize].clone());
    }
    let mut g = vec![MixedPolynomial::zero(n); n];
    for j in 1..n {
        for rel in resonance_relations(&lambda, j).unwrap() {
            if rng.below(3) == 0 {
                continue;
            }
            let c = gr(rng.below(3) as i64 - 1, rng.below(3) as i64 - 1);
            let term = MixedPolynomial::monomial(rel.m, MultiIndex::zeros(n), c).unwrap();
            g[j] = &g[j] + &term;
        }
    }
    let field = NormalFormField::new(lambda, g).unwrap();
    assert!(validate_normal_form(&field).is_strict());
    field
}

#[test]
fn conjugate_kills_holomorphic_input() {
    let field = planar(2, gr(1, 0));
    let out = apply_conjugate(&field, &series(z(2, 0).pow(3), 5)).unwrap();
    assert!(out.value.is_zero());
    assert!(!out.truncated);
}

#[test]
fn conjugate_on_modulus_product_vanishes() {
    for (q, p) in [(1u32, 1u32), (1, 2), (2, 3)] {
        let field = negative_ratio_field(q as i64, p as i64);
        let s = series(modulus_product(q, p), 2 * (q + p));
        assert!(apply_conjugate(&field, &s).unwrap().value.is_zero());
    }
}

#[test]
fn conjugate_hand_example() {
    // λ = (1, 2), g₂ = z₁²: X̄ z̄₂ = 2 z̄₂ + z̄₁².
    let field = planar(2, gr(1, 0));
    let out = apply_conjugate(&field, &series(zb(2, 1), 3)).unwrap().value;
    let expected = &zb(2, 1).scale(&gr(2, 0)) + &zb(2, 0).pow(2);
    assert_eq!(out.poly(), &expected);
}

#[test]
fn conjugate_conjugates_g_coefficients() {
    let field = planar(2, GaussianRational::i());
    let out = apply_conjugate(&field, &series(zb(2, 1), 3)).unwrap().value;
    let expected = &zb(2, 1).scale(&gr(2, 0)) + &zb(2, 0).pow(2).scale(&gr(0, -1));
    assert_eq!(out.poly(), &expected);
}

#[test]
fn conjugate_reports_truncation() {
    // g₂ = z₁² raises the degree of z̄₂ by one.
    let field = planar(2, gr(1, 0));
    let out = apply_conjugate(&field, &series(zb(2, 1).pow(2), 2)).unwrap();
    assert!(out.truncated);
    assert_eq!(out.value.poly(), &zb(2, 1).pow(2).scale(&gr(4, 0)));
    let err = apply_conjugate(&field, &series(z(3, 0), 2)).unwrap_err();
    assert!(matches!(err, SolverError::DimensionMismatch { .. }));
}

#[test]
fn kernel_of_resonant_planar_field() {
    let kernel = assert_oracle_agrees(&planar(2, gr(1, 0)), 3);
    assert!(kernel.holomorphic_only);
    assert_eq!(kernel.len(), 10);
    let mut expected: Vec<MixedPolynomial> = MultiIndex::all_up_to_degree(2, 3)
        .into_iter()
        .map(|a| MixedPolynomial::monomial(a, MultiIndex::zeros(2), gr(1, 0)).unwrap())
        .collect();
    let mut got: Vec<MixedPolynomial> = kernel.basis.iter().map(|s| s.poly().clone()).collect();
    expected.sort_by_key(|p| alloc::format!("{p}"));
    got.sort_by_key(|p| alloc::format!("{p}"));
    assert_eq!(got, expected);
}

#[test]
fn kernel_of_negative_ratio_field_is_not_holomorphic() {
    let kernel = assert_oracle_agrees(&negative_ratio_field(1, 1), 4);
    assert!(!kernel.holomorphic_only);
    let target = modulus_product(1, 1);
    assert!(kernel.basis.iter().any(|s| s.poly() == &target));
}

#[test]
fn kernel_in_one_variable() {
    let kernel = solve_kernel(&NormalFormField::euler(1).unwrap(), 2).unwrap();
    let got: Vec<MixedPolynomial> = kernel.basis.iter().map(|s| s.poly().clone()).collect();
    assert_eq!(got, vec![MixedPolynomial::one(1), z(1, 0), z(1, 0).pow(2)]);
    assert!(kernel.holomorphic_only);
}

#[test]
fn kernel_with_resonant_constraint_propagation() {
    // λ = (1, −1, 0) admits g₃ = z₁z₂, and zero diagonals appear throughout.
    let n = 3;
    let field = NormalFormField::new(
        vec![gr(1, 0), gr(-1, 0), gr(0, 0)],
        vec![MixedPolynomial::zero(n), MixedPolynomial::zero(n), &z(n, 0) * &z(n, 1)],
    )
    .unwrap();
    let kernel = assert_oracle_agrees(&field, 4);
    assert!(!kernel.holomorphic_only);
}

#[test]
fn kernel_of_jordan_block() {
    let field = NormalFormField::new(
        vec![gr(1, 0), gr(1, 0)],
        vec![MixedPolynomial::zero(2), z(2, 0).scale(&gr(3, 0))],
    )
    .unwrap();
    assert!(assert_oracle_agrees(&field, 4).holomorphic_only);
}

#[test]
fn kernel_with_complex_eigenvalues() {
    let field = NormalFormField::new(
        vec![gr(1, 1), gr(2, 2)],
        vec![MixedPolynomial::zero(2), z(2, 0).pow(2).scale(&gr(1, -2))],
    )
    .unwrap();
    assert!(assert_oracle_agrees(&field, 4).holomorphic_only);
    // Not aligned, but A(λ) is still empty.
    let mixed = NormalFormField::diagonal(vec![gr(1, 0), gr(1, 1)]).unwrap();
    assert!(assert_oracle_agrees(&mixed, 4).holomorphic_only);
}

#[test]
fn invalid_field_is_rejected() {
    let bad = NormalFormField::new(vec![gr(1, 0), gr(2, 0)], vec![MixedPolynomial::zero(2), z(2, 0)])
        .unwrap();
    assert!(matches!(solve_kernel(&bad, 2), Err(SolverError::Field(_))));
}

#[test]
fn holomorphic_kernel_examples() {
    assert!(verify_holomorphic_kernel(&planar(2, gr(1, 0)), 6).unwrap());
    assert!(verify_holomorphic_kernel(&NormalFormField::diagonal(vec![gr(1, 0), gr(1, 0)]).unwrap(), 4).unwrap());
    let err = verify_holomorphic_kernel(&negative_ratio_field(1, 2), 4).unwrap_err();
    assert!(matches!(err, SolverError::ANotCertified(AStatus::NonEmpty(_))));
}

#[test]
fn random_aligned_fields_match_oracle() {
    for seed in 0..12 {
        let field = random_aligned_field(seed);
        let cap = if field.n() == 3 { 4 } else { 5 };
        let kernel = assert_oracle_agrees(&field, cap);
        assert!(kernel.holomorphic_only, "seed {seed}");
        assert!(verify_holomorphic_kernel(&field, cap).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weight_blocks_are_preserved(seed in any::<u64>(), exps in proptest::collection::vec(0u32..3, 6)) {
        let field = random_aligned_field(seed);
        let n = field.n();
        let alpha = MultiIndex::new(exps[..n].to_vec());
        let beta = MultiIndex::new(exps[3..3 + n].to_vec());
        let mono = MixedPolynomial::monomial(alpha.clone(), beta.clone(), gr(1, 0)).unwrap();
        let out = apply_conjugate(&field, &series(mono, 20)).unwrap();
        prop_assert!(!out.truncated);
        let w = weight(field.lambda(), &beta);
        for (m, _) in out.value.poly().terms() {
            prop_assert_eq!(&m.holo, &alpha);
            prop_assert_eq!(weight(field.lambda(), &m.anti), w.clone());
        }
    }

    #[test]
    fn kernel_contains_every_holomorphic_monomial(seed in any::<u64>()) {
        let field = random_aligned_field(seed);
        let cap = 3;
        let kernel = solve_kernel(&field, cap).unwrap();
        let oracle = DenseKernel::build(&field, cap).unwrap();
        for alpha in MultiIndex::all_up_to_degree(field.n(), cap) {
            let p = MixedPolynomial::monomial(alpha, MultiIndex::zeros(field.n()), gr(1, 0)).unwrap();
            prop_assert!(oracle.contains(&p));
        }
        prop_assert!(kernel.holomorphic_only);
        prop_assert_eq!(kernel.len(), MultiIndex::all_up_to_degree(field.n(), cap).len());
    }
}

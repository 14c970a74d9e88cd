use forelli::format::{
    field, gaussian, parse_field, parse_gaussian, parse_poly, parse_region_spec, poly, real, region_spec,
};
use forelli_core::algebra::rational::rational;
use forelli_core::algebra::{GaussianRational, MixedPolynomial, Monomial, MultiIndex};
use forelli_core::field::NormalFormField;
use forelli_core::region::{ComplexPoly, RegionSpec};
use num_complex::Complex64;
use proptest::prelude::*;
use serde_json::json;

#[test]
fn gaussian_inputs() {
    let half = GaussianRational::real(rational(1, 2));
    assert_eq!(parse_gaussian(&json!("1/2"), "x").unwrap(), half);
    assert_eq!(parse_gaussian(&json!(3), "x").unwrap(), GaussianRational::from_int(3, 0));
    assert_eq!(parse_gaussian(&json!({"im": "-2"}), "x").unwrap(), GaussianRational::from_int(0, -2));
    assert!(parse_gaussian(&json!(0.5), "x").is_err());
    assert!(parse_gaussian(&json!("1/0"), "x").is_err());
}

#[test]
fn poly_input_errors_name_the_path() {
    let err = parse_poly(&json!([{"coeff": 1, "holo": [1]}]), 2, "g[1]").unwrap_err();
    assert!(err.to_string().contains("g[1][0].holo"), "{err}");
    assert!(parse_poly(&json!([{"holo": [1, 0]}]), 2, "g").is_err());
}

#[test]
fn reals_keep_seventeen_digits() {
    let x = 0.1f64 + 0.2;
    let v = real(x);
    assert_eq!(v.as_f64(), Some(x));
    assert_eq!(real(f64::INFINITY), json!("inf"));
    assert_eq!(real(f64::NAN), json!("nan"));
}

#[test]
fn field_roundtrip() {
    let f = NormalFormField::planar_resonant(GaussianRational::from_int(1, 0), 3, GaussianRational::from_int(2, -1))
        .unwrap();
    assert_eq!(parse_field(&field(&f)).unwrap(), f);
}

#[test]
fn region_roundtrip() {
    let s = RegionSpec::new(
        vec![ComplexPoly::new(vec![Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.25)]), ComplexPoly::constant(Complex64::new(1.0, 0.0))],
        vec![2.0, 1.0],
    )
    .unwrap();
    let back = parse_region_spec(&region_spec(&s)).unwrap();
    assert_eq!(back.p(), s.p());
    assert_eq!(back.lambda(), s.lambda());
}

fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(|(a, b, c, d)| GaussianRational::new(rational(a, b), rational(c, d)))
}

proptest! {
    #[test]
    fn gaussian_roundtrip(g in arb_gaussian()) {
        prop_assert_eq!(parse_gaussian(&gaussian(&g), "x").unwrap(), g);
    }

    #[test]
    fn poly_roundtrip(terms in prop::collection::vec(((0u32..4, 0u32..4), (0u32..4, 0u32..4), arb_gaussian()), 0..6)) {
        let terms: Vec<_> = terms
            .into_iter()
            .map(|((a, b), (c, d), g)| (Monomial::new(MultiIndex::new(vec![a, b]), MultiIndex::new(vec![c, d])), g))
            .collect();
        let p = MixedPolynomial::from_terms(2, terms).unwrap();
        prop_assert_eq!(parse_poly(&poly(&p), 2, "p").unwrap(), p);
    }

    #[test]
    fn real_roundtrip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(real(x).as_f64(), Some(x));
    }
}
